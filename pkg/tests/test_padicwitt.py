"""Z/p^N and W(F_{p^2})/p^N: Teichmuller lifts, Hensel lifting, the
lifted supersingular polynomial and its idempotent splitting."""

import random

import pytest

from ellwitt.arith import PrimeField, fq2_context
from ellwitt.padicwitt import (
    PadicRing,
    hensel_root,
    lift_context,
    lift_ss_poly,
    splitting_idempotents,
    teichmuller,
    witt_frobenius,
)
from ellwitt.polyseries import Poly


def test_padic_ring_basics():
    R = PadicRing(5, 3)
    a = R.elem(7)
    assert a + R.elem(120) == R.elem(2)   # 127 mod 125
    assert a * a.inverse() == R.one()
    assert not R.is_unit(R.elem(10))
    with pytest.raises(ValueError):
        R.elem(1) + PadicRing(5, 4).elem(1)
    with pytest.raises(ValueError):
        R.elem(1) + PadicRing(7, 3).elem(1)


def test_lift_context_n1_is_base():
    ctx = fq2_context(5)
    w = lift_context(ctx, 1)
    assert (w.G1, w.G0) == (ctx.g1, ctx.g0)


def test_lift_context_p5_n2():
    ctx = fq2_context(5)  # x^2 - 2
    w = lift_context(ctx, 2)
    assert (w.G1 - ctx.g1) % 5 == 0 and (w.G0 - ctx.g0) % 5 == 0
    assert (w.G1, w.G0) == (0, 18)  # X^2 - 7 mod 25
    om = w.elem(0, 1)
    assert om ** 24 == w.one()


def test_lift_context_discriminant_is_unit():
    for p, N in ((7, 4), (13, 6), (29, 3)):
        w = lift_context(fq2_context(p), N)
        disc = (w.G1 * w.G1 - 4 * w.G0) % w.modulus
        assert disc % p != 0


def test_teichmuller_examples():
    F5 = PrimeField(5)
    assert teichmuller(F5.elem(0), 4).value == 0
    assert teichmuller(F5.elem(1), 4).value == 1
    assert teichmuller(F5.elem(2), 2).value == 7
    # defining property at N = 20
    R = PadicRing(5, 20)
    for v in range(1, 5):
        t = teichmuller(F5.elem(v), 20)
        assert t ** (5 - 1) == R.one()
        assert t ** 5 == t
        assert t.value % 5 == v


def test_teichmuller_fq2_defining_property():
    rng = random.Random(7)
    for p in (5, 7, 13):
        ctx = fq2_context(p)
        w = lift_context(ctx, 20)
        for _ in range(10):
            x = ctx.elem(rng.randrange(p), rng.randrange(p))
            t = teichmuller(x, 20)
            assert t ** (p * p) == t
            assert t.reduce_mod_p() == x
            if x:
                assert t ** (p * p - 1) == w.one()


def test_teichmuller_multiplicative():
    rng = random.Random(8)
    for p in (5, 11):
        ctx = fq2_context(p)
        F = PrimeField(p)
        for _ in range(15):
            x = ctx.elem(rng.randrange(p), rng.randrange(p))
            y = ctx.elem(rng.randrange(p), rng.randrange(p))
            assert teichmuller(x * y, 20) == \
                teichmuller(x, 20) * teichmuller(y, 20)
            u, v = F.elem(rng.randrange(p)), F.elem(rng.randrange(p))
            assert teichmuller(u * v, 20) == \
                teichmuller(u, 20) * teichmuller(v, 20)


def test_witt_frobenius_properties():
    rng = random.Random(9)
    for p in (5, 13):
        ctx = fq2_context(p)
        w = lift_context(ctx, 10)
        for _ in range(25):
            z = w.elem(rng.randrange(w.modulus), rng.randrange(w.modulus))
            zz = w.elem(rng.randrange(w.modulus), rng.randrange(w.modulus))
            assert witt_frobenius(witt_frobenius(z)) == z
            assert witt_frobenius(z + zz) == \
                witt_frobenius(z) + witt_frobenius(zz)
            assert witt_frobenius(z * zz) == \
                witt_frobenius(z) * witt_frobenius(zz)
            assert witt_frobenius(z).reduce_mod_p() == \
                z.reduce_mod_p().conj()
        s = w.elem(rng.randrange(w.modulus), 0)
        assert witt_frobenius(s) == s
        # frobenius commutes with the Teichmuller lift
        x = ctx.elem(rng.randrange(p), rng.randrange(p))
        assert witt_frobenius(teichmuller(x, 10)) == \
            teichmuller(x.conj(), 10)


def test_hensel_examples():
    R49 = PadicRing(7, 2)
    r = hensel_root(Poly(R49, [-2, 0, 1]), PrimeField(7).elem(3))
    assert r.value == 10
    R = PadicRing(11, 9)
    assert hensel_root(Poly(R, [0, -1, 1]), PrimeField(11).elem(1)) == R.one()
    with pytest.raises(ValueError):
        hensel_root(Poly(R, [0, 0, 1]), PrimeField(11).elem(0))


def test_hensel_independent_of_starting_lift():
    R = PadicRing(7, 8)
    f = Poly(R, [-2, 0, 1])
    a = hensel_root(f, R.elem(3))
    b = hensel_root(f, R.elem(3 + 7 * 123))
    assert a == b
    assert (a * a).value == 2


def test_lift_ss_poly_spot_values():
    for N in (1, 5, 10):
        sp = lift_ss_poly(11, N)
        M = 11 ** N
        assert [(c.a, c.b) for c in sp.coeffs] == [(0, 0), (M - 1, 0), (1, 0)]
    assert [(c.a, c.b) for c in lift_ss_poly(13, 1).coeffs] == \
        [(8, 0), (1, 0)]
    # p=7, N=3: monic linear X - t with t = 6 mod 7 and t^48 = 1
    sp = lift_ss_poly(7, 3)
    assert sp.degree == 1
    t = -sp.coeffs[0]
    assert t.a % 7 == 6 and t.b == 0
    assert t ** 48 == lift_context(fq2_context(7), 3).one()


def test_lift_ss_poly_frobenius_fixed_and_compatible():
    for p in (5, 7, 11, 13, 37, 53):
        s10 = lift_ss_poly(p, 10)
        for c in s10.coeffs:
            assert witt_frobenius(c) == c
        red = s10.map_coeffs(lambda c: c.reduce_mod_p().to_fp(),
                             PrimeField(p))
        from ellwitt.modforms import ss_poly_eisenstein
        assert red == ss_poly_eisenstein(p)
        for M in (1, 5):
            sM = lift_ss_poly(p, M)
            assert [c.reduce_precision(M) for c in s10.coeffs] == \
                list(sM.coeffs)


def test_splitting_idempotents_spot():
    es = splitting_idempotents(11, 10)
    w = lift_context(fq2_context(11), 10)
    # Lagrange idempotents for roots {0, 1} of X^2 - X: 1 - X and X
    assert sorted(tuple((c.a, c.b) for c in e.coeffs) for e in es) == \
        sorted([((0, 0), (1, 0)), ((1, 0), (w.modulus - 1, 0))])
    assert len(splitting_idempotents(13, 10)) == 1
    assert len(splitting_idempotents(23, 10)) == 3


def test_splitting_bounds():
    with pytest.raises(ValueError):
        splitting_idempotents(53, 10)
    with pytest.raises(ValueError):
        splitting_idempotents(11, 64)
    with pytest.raises(ValueError):
        lift_ss_poly(11, 100)
