"""Supersingular locus: Deuring criterion, point-count oracle, and the
three-way cross-validation."""

import pytest

from ellwitt.arith import PrimeField, fq2_context, frobenius_fq2, is_prime
from ellwitt.sslocus import (
    MONSTER_PRIMES,
    cross_validate,
    curve_from_j,
    hasse_polynomial,
    legendre_to_j,
    ogg_scan,
    sigma,
    ss_j_deuring,
    ss_j_point_count,
)


def test_sigma_values():
    assert sigma(13) == 1
    assert sigma(11) == 2
    assert sigma(23) == 3
    assert sigma(97) == 8
    with pytest.raises(ValueError):
        sigma(9)


def test_hasse_polynomial_values():
    assert [c.value for c in hasse_polynomial(5).coeffs] == [1, 4, 1]
    assert [c.value for c in hasse_polynomial(7).coeffs] == [1, 2, 2, 1]
    h11 = hasse_polynomial(11)
    assert h11.degree == 5 and h11.coeff(0).value == 1


def test_legendre_to_j_examples():
    # harmonic lambda = 2 gives j = 1728 in any characteristic
    for p in (7, 13, 1009):
        F = PrimeField(p)
        assert legendre_to_j(F.elem(2)) == F.from_int(1728)
    # lambda with lambda^2 - lambda + 1 = 0 gives j = 0: such lambda
    # exists mod 13 (discriminant -3 is a square mod 13)
    F13 = PrimeField(13)
    lam = next(F13.elem(v) for v in range(2, 13)
               if (v * v - v + 1) % 13 == 0)
    assert legendre_to_j(lam) == F13.zero()
    F7 = PrimeField(7)
    assert legendre_to_j(F7.elem(6)).value == 6
    with pytest.raises(ValueError):
        legendre_to_j(F7.elem(1))


def test_legendre_six_orbit_single_j():
    # the anharmonic orbit of every Hasse root maps to one j
    for p in (11, 13, 23, 31):
        ctx = fq2_context(p)
        from ellwitt.polyseries import roots_in_field
        one = ctx.one()
        for lam in roots_in_field(hasse_polynomial(p), ctx):
            j = legendre_to_j(lam)
            orbit = [lam, one - lam, lam.inverse(),
                     (one - lam).inverse(),
                     lam * (lam - one).inverse(),
                     (lam - one) * lam.inverse()]
            assert all(legendre_to_j(mu) == j for mu in orbit)


def test_ss_j_deuring_spot_values():
    assert {(z.a, z.b) for z in ss_j_deuring(5)} == {(0, 0)}
    assert {(z.a, z.b) for z in ss_j_deuring(7)} == {(6, 0)}
    assert {(z.a, z.b) for z in ss_j_deuring(11)} == {(0, 0), (1, 0)}
    with pytest.raises(ValueError):
        ss_j_deuring(1013)


def test_curve_from_j_branches_and_roundtrip():
    F13 = PrimeField(13)
    E0 = curve_from_j(F13.zero())
    assert (E0.a4.value, E0.a6.value) == (0, 1)
    E1728 = curve_from_j(F13.from_int(1728))
    assert (E1728.a4.value, E1728.a6.value) == (1, 0)
    for v in range(13):
        E = curve_from_j(F13.elem(v))
        assert E.invariants()[3] == F13.elem(v)
    # and over the quadratic extension
    ctx = fq2_context(11)
    for z in ctx.elements():
        E = curve_from_j(z)
        assert E.invariants()[3] == z


def test_point_count_hand_check_p5():
    # y^2 = x^3 + 1 over F_5 has the 6 points (0,+-1),(2,+-2),(4,0),inf;
    # t = 0 over F_5 forces t = -10 over F_25, i.e. 36 points.
    F5 = PrimeField(5)
    pts = {(x, y) for x in range(5) for y in range(5)
           if (y * y - x ** 3 - 1) % 5 == 0}
    assert len(pts) + 1 == 6
    ss = ss_j_point_count(5)
    assert {(z.a, z.b) for z in ss} == {(0, 0)}


def test_point_count_spot_values():
    assert {(z.a, z.b) for z in ss_j_point_count(13)} == {(5, 0)}
    # j = 1728 ordinary at p = 5 (5 = 1 mod 4): not in the locus
    ctx5 = fq2_context(5)
    assert ctx5.from_int(1728) not in ss_j_point_count(5)
    with pytest.raises(ValueError):
        ss_j_point_count(37)


def test_cross_validate_spot_loci():
    L7 = cross_validate(7)
    assert (L7.sigma, L7.all_rational) == (1, True)
    assert {(z.a, z.b) for z in L7.j_values} == {(6, 0)}
    L11 = cross_validate(11)
    assert (L11.sigma, L11.all_rational) == (2, True)
    assert {(z.a, z.b) for z in L11.j_values} == {(0, 0), (1, 0)}
    L13 = cross_validate(13)
    assert (L13.sigma, L13.all_rational) == (1, True)
    assert {(z.a, z.b) for z in L13.j_values} == {(5, 0)}


def test_cross_validate_full_range_invariants():
    for p in range(5, 98):
        if not is_prime(p):
            continue
        L = cross_validate(p)
        assert len(L.j_values) == L.sigma == sigma(p) == L.ss_poly.degree
        ctx = fq2_context(p)
        assert {frobenius_fq2(z) for z in L.j_values} == set(L.j_values)
        assert (ctx.zero() in L.j_values) == (p % 3 == 2)
        assert (ctx.from_int(1728) in L.j_values) == (p % 4 == 3)
        # non-rational values occur in conjugate pairs
        irrational = [z for z in L.j_values if not z.in_prime_field]
        assert len(irrational) % 2 == 0


def test_ogg_scan():
    assert ogg_scan(13) == [5, 7, 11, 13]
    assert 37 not in ogg_scan(37)
    assert ogg_scan(71) == [p for p in MONSTER_PRIMES if p > 3]
