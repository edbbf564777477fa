"""q-expansions, the E4/E6 basis, and the Eisenstein route to the
supersingular polynomial."""

from fractions import Fraction

import pytest

from ellwitt.arith import PrimeField, is_prime
from ellwitt.errors import ValidationError
from ellwitt.modforms import (
    bernoulli,
    delta_q,
    eisenstein_q,
    eta24_q,
    express_in_e4e6,
    hasse_decomposition,
    hasse_form,
    j_q,
    ss_poly_eisenstein,
    weight_basis,
)
from ellwitt.polyseries import QQ, QSeries
from ellwitt.sslocus import sigma


def test_bernoulli_values():
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(96).denominator % 97 == 0  # von Staudt-Clausen at 97
    with pytest.raises(ValueError):
        bernoulli(3)


def test_eisenstein_expansions():
    e4 = eisenstein_q(4, 3)
    assert e4.coeff_list(0, 3) == [1, 240, 2160]
    assert e4.weight == 4
    e6 = eisenstein_q(6, 3)
    assert e6.coeff_list(0, 3) == [1, -504, -16632]
    # one-dimensional weight-10 space
    assert (eisenstein_q(10, 20)
            - eisenstein_q(4, 20) * eisenstein_q(6, 20)).is_zero()


def test_delta_and_eta24():
    d = delta_q(5)
    assert d.coeff_list(1, 5) == [1, -24, 252, -1472]
    assert d.weight == 12
    eta = eta24_q(5)
    assert eta.coeff(1) == 1
    assert (delta_q(50) - eta24_q(50)).is_zero()


def test_j_expansion():
    j = j_q(3)
    assert j.offset == -1
    assert j.coeff(-1) == 1
    assert j.coeff(0) == 744
    assert j.coeff(1) == 196884
    # j * Delta = E4^3 to precision 50
    lhs = j_q(52) * delta_q(52)
    rhs = eisenstein_q(4, 52) ** 3
    assert (lhs - rhs).is_zero()


def test_weight_basis_dimensions():
    for k, dim in ((4, 1), (6, 1), (10, 1), (12, 2), (14, 1), (24, 3),
                   (26, 2), (96, 9)):
        assert len(weight_basis(k).monomials) == dim


def test_express_examples():
    assert express_in_e4e6(eisenstein_q(10, 8)) == {(1, 1): Fraction(1)}
    assert express_in_e4e6(delta_q(8)) == {
        (3, 0): Fraction(1, 1728), (0, 2): Fraction(-1, 1728)}
    # E12 exactly, then reduced mod 13
    sol = express_in_e4e6(eisenstein_q(12, 8))
    red = {mon: (c.numerator * pow(c.denominator, -1, 13)) % 13
           for mon, c in sol.items()}
    assert red == {(3, 0): 6, (0, 2): 8}
    assert (6 + 8) % 13 == 1


def test_express_rejects_non_modular_input():
    fake = QSeries(QQ, 0, [1, 1, 1, 1, 1, 1, 1, 1], weight=12)
    with pytest.raises((ValidationError, ValueError)):
        express_in_e4e6(fake)


def test_hasse_form_frozen_values():
    assert {k: v.value for k, v in hasse_form(5).items()} == {(1, 0): 1}
    assert {k: v.value for k, v in hasse_form(11).items()} == {(1, 1): 1}
    assert {k: v.value for k, v in hasse_form(13).items()} == \
        {(3, 0): 6, (0, 2): 8}


def test_hasse_form_reduces_to_one_mod_p():
    # hasse_form itself asserts the q-expansion is 1 mod p at solve
    # precision; recheck every prime in range out to precision 30.
    for p in range(5, 98):
        if not is_prime(p):
            continue
        hf = hasse_form(p)
        field = PrimeField(p)
        e4 = eisenstein_q(4, 30).reduce_mod(field)
        e6 = eisenstein_q(6, 30).reduce_mod(field)
        acc = QSeries(field, 30, [])
        one = QSeries(field, 0, [1] + [0] * 29)
        for (a, b), c in hf.items():
            mono = e4 ** a if a else one
            if b:
                mono = mono * e6 ** b
            acc = acc + mono.scale(c)
        want = [field.one()] + [field.zero()] * (acc.abs_prec - 1)
        assert acc.coeff_list(0, acc.abs_prec) == want
        assert sum(v.value for v in hf.values()) % p == 1


def test_hasse_decomposition():
    assert (lambda d: (d.m, d.delta, d.eps))(hasse_decomposition(13)) == \
        (1, 0, 0)
    assert (lambda d: (d.m, d.delta, d.eps))(hasse_decomposition(11)) == \
        (0, 1, 1)
    assert (lambda d: (d.m, d.delta, d.eps))(hasse_decomposition(23)) == \
        (1, 1, 1)
    for p in range(5, 98):
        if is_prime(p):
            d = hasse_decomposition(p)
            assert p - 1 == 12 * d.m + 4 * d.delta + 6 * d.eps
            assert d.delta in (0, 1) and d.eps in (0, 1)
            assert d.m + d.delta + d.eps == sigma(p)


def test_ss_poly_spot_values():
    p7 = ss_poly_eisenstein(7)
    assert [c.value for c in p7.coeffs] == [1, 1]        # X - 6
    p11 = ss_poly_eisenstein(11)
    assert [c.value for c in p11.coeffs] == [0, 10, 1]   # X^2 - X
    p13 = ss_poly_eisenstein(13)
    assert [c.value for c in p13.coeffs] == [8, 1]       # X - 5


def test_ss_poly_degree_and_squarefree_range():
    for p in range(5, 98):
        if not is_prime(p):
            continue
        sp = ss_poly_eisenstein(p)
        assert sp.degree == sigma(p)
        assert sp.leading().value == 1
        assert sp.gcd(sp.derivative()).degree == 0


def test_ss_poly_bounds():
    with pytest.raises(ValueError):
        ss_poly_eisenstein(101)
    with pytest.raises(ValueError):
        ss_poly_eisenstein(9)
