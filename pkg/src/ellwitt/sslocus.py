"""The supersingular locus mod p by three independent routes, and their
cross-validation.

Route 1 (sslocus): Deuring's criterion — roots of the degree-(p-1)/2
Legendre polynomial in F_{p^2}, pushed through lambda -> j.
Route 2 (modforms): Laurent peeling of the reduced E_{p-1}.
Route 3 (here, p <= 31): brute-force point counts over F_{p^2}, marking
a curve supersingular exactly when its trace vanishes mod p.

Any disagreement raises ValidationError naming the two methods and the
symmetric difference; agreement is consolidated into an SSLocus.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .arith import (
    Fq2Elem,
    PrimeField,
    fq2_context,
    frobenius_fq2,
    is_prime,
)
from .errors import ValidationError
from .formalgroup import WCurve
from .polyseries import Poly, roots_in_field
from . import modforms

__all__ = [
    "sigma", "hasse_polynomial", "legendre_to_j", "ss_j_deuring",
    "curve_from_j", "ss_j_point_count", "cross_validate", "ogg_scan",
    "SSLocus", "MONSTER_PRIMES", "MAX_DEURING_PRIME",
    "MAX_POINT_COUNT_PRIME",
]

MAX_DEURING_PRIME = 1000
MAX_POINT_COUNT_PRIME = 31
MAX_CROSS_VALIDATE_PRIME = modforms.MAX_EISENSTEIN_PRIME

#: Primes dividing the order of the Monster (Ogg's observation); 2 and 3
#: sit outside this artifact's p > 3 scope.
MONSTER_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 47, 59, 71)


def sigma(p: int) -> int:
    """Count of supersingular j-invariants: 1 - eps(p) + floor(p/12),
    eps(p) = +-1 for p = +-1 mod 12 and 0 otherwise."""
    if p <= 3 or not is_prime(p):
        raise ValueError(f"p must be a prime > 3, got {p}")
    eps = {1: 1, 11: -1}.get(p % 12, 0)
    return 1 - eps + p // 12


def hasse_polynomial(p: int) -> Poly:
    """sum C((p-1)/2, k)^2 lambda^k mod p, degree (p-1)/2."""
    if p <= 3 or not is_prime(p):
        raise ValueError(f"p must be a prime > 3, got {p}")
    m = (p - 1) // 2
    field = PrimeField(p)
    return Poly(field, [comb(m, k) ** 2 for k in range(m + 1)])


def legendre_to_j(lam):
    """j = 256 (lambda^2 - lambda + 1)^3 / (lambda^2 (lambda - 1)^2).

    (Cubed numerator: the exponent that sends the harmonic lambda = 2
    to 1728; cross_validate confirms against the other two methods.)
    """
    ring = lam.ctx if isinstance(lam, Fq2Elem) else lam.field
    one = ring.one()
    if lam == ring.zero() or lam == one:
        raise ValueError("lambda in {0, 1} is a degenerate Legendre curve")
    num = ring.from_int(256) * (lam * lam - lam + one) ** 3
    den = (lam * lam) * (lam - one) ** 2
    return num * den.inverse()


@lru_cache(maxsize=None)
def ss_j_deuring(p: int) -> frozenset:
    """Supersingular j-invariants in F_{p^2} via Deuring's criterion.

    The Hasse polynomial must be squarefree with all (p-1)/2 roots in
    F_{p^2}; a shortfall falsifies the rationality claim and raises."""
    if not (3 < p <= MAX_DEURING_PRIME) or not is_prime(p):
        raise ValueError(
            f"ss_j_deuring wants a prime 3 < p <= {MAX_DEURING_PRIME}")
    H = hasse_polynomial(p)
    if H.gcd(H.derivative()).degree != 0:
        raise ValidationError(
            f"Hasse polynomial at p={p} is not squarefree")
    ctx = fq2_context(p)
    lams = roots_in_field(H, ctx)
    if len(lams) != (p - 1) // 2:
        raise ValidationError(
            f"only {len(lams)} of {(p - 1) // 2} lambda-roots lie in "
            f"F_{p}^2 at p={p}: a root escapes the quadratic extension")
    return frozenset(legendre_to_j(lam) for lam in lams)


def curve_from_j(j):
    """A Weierstrass model with the given j-invariant (char != 2, 3):
    y^2 = x^3 + 3k x + 2k with k = j/(1728 - j) away from j in
    {0, 1728}; y^2 = x^3 + 1 at j = 0 and y^2 = x^3 + x at j = 1728."""
    ring = j.ctx if isinstance(j, Fq2Elem) else j.field
    if j == ring.zero():
        return WCurve.short(ring, ring.zero(), ring.one())
    if j == ring.from_int(1728):
        return WCurve.short(ring, ring.one(), ring.zero())
    k = j * (ring.from_int(1728) - j).inverse()
    return WCurve.short(ring, ring.from_int(3) * k, ring.from_int(2) * k)


@lru_cache(maxsize=None)
def ss_j_point_count(p: int) -> frozenset:
    """Brute-force oracle: j in F_{p^2} is supersingular iff the trace of
    its standard model over F_{p^2} vanishes mod p.  Cost O(p^4); the
    p <= 31 bound is enforced, not advisory."""
    if not (3 < p <= MAX_POINT_COUNT_PRIME) or not is_prime(p):
        raise ValueError(
            f"point-count oracle wants a prime 3 < p <= "
            f"{MAX_POINT_COUNT_PRIME}")
    import numpy as np
    ctx = fq2_context(p)
    g1, g0 = ctx.g1, ctx.g0
    q = p * p
    xa = np.repeat(np.arange(p, dtype=np.int64), p)
    xb = np.tile(np.arange(p, dtype=np.int64), p)

    def vmul(ua, ub, va, vb):
        bd = ub * vb
        return (ua * va - g0 * bd) % p, (ua * vb + ub * va - g1 * bd) % p

    sqa, sqb = vmul(xa, xb, xa, xb)
    chi = np.full(q, -1, dtype=np.int64)
    chi[sqa * p + sqb] = 1
    chi[0] = 0
    cba, cbb = vmul(sqa, sqb, xa, xb)  # x^3
    out = set()
    for j in ctx.elements():
        E = curve_from_j(j)
        A, B = E.a4, E.a6
        bd = A.b * xb
        ua = (cba + A.a * xa - g0 * bd + B.a) % p
        ub = (cbb + A.a * xb + A.b * xa - g1 * bd + B.b) % p
        trace = -int(chi[ua * p + ub].sum())
        if trace % p == 0:
            out.add(j)
    return frozenset(out)


@dataclass(frozen=True)
class SSLocus:
    """Consolidated supersingular locus at p, validated across methods."""
    p: int
    j_values: frozenset
    ss_poly: Poly
    sigma: int
    all_rational: bool


def _sorted_j(js) -> list:
    return sorted(js, key=lambda z: (z.a, z.b))


def _diff_msg(name_a: str, set_a, name_b: str, set_b) -> str:
    extra_a = _sorted_j(set_a - set_b)
    extra_b = _sorted_j(set_b - set_a)
    return (f"{name_a} vs {name_b} disagree: only-{name_a}={extra_a}, "
            f"only-{name_b}={extra_b}")


@lru_cache(maxsize=None)
def cross_validate(p: int) -> SSLocus:
    """Assert the Eisenstein, Deuring and (p <= 31) point-count j-sets
    coincide, check Galois stability, squarefreeness, degree = sigma(p)
    and the classical 0/1728 membership criteria, and consolidate."""
    if not (3 < p <= MAX_CROSS_VALIDATE_PRIME) or not is_prime(p):
        raise ValueError(
            f"cross_validate wants a prime 3 < p <= "
            f"{MAX_CROSS_VALIDATE_PRIME}")
    ctx = fq2_context(p)
    sp = modforms.ss_poly_eisenstein(p)
    eis = frozenset(roots_in_field(sp, ctx))
    deu = ss_j_deuring(p)
    if eis != deu:
        raise ValidationError(
            f"p={p}: " + _diff_msg("eisenstein", eis, "deuring", deu))
    if p <= MAX_POINT_COUNT_PRIME:
        pc = ss_j_point_count(p)
        if deu != pc:
            raise ValidationError(
                f"p={p}: " + _diff_msg("deuring", deu, "point-count", pc))
    sig = sigma(p)
    if not (len(deu) == sig == sp.degree):
        raise ValidationError(
            f"p={p}: |j-set|={len(deu)}, deg={sp.degree}, sigma={sig}")
    if sp.gcd(sp.derivative()).degree != 0:
        raise ValidationError(f"p={p}: supersingular polynomial not "
                              f"squarefree")
    if {frobenius_fq2(z) for z in deu} != set(deu):
        raise ValidationError(f"p={p}: j-set is not Galois stable")
    if (ctx.zero() in deu) != (p % 3 == 2):
        raise ValidationError(f"p={p}: j=0 membership contradicts p mod 3")
    if (ctx.from_int(1728) in deu) != (p % 4 == 3):
        raise ValidationError(f"p={p}: j=1728 membership contradicts "
                              f"p mod 4")
    return SSLocus(p=p, j_values=deu, ss_poly=sp, sigma=sig,
                   all_rational=all(z.in_prime_field for z in deu))


def _primes_in(lo: int, hi: int) -> list:
    return [n for n in range(lo, hi + 1) if is_prime(n)]


def ogg_scan(p_max: int) -> list:
    """Primes 3 < p <= p_max whose supersingular j-invariants all lie in
    the prime field (via the Deuring route; p_max <= 1000)."""
    if p_max > MAX_DEURING_PRIME:
        raise ValueError(f"ogg_scan capped at p <= {MAX_DEURING_PRIME}")
    out = []
    for p in _primes_in(5, p_max):
        if all(z.in_prime_field for z in ss_j_deuring(p)):
            out.append(p)
    return out
