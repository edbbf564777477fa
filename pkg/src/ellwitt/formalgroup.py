"""Formal group of a Weierstrass curve in the parameter t = -x/y: the
formal log/exp route to the multiplication-by-p series, extraction of
the height invariants v1/v2, and the exhaustive Deligne and
Gross-Landweber verifications.

[p](t) is computed over exact rationals as exp(p * log(t)) where log is
the integral of the invariant differential; every coefficient is then
certified p-integral before reduction.  The v1-only stage runs at
precision p+1; the full p^2+1 window is expanded only when v1 = 0 (the
supersingular case, where the height-2 assertions and v2 live).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import FpElem, PrimeField, is_prime
from .errors import ValidationError
from .polyseries import QQ, Poly, QSeries
from . import modforms

__all__ = [
    "WCurve", "PSeries", "curve_invariants", "formal_expansion",
    "formal_log", "mult_by_p_series", "v_invariants", "classical_hasse",
    "verify_deligne", "verify_gross_landweber",
    "DeligneReport", "GLReport", "MAX_FORMAL_PRIME",
]

MAX_FORMAL_PRIME = 13
MAX_EXPANSION_PREC = 200
_VERIFY_PRIMES = (5, 7, 11, 13)


class WCurve:
    """Weierstrass curve [a1, a2, a3, a4, a6] over a coefficient ring."""

    __slots__ = ("ring", "a1", "a2", "a3", "a4", "a6")

    def __init__(self, ring, a1, a2, a3, a4, a6):
        self.ring = ring
        self.a1 = ring.coerce(a1)
        self.a2 = ring.coerce(a2)
        self.a3 = ring.coerce(a3)
        self.a4 = ring.coerce(a4)
        self.a6 = ring.coerce(a6)

    @classmethod
    def short(cls, ring, a4, a6) -> "WCurve":
        """y^2 = x^3 + a4 x + a6 (valid away from characteristic 2, 3)."""
        z = ring.zero()
        return cls(ring, z, z, z, a4, a6)

    @property
    def is_short(self) -> bool:
        return not (self.a1 or self.a2 or self.a3)

    def invariants(self):
        """(c4, c6, discriminant, j); raises on singular curves."""
        r = self.ring
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + r.from_int(4) * a2
        b4 = r.from_int(2) * a4 + a1 * a3
        b6 = a3 * a3 + r.from_int(4) * a6
        b8 = (a1 * a1 * a6 + r.from_int(4) * a2 * a6 - a1 * a3 * a4
              + a2 * a3 * a3 - a4 * a4)
        c4 = b2 * b2 - r.from_int(24) * b4
        c6 = -(b2 * b2 * b2) + r.from_int(36) * b2 * b4 - r.from_int(216) * b6
        disc = (-(b2 * b2) * b8 - r.from_int(8) * (b4 ** 3)
                - r.from_int(27) * (b6 * b6) + r.from_int(9) * b2 * b4 * b6)
        if not r.is_unit(disc):
            raise ValueError("singular curve: discriminant is not a unit")
        j = c4 * c4 * c4 * r.inv(disc)
        return c4, c6, disc, j

    def __repr__(self):
        if self.is_short:
            return f"y^2 = x^3 + {self.a4!r}*x + {self.a6!r}"
        return (f"WCurve({self.a1!r},{self.a2!r},{self.a3!r},"
                f"{self.a4!r},{self.a6!r})")


def curve_invariants(E: WCurve):
    return E.invariants()


def formal_expansion(E: WCurve, prec: int):
    """(x(t), y(t), omega(t)) as Laurent/power series in t = -x/y.

    w(t) = t^3 + ... solves the defining fixed-point equation; then
    x = t/w, y = -1/w and omega = x'/(2y + a1 x + a3), normalized to
    1 + O(t).  omega carries abs precision prec; x and y slightly less.
    """
    if prec > MAX_EXPANSION_PREC:
        raise ValueError(f"expansion precision capped at "
                         f"{MAX_EXPANSION_PREC}, got {prec}")
    ring = E.ring
    zero = ring.zero()
    P = prec + 3
    a1, a2, a3, a4, a6 = E.a1, E.a2, E.a3, E.a4, E.a6
    w = [zero] * P
    w2 = [zero] * P
    w3 = [zero] * P
    if P > 3:
        w[3] = ring.one()
    for n in range(4, P):
        if n >= 6:
            s = None
            for i in range(3, n - 2):
                if w[i] and w[n - i]:
                    term = w[i] * w[n - i]
                    s = term if s is None else s + term
            if s is not None:
                w2[n] = s
        if n >= 9:
            s = None
            for i in range(3, n - 5):
                if w[i] and w2[n - i]:
                    term = w[i] * w2[n - i]
                    s = term if s is None else s + term
            if s is not None:
                w3[n] = s
        acc = zero
        if a1 and w[n - 1]:
            acc = acc + a1 * w[n - 1]
        if a2 and w[n - 2]:
            acc = acc + a2 * w[n - 2]
        if a3 and w2[n]:
            acc = acc + a3 * w2[n]
        if a4 and w2[n - 1]:
            acc = acc + a4 * w2[n - 1]
        if a6 and w3[n]:
            acc = acc + a6 * w3[n]
        w[n] = acc
    w_series = QSeries(ring, 3, w[3:])
    winv = w_series.inverse()
    x = winv.shift(1)
    y = -winv
    denom = ring.from_int(2) * y + x.scale(a1) + \
        QSeries(ring, 0, [a3] + [zero] * (P - 1))
    omega = x.derivative() * denom.inverse()
    return x, y, omega


def _require_integral(E: WCurve, what: str):
    if E.ring != QQ:
        raise ValueError(f"{what} wants a curve over the rationals")
    for a in (E.a1, E.a2, E.a3, E.a4, E.a6):
        if a.denominator != 1:
            raise ValueError(f"{what} wants integral curve coefficients")


def _integrate_log(omega: QSeries) -> QSeries:
    log = omega.integrate()
    if log.coeff(1) != 1:
        raise ValidationError("formal log is not t + O(t^2)")
    for i, c in enumerate(log.coeffs):
        n = log.offset + i
        if (c * n).denominator != 1:
            raise ValidationError(
                f"log coefficient at t^{n} has denominator not dividing {n}")
    return log


def formal_log(E: WCurve, prec: int) -> QSeries:
    """log(t) = integral of omega: t + O(t^2), coefficients b_{n-1}/n.

    The curve must be an integral model (rational coefficients with
    denominator 1); each log coefficient's denominator divides its index.
    """
    _require_integral(E, "formal_log")
    _, _, omega = formal_expansion(E, prec)
    return _integrate_log(omega)


@dataclass(frozen=True)
class PSeries:
    """[p]-series of an integral curve with its formal intermediates."""
    p: int
    curve: WCurve
    x: QSeries
    y: QSeries
    omega: QSeries
    log: QSeries
    series: QSeries         # [p](t) over exact rationals
    series_mod_p: QSeries   # reduction mod p


def _mult_by_m(E: WCurve, m: int, prec: int):
    """exp(m * log(t)) and its intermediates; the multiplication-by-m
    series of the formal group."""
    x, y, omega = formal_expansion(E, prec)
    log = _integrate_log(omega)
    exp = log.revert()
    return x, y, omega, log, exp.compose(log.scale(Fraction(m)))


def mult_by_p_series(E: WCurve, p: int, prec: int | None = None) -> PSeries:
    """[p](t) = exp(p*log(t)) over exact rationals, reduced mod p after
    certifying p-integrality of every coefficient.

    Default (and maximum) precision is p^2 + 1; p is capped at 13, where
    the exact-rational work stays desk-scale.
    """
    if not is_prime(p) or p <= 3:
        raise ValueError(f"p must be a prime > 3, got {p}")
    if p > MAX_FORMAL_PRIME:
        raise ValueError(
            f"[p]-series computation capped at p <= {MAX_FORMAL_PRIME}, "
            f"got {p}")
    full = p * p + 1
    if prec is None:
        prec = full
    if not 2 <= prec <= full:
        raise ValueError(f"prec must be in [2, p^2+1] = [2, {full}]")
    _require_integral(E, "mult_by_p_series")
    field = PrimeField(p)
    _, _, disc, _ = E.invariants()
    if disc.denominator != 1 or disc.numerator % p == 0:
        raise ValueError(f"curve has bad reduction at {p}")
    x, y, omega, log, mp = _mult_by_m(E, p, prec)
    if mp.coeff(1) != p:
        raise ValidationError("[p]-series does not start with p*t")
    for i, c in enumerate(mp.coeffs):
        if c.denominator % p == 0:
            raise ValidationError(
                f"[p]-series coefficient at t^{mp.offset + i} has {p} in "
                f"its denominator (precision or algebra bug)")
    return PSeries(p=p, curve=E, x=x, y=y, omega=omega, log=log,
                   series=mp, series_mod_p=mp.reduce_mod(field))


def _lift_short_curve(E: WCurve) -> WCurve:
    """Deterministic integral lift: coefficients to [0, p)."""
    return WCurve.short(QQ, E.a4.value, E.a6.value)


def v_invariants(E: WCurve, p: int):
    """(v1, v2) of a short curve over F_p, from the [p]-series of its
    [0,p) integral lift.

    v1 is the t^p coefficient mod p.  When v1 = 0 the series is expanded
    to t^(p^2), every intermediate coefficient is asserted to vanish
    mod p, and the unit v2 is returned; otherwise v2 is absent (None)
    and the coefficients below t^p are asserted to vanish.
    """
    if not isinstance(E.ring, PrimeField) or E.ring.p != p:
        raise ValueError("v_invariants wants a curve over F_p")
    if not E.is_short:
        raise ValueError("v_invariants wants a short Weierstrass curve")
    lift = _lift_short_curve(E)
    field = E.ring
    head = mult_by_p_series(lift, p, prec=p + 1).series_mod_p
    v1 = head.coeff(p)
    if v1:
        for k in range(2, p):
            if head.coeff(k):
                raise ValidationError(
                    f"ordinary curve {E!r}: t^{k} coefficient nonzero mod "
                    f"{p} — [p] does not factor through Frobenius")
        return v1, None
    tail = mult_by_p_series(lift, p).series_mod_p
    for k in range(1, p * p):
        if tail.coeff(k):
            raise ValidationError(
                f"supersingular curve {E!r}: t^{k} coefficient nonzero "
                f"mod {p} — [p] does not factor through Frobenius^2")
    v2 = tail.coeff(p * p)
    if not v2:
        raise ValidationError(
            f"supersingular curve {E!r}: v2 is not a unit")
    return field.zero(), v2


def classical_hasse(E: WCurve, p: int) -> FpElem:
    """Coefficient of x^(p-1) in (x^3 + Ax + B)^((p-1)/2): the classical
    Hasse-invariant criterion, independent of the formal group."""
    if not isinstance(E.ring, PrimeField) or E.ring.p != p:
        raise ValueError("classical_hasse wants a curve over F_p")
    if not E.is_short:
        raise ValueError("classical_hasse wants a short curve")
    field = E.ring
    f = Poly(field, [E.a6, E.a4, field.zero(), field.one()])
    return (f ** ((p - 1) // 2)).coeff(p - 1)


def _hasse_form_value(hf: dict, c4: FpElem, c6: FpElem) -> FpElem:
    """hasse_form evaluated at (E4, E6) = (c4, -c6)."""
    field = c4.field
    acc = field.zero()
    for (a, b), c in hf.items():
        acc = acc + c * c4 ** a * (-c6) ** b
    return acc


@dataclass(frozen=True)
class DeligneReport:
    prime: int
    curves_checked: int
    supersingular_curves: int


def verify_deligne(p: int) -> DeligneReport:
    """Exhaustive three-way check over all nonsingular y^2 = x^3+Ax+B
    over F_p: formal-group v1 = classical x^(p-1) coefficient =
    hasse_form at (c4, -c6).  Any disagreement raises ValidationError
    naming the curve and all three values."""
    if p not in _VERIFY_PRIMES:
        raise ValueError(f"verify_deligne runs at p in {_VERIFY_PRIMES}")
    field = PrimeField(p)
    hf = modforms.hasse_form(p)
    checked = 0
    ss_count = 0
    for A in range(p):
        for B in range(p):
            if (4 * A ** 3 + 27 * B ** 2) % p == 0:
                continue
            E = WCurve.short(field, A, B)
            v1, _ = v_invariants(E, p)
            ch = classical_hasse(E, p)
            c4, c6, _, _ = E.invariants()
            ev = _hasse_form_value(hf, c4, c6)
            if not (v1 == ch == ev):
                raise ValidationError(
                    f"Deligne disagreement at p={p}, (A,B)=({A},{B}): "
                    f"formal v1={v1.value}, classical={ch.value}, "
                    f"eisenstein={ev.value}")
            checked += 1
            if not v1:
                ss_count += 1
    return DeligneReport(prime=p, curves_checked=checked,
                         supersingular_curves=ss_count)


@dataclass(frozen=True)
class GLCurveResult:
    j: int
    a4: int
    a6: int
    v2: int
    predicted: int
    match: bool
    ratio: int
    ratio_pow_of_12: int | None


@dataclass(frozen=True)
class GLReport:
    prime: int
    sign: int
    entries: tuple
    all_match: bool
    common_power_of_12: int | None


def _pow12_index(r: FpElem) -> int | None:
    """Smallest k >= 0 with 12^k = r mod p, if one exists."""
    field = r.field
    twelve = field.from_int(12)
    acc = field.one()
    for k in range(field.p):
        if acc == r:
            return k
        acc = acc * twelve
    return None


def verify_gross_landweber(p: int) -> GLReport:
    """For every supersingular j over F_p (all of them are F_p-rational
    for p <= 13): v2 of the standard model against
    (-1)^((p-1)/2) * Delta^((p^2-1)/12).

    Mismatches are reported, not raised; any discrepancy ratio is
    decomposed as a power of 12 when possible, and a common power across
    curves is reported (0 = on-the-nose match).
    """
    from . import sslocus
    if p not in _VERIFY_PRIMES:
        raise ValueError(
            f"verify_gross_landweber runs at p in {_VERIFY_PRIMES}")
    field = PrimeField(p)
    locus = sslocus.cross_validate(p)
    sign = (-1) ** ((p - 1) // 2)
    exponent = (p * p - 1) // 12
    entries = []
    for jval in sorted(locus.j_values, key=lambda z: (z.a, z.b)):
        if not jval.in_prime_field:
            continue
        E = sslocus.curve_from_j(jval.to_fp())
        v1, v2 = v_invariants(E, p)
        assert not v1 and v2 is not None
        _, _, disc, _ = E.invariants()
        pred = field.from_int(sign) * disc ** exponent
        ratio = v2 / pred
        entries.append(GLCurveResult(
            j=jval.a, a4=E.a4.value, a6=E.a6.value, v2=v2.value,
            predicted=pred.value, match=v2 == pred, ratio=ratio.value,
            ratio_pow_of_12=_pow12_index(ratio)))
    powers = {e.ratio_pow_of_12 for e in entries}
    common = powers.pop() if len(powers) == 1 else None
    return GLReport(prime=p, sign=sign, entries=tuple(entries),
                    all_match=all(e.match for e in entries),
                    common_power_of_12=common)
