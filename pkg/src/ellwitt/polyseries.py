"""Dense univariate polynomials and truncated power/Laurent series over
pluggable coefficient rings.

A coefficient ring is any context object providing zero(), one(),
from_int(n), coerce(c), is_unit(a) and inv(a); element arithmetic goes
through the usual operators.  PrimeField and Fq2Ctx from arith qualify,
as do the p-adic rings in padicwitt; exact rationals are covered by the
RationalField singleton QQ below (elements are fractions.Fraction).

Poly: coeffs[i] is the degree-i coefficient; the leading stored
coefficient is nonzero ([] is the zero polynomial).

QSeries: sum of coeffs[i] * q^(offset+i); exactly zero below offset and
unknown at offset+len(coeffs) =: abs_prec and beyond.  Every operation
propagates the honest precision of its result — nothing is ever
extrapolated, and reading a coefficient at or past abs_prec raises
PrecisionError.  An optional modular-weight tag rides along: it is
bookkeeping only, kept when it is well defined and dropped otherwise.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import PrecisionError

__all__ = [
    "RationalField", "QQ", "Poly", "QSeries",
    "poly_divrem", "poly_gcd", "roots_in_field",
    "series_inverse", "series_compose", "series_revert",
]

# Horner composition is fine for short series; block (Brent-Kung)
# composition wins once the term count justifies the g^k table.
_BK_THRESHOLD = 48

# roots_in_field switches from the object-level scan to the vectorized
# int64 kernel above these sizes.
_NUMPY_FQ2_MIN_P = 40
_NUMPY_FP_MIN_P = 10_000
_MAX_SCAN_SIZE = 10 ** 6


class RationalField:
    """Exact rationals as a coefficient ring; elements are Fraction."""

    __slots__ = ()

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def coerce(self, c) -> Fraction:
        if isinstance(c, Fraction):
            return c
        if isinstance(c, int):
            return Fraction(c)
        raise TypeError(f"cannot coerce {type(c).__name__} into QQ")

    def is_unit(self, a: Fraction) -> bool:
        return a != 0

    def inv(self, a: Fraction) -> Fraction:
        return Fraction(1) / a

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class Poly:
    """Dense univariate polynomial; immutable by convention."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        cs = [ring.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.ring = ring
        self.coeffs = cs

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero()

    def _same(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials over different rings")
            return other
        return Poly(self.ring, [other])

    def __add__(self, other):
        o = self._same(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.ring,
                    [self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._same(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.ring,
                    [self.coeff(i) - o.coeff(i) for i in range(n)])

    def __rsub__(self, other):
        return self._same(other) - self

    def __neg__(self):
        return Poly(self.ring, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.coerce(other)
            return Poly(self.ring, [a * c for a in self.coeffs])
        o = self._same(other)
        if self.is_zero() or o.is_zero():
            return Poly(self.ring, [])
        zero = self.ring.zero()
        out = [zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Poly(self.ring, [self.ring.one()])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divrem(self, g: "Poly") -> tuple["Poly", "Poly"]:
        """f = q*g + r with deg r < deg g; needs an invertible leading
        coefficient of g (fails over Z/p^N when it is divisible by p)."""
        g = self._same(g)
        if g.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if not self.ring.is_unit(g.leading()):
            raise ValueError("leading coefficient of divisor is not a unit")
        lead_inv = self.ring.inv(g.leading())
        rem = list(self.coeffs)
        dg = g.degree
        if len(rem) - 1 < dg:
            return Poly(self.ring, []), Poly(self.ring, rem)
        quot = [self.ring.zero()] * (len(rem) - dg)
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i]
            if not c:
                continue
            q = c * lead_inv
            quot[i - dg] = q
            for j, b in enumerate(g.coeffs):
                rem[i - dg + j] = rem[i - dg + j] - q * b
        return Poly(self.ring, quot), Poly(self.ring, rem)

    def __floordiv__(self, g):
        return self.divrem(g)[0]

    def __mod__(self, g):
        return self.divrem(g)[1]

    def gcd(self, g: "Poly") -> "Poly":
        """Monic gcd over a field; gcd(0, 0) = 0 by convention."""
        a, b = self, self._same(g)
        while not b.is_zero():
            a, b = b, a.divrem(b)[1]
        if a.is_zero():
            return a
        return a * self.ring.inv(a.leading())

    def derivative(self) -> "Poly":
        return Poly(self.ring,
                    [self.coeffs[i] * self.ring.from_int(i)
                     for i in range(1, len(self.coeffs))])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * self.ring.inv(self.leading())

    def evaluate(self, x):
        """Horner evaluation at an element of the coefficient ring."""
        x = self.ring.coerce(x)
        acc = self.ring.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map_coeffs(self, fn, new_ring) -> "Poly":
        return Poly(new_ring, [fn(c) for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return other.ring == self.ring and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.ring, tuple(repr(c) for c in self.coeffs)))

    def __repr__(self):
        return f"Poly({self.coeffs!r})"

    def pretty(self, var: str = "X") -> str:
        """Human form with coefficients as stored, highest degree first."""
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(f"{c_str(c)}")
            else:
                xi = var if i == 1 else f"{var}^{i}"
                parts.append(xi if c == self.ring.one()
                             else f"{c_str(c)}*{xi}")
        return " + ".join(parts)


def c_str(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    v = getattr(c, "value", None)
    if v is not None:
        return str(v)
    return str(c)


def poly_divrem(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    return f.divrem(g)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    return f.gcd(g)


def _roots_scan_python(f: Poly, field):
    out = set()
    for x in field.elements():
        if not f.evaluate(x):
            out.add(x)
    return out


def _roots_scan_numpy_fp(f: Poly, field):
    import numpy as np
    p = field.p
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(f.coeffs):
        acc = (acc * xs + c.value) % p
    return {field.elem(int(v)) for v in np.nonzero(acc == 0)[0]}


def _roots_scan_numpy_fq2(f: Poly, ctx):
    import numpy as np
    p, g1, g0 = ctx.p, ctx.g1, ctx.g0
    xa = np.repeat(np.arange(p, dtype=np.int64), p)
    xb = np.tile(np.arange(p, dtype=np.int64), p)
    aa = np.zeros(p * p, dtype=np.int64)
    ab = np.zeros(p * p, dtype=np.int64)
    for c in reversed(f.coeffs):
        bd = ab * xb
        aa, ab = ((aa * xa - g0 * bd + c.a) % p,
                  (aa * xb + ab * xa - g1 * bd + c.b) % p)
    hits = np.nonzero((aa == 0) & (ab == 0))[0]
    return {ctx.elem(int(i) // p, int(i) % p) for i in hits}


def roots_in_field(f: Poly, field) -> set:
    """All roots of f in the given field (F_p or F_{p^2}), each once.

    Exhaustive scan; the field size is capped at 10^6.  A polynomial over
    F_p may be scanned over a matching F_{p^2} (coefficients are embedded
    first).  Multiplicity is not reported.
    """
    from .arith import Fq2Ctx, PrimeField
    if f.is_zero():
        raise ValueError("roots_in_field of the zero polynomial")
    if field.size > _MAX_SCAN_SIZE:
        raise ValueError(
            f"field size {field.size} exceeds the 10^6 exhaustive-scan cap")
    if isinstance(field, Fq2Ctx) and isinstance(f.ring, PrimeField):
        if f.ring.p != field.p:
            raise ValueError("characteristic mismatch")
        f = f.map_coeffs(field.embed, field)
    if f.ring != field:
        raise ValueError("polynomial ring does not match the scan field")
    if isinstance(field, Fq2Ctx):
        if field.p >= _NUMPY_FQ2_MIN_P:
            return _roots_scan_numpy_fq2(f, field)
        return _roots_scan_python(f, field)
    if field.p >= _NUMPY_FP_MIN_P:
        return _roots_scan_numpy_fp(f, field)
    return _roots_scan_python(f, field)


# ---------------------------------------------------------------------------
# Truncated power / Laurent series


def _combine_weight(w1, w2):
    if w1 is not None and w2 is not None and w1 == w2:
        return w1
    return None


class QSeries:
    """Truncated series sum(coeffs[i] q^(offset+i)) + O(q^abs_prec)."""

    __slots__ = ("ring", "offset", "coeffs", "weight")

    def __init__(self, ring, offset: int, coeffs, weight=None):
        cs = [ring.coerce(c) for c in coeffs]
        while cs and not cs[0]:
            cs.pop(0)
            offset += 1
        self.ring = ring
        self.offset = offset
        self.coeffs = cs
        self.weight = weight

    @property
    def abs_prec(self) -> int:
        """Exponent at which knowledge stops."""
        return self.offset + len(self.coeffs)

    @property
    def prec(self) -> int:
        """Number of stored coefficients (truncation length)."""
        return len(self.coeffs)

    def valuation(self):
        """Exponent of the lowest nonzero term; None when the series is
        zero to its precision."""
        return self.offset if self.coeffs else None

    def is_zero(self) -> bool:
        """Zero up to the known precision."""
        return not self.coeffs

    def coeff(self, n: int):
        if n >= self.abs_prec:
            raise PrecisionError(
                f"coefficient of q^{n} beyond precision O(q^{self.abs_prec})")
        if n < self.offset:
            return self.ring.zero()
        return self.coeffs[n - self.offset]

    def coeff_list(self, lo: int, hi: int) -> list:
        """Coefficients for exponents lo..hi-1."""
        return [self.coeff(n) for n in range(lo, hi)]

    def _same(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            raise TypeError("expected a QSeries")
        if other.ring != self.ring:
            raise ValueError("series over different rings")
        return other

    def __add__(self, other):
        o = self._same(other)
        P = min(self.abs_prec, o.abs_prec)
        lo = min(self.offset, o.offset, P)
        zero = self.ring.zero()

        def at(s, n):
            if n < s.offset or n >= s.abs_prec:
                return zero
            return s.coeffs[n - s.offset]

        return QSeries(self.ring, lo,
                       [at(self, n) + at(o, n) for n in range(lo, P)],
                       _combine_weight(self.weight, o.weight))

    def __sub__(self, other):
        return self + (-self._same(other))

    def __neg__(self):
        return QSeries(self.ring, self.offset, [-c for c in self.coeffs],
                       self.weight)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        o = self._same(other)
        P = min(self.offset + o.abs_prec, o.offset + self.abs_prec)
        lo = self.offset + o.offset
        n_out = min(len(self.coeffs), len(o.coeffs))
        w = (self.weight + o.weight
             if self.weight is not None and o.weight is not None else None)
        if n_out <= 0:
            return QSeries(self.ring, P, [], w)
        zero = self.ring.zero()
        out = [zero] * n_out
        for i, a in enumerate(self.coeffs):
            if not a or i >= n_out:
                continue
            top = min(n_out - i, len(o.coeffs))
            for j in range(top):
                b = o.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return QSeries(self.ring, lo, out, w)

    __rmul__ = __mul__

    def scale(self, c) -> "QSeries":
        c = self.ring.coerce(c)
        return QSeries(self.ring, self.offset, [a * c for a in self.coeffs],
                       self.weight)

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k (exact)."""
        return QSeries(self.ring, self.offset + k, self.coeffs, self.weight)

    def truncate(self, new_abs_prec: int) -> "QSeries":
        if new_abs_prec >= self.abs_prec:
            return self
        keep = max(0, new_abs_prec - self.offset)
        return QSeries(self.ring, min(self.offset, new_abs_prec),
                       self.coeffs[:keep], self.weight)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            n = max(1, len(self.coeffs))
            return QSeries(self.ring, 0,
                           [self.ring.one()] + [self.ring.zero()] * (n - 1),
                           0 if self.weight is not None else None)
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> "QSeries":
        """Reciprocal; the coefficient at the valuation must be a unit.
        Result has offset -valuation and abs_prec reduced by 2*valuation."""
        if not self.coeffs:
            raise ValueError("cannot invert a series that is 0 to precision")
        lead = self.coeffs[0]
        if not self.ring.is_unit(lead):
            raise ValueError("leading series coefficient is not a unit")
        v = self.offset
        u = self.coeffs
        L = len(u)
        inv0 = self.ring.inv(lead)
        out = [inv0] + [self.ring.zero()] * (L - 1)
        for n in range(1, L):
            s = None
            top = min(n, L - 1)
            for k in range(1, top + 1):
                if u[k]:
                    term = u[k] * out[n - k]
                    s = term if s is None else s + term
            if s is not None:
                out[n] = -(inv0 * s)
        w = -self.weight if self.weight is not None else None
        return QSeries(self.ring, -v, out, w)

    def derivative(self) -> "QSeries":
        out = []
        for i, c in enumerate(self.coeffs):
            n = self.offset + i
            out.append(c * self.ring.from_int(n))
        return QSeries(self.ring, self.offset - 1, out, None)

    def integrate(self) -> "QSeries":
        """Termwise antiderivative with zero constant; every exponent+1
        must be invertible in the ring."""
        out = []
        for i, c in enumerate(self.coeffs):
            n = self.offset + i + 1
            nf = self.ring.from_int(n)
            if not self.ring.is_unit(nf):
                raise ValueError(f"cannot divide by {n} in {self.ring}")
            out.append(c * self.ring.inv(nf))
        return QSeries(self.ring, self.offset + 1, out, None)

    def compose(self, g: "QSeries") -> "QSeries":
        """self(g); g must have no constant term, self no negative powers."""
        g = self._same(g)
        if self.offset < 0:
            raise ValueError("composition base has negative exponents")
        if g.coeffs and g.offset < 1:
            raise ValueError("composition argument has a constant term")
        vg = g.offset if g.coeffs else max(1, g.abs_prec)
        P = min(vg * self.abs_prec, g.abs_prec)
        if P <= 0:
            return QSeries(self.ring, 0, [])
        zero = self.ring.zero()
        fl = [self.coeff(n) for n in range(min(self.abs_prec, P))]
        gl = [zero] * P
        for i, c in enumerate(g.coeffs):
            n = g.offset + i
            if 0 <= n < P:
                gl[n] = c
        out = _compose_lists(self.ring, fl, gl, P)
        return QSeries(self.ring, 0, out)

    def revert(self) -> "QSeries":
        """Compositional inverse of a series t*(unit) + ..., offset exactly 1.

        Newton iteration with precision doubling; abs_prec is preserved.
        """
        if not self.coeffs or self.offset != 1:
            raise ValueError("reversion needs valuation exactly 1")
        if not self.ring.is_unit(self.coeffs[0]):
            raise ValueError("linear coefficient is not a unit")
        ring = self.ring
        P = self.abs_prec
        zero, one = ring.zero(), ring.one()
        fl = [zero] + list(self.coeffs)
        fl = fl[:P] + [zero] * (P - len(fl))
        fp = [fl[k + 1] * ring.from_int(k + 1) for k in range(P - 1)]
        g = [zero, ring.inv(self.coeffs[0])] + [zero] * (P - 2)
        prec = 2
        while prec < P:
            prec = min(2 * prec, P)
            fg = _compose_lists(ring, fl[:prec], g[:prec], prec)
            fg[1] = fg[1] - one
            fpg = _compose_lists(ring, fp[:prec], g[:prec], prec)
            corr = _mul_lists(ring, fg, _inv_list(ring, fpg, prec), prec)
            g = [g[i] - corr[i] for i in range(prec)] + \
                [zero] * (P - prec)
        return QSeries(ring, 1, g[1:P])

    def map_coeffs(self, fn, new_ring, weight="keep") -> "QSeries":
        w = self.weight if weight == "keep" else weight
        return QSeries(new_ring, self.offset,
                       [fn(c) for c in self.coeffs], w)

    def reduce_mod(self, field) -> "QSeries":
        """Reduce a rational series mod p; raises ValueError when any
        denominator is divisible by p."""
        def red(c: Fraction):
            if c.denominator % field.p == 0:
                raise ValueError(
                    f"denominator {c.denominator} divisible by {field.p}")
            return field.elem(c.numerator * pow(c.denominator, -1, field.p))
        return self.map_coeffs(red, field)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (other.ring == self.ring and other.offset == self.offset
                and other.coeffs == self.coeffs)

    def __repr__(self):
        parts = []
        shown = 0
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            n = self.offset + i
            if n == 0:
                parts.append(c_str(c))
            else:
                e = "q" if n == 1 else f"q^{n}"
                parts.append(e if c == self.ring.one() else f"{c_str(c)}*{e}")
            shown += 1
            if shown >= 8:
                parts.append("...")
                break
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(q^{self.abs_prec})"


# --- raw list kernels (exponents 0..P-1, fixed working precision P) ---


def _mul_lists(ring, a, b, P):
    zero = ring.zero()
    out = [zero] * P
    for i, ai in enumerate(a):
        if not ai or i >= P:
            continue
        top = min(P - i, len(b))
        for j in range(top):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def _inv_list(ring, u, P):
    inv0 = ring.inv(u[0])
    zero = ring.zero()
    out = [inv0] + [zero] * (P - 1)
    for n in range(1, P):
        s = None
        top = min(n, len(u) - 1)
        for k in range(1, top + 1):
            if u[k]:
                term = u[k] * out[n - k]
                s = term if s is None else s + term
        if s is not None:
            out[n] = -(inv0 * s)
    return out


def _compose_horner(ring, fl, gl, P):
    zero = ring.zero()
    acc = [zero] * P
    for c in reversed(fl):
        acc = _mul_lists(ring, acc, gl, P)
        acc[0] = acc[0] + c
    return acc


def _compose_bk(ring, fl, gl, P):
    # f(g) by blocks: f = sum_i (sum_{k<r} f[ir+k] g^k) (g^r)^i
    zero = ring.zero()
    r = max(2, math.isqrt(len(fl)) + 1)
    pows = [[ring.one()] + [zero] * (P - 1), list(gl) + [zero] * (P - len(gl))]
    for _ in range(r - 2):
        pows.append(_mul_lists(ring, pows[-1], gl, P))
    gr = _mul_lists(ring, pows[-1], gl, P)
    acc = [zero] * P
    nblocks = (len(fl) + r - 1) // r
    for bi in range(nblocks - 1, -1, -1):
        acc = _mul_lists(ring, acc, gr, P)
        for k in range(r):
            idx = bi * r + k
            if idx < len(fl) and fl[idx]:
                c = fl[idx]
                pk = pows[k]
                for m in range(P):
                    if pk[m]:
                        acc[m] = acc[m] + c * pk[m]
    return acc


def _compose_lists(ring, fl, gl, P):
    if len(fl) <= _BK_THRESHOLD:
        return _compose_horner(ring, fl, gl, P)
    return _compose_bk(ring, fl, gl, P)


def series_inverse(s: QSeries) -> QSeries:
    return s.inverse()


def series_compose(f: QSeries, g: QSeries) -> QSeries:
    return f.compose(g)


def series_revert(f: QSeries) -> QSeries:
    return f.revert()
