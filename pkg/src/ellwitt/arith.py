"""Prime-field and quadratic-extension arithmetic for odd primes p > 3.

Field elements carry their field context and never coerce across
moduli: an operation mixing two different contexts raises ValueError
instead of guessing.  The quadratic extension F_{p^2} is realized as
F_p[x]/(g) with g(x) = x^2 + g1*x + g0 monic irreducible, selected
deterministically per prime by fq2_context() so that serialized data is
reproducible: x^2 + 1 when p = 3 mod 4, otherwise x^2 - n with n the
smallest quadratic non-residue.

All values are immutable; field and extension contexts can be shared
freely across workers.
"""

from __future__ import annotations

from functools import lru_cache

__all__ = [
    "is_prime",
    "PrimeField",
    "FpElem",
    "Fq2Ctx",
    "Fq2Elem",
    "is_quadratic_residue",
    "sqrt_mod",
    "has_sqrt3",
    "fq2_context",
    "frobenius_fq2",
]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n below 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field F_p for an odd prime p > 3.

    Also serves as the coefficient-ring context consumed by Poly and
    QSeries: zero/one/from_int/coerce/is_unit/inv.
    """

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not is_prime(p) or p <= 3:
            raise ValueError(f"modulus must be a prime > 3, got {p}")
        self.p = p

    @property
    def size(self) -> int:
        return self.p

    def elem(self, value: int) -> "FpElem":
        return FpElem(value % self.p, self)

    # ring protocol
    def zero(self) -> "FpElem":
        return FpElem(0, self)

    def one(self) -> "FpElem":
        return FpElem(1, self)

    def from_int(self, n: int) -> "FpElem":
        return FpElem(n % self.p, self)

    def coerce(self, c) -> "FpElem":
        if isinstance(c, FpElem):
            if c.field != self:
                raise ValueError(f"element of {c.field} used in {self}")
            return c
        if isinstance(c, int):
            return self.from_int(c)
        raise TypeError(f"cannot coerce {type(c).__name__} into {self}")

    def is_unit(self, a: "FpElem") -> bool:
        return self.coerce(a).value != 0

    def inv(self, a: "FpElem") -> "FpElem":
        a = self.coerce(a)
        return FpElem(pow(a.value, -1, self.p), self)

    def elements(self):
        for v in range(self.p):
            yield FpElem(v, self)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F_p", self.p))

    def __repr__(self):
        return f"F_{self.p}"


class FpElem:
    """A residue in F_p, pinned to its field."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = value % field.p
        self.field = field

    def _same(self, other) -> "FpElem":
        if isinstance(other, FpElem):
            if other.field != self.field:
                raise ValueError(
                    f"mixed moduli: {self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return FpElem(self.value + o.value, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return FpElem(self.value - o.value, self.field)

    def __rsub__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return FpElem(o.value - self.value, self.field)

    def __mul__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return FpElem(self.value * o.value, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElem(-self.value, self.field)

    def __pow__(self, e: int):
        return FpElem(pow(self.value, e, self.field.p), self.field)

    def __truediv__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return FpElem(self.value * pow(o.value, -1, self.field.p), self.field)

    def inverse(self) -> "FpElem":
        return FpElem(pow(self.value, -1, self.field.p), self.field)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return other.field == self.field and other.value == self.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"


def is_quadratic_residue(a: FpElem) -> bool:
    """Euler criterion a^((p-1)/2) = 1.  Zero is rejected: it is neither
    a residue nor a non-residue under this contract."""
    if a.value == 0:
        raise ValueError("is_quadratic_residue(0) is undefined")
    p = a.field.p
    return pow(a.value, (p - 1) // 2, p) == 1


def sqrt_mod(a: FpElem) -> FpElem:
    """Square root of a residue, canonical representative min(r, p-r).

    a = 0 returns 0; non-residues raise ValueError.  Tonelli-Shanks,
    with the p = 3 mod 4 shortcut.
    """
    p = a.field.p
    if a.value == 0:
        return a.field.zero()
    if not is_quadratic_residue(a):
        raise ValueError(f"{a.value} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        r = pow(a.value, (p + 1) // 4, p)
    else:
        # Tonelli-Shanks: write p-1 = q*2^s with q odd
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c = s, pow(z, q, p)
        t, r = pow(a.value, q, p), pow(a.value, (q + 1) // 2, p)
        while t != 1:
            t2, i = t * t % p, 1
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return a.field.elem(min(r, p - r))


def has_sqrt3(p: int) -> bool:
    """Whether 3 is a square mod p (p > 3 prime).  Classically equivalent
    to p = +-1 mod 12, which the acceptance suite checks exhaustively."""
    if p <= 3 or not is_prime(p):
        raise ValueError(f"p must be a prime > 3, got {p}")
    return is_quadratic_residue(PrimeField(p).elem(3))


class Fq2Ctx:
    """The field F_{p^2} = F_p[x]/(g), g(x) = x^2 + g1*x + g0 irreducible.

    Elements are a + b*xbar.  Irreducibility is certified at construction
    by the discriminant g1^2 - 4*g0 being a non-residue.
    """

    __slots__ = ("p", "g1", "g0", "field")

    def __init__(self, p: int, g1: int, g0: int):
        self.field = PrimeField(p)
        self.p = p
        self.g1 = g1 % p
        self.g0 = g0 % p
        disc = (self.g1 * self.g1 - 4 * self.g0) % p
        if disc == 0 or pow(disc, (p - 1) // 2, p) == 1:
            raise ValueError(
                f"x^2 + {self.g1}x + {self.g0} is reducible over F_{p}")

    @property
    def size(self) -> int:
        return self.p * self.p

    def elem(self, a: int, b: int = 0) -> "Fq2Elem":
        return Fq2Elem(a % self.p, b % self.p, self)

    def embed(self, x) -> "Fq2Elem":
        """Image of an F_p element (or int) under F_p -> F_{p^2}."""
        if isinstance(x, FpElem):
            if x.field.p != self.p:
                raise ValueError(f"cannot embed {x.field} into {self}")
            return Fq2Elem(x.value, 0, self)
        return Fq2Elem(x % self.p, 0, self)

    # ring protocol
    def zero(self) -> "Fq2Elem":
        return Fq2Elem(0, 0, self)

    def one(self) -> "Fq2Elem":
        return Fq2Elem(1, 0, self)

    def from_int(self, n: int) -> "Fq2Elem":
        return Fq2Elem(n % self.p, 0, self)

    def coerce(self, c) -> "Fq2Elem":
        if isinstance(c, Fq2Elem):
            if c.ctx != self:
                raise ValueError(f"element of {c.ctx} used in {self}")
            return c
        if isinstance(c, FpElem):
            return self.embed(c)
        if isinstance(c, int):
            return self.from_int(c)
        raise TypeError(f"cannot coerce {type(c).__name__} into {self}")

    def is_unit(self, z: "Fq2Elem") -> bool:
        z = self.coerce(z)
        return z.a != 0 or z.b != 0

    def inv(self, z: "Fq2Elem") -> "Fq2Elem":
        return self.coerce(z).inverse()

    def elements(self):
        for a in range(self.p):
            for b in range(self.p):
                yield Fq2Elem(a, b, self)

    def __eq__(self, other):
        return (isinstance(other, Fq2Ctx) and other.p == self.p
                and other.g1 == self.g1 and other.g0 == self.g0)

    def __hash__(self):
        return hash(("F_p2", self.p, self.g1, self.g0))

    def __repr__(self):
        return f"F_{self.p}^2[x^2+{self.g1}x+{self.g0}]"


class Fq2Elem:
    """a + b*xbar in F_p[x]/(g); immutable."""

    __slots__ = ("a", "b", "ctx")

    def __init__(self, a: int, b: int, ctx: Fq2Ctx):
        self.a = a % ctx.p
        self.b = b % ctx.p
        self.ctx = ctx

    def _same(self, other) -> "Fq2Elem":
        if isinstance(other, Fq2Elem):
            if other.ctx != self.ctx:
                raise ValueError(f"mixed contexts: {self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (FpElem, int)):
            return self.ctx.coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return Fq2Elem(self.a + o.a, self.b + o.b, self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return Fq2Elem(self.a - o.a, self.b - o.b, self.ctx)

    def __rsub__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return Fq2Elem(o.a - self.a, o.b - self.b, self.ctx)

    def __mul__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        p, g1, g0 = self.ctx.p, self.ctx.g1, self.ctx.g0
        bd = self.b * o.b
        return Fq2Elem((self.a * o.a - g0 * bd) % p,
                       (self.a * o.b + self.b * o.a - g1 * bd) % p,
                       self.ctx)

    __rmul__ = __mul__

    def __neg__(self):
        return Fq2Elem(-self.a, -self.b, self.ctx)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def norm(self) -> FpElem:
        """z * conj(z), an element of F_p."""
        p, g1, g0 = self.ctx.p, self.ctx.g1, self.ctx.g0
        n = (self.a * self.a - g1 * self.a * self.b
             + g0 * self.b * self.b) % p
        return self.ctx.field.elem(n)

    def conj(self) -> "Fq2Elem":
        """Galois conjugate = z^p (Frobenius)."""
        g1 = self.ctx.g1
        return Fq2Elem(self.a - self.b * g1, -self.b, self.ctx)

    def inverse(self) -> "Fq2Elem":
        n = self.norm().value
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in F_{p^2}")
        ninv = pow(n, -1, self.ctx.p)
        c = self.conj()
        return Fq2Elem(c.a * ninv, c.b * ninv, self.ctx)

    @property
    def in_prime_field(self) -> bool:
        return self.b == 0

    def to_fp(self) -> FpElem:
        if self.b != 0:
            raise ValueError(f"{self!r} is not in the prime field")
        return self.ctx.field.elem(self.a)

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        if isinstance(other, Fq2Elem):
            return (other.ctx == self.ctx and other.a == self.a
                    and other.b == self.b)
        if isinstance(other, (FpElem, int)):
            o = self.ctx.coerce(other)
            return o.a == self.a and o.b == self.b
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.a, self.b))

    def __repr__(self):
        if self.b == 0:
            return f"{self.a} (in F_{self.ctx.p}^2)"
        return f"{self.a}+{self.b}x (in F_{self.ctx.p}^2)"


@lru_cache(maxsize=None)
def fq2_context(p: int) -> Fq2Ctx:
    """Deterministic F_{p^2} model: x^2 + 1 when p = 3 mod 4, otherwise
    x^2 - n with n the smallest quadratic non-residue (ascending scan)."""
    if p <= 3 or not is_prime(p):
        raise ValueError(f"p must be a prime > 3, got {p}")
    if p % 4 == 3:
        return Fq2Ctx(p, 0, 1)
    n = 2
    while pow(n, (p - 1) // 2, p) != p - 1:
        n += 1
    return Fq2Ctx(p, 0, -n % p)


def frobenius_fq2(z: Fq2Elem) -> Fq2Elem:
    """z -> z^p, computed as the conjugate a - b*g1 - b*xbar."""
    return z.conj()
