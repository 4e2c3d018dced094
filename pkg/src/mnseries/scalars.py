"""Exact coefficient fields: rationals, prime fields F_p, and quadratic fields Q(sqrt m).

Everything is exact; no floating point is used anywhere. The three field kinds
are closed, and the series/crossed machinery is written against the small
contract the field objects expose: zero/one, arithmetic, text parsing, random
sampling, and a named finite automorphism set (identity everywhere, plus
conjugation on quadratic fields).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class FieldMismatchError(ValueError):
    """Two scalars from different fields met in a single operation."""


# The rational scalar type is stdlib Fraction: reduced, positive denominator,
# arbitrary precision. str() already yields the "p/q" form with q omitted at 1.
Rational = Fraction

_RAT_RE = re.compile(r"^-?\d+(?:/\d+)?$")
_MOD_RE = re.compile(r"^(\d+) mod (\d+)$")
_QUAD_RE = re.compile(r"^(-?\d+(?:/\d+)?)([+-])(\d+(?:/\d+)?)\*sqrt\((-?\d+)\)$")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RAT_RE.match(text):
        raise ValueError(f"not a rational in p/q form: {text!r}")
    value = Fraction(text)
    return value


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    # deterministic Miller-Rabin, valid far beyond any modulus used here
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_square_free(m: int) -> bool:
    m = abs(m)
    if m == 0:
        return False
    p = 2
    while p * p <= m:
        if m % (p * p) == 0:
            return False
        while m % p == 0:
            m //= p
        p += 1
    return True


@dataclass(frozen=True, slots=True)
class PrimeFieldElement:
    """Residue in [0, p); arithmetic is field arithmetic mod p."""

    residue: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.modulus != self.modulus:
                raise FieldMismatchError(
                    f"mixed prime fields F_{self.modulus} and F_{other.modulus}"
                )
            return other
        if isinstance(other, int):
            return PrimeFieldElement(other, self.modulus)
        raise FieldMismatchError(f"cannot mix F_{self.modulus} with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return PrimeFieldElement(self.residue + other.residue, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return PrimeFieldElement(self.residue - other.residue, self.modulus)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return PrimeFieldElement(self.residue * other.residue, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.residue == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.modulus}")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.modulus)

    def __pow__(self, k: int):
        if self.residue == 0 and k < 0:
            raise ZeroDivisionError(f"0 has no negative power in F_{self.modulus}")
        return PrimeFieldElement(pow(self.residue, k, self.modulus), self.modulus)

    def inverse(self) -> "PrimeFieldElement":
        if self.residue == 0:
            raise ZeroDivisionError(f"0 is not invertible in F_{self.modulus}")
        return PrimeFieldElement(pow(self.residue, -1, self.modulus), self.modulus)

    def __bool__(self):
        return self.residue != 0

    def __str__(self):
        return f"{self.residue} mod {self.modulus}"


@dataclass(frozen=True, slots=True)
class QuadraticFieldElement:
    """u + v*sqrt(m) with exact rational parts; m square-free, not 0 or 1."""

    u: Fraction
    v: Fraction
    radicand: int

    def __post_init__(self):
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "v", Fraction(self.v))

    def _coerce(self, other):
        if isinstance(other, QuadraticFieldElement):
            if other.radicand != self.radicand:
                raise FieldMismatchError(
                    f"mixed quadratic fields sqrt({self.radicand}) and sqrt({other.radicand})"
                )
            return other
        if isinstance(other, int):
            return QuadraticFieldElement(Fraction(other), Fraction(0), self.radicand)
        raise FieldMismatchError(
            f"cannot mix Q(sqrt {self.radicand}) with {type(other).__name__}"
        )

    def __add__(self, other):
        other = self._coerce(other)
        return QuadraticFieldElement(self.u + other.u, self.v + other.v, self.radicand)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return QuadraticFieldElement(self.u - other.u, self.v - other.v, self.radicand)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        m = self.radicand
        return QuadraticFieldElement(
            self.u * other.u + self.v * other.v * m,
            self.u * other.v + other.u * self.v,
            m,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return QuadraticFieldElement(-self.u, -self.v, self.radicand)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadraticFieldElement(Fraction(1), Fraction(0), self.radicand)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "QuadraticFieldElement":
        return QuadraticFieldElement(self.u, -self.v, self.radicand)

    def inverse(self) -> "QuadraticFieldElement":
        # norm u^2 - m v^2 vanishes only at 0 because m is square-free, not 0 or 1
        norm = self.u * self.u - self.v * self.v * self.radicand
        if norm == 0:
            raise ZeroDivisionError(f"0 is not invertible in Q(sqrt {self.radicand})")
        return QuadraticFieldElement(self.u / norm, -self.v / norm, self.radicand)

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    def __str__(self):
        if self.v >= 0:
            return f"{self.u}+{self.v}*sqrt({self.radicand})"
        return f"{self.u}-{-self.v}*sqrt({self.radicand})"


@dataclass(frozen=True)
class RationalField:
    @property
    def name(self) -> str:
        return "Q"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def contains(self, x) -> bool:
        return isinstance(x, Fraction)

    def parse(self, text: str):
        return parse_rational(text)

    def format(self, x) -> str:
        return str(x)

    automorphism_tags = ("id",)

    def apply(self, tag: str, x):
        if tag != "id":
            raise ValueError(f"unknown automorphism {tag!r} of Q")
        return x

    def compose(self, tag1: str, tag2: str) -> str:
        return "id"

    def sample(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 6))

    def sample_nonzero(self, rng):
        while True:
            x = self.sample(rng)
            if x:
                return x

    def panel(self):
        return (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-3, 2))


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    @property
    def name(self) -> str:
        return f"Fp:{self.p}"

    @property
    def zero(self):
        return PrimeFieldElement(0, self.p)

    @property
    def one(self):
        return PrimeFieldElement(1, self.p)

    def from_int(self, n: int):
        return PrimeFieldElement(n, self.p)

    def contains(self, x) -> bool:
        return isinstance(x, PrimeFieldElement) and x.modulus == self.p

    def parse(self, text: str):
        m = _MOD_RE.match(text.strip())
        if not m or int(m.group(2)) != self.p:
            raise ValueError(f"not an element of F_{self.p}: {text!r}")
        return PrimeFieldElement(int(m.group(1)), self.p)

    def format(self, x) -> str:
        return str(x)

    automorphism_tags = ("id",)

    def apply(self, tag: str, x):
        if tag != "id":
            raise ValueError(f"unknown automorphism {tag!r} of F_{self.p}")
        return x

    def compose(self, tag1: str, tag2: str) -> str:
        return "id"

    def sample(self, rng):
        return PrimeFieldElement(rng.randrange(self.p), self.p)

    def sample_nonzero(self, rng):
        return PrimeFieldElement(rng.randrange(1, self.p), self.p)

    def panel(self):
        return tuple(PrimeFieldElement(r, self.p) for r in range(min(self.p, 5)))


@dataclass(frozen=True)
class QuadraticField:
    radicand: int

    def __post_init__(self):
        if self.radicand in (0, 1) or not is_square_free(self.radicand):
            raise ValueError(f"radicand must be square-free and not 0 or 1: {self.radicand}")

    @property
    def name(self) -> str:
        return f"Qsqrt:{self.radicand}"

    @property
    def zero(self):
        return QuadraticFieldElement(Fraction(0), Fraction(0), self.radicand)

    @property
    def one(self):
        return QuadraticFieldElement(Fraction(1), Fraction(0), self.radicand)

    @property
    def sqrt(self):
        return QuadraticFieldElement(Fraction(0), Fraction(1), self.radicand)

    def from_int(self, n: int):
        return QuadraticFieldElement(Fraction(n), Fraction(0), self.radicand)

    def from_parts(self, u, v):
        return QuadraticFieldElement(Fraction(u), Fraction(v), self.radicand)

    def contains(self, x) -> bool:
        return isinstance(x, QuadraticFieldElement) and x.radicand == self.radicand

    def parse(self, text: str):
        m = _QUAD_RE.match(text.strip())
        if not m or int(m.group(4)) != self.radicand:
            raise ValueError(f"not an element of Q(sqrt {self.radicand}): {text!r}")
        u = Fraction(m.group(1))
        v = Fraction(m.group(3))
        if m.group(2) == "-":
            v = -v
        return QuadraticFieldElement(u, v, self.radicand)

    def format(self, x) -> str:
        return str(x)

    automorphism_tags = ("id", "conj")

    def apply(self, tag: str, x):
        if tag == "id":
            return x
        if tag == "conj":
            return x.conjugate()
        raise ValueError(f"unknown automorphism {tag!r} of Q(sqrt {self.radicand})")

    def compose(self, tag1: str, tag2: str) -> str:
        return "id" if tag1 == tag2 else "conj"

    def sample(self, rng):
        return QuadraticFieldElement(
            Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
            Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
            self.radicand,
        )

    def sample_nonzero(self, rng):
        while True:
            x = self.sample(rng)
            if x:
                return x

    def panel(self):
        one = self.one
        root = self.sqrt
        return (self.zero, one, -one, root, one + root, self.from_parts(Fraction(1, 2), Fraction(-2)))


QQ = RationalField()


def field_of(x):
    """The field object a scalar value belongs to."""
    if isinstance(x, Fraction):
        return QQ
    if isinstance(x, PrimeFieldElement):
        return PrimeField(x.modulus)
    if isinstance(x, QuadraticFieldElement):
        return QuadraticField(x.radicand)
    if isinstance(x, int):
        return QQ
    raise TypeError(f"not a scalar: {x!r}")


def field_from_spec(spec: str):
    """Resolve a field spec string: "Q", "Fp:<p>" or "Qsqrt:<m>"."""
    spec = spec.strip()
    if spec == "Q":
        return QQ
    if spec.startswith("Fp:"):
        return PrimeField(int(spec[3:]))
    if spec.startswith("Qsqrt:"):
        return QuadraticField(int(spec[6:]))
    raise ValueError(f"unknown field spec {spec!r}")


def parse_scalar(text: str):
    """Parse a scalar, inferring its field from the syntax."""
    text = text.strip()
    m = _MOD_RE.match(text)
    if m:
        return PrimeField(int(m.group(2))).parse(text)
    m = _QUAD_RE.match(text)
    if m:
        return QuadraticField(int(m.group(4))).parse(text)
    return parse_rational(text)


def field_arithmetic(a, b, operation: str):
    """Exact field arithmetic on two scalars of the same field."""
    if isinstance(a, int):
        a = Fraction(a)
    if isinstance(b, int):
        b = Fraction(b)
    if field_of(a) != field_of(b):
        raise FieldMismatchError(
            f"operands lie in different fields: {field_of(a).name} vs {field_of(b).name}"
        )
    if operation == "add":
        return a + b
    if operation == "sub":
        return a - b
    if operation == "mul":
        return a * b
    if operation == "div":
        if not b:
            raise ZeroDivisionError(f"division by zero in {field_of(a).name}")
        return a / b
    raise ValueError(f"unknown operation {operation!r}")


def rational_power(r: Fraction, k: int) -> Fraction:
    """Exact r**k for rational r and integer k."""
    r = Fraction(r)
    if r == 0 and k < 0:
        raise ZeroDivisionError("0 has no negative power")
    return r**k
