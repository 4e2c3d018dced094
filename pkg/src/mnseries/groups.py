"""Concrete bi-ordered groups with exact canonical forms.

Each built-in group ships one fixed total order satisfying the two-sided
invariance law (g < h implies zg < zh and gz < hz), a designated positive
generating monoid with an additive weight, membership oracles for the named
subgroups of its convex chain, and a convex-jump classification.

Canonical element strings: "H(a,b,c)", "B(p/q,n)@r=p'/q'", "W({i:v,...},n)"
with indices ascending, "Z(n)" and "Z2(a,b)" for the lattice groups.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .scalars import parse_rational


class GroupMismatchError(ValueError):
    """Two elements of different group instances met in one operation."""


class NotInMonoidError(ValueError):
    """Element lies outside the group's designated graded monoid."""


def _cmp(a, b) -> int:
    return (a > b) - (a < b)


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True, slots=True)
class HeisenbergElement:
    """Upper unitriangular 3x3 integer matrix with entries (1,2)=a, (2,3)=b, (1,3)=c."""

    a: int
    b: int
    c: int

    def __mul__(self, other):
        if not isinstance(other, HeisenbergElement):
            raise GroupMismatchError(f"cannot multiply Heisenberg element by {type(other).__name__}")
        return HeisenbergElement(
            self.a + other.a, self.b + other.b, self.c + other.c + self.a * other.b
        )

    def inverse(self):
        return HeisenbergElement(-self.a, -self.b, self.a * self.b - self.c)

    def order_key(self):
        return (self.a, self.b, self.c)

    def __str__(self):
        return f"H({self.a},{self.b},{self.c})"


@dataclass(frozen=True, slots=True)
class SemidirectElement:
    """Element (h, n) of H x| C where the generator of C scales H by ratio."""

    h: Fraction
    n: int
    ratio: Fraction

    def __post_init__(self):
        object.__setattr__(self, "h", Fraction(self.h))
        object.__setattr__(self, "ratio", Fraction(self.ratio))

    def _check(self, other):
        if not isinstance(other, SemidirectElement) or other.ratio != self.ratio:
            raise GroupMismatchError("cannot mix semidirect-product groups with different ratios")

    def __mul__(self, other):
        self._check(other)
        return SemidirectElement(self.h + self.ratio**self.n * other.h, self.n + other.n, self.ratio)

    def inverse(self):
        return SemidirectElement(-(self.ratio ** (-self.n)) * self.h, -self.n, self.ratio)

    def order_key(self):
        return (self.n, self.h)

    def __str__(self):
        h = self.h
        r = self.ratio
        return f"B({h.numerator}/{h.denominator},{self.n})@r={r.numerator}/{r.denominator}"


@dataclass(frozen=True, slots=True)
class WreathElement:
    """Element (f, n) of the restricted wreath product Z wr Z.

    cells holds the finitely supported map f as (index, value) pairs with
    ascending indices and no zero values.
    """

    cells: tuple
    n: int

    @staticmethod
    def from_map(mapping, n: int) -> "WreathElement":
        cells = tuple(sorted((i, v) for i, v in mapping.items() if v != 0))
        return WreathElement(cells, n)

    def as_map(self) -> dict:
        return dict(self.cells)

    def __mul__(self, other):
        if not isinstance(other, WreathElement):
            raise GroupMismatchError(f"cannot multiply wreath element by {type(other).__name__}")
        merged = self.as_map()
        for i, v in other.cells:
            j = i + self.n
            w = merged.get(j, 0) + v
            if w:
                merged[j] = w
            else:
                merged.pop(j, None)
        return WreathElement.from_map(merged, self.n + other.n)

    def inverse(self):
        return WreathElement(
            tuple(sorted((i - self.n, -v) for i, v in self.cells)), -self.n
        )

    def compare_cells(self, other) -> int:
        # sign of the difference at the largest index where the maps differ
        mine = self.as_map()
        theirs = other.as_map()
        diff = [i for i in set(mine) | set(theirs) if mine.get(i, 0) != theirs.get(i, 0)]
        if not diff:
            return 0
        top = max(diff)
        return _cmp(mine.get(top, 0), theirs.get(top, 0))

    def order_key(self):
        raise NotImplementedError("wreath order is not a plain tuple order")

    def __str__(self):
        inner = ",".join(f"{i}:{v}" for i, v in self.cells)
        return f"W({{{inner}}},{self.n})"


@dataclass(frozen=True, slots=True)
class LatticeElement:
    """Element of Z^rank, ordered lexicographically."""

    coords: tuple

    def __mul__(self, other):
        if not isinstance(other, LatticeElement) or len(other.coords) != len(self.coords):
            raise GroupMismatchError("cannot mix lattice groups of different rank")
        return LatticeElement(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def inverse(self):
        return LatticeElement(tuple(-x for x in self.coords))

    def order_key(self):
        return self.coords

    def __str__(self):
        prefix = "Z" if len(self.coords) == 1 else f"Z{len(self.coords)}"
        return f"{prefix}({','.join(str(x) for x in self.coords)})"


# ---------------------------------------------------------------------------
# digit-sum membership for the semidirect monoid

def digit_sum_subset(q: Fraction, ratio: Fraction, max_exponent: int):
    """Exponents 0 <= e <= max_exponent with sum of distinct ratio**e equal to q.

    Returns the ascending exponent tuple or None. Searches top exponent first
    with interval pruning; for ratio >= 2 or ratio <= 1/2 the representation
    is unique and the search is effectively greedy.
    """
    if q < 0:
        return None
    if q == 0:
        return ()
    powers = [ratio**e for e in range(max_exponent + 1)]
    suffix = [Fraction(0)] * (max_exponent + 2)
    for e in range(max_exponent, -1, -1):
        suffix[e] = suffix[e + 1] + powers[e]
    # suffix[e] here is the sum of powers[e..max]; rebuild as sum of powers[0..e]
    prefix = [Fraction(0)] * (max_exponent + 1)
    running = Fraction(0)
    for e in range(max_exponent + 1):
        running += powers[e]
        prefix[e] = running

    def search(e, remaining, taken):
        if remaining == 0:
            return taken
        if e < 0 or remaining < 0 or remaining > prefix[e]:
            return None
        with_e = search(e - 1, remaining - powers[e], taken + (e,))
        if with_e is not None:
            return with_e
        return search(e - 1, remaining, taken)

    result = search(max_exponent, q, ())
    if result is None:
        return None
    return tuple(sorted(result))


# ---------------------------------------------------------------------------
# group contexts


@dataclass(frozen=True)
class Heisenberg:
    graded = True

    @property
    def id(self) -> str:
        return "heis"

    def identity(self):
        return HeisenbergElement(0, 0, 0)

    def contains(self, g) -> bool:
        return isinstance(g, HeisenbergElement)

    def multiply(self, g, h):
        return g * h

    def inverse(self, g):
        return g.inverse()

    def compare(self, g, h) -> int:
        if not (self.contains(g) and self.contains(h)):
            raise GroupMismatchError("Heisenberg comparison on foreign elements")
        return _cmp(g.order_key(), h.order_key())

    def monoid_generators(self):
        return (HeisenbergElement(1, 0, 0), HeisenbergElement(0, 1, 0))

    def in_monoid(self, g) -> bool:
        return self.contains(g) and g.a >= 0 and g.b >= 0 and 0 <= g.c <= g.a * g.b

    def weight(self, g) -> int:
        if not self.in_monoid(g):
            raise NotInMonoidError(f"{g} is outside the monoid generated by x, y")
        return g.a + g.b

    def format_element(self, g) -> str:
        return str(g)

    def parse_element(self, text: str):
        m = re.match(r"^H\((-?\d+),(-?\d+),(-?\d+)\)$", text.strip())
        if not m:
            raise ValueError(f"not a Heisenberg element: {text!r}")
        return HeisenbergElement(int(m.group(1)), int(m.group(2)), int(m.group(3)))

    def sample_element(self, rng):
        return HeisenbergElement(rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(-5, 5))

    def sample_monoid_element(self, rng, max_weight: int):
        w = rng.randint(0, max_weight)
        a = rng.randint(0, w)
        b = w - a
        return HeisenbergElement(a, b, rng.randint(0, a * b))

    def panel_elements(self):
        return tuple(
            HeisenbergElement(a, b, c)
            for a in (-1, 0, 1)
            for b in (-1, 0, 1)
            for c in (0, 1)
        )

    def subgroup_tags(self):
        return ("1", "center", "a=0")

    def subgroup_contains(self, tag: str, g) -> bool:
        if tag == "1":
            return g == self.identity()
        if tag == "center":
            return g.a == 0 and g.b == 0
        if tag == "a=0":
            return g.a == 0
        if tag == "G":
            return True
        raise ValueError(f"unknown Heisenberg subgroup {tag!r}")

    def sample_subgroup(self, tag: str, rng):
        if tag == "1":
            return self.identity()
        if tag == "center":
            return HeisenbergElement(0, 0, rng.randint(-5, 5))
        if tag == "a=0":
            return HeisenbergElement(0, rng.randint(-5, 5), rng.randint(-5, 5))
        if tag == "G":
            return self.sample_element(rng)
        raise ValueError(f"unknown Heisenberg subgroup {tag!r}")


@dataclass(frozen=True)
class SemidirectGroup:
    """H x| C with H the rationals reachable from the generators and C = <x>,
    where x z x^-1 = ratio * z for z in H. With ratio 2, t_value 1 this is
    the Baumslag-Solitar group B(1,2) in its standard ordering."""

    ratio: Fraction = Fraction(2)
    t_value: Fraction = Fraction(1)

    graded = True

    def __post_init__(self):
        object.__setattr__(self, "ratio", Fraction(self.ratio))
        object.__setattr__(self, "t_value", Fraction(self.t_value))
        if self.ratio <= 0:
            raise ValueError("ratio must be positive")
        if self.t_value == 0:
            raise ValueError("t_value must be nonzero")

    @property
    def id(self) -> str:
        if self.ratio == 2 and self.t_value == 1:
            return "bs12"
        return f"bs(r={self.ratio},t={self.t_value})"

    def identity(self):
        return SemidirectElement(Fraction(0), 0, self.ratio)

    def contains(self, g) -> bool:
        return isinstance(g, SemidirectElement) and g.ratio == self.ratio

    def multiply(self, g, h):
        return g * h

    def inverse(self, g):
        return g.inverse()

    def compare(self, g, h) -> int:
        if not (self.contains(g) and self.contains(h)):
            raise GroupMismatchError("semidirect comparison on foreign elements")
        return _cmp(g.order_key(), h.order_key())

    def element(self, h, n: int):
        return SemidirectElement(Fraction(h), n, self.ratio)

    def monoid_generators(self):
        return (self.element(self.t_value, 1), self.element(0, 1))

    def in_monoid(self, g) -> bool:
        if not self.contains(g) or g.n < 0:
            return False
        if g.h == 0:
            return True
        if g.n == 0:
            return False
        return digit_sum_subset(g.h / self.t_value, self.ratio, g.n - 1) is not None

    def weight(self, g) -> int:
        if not self.in_monoid(g):
            raise NotInMonoidError(f"{g} is outside the monoid generated by tx, x")
        return g.n

    def format_element(self, g) -> str:
        return str(g)

    def parse_element(self, text: str):
        m = re.match(r"^B\((-?\d+(?:/\d+)?),(-?\d+)\)(?:@r=(-?\d+(?:/\d+)?))?$", text.strip())
        if not m:
            raise ValueError(f"not a semidirect element: {text!r}")
        if m.group(3) is not None and parse_rational(m.group(3)) != self.ratio:
            raise ValueError(f"element ratio {m.group(3)} does not match group {self.id}")
        return self.element(parse_rational(m.group(1)), int(m.group(2)))

    def sample_element(self, rng):
        h = Fraction(rng.randint(-20, 20), self.ratio.numerator ** rng.randint(0, 2))
        return self.element(h * self.t_value, rng.randint(-3, 3))

    def sample_monoid_element(self, rng, max_weight: int):
        n = rng.randint(0, max_weight)
        g = self.identity()
        gens = self.monoid_generators()
        for _ in range(n):
            g = g * gens[rng.randint(0, 1)]
        return g

    def panel_elements(self):
        t = self.t_value
        out = []
        for h in (Fraction(0), t, -t, t / self.ratio.numerator):
            for n in (-1, 0, 1):
                out.append(self.element(h, n))
        return tuple(out)

    def subgroup_tags(self):
        return ("1", "base")

    def subgroup_contains(self, tag: str, g) -> bool:
        if tag == "1":
            return g == self.identity()
        if tag == "base":
            return g.n == 0
        if tag == "G":
            return True
        raise ValueError(f"unknown semidirect subgroup {tag!r}")

    def sample_subgroup(self, tag: str, rng):
        if tag == "1":
            return self.identity()
        if tag == "base":
            h = Fraction(rng.randint(-20, 20), self.ratio.numerator ** rng.randint(0, 2))
            return self.element(h * self.t_value, 0)
        if tag == "G":
            return self.sample_element(rng)
        raise ValueError(f"unknown semidirect subgroup {tag!r}")


@dataclass(frozen=True)
class WreathGroup:
    graded = True

    @property
    def id(self) -> str:
        return "wreath"

    def identity(self):
        return WreathElement((), 0)

    def contains(self, g) -> bool:
        return isinstance(g, WreathElement)

    def multiply(self, g, h):
        return g * h

    def inverse(self, g):
        return g.inverse()

    def compare(self, g, h) -> int:
        if not (self.contains(g) and self.contains(h)):
            raise GroupMismatchError("wreath comparison on foreign elements")
        by_n = _cmp(g.n, h.n)
        if by_n:
            return by_n
        return g.compare_cells(h)

    def element(self, mapping, n: int):
        return WreathElement.from_map(mapping, n)

    def monoid_generators(self):
        return (WreathElement(((0, 1),), 0), WreathElement((), 1))

    def in_monoid(self, g) -> bool:
        if not self.contains(g) or g.n < 0:
            return False
        return all(0 <= i <= g.n and v > 0 for i, v in g.cells)

    def weight(self, g) -> int:
        if not self.in_monoid(g):
            raise NotInMonoidError(f"{g} is outside the monoid generated by a, t")
        return sum(v for _, v in g.cells) + g.n

    def format_element(self, g) -> str:
        return str(g)

    def parse_element(self, text: str):
        m = re.match(r"^W\(\{(.*)\},(-?\d+)\)$", text.strip())
        if not m:
            raise ValueError(f"not a wreath element: {text!r}")
        mapping = {}
        body = m.group(1).strip()
        if body:
            for part in body.split(","):
                i, v = part.split(":")
                mapping[int(i)] = int(v)
        return WreathElement.from_map(mapping, int(m.group(2)))

    def sample_element(self, rng):
        mapping = {}
        for _ in range(rng.randint(0, 3)):
            mapping[rng.randint(-3, 3)] = rng.randint(-3, 3)
        return WreathElement.from_map(mapping, rng.randint(-3, 3))

    def sample_monoid_element(self, rng, max_weight: int):
        w = rng.randint(0, max_weight)
        g = self.identity()
        gens = self.monoid_generators()
        for _ in range(w):
            g = g * gens[rng.randint(0, 1)]
        return g

    def panel_elements(self):
        a = WreathElement(((0, 1),), 0)
        t = WreathElement((), 1)
        items = [self.identity(), a, t, a.inverse(), t.inverse(), a * t, t * a,
                 WreathElement(((1, -1),), 0), WreathElement(((-1, 2),), -1)]
        return tuple(items)

    def subgroup_tags(self):
        return ("1", "B0")

    def subgroup_contains(self, tag: str, g) -> bool:
        if tag == "1":
            return g == self.identity()
        if tag == "G":
            return True
        m = re.match(r"^B(-?\d+)$", tag)
        if not m:
            raise ValueError(f"unknown wreath subgroup {tag!r}")
        k = int(m.group(1))
        return g.n == 0 and all(i <= k for i, _ in g.cells)

    def sample_subgroup(self, tag: str, rng):
        if tag == "1":
            return self.identity()
        if tag == "G":
            return self.sample_element(rng)
        m = re.match(r"^B(-?\d+)$", tag)
        if not m:
            raise ValueError(f"unknown wreath subgroup {tag!r}")
        k = int(m.group(1))
        mapping = {}
        for _ in range(rng.randint(0, 3)):
            mapping[rng.randint(k - 3, k)] = rng.randint(-3, 3)
        return WreathElement.from_map(mapping, 0)


@dataclass(frozen=True)
class LatticeGroup:
    rank: int = 1

    graded = True

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be at least 1")

    @property
    def id(self) -> str:
        return "z" if self.rank == 1 else f"z{self.rank}"

    def identity(self):
        return LatticeElement((0,) * self.rank)

    def contains(self, g) -> bool:
        return isinstance(g, LatticeElement) and len(g.coords) == self.rank

    def multiply(self, g, h):
        return g * h

    def inverse(self, g):
        return g.inverse()

    def compare(self, g, h) -> int:
        if not (self.contains(g) and self.contains(h)):
            raise GroupMismatchError("lattice comparison on foreign elements")
        return _cmp(g.order_key(), h.order_key())

    def element(self, *coords):
        return LatticeElement(tuple(int(c) for c in coords))

    def monoid_generators(self):
        gens = []
        for i in range(self.rank):
            coords = [0] * self.rank
            coords[i] = 1
            gens.append(LatticeElement(tuple(coords)))
        return tuple(gens)

    def in_monoid(self, g) -> bool:
        return self.contains(g) and all(c >= 0 for c in g.coords)

    def weight(self, g) -> int:
        if not self.in_monoid(g):
            raise NotInMonoidError(f"{g} has a negative coordinate")
        return sum(g.coords)

    def format_element(self, g) -> str:
        return str(g)

    def parse_element(self, text: str):
        prefix = "Z" if self.rank == 1 else f"Z{self.rank}"
        m = re.match(rf"^{prefix}\((-?\d+(?:,-?\d+)*)\)$", text.strip())
        if not m:
            raise ValueError(f"not a rank-{self.rank} lattice element: {text!r}")
        coords = tuple(int(c) for c in m.group(1).split(","))
        if len(coords) != self.rank:
            raise ValueError(f"wrong arity for {prefix}: {text!r}")
        return LatticeElement(coords)

    def sample_element(self, rng):
        return LatticeElement(tuple(rng.randint(-6, 6) for _ in range(self.rank)))

    def sample_monoid_element(self, rng, max_weight: int):
        w = rng.randint(0, max_weight)
        cuts = sorted(rng.randint(0, w) for _ in range(self.rank - 1))
        parts = []
        prev = 0
        for c in cuts:
            parts.append(c - prev)
            prev = c
        parts.append(w - prev)
        return LatticeElement(tuple(parts))

    def panel_elements(self):
        if self.rank == 1:
            return tuple(LatticeElement((k,)) for k in (-2, -1, 0, 1, 2))
        vals = (-1, 0, 1)
        out = []
        for a in vals:
            for b in vals:
                out.append(LatticeElement((a, b) + (0,) * (self.rank - 2)))
        return tuple(out)

    def subgroup_tags(self):
        return ("1",) + tuple(f"axis>{i}" for i in range(1, self.rank))

    def subgroup_contains(self, tag: str, g) -> bool:
        if tag == "1":
            return g == self.identity()
        if tag == "G":
            return True
        m = re.match(r"^axis>(\d+)$", tag)
        if not m:
            raise ValueError(f"unknown lattice subgroup {tag!r}")
        k = int(m.group(1))
        return all(c == 0 for c in g.coords[:k])

    def sample_subgroup(self, tag: str, rng):
        if tag == "1":
            return self.identity()
        if tag == "G":
            return self.sample_element(rng)
        m = re.match(r"^axis>(\d+)$", tag)
        if not m:
            raise ValueError(f"unknown lattice subgroup {tag!r}")
        k = int(m.group(1))
        return LatticeElement((0,) * k + tuple(rng.randint(-6, 6) for _ in range(self.rank - k)))


# ---------------------------------------------------------------------------
# module-level operations


def group_multiply(g, h):
    """Product in canonical form; mixed group instances raise."""
    return g * h


def group_compare(g, h) -> str:
    """Total-order comparison: "less", "equal" or "greater"."""
    if isinstance(g, WreathElement):
        c = WreathGroup().compare(g, h)
    else:
        if type(g) is not type(h):
            raise GroupMismatchError(f"cannot compare {type(g).__name__} with {type(h).__name__}")
        if isinstance(g, SemidirectElement) and g.ratio != h.ratio:
            raise GroupMismatchError("cannot compare semidirect elements with different ratios")
        c = _cmp(g.order_key(), h.order_key())
    return "less" if c < 0 else "greater" if c > 0 else "equal"


def weight(group, g) -> int:
    return group.weight(g)


def enumerate_monoid(group, generators, max_length: int) -> dict:
    """All products of at most max_length generators, keyed by canonical form.

    Every word (as a tuple of generator indices) evaluating to an element is
    recorded, in (length, lexicographic) discovery order, so collisions keep
    full bookkeeping. Generators must be positive and share one weight.
    """
    if not generators:
        raise ValueError("need at least one generator")
    identity = group.identity()
    weights = set()
    for g in generators:
        if not group.contains(g):
            raise GroupMismatchError(f"{g} does not belong to group {group.id}")
        if group.compare(identity, g) >= 0:
            raise ValueError(f"generator {group.format_element(g)} is not positive")
        weights.add(group.weight(g))
    if len(weights) != 1 or next(iter(weights)) < 1:
        raise ValueError("generators must all have one equal positive weight")

    result = {identity: [()]}
    level = [(identity, ())]
    for _ in range(max_length):
        next_level = []
        for elt, word in level:
            for i, gen in enumerate(generators):
                ne = group.multiply(elt, gen)
                nw = word + (i,)
                if ne in result:
                    result[ne].append(nw)
                else:
                    result[ne] = [nw]
                next_level.append((ne, nw))
        level = next_level
    return result


# ---------------------------------------------------------------------------
# convex jumps and classification


@dataclass(frozen=True)
class ConvexJumpDescriptor:
    group_id: str
    lower: str
    upper: str
    central: bool
    action_ratio: Fraction | None = None

    def to_json(self):
        ratio = None if self.action_ratio is None else str(self.action_ratio)
        return {
            "group": self.group_id,
            "lower": self.lower,
            "upper": self.upper,
            "central": self.central,
            "action_ratio": ratio,
        }


@dataclass(frozen=True)
class OrderClassification:
    group_id: str
    order_type: int
    jumps: tuple
    witness: dict
    checks: int

    def to_json(self):
        return {
            "group": self.group_id,
            "type": self.order_type,
            "jumps": [j.to_json() for j in self.jumps],
            "witness": self.witness,
            "checks": self.checks,
        }


def _commutator(group, g, h):
    return group.multiply(group.multiply(group.inverse(g), group.inverse(h)), group.multiply(g, h))


def classify_order_type(group, samples: int = 200, seed: int = 0) -> OrderClassification:
    """Table-driven classification with witness re-verification by sampling."""
    import random

    rng = random.Random(seed)
    checks = 0

    if isinstance(group, Heisenberg):
        chain = ("1", "center", "a=0", "G")
        jumps = tuple(
            ConvexJumpDescriptor(group.id, lo, up, True)
            for lo, up in zip(chain, chain[1:])
        )
        for jump in jumps:
            for _ in range(samples):
                h = group.sample_subgroup(jump.upper, rng)
                g = group.sample_element(rng)
                if not group.subgroup_contains(jump.lower, _commutator(group, h, g)):
                    raise AssertionError(f"jump ({jump.lower},{jump.upper}) is not central")
                checks += 1
        witness = {"chain": list(chain)}
        return OrderClassification(group.id, 1, jumps, witness, checks)

    if isinstance(group, LatticeGroup):
        chain = ("1",) + tuple(f"axis>{i}" for i in range(group.rank - 1, 0, -1)) + ("G",)
        jumps = tuple(
            ConvexJumpDescriptor(group.id, lo, up, True)
            for lo, up in zip(chain, chain[1:])
        )
        for jump in jumps:
            for _ in range(samples):
                h = group.sample_subgroup(jump.upper, rng)
                g = group.sample_element(rng)
                if not group.subgroup_contains(jump.lower, _commutator(group, h, g)):
                    raise AssertionError("abelian jump failed centrality")
                checks += 1
        return OrderClassification(group.id, 1, jumps, {"chain": list(chain)}, checks)

    if isinstance(group, SemidirectGroup):
        conjugator = group.element(0, 1)
        jump = ConvexJumpDescriptor(group.id, "1", "base", False, group.ratio)
        for _ in range(samples):
            z = group.sample_subgroup("base", rng)
            conj = group.multiply(group.multiply(conjugator, z), group.inverse(conjugator))
            if conj != group.element(group.ratio * z.h, 0):
                raise AssertionError("conjugation does not scale the base by the ratio")
            g = group.sample_element(rng)
            moved = group.multiply(group.multiply(g, z), group.inverse(g))
            if not group.subgroup_contains("base", moved):
                raise AssertionError("base subgroup is not normal")
            checks += 1
        if group.ratio == 1:
            raise AssertionError("ratio 1 gives a central jump, not type 2")
        witness = {
            "jump": jump.to_json(),
            "conjugator": group.format_element(conjugator),
        }
        return OrderClassification(group.id, 2, (jump,), witness, checks)

    if isinstance(group, WreathGroup):
        b = group.inverse(WreathElement((), 1))  # t^-1 shrinks B_0 to B_-1
        a = WreathElement(((0, 1),), 0)
        for _ in range(samples):
            c = group.sample_subgroup("B0", rng)
            inside = group.multiply(group.multiply(b, c), group.inverse(b))
            if not group.subgroup_contains("B-1", inside):
                raise AssertionError("conjugate of B0 does not land in B-1")
            checks += 1
        if group.subgroup_contains("B-1", a) or not group.subgroup_contains("B0", a):
            raise AssertionError("witness element must lie in B0 but not in B-1")
        witness = {
            "subgroup": "B0",
            "conjugator": group.format_element(b),
            "conjugated_into": "B-1",
            "separating_element": group.format_element(a),
        }
        return OrderClassification(group.id, 3, (), witness, checks)

    raise ValueError(f"no classification table for group {group!r}")


# ---------------------------------------------------------------------------
# normal-subgroup quotients with canonical transversals


class QuotientDescriptor:
    """A supported normal convex subgroup with a canonical transversal.

    project sends g to its coset in the quotient group, representative picks
    the canonical coset representative (identity coset gets the identity),
    and in_subgroup tests membership in N.
    """

    def __init__(self, group, subgroup_tag, quotient, project, representative):
        self.group = group
        self.subgroup_tag = subgroup_tag
        self.quotient = quotient
        self.project = project
        self.representative = representative

    def __eq__(self, other):
        return (
            isinstance(other, QuotientDescriptor)
            and self.group == other.group
            and self.subgroup_tag == other.subgroup_tag
        )

    def __hash__(self):
        return hash((self.group, self.subgroup_tag))

    @property
    def id(self) -> str:
        return f"{self.group.id}/{self.subgroup_tag}"

    def in_subgroup(self, g) -> bool:
        return self.group.subgroup_contains(self.subgroup_tag, g)

    def subgroup_part(self, g):
        """The unique n in N with g = representative(project(g)) * n."""
        rep = self.representative(self.project(g))
        n = self.group.multiply(self.group.inverse(rep), g)
        if not self.in_subgroup(n):
            raise AssertionError("transversal decomposition left the subgroup")
        return n


def quotient_descriptor(group, subgroup_tag: str) -> QuotientDescriptor:
    if isinstance(group, Heisenberg) and subgroup_tag == "center":
        quotient = LatticeGroup(2)
        return QuotientDescriptor(
            group,
            "center",
            quotient,
            lambda g: LatticeElement((g.a, g.b)),
            lambda q: HeisenbergElement(q.coords[0], q.coords[1], 0),
        )
    if isinstance(group, SemidirectGroup) and subgroup_tag == "base":
        quotient = LatticeGroup(1)
        return QuotientDescriptor(
            group,
            "base",
            quotient,
            lambda g: LatticeElement((g.n,)),
            lambda q: group.element(0, q.coords[0]),
        )
    raise ValueError(f"unsupported quotient: {getattr(group, 'id', group)} / {subgroup_tag}")
