"""Truncated series over graded monoids, with optional crossed-product twisting.

A series lives over a support context: either a graded positive monoid (one
of the built-in groups' designated monoids, or the free monoid on an
alphabet), or an ungraded "ring" context over a whole group or subgroup.
Graded contexts carry an additive weight that is zero only at the identity,
which is what makes truncation at a fixed degree exact: no product of terms
with weight-sum above the degree can contribute at or below it. Ungraded
contexts assign weight zero to everything and never truncate; their series
are finitely supported group-ring elements and all arithmetic is exact.

Multiplication follows the crossed-product rule: the coefficient of x in f*g
is the sum of twist(y,z) * action(z)(a_y) * b_z over factorizations yz = x.
A series with no attached system multiplies as a plain (monoid or group)
ring element.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .scalars import field_of, parse_scalar, QQ


class ContextMismatchError(ValueError):
    """Operands disagree on monoid, degree, field or crossed system."""


class NoTruncatedInverseError(ValueError):
    """The identity coefficient is zero (or the context is ungraded)."""


@dataclass(frozen=True)
class GroupRing:
    """Ungraded support context over a whole group: finite-support exact mode."""

    group: object

    graded = False

    @property
    def id(self) -> str:
        return f"ring:{self.group.id}"

    def identity(self):
        return self.group.identity()

    def multiply(self, g, h):
        return self.group.multiply(g, h)

    def inverse(self, g):
        return self.group.inverse(g)

    def in_monoid(self, g) -> bool:
        return self.group.contains(g)

    def weight(self, g) -> int:
        return 0

    def format_element(self, g) -> str:
        return self.group.format_element(g)

    def parse_element(self, text: str):
        return self.group.parse_element(text)


@dataclass(frozen=True)
class SubgroupRing:
    """Ungraded support context over a named subgroup (coefficients of
    regrouped series live here)."""

    group: object
    subgroup_tag: str

    graded = False

    @property
    def id(self) -> str:
        return f"ring:{self.group.id}:{self.subgroup_tag}"

    def identity(self):
        return self.group.identity()

    def multiply(self, g, h):
        return self.group.multiply(g, h)

    def inverse(self, g):
        return self.group.inverse(g)

    def in_monoid(self, g) -> bool:
        return self.group.contains(g) and self.group.subgroup_contains(self.subgroup_tag, g)

    def weight(self, g) -> int:
        return 0

    def format_element(self, g) -> str:
        return self.group.format_element(g)

    def parse_element(self, text: str):
        return self.group.parse_element(text)


def _system_id(system) -> str:
    return "trivial" if system is None else system.id


class GradedSeries:
    """Finite term map from support elements to nonzero scalars, truncated at
    a fixed degree. Immutable by convention; operations return new series."""

    __slots__ = ("context", "degree", "field", "system", "terms")

    def __init__(self, context, degree, terms, field, system=None, validate=True):
        self.context = context
        self.degree = int(degree)
        self.field = field
        self.system = system
        if validate:
            clean = {}
            if self.degree < 0:
                raise ValueError("degree must be nonnegative")
            if system is not None and getattr(system, "group", None) is not None:
                base = context.group if hasattr(context, "group") else context
                if getattr(system, "group") != base and not getattr(system, "is_trivial", False):
                    raise ContextMismatchError(
                        f"crossed system {system.id} does not act on context {context.id}"
                    )
            for g, coeff in terms.items():
                if not coeff:
                    continue
                if not context.in_monoid(g):
                    raise ValueError(
                        f"support element {context.format_element(g)} outside context {context.id}"
                    )
                if field is not None and not field.contains(coeff):
                    raise ContextMismatchError(
                        f"coefficient {coeff!r} is not in field {field.name}"
                    )
                if context.weight(g) > self.degree:
                    raise ValueError(
                        f"term {context.format_element(g)} exceeds degree {self.degree}"
                    )
                clean[g] = coeff
            self.terms = clean
        else:
            self.terms = terms

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, context, degree, field, system=None):
        return cls(context, degree, {}, field, system, validate=False)

    @classmethod
    def one(cls, context, degree, field, system=None):
        return cls(context, degree, {context.identity(): field.one}, field, system, validate=False)

    @classmethod
    def from_scalar(cls, context, degree, value, field, system=None):
        terms = {context.identity(): value} if value else {}
        return cls(context, degree, terms, field, system, validate=False)

    @classmethod
    def monomial(cls, context, degree, g, coeff, field, system=None):
        return cls(context, degree, {g: coeff}, field, system)

    # -- basic protocol ----------------------------------------------------

    def _compatible(self, other):
        if not isinstance(other, GradedSeries):
            raise ContextMismatchError(f"not a series: {other!r}")
        if self.context != other.context:
            raise ContextMismatchError(
                f"mixed support contexts {self.context.id} and {other.context.id}"
            )
        if self.degree != other.degree:
            raise ContextMismatchError(
                f"mixed truncation degrees {self.degree} and {other.degree}"
            )
        if self.field != other.field:
            raise ContextMismatchError(
                f"mixed coefficient fields {self.field.name} and {other.field.name}"
            )
        if not _same_system(self.system, other.system):
            raise ContextMismatchError(
                f"mixed crossed systems {_system_id(self.system)} and {_system_id(other.system)}"
            )

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (
            self.context == other.context
            and self.degree == other.degree
            and self.field == other.field
            and _same_system(self.system, other.system)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(self.key())

    def key(self):
        """Canonical hashable key: the sorted term list."""
        ctx = self.context
        return (
            ctx.id,
            self.degree,
            tuple(
                sorted(
                    ((ctx.weight(g), ctx.format_element(g), self.field.format(c))
                     for g, c in self.terms.items())
                )
            ),
        )

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, g):
        return self.terms.get(g, self.field.zero)

    def identity_coefficient(self):
        return self.coefficient(self.context.identity())

    def support(self):
        return set(self.terms)

    def sorted_terms(self):
        ctx = self.context
        return sorted(
            self.terms.items(), key=lambda kv: (ctx.weight(kv[0]), ctx.format_element(kv[0]))
        )

    def __repr__(self):
        if not self.terms:
            body = "0"
        else:
            parts = []
            for g, c in self.sorted_terms()[:6]:
                parts.append(f"{self.field.format(c)}*{self.context.format_element(g)}")
            body = " + ".join(parts)
            if len(self.terms) > 6:
                body += " + ..."
        return f"<series deg {self.degree} over {self.context.id}: {body}>"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._compatible(other)
        terms = dict(self.terms)
        for g, c in other.terms.items():
            s = terms.get(g, self.field.zero) + c
            if s:
                terms[g] = s
            else:
                terms.pop(g, None)
        return GradedSeries(self.context, self.degree, terms, self.field, self.system, validate=False)

    def __neg__(self):
        return GradedSeries(
            self.context,
            self.degree,
            {g: -c for g, c in self.terms.items()},
            self.field,
            self.system,
            validate=False,
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value):
        """Right multiplication by a scalar (termwise, exact)."""
        if not self.field.contains(value):
            raise ContextMismatchError(f"scalar {value!r} is not in field {self.field.name}")
        if not value:
            return GradedSeries.zero(self.context, self.degree, self.field, self.system)
        return GradedSeries(
            self.context,
            self.degree,
            {g: c * value for g, c in self.terms.items()},
            self.field,
            self.system,
            validate=False,
        )

    def __mul__(self, other):
        self._compatible(other)
        ctx = self.context
        field = self.field
        system = self.system
        degree = self.degree
        out = {}
        graded = ctx.graded
        left = [(g, ctx.weight(g), c) for g, c in self.terms.items()]
        for h, b in other.terms.items():
            wh = ctx.weight(h)
            for g, wg, a in left:
                if graded and wg + wh > degree:
                    continue
                x = ctx.multiply(g, h)
                if system is None:
                    contrib = a * b
                else:
                    contrib = system.twist(g, h) * system.action(h, a) * b
                s = out.get(x, field.zero) + contrib
                if s:
                    out[x] = s
                else:
                    out.pop(x, None)
        return GradedSeries(ctx, degree, out, field, system, validate=False)

    def truncated(self, new_degree: int):
        """Explicit copy at a lower degree; refuses to drop nothing silently."""
        if new_degree > self.degree:
            raise ValueError("use with_degree to raise the degree")
        ctx = self.context
        terms = {g: c for g, c in self.terms.items() if ctx.weight(g) <= new_degree}
        return GradedSeries(ctx, new_degree, terms, self.field, self.system, validate=False)

    def with_degree(self, new_degree: int):
        """Recontextualize at a higher degree (terms are unchanged)."""
        if new_degree < self.degree:
            raise ValueError("use truncated to lower the degree")
        return GradedSeries(self.context, new_degree, dict(self.terms), self.field, self.system, validate=False)

    def invert(self):
        """Truncated two-sided inverse, defined when the identity coefficient
        is a nonzero scalar. Writes f = (1 + n) * (identity * u) with n of
        strictly positive weight and expands the geometric series to the
        truncation degree."""
        if not self.context.graded:
            raise NoTruncatedInverseError(
                "no truncated inverse: ungraded context has no positive-weight split"
            )
        u = self.identity_coefficient()
        if not u:
            raise NoTruncatedInverseError("no truncated inverse: identity coefficient is zero")
        ident = self.context.identity()
        u_inv = self.field.one / u
        n_terms = {g: c * u_inv for g, c in self.terms.items() if g != ident}
        n = GradedSeries(self.context, self.degree, n_terms, self.field, self.system, validate=False)
        geom = GradedSeries.one(self.context, self.degree, self.field, self.system)
        power = geom
        for _ in range(self.degree):
            power = (-n) * power
            if not power:
                break
            geom = geom + power
        lead = GradedSeries.from_scalar(self.context, self.degree, u_inv, self.field, self.system)
        return lead * geom


def _same_system(a, b) -> bool:
    if a is b:
        return True
    a_trivial = a is None or getattr(a, "is_trivial", False)
    b_trivial = b is None or getattr(b, "is_trivial", False)
    if a_trivial and b_trivial:
        # the support contexts are compared separately, so any two trivial
        # systems over the same field are interchangeable
        return True
    if a is None or b is None:
        return False
    return a == b


# ---------------------------------------------------------------------------
# module-level operations


def series_add(f: GradedSeries, g: GradedSeries) -> GradedSeries:
    return f + g


def series_multiply(f: GradedSeries, g: GradedSeries) -> GradedSeries:
    return f * g


def series_invert(f: GradedSeries) -> GradedSeries:
    return f.invert()


def summable_sum(family) -> GradedSeries:
    """Termwise sum of a finite family sharing one context."""
    items = list(family)
    if not items:
        raise ValueError("summable_sum needs a nonempty family")
    total = items[0]
    for f in items[1:]:
        total = total + f
    return total


# ---------------------------------------------------------------------------
# regroup / flatten along a normal convex subgroup


class RegroupedSeries:
    """A series rewritten over coset representatives: for each coset a finite
    subgroup-supported coefficient series. flatten is the exact inverse."""

    __slots__ = ("descriptor", "source_context", "quotient_context", "degree",
                 "field", "system", "cosets")

    def __init__(self, descriptor, source_context, quotient_context, degree, field,
                 system, cosets):
        self.descriptor = descriptor
        self.source_context = source_context
        self.quotient_context = quotient_context
        self.degree = degree
        self.field = field
        self.system = system
        self.cosets = {q: s for q, s in cosets.items() if s}

    def coefficient(self, q) -> GradedSeries:
        sub = SubgroupRing(self.descriptor.group, self.descriptor.subgroup_tag)
        empty = GradedSeries.zero(sub, 0, self.field, self.system)
        return self.cosets.get(q, empty)

    def __eq__(self, other):
        if not isinstance(other, RegroupedSeries):
            return NotImplemented
        return (
            self.descriptor == other.descriptor
            and self.source_context == other.source_context
            and self.degree == other.degree
            and self.field == other.field
            and _same_system(self.system, other.system)
            and self.cosets == other.cosets
        )

    def sorted_cosets(self):
        ctx = self.quotient_context
        return sorted(
            self.cosets.items(), key=lambda kv: (ctx.weight(kv[0]), ctx.format_element(kv[0]))
        )

    def __repr__(self):
        parts = [
            f"{self.quotient_context.format_element(q)} -> {s!r}"
            for q, s in self.sorted_cosets()[:4]
        ]
        return f"<regrouped over {self.descriptor.id}: {'; '.join(parts)}>"


def regroup(f: GradedSeries, descriptor) -> RegroupedSeries:
    """Collect the terms of f per coset of the subgroup in the descriptor.

    Each term x*a is rewritten through x = rep * n with rep the canonical
    coset representative and n in the subgroup; with a twisted base system
    the coefficient picks up twist(rep, n)^-1.
    """
    group = descriptor.group
    ctx = f.context
    base = ctx.group if hasattr(ctx, "group") else ctx
    if base != group:
        raise ContextMismatchError(
            f"series over {ctx.id} cannot regroup along {descriptor.id}"
        )
    if ctx.graded:
        quotient_ctx = descriptor.quotient
    else:
        quotient_ctx = GroupRing(descriptor.quotient)
    sub = SubgroupRing(group, descriptor.subgroup_tag)
    buckets = {}
    for g, a in f.terms.items():
        q = descriptor.project(g)
        rep = descriptor.representative(q)
        n = group.multiply(group.inverse(rep), g)
        if not descriptor.in_subgroup(n):
            raise AssertionError("transversal decomposition left the subgroup")
        coeff = a
        if f.system is not None:
            tw = f.system.twist(rep, n)
            coeff = (f.field.one / tw) * a
        bucket = buckets.setdefault(q, {})
        s = bucket.get(n, f.field.zero) + coeff
        if s:
            bucket[n] = s
        else:
            bucket.pop(n, None)
    cosets = {
        q: GradedSeries(sub, 0, terms, f.field, f.system, validate=False)
        for q, terms in buckets.items()
        if terms
    }
    return RegroupedSeries(descriptor, ctx, quotient_ctx, f.degree, f.field, f.system, cosets)


def flatten(rf: RegroupedSeries) -> GradedSeries:
    """Exact inverse of regroup: expand every coset coefficient back."""
    descriptor = rf.descriptor
    group = descriptor.group
    terms = {}
    for q, coeff_series in rf.cosets.items():
        rep = descriptor.representative(q)
        for n, zeta in coeff_series.terms.items():
            g = group.multiply(rep, n)
            value = zeta
            if rf.system is not None:
                value = rf.system.twist(rep, n) * zeta
            s = terms.get(g, rf.field.zero) + value
            if s:
                terms[g] = s
            else:
                terms.pop(g, None)
    return GradedSeries(rf.source_context, rf.degree, terms, rf.field, rf.system)


# ---------------------------------------------------------------------------
# text format

def to_text(f: GradedSeries) -> str:
    """One term per line "weight<TAB>element<TAB>coefficient", sorted by
    (weight, element string), under a header naming monoid, degree and
    crossed system."""
    lines = [f"monoid={f.context.id} D={f.degree} crossed={_system_id(f.system)}"]
    for g, c in f.sorted_terms():
        lines.append(f"{f.context.weight(g)}\t{f.context.format_element(g)}\t{f.field.format(c)}")
    return "\n".join(lines) + "\n"


def from_text(text: str, monoid_resolver, crossed_resolver=None):
    """Parse the text format. The coefficient field is inferred from the
    coefficient syntax (rationals by default); input must already be in
    canonical sorted order so that accepted files round-trip byte-exactly.

    Returns the parsed series; the crossed system is attached through
    crossed_resolver(crossed_id, context, field) when given, else must be
    "trivial"."""
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise ValueError("empty series text")
    header = lines[0].strip()
    m = re.match(r"^monoid=(\S+) D=(\d+) crossed=(\S+)$", header)
    if not m:
        raise ValueError(f"bad series header: {header!r}")
    context = monoid_resolver(m.group(1))
    degree = int(m.group(2))
    crossed_id = m.group(3)

    parsed = []
    for ln in lines[1:]:
        if not ln.strip():
            continue
        parts = ln.split("\t")
        if len(parts) != 3:
            raise ValueError(f"bad series line: {ln!r}")
        w, elem_s, coeff_s = parts
        g = context.parse_element(elem_s)
        coeff = parse_scalar(coeff_s)
        parsed.append((int(w), elem_s, g, coeff))

    field = field_of(parsed[0][3]) if parsed else QQ
    terms = {}
    previous = None
    for w, elem_s, g, coeff in parsed:
        if field_of(coeff) != field:
            raise ValueError("mixed coefficient fields in series file")
        if context.weight(g) != w:
            raise ValueError(f"declared weight {w} does not match element {elem_s}")
        key = (w, elem_s)
        if previous is not None and key <= previous:
            raise ValueError("series file terms are not in canonical (weight, element) order")
        previous = key
        if g in terms:
            raise ValueError(f"duplicate element {elem_s}")
        if not coeff:
            raise ValueError(f"zero coefficient stored for {elem_s}")
        terms[g] = coeff

    system = None
    if crossed_id != "trivial":
        if crossed_resolver is None:
            raise ValueError(f"no resolver for crossed system {crossed_id!r}")
        system = crossed_resolver(crossed_id, context, field)
    return GradedSeries(context, degree, terms, field, system)
