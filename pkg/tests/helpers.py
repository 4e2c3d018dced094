"""Shared independent oracles and random generators for the test suite.

The oracles deliberately avoid the library's own arithmetic: Heisenberg
products go through literal 3x3 matrix multiplication, semidirect products
through the affine 2x2 representation, and wreath products through a direct
dict-shift implementation.
"""

from mnseries.groups import HeisenbergElement, SemidirectElement, WreathElement
from mnseries.series import GradedSeries


# --- Heisenberg oracle: upper unitriangular matrices ----------------------

def heis_to_matrix(g):
    return [[1, g.a, g.c], [0, 1, g.b], [0, 0, 1]]


def mat3_mul(m1, m2):
    return [
        [sum(m1[i][k] * m2[k][j] for k in range(3)) for j in range(3)]
        for i in range(3)
    ]


def heis_from_matrix(m):
    return HeisenbergElement(m[0][1], m[1][2], m[0][2])


def heis_product_oracle(g, h):
    return heis_from_matrix(mat3_mul(heis_to_matrix(g), heis_to_matrix(h)))


# --- semidirect oracle: affine maps z -> r^n z + h ------------------------

def semidirect_to_affine(g):
    return (g.ratio**g.n, g.h)


def semidirect_product_oracle(g, h):
    s1, t1 = semidirect_to_affine(g)
    s2, t2 = semidirect_to_affine(h)
    # composition of z -> s1 z + t1 after z -> s2 z + t2 applied second:
    # (g * h)(z) = g(h-part shifted): scale s1*s2, translation t1 + s1*t2
    return SemidirectElement(t1 + s1 * t2, g.n + h.n, g.ratio)


# --- wreath oracle: direct shift-merge on plain dicts ----------------------

def wreath_product_oracle(g, h):
    merged = dict(g.cells)
    for i, v in h.cells:
        j = i + g.n
        merged[j] = merged.get(j, 0) + v
    return WreathElement.from_map(merged, g.n + h.n)


# --- random series ----------------------------------------------------------

def random_series(context, degree, field, rng, n_terms=5, system=None, unit=False):
    terms = {}
    for _ in range(n_terms):
        g = context.sample_monoid_element(rng, degree)
        c = field.sample(rng)
        if c:
            terms[g] = terms.get(g, field.zero) + c
    terms = {g: c for g, c in terms.items() if c}
    if unit:
        terms[context.identity()] = field.sample_nonzero(rng)
    return GradedSeries(context, degree, terms, field, system)


def assert_one(series):
    ident = series.context.identity()
    assert list(series.terms) == [ident] and series.terms[ident] == series.field.one, (
        f"expected the unit series, got {series!r}"
    )
