"""Built-in fans and enumeration of smooth toric Fano varieties.

The catalog holds projective spaces and a fixed tower of three blow-ups of
P^4 (keys paper-X, paper-W, paper-Y) that exhibits a Fano 4-fold admitting
no equivariant blow-down to a smooth Fano 4-fold; the tower drives most of
the golden tests. Enumeration covers dimensions 1-3 up to lattice
isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from . import mori
from .errors import InvalidDimensionError, UnsupportedDimensionError
from .fan import (
    Fan,
    canonical_gl_key,
    make_fan,
    star_subdivide,
    validate_fan,
)


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    fan: Fan
    base: str  # construction recipe: base variety ...
    centers: tuple[tuple[str, ...], ...]  # ... plus blow-up centers, in order

    def describe(self) -> str:
        if not self.centers:
            return self.base
        steps = ", then ".join(
            "blow up {" + ",".join(c) + "}" for c in self.centers
        )
        return f"{self.base}; {steps}"


def projective_space(n: int) -> Fan:
    """The fan of P^n: e1..en the standard basis, e0 their negated sum,
    maximal cones all n-subsets of the n+1 rays."""
    if n < 1:
        raise InvalidDimensionError(f"no projective space of dimension {n}")
    gens = [("e0", (-1,) * n)]
    for i in range(1, n + 1):
        gens.append((f"e{i}", tuple(1 if j == i - 1 else 0 for j in range(n))))
    cones = combinations(range(n + 1), n)
    return make_fan(n, gens, cones)


@lru_cache(maxsize=1)
def counterexample_tower() -> tuple[Fan, Fan, Fan, Fan]:
    """P^4 and the chain of three blow-ups used throughout the test suite.

    X blows up the line {e1,e2,e3}, W then the line {e2,e3,e4}, Y then the
    surface {e4,e5}. X and Y are Fano, W is not, and Y -> X factors through
    W only; no factorization has all-Fano intermediates.
    """
    p4 = projective_space(4)
    x = star_subdivide(p4, ("e1", "e2", "e3"), "e5")
    w = star_subdivide(x, ("e2", "e3", "e4"), "e6")
    y = star_subdivide(w, ("e4", "e5"), "e7")
    return p4, x, w, y


@lru_cache(maxsize=1)
def entries() -> tuple[CatalogEntry, ...]:
    p4, x, w, y = counterexample_tower()
    return (
        CatalogEntry("p1", projective_space(1), "P^1", ()),
        CatalogEntry("p2", projective_space(2), "P^2", ()),
        CatalogEntry("p3", projective_space(3), "P^3", ()),
        CatalogEntry("p4", p4, "P^4", ()),
        CatalogEntry("paper-X", x, "P^4", (("e1", "e2", "e3"),)),
        CatalogEntry(
            "paper-W", w, "P^4", (("e1", "e2", "e3"), ("e2", "e3", "e4"))
        ),
        CatalogEntry(
            "paper-Y",
            y,
            "P^4",
            (("e1", "e2", "e3"), ("e2", "e3", "e4"), ("e4", "e5")),
        ),
    )


def catalog_keys() -> tuple[str, ...]:
    return tuple(e.key for e in entries())


def catalog_entry(key: str) -> CatalogEntry:
    for e in entries():
        if e.key == key:
            return e
    raise KeyError(
        f"unknown catalog key {key!r}; available: {', '.join(catalog_keys())}"
    )


def catalog_fan(key: str) -> Fan:
    return catalog_entry(key).fan


# ---------------------------------------------------------------------------
# enumeration of smooth toric Fano varieties up to lattice isomorphism


def _primitive_pool_2d(bound: int) -> list[tuple[int, int]]:
    from math import gcd

    pool = []
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if (x, y) != (0, 0) and gcd(x, y) == 1:
                pool.append((x, y))
    return pool


def _fan_from_cycle(rays: list[tuple[int, int]]) -> Fan:
    gens = [(f"e{i}", v) for i, v in enumerate(rays)]
    k = len(rays)
    cones = [(i, (i + 1) % k) for i in range(k)]
    return make_fan(2, gens, cones)


def _enumerate_fano_surfaces(max_rays: int, coord_bound: int) -> list[Fan]:
    """Grow counterclockwise cyclic ray sequences with unimodular
    consecutive pairs; close when the wrap-around pair is unimodular too.

    Degree pruning: three consecutive rays u, v, w satisfy u + w = c*v, and
    c >= 2 forces a primitive collection {u, w} of degree 2 - c <= 0 in any
    completed fan, so such branches are cut. The closing triples are not
    pruned (for triangles the pair is a cone); the final Fano check decides.
    """
    pool = _primitive_pool_2d(coord_bound)
    found: dict = {}

    def det2(u, v) -> int:
        return u[0] * v[1] - u[1] * v[0]

    def consider(seq):
        fan = _fan_from_cycle(seq)
        if not validate_fan(fan).ok:
            return
        if not mori.is_fano(fan)[0]:
            return
        found.setdefault(canonical_gl_key(fan), fan)

    def grow(seq):
        u, v = seq[-2], seq[-1]
        if len(seq) >= 3 and det2(v, seq[0]) == 1:
            consider(seq)
        if len(seq) == max_rays:
            return
        for w in pool:
            if det2(v, w) != 1 or w in seq:
                continue
            # u + w is an integer multiple of v when both flanking pairs
            # are unimodular: det(u + w, v) = det(u, v) + det(w, v) = 0
            s = (u[0] + w[0], u[1] + w[1])
            c = s[0] // v[0] if v[0] != 0 else s[1] // v[1]
            if s != (c * v[0], c * v[1]):
                continue  # w not unimodular against u's side; defensive
            if c >= 2:
                continue
            grow(seq + [w])

    grow([(1, 0), (0, 1)])
    return [found[k] for k in sorted(found)]


@lru_cache(maxsize=8)
def _enumerate_cached(dim: int, coord_bound: int | None) -> tuple[Fan, ...]:
    if dim == 1:
        # the only complete fan in Z^1 uses both primitive vectors
        return (projective_space(1),)
    if dim == 2:
        return tuple(
            _enumerate_fano_surfaces(max_rays=8, coord_bound=coord_bound or 4)
        )
    if dim == 3:
        from ._fano3 import enumerate_fano_threefolds

        return tuple(enumerate_fano_threefolds(coord_bound=coord_bound or 2))
    raise UnsupportedDimensionError(
        f"enumeration is implemented for dimensions 1-3, not {dim}"
    )


def enumerate_fano(dim: int, coord_bound: int | None = None) -> list[Fan]:
    """All smooth complete Fano fans of the given dimension, one per
    lattice-isomorphism class, in canonical-key order.

    Dimension 3 is a long-running search (minutes rather than seconds).
    """
    return list(_enumerate_cached(dim, coord_bound))
