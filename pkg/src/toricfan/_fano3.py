"""Enumeration of smooth toric Fano threefolds.

Strategy: grow simplicial complexes of unimodular 3-cones around the
standard cone, advancing-front style. Every complete smooth fan can be
mapped by GL(3,Z) so that one maximal cone is the standard cone, so each
isomorphism class is reachable; completed fans are deduplicated by
canonical form.

The front is the set of walls (2-faces) lying in exactly one cone so far.
The expansion step picks the lexicographically smallest uncovered wall
{u, v} with its unique flanking cone apex p and tries every candidate apex
w on the opposite side. Writing w = a*u + b*v - p (the coefficient of p is
forced to -1 by unimodularity plus the side condition), the pair {p, w}
can never span a cone of any completed fan when a, b >= 0 and a + b >= 1:
its sum p + w = a*u + b*v would then lie in the relative interior of a
face of the existing cone, so {p, w} is a primitive collection with degree
2 - a - b. Fano forces degree >= 1, which cuts every branch with
a >= 1 and b >= 1, a >= 2 and b = 0, or a = 0 and b >= 2.

Vertex and cone counts are capped (8 vertices, hence 2*8 - 4 = 12 cones
for a simplicial 2-sphere) and vertex coordinates are bounded; the caps
are validated by reproducing the known classification count.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import gcd

from . import mori
from .errors import InternalInconsistencyError
from .fan import (
    Fan,
    canonical_gl_key,
    cones_meet_in_common_face,
    make_fan,
    validate_fan,
    _dual_rows,
)

MAX_VERTICES = 8
MAX_CONES = 2 * MAX_VERTICES - 4

Vec = tuple[int, int, int]
ConeV = tuple[Vec, Vec, Vec]  # sorted vector triple


def _primitive_pool(bound: int) -> tuple[Vec, ...]:
    pool = []
    rng = range(-bound, bound + 1)
    for x in rng:
        for y in rng:
            for z in rng:
                if (x, y, z) != (0, 0, 0) and gcd(x, y, z) == 1:
                    pool.append((x, y, z))
    return tuple(pool)


def _walls(cone: ConeV):
    return combinations(cone, 2)


@lru_cache(maxsize=262144)
def _apex_coords(u: Vec, v: Vec, p: Vec, w: Vec):
    """Coordinates of w in the basis (u, v, p), or None when not a basis."""
    dual = _dual_rows((u, v, p))
    if dual is None:
        return None
    return tuple(
        sum(row[i] * w[i] for i in range(3)) for row in dual
    )


def _fan_from_cones(cones: frozenset[ConeV]) -> Fan:
    vertices = sorted({v for cone in cones for v in cone})
    index = {v: i for i, v in enumerate(vertices)}
    return make_fan(
        3,
        [(f"e{i}", v) for i, v in enumerate(vertices)],
        [tuple(index[v] for v in cone) for cone in cones],
    )


def enumerate_fano_threefolds(coord_bound: int = 2) -> list[Fan]:
    """All smooth toric Fano threefold fans up to GL(3,Z), canonically ordered."""
    pool = _primitive_pool(coord_bound)
    start: ConeV = tuple(sorted([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
    found: dict = {}
    visited: set[frozenset[ConeV]] = set()

    def wall_counts(cones):
        counts: dict[tuple[Vec, Vec], list[ConeV]] = {}
        for cone in cones:
            for a, b in _walls(cone):
                counts.setdefault((a, b), []).append(cone)
        return counts

    def grow(cones: frozenset[ConeV]):
        if cones in visited:
            return
        visited.add(cones)
        counts = wall_counts(cones)
        if any(len(owners) > 2 for owners in counts.values()):
            raise InternalInconsistencyError("wall covered three times")
        open_walls = sorted(w for w, owners in counts.items() if len(owners) == 1)
        if not open_walls:
            fan = _fan_from_cones(cones)
            if not validate_fan(fan).ok:
                raise InternalInconsistencyError(
                    "closed cone complex failed validation"
                )
            if mori.is_fano(fan)[0]:
                found.setdefault(canonical_gl_key(fan), fan)
            return
        if len(cones) >= MAX_CONES:
            return
        u, v = open_walls[0]
        (owner,) = counts[(u, v)]
        (p,) = [x for x in owner if x not in (u, v)]
        vertices = {x for cone in cones for x in cone}
        for w in pool:
            coords = _apex_coords(u, v, p, w)
            if coords is None or coords[2] != -1:
                continue  # not unimodular against the wall, or wrong side
            a, b = coords[0], coords[1]
            if (a >= 1 and b >= 1) or (a >= 2 and b == 0) or (a == 0 and b >= 2):
                continue  # forces a primitive collection of degree <= 0
            if w not in vertices and len(vertices) >= MAX_VERTICES:
                continue
            new_cone: ConeV = tuple(sorted([u, v, w]))
            if new_cone in cones:
                continue
            ok = True
            for a2, b2 in _walls(new_cone):
                if len(counts.get((a2, b2), ())) >= 2:
                    ok = False
                    break
            if not ok:
                continue
            if all(
                cones_meet_in_common_face(new_cone, cone) for cone in cones
            ):
                grow(cones | {new_cone})

    grow(frozenset([start]))
    return [found[k] for k in sorted(found)]
