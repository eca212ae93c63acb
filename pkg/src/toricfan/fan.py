"""Fan data model for smooth complete toric varieties.

A fan is stored combinatorially: named primitive ray generators plus the
maximal cones as index tuples. This module covers parsing/serialization,
geometric validation, relative-interior location, star subdivision
(equivariant blow-up), ray contraction (blow-down), refinement testing and
GL(n,Z) fan isomorphism. Fans are immutable values; every operation is a
pure function.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Sequence

from . import lattice
from .errors import (
    CenterNotInFanError,
    CenterTooSmallError,
    DimensionMismatchError,
    DuplicateNameError,
    FanSyntaxError,
    InternalInconsistencyError,
    NameCollisionError,
    NoBlowdownRelationError,
    ResultInvalidError,
    StarConditionViolatedError,
    UnknownRayError,
)

Cone = tuple[int, ...]  # strictly increasing ray indices
ZERO_CONE: Cone = ()

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class RayGenerator:
    """A 1-dimensional cone: a name plus its primitive lattice vector."""

    name: str
    vector: lattice.IntVector


@dataclass(frozen=True)
class ValidationReport:
    smooth: bool
    complete: bool
    faces_ok: bool
    witnesses: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.smooth and self.complete and self.faces_ok


@dataclass(frozen=True, repr=False)
class Fan:
    """A fan in Z^dim: ray generators and maximal cones of full dimension."""

    dim: int
    generators: tuple[RayGenerator, ...]
    max_cones: tuple[Cone, ...]

    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def vectors(self) -> tuple[lattice.IntVector, ...]:
        return tuple(g.vector for g in self.generators)

    def index_of(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise UnknownRayError(f"no ray named {name!r}")

    def cone_names(self, cone: Cone) -> tuple[str, ...]:
        return tuple(self.generators[i].name for i in cone)

    def cone_vectors(self, cone: Cone) -> tuple[lattice.IntVector, ...]:
        return tuple(self.generators[i].vector for i in cone)

    def __repr__(self) -> str:
        return (
            f"Fan(dim={self.dim}, rays={len(self.generators)}, "
            f"maxcones={len(self.max_cones)})"
        )


def make_fan(
    dim: int,
    generators: Iterable[tuple[str, Sequence[int]]],
    max_cones: Iterable[Iterable[int]],
) -> Fan:
    """Construct a Fan after structural checks (geometry is validate_fan's job)."""
    if dim < 1:
        raise DimensionMismatchError("fan dimension must be positive")
    gens = []
    seen = set()
    for name, vec in generators:
        if not _NAME_RE.match(name):
            raise FanSyntaxError(f"invalid ray name {name!r}")
        if name in seen:
            raise DuplicateNameError(f"duplicate ray name {name!r}")
        seen.add(name)
        v = tuple(int(c) for c in vec)
        if len(v) != dim:
            raise DimensionMismatchError(
                f"ray {name!r}: expected {dim} coordinates, got {len(v)}"
            )
        gens.append(RayGenerator(name, v))
    cones = []
    for cone in max_cones:
        idx = tuple(sorted(int(i) for i in cone))
        for i in idx:
            if not 0 <= i < len(gens):
                raise UnknownRayError(f"cone references ray index {i}")
        if len(set(idx)) != len(idx):
            raise FanSyntaxError(f"repeated ray in cone {idx}")
        if len(idx) != dim:
            raise DimensionMismatchError(
                f"maximal cone must have {dim} rays, got {len(idx)}"
            )
        cones.append(idx)
    return Fan(dim, tuple(gens), tuple(sorted(cones)))


def resolve_ray(fan: Fan, ray: int | str) -> int:
    """Ray index from a name or an index, with range checking."""
    if isinstance(ray, str):
        return fan.index_of(ray)
    i = int(ray)
    if not 0 <= i < len(fan.generators):
        raise UnknownRayError(f"no ray with index {i}")
    return i


def resolve_cone(fan: Fan, rays: Iterable[int | str]) -> Cone:
    """Sorted index tuple from a mix of ray names and indices."""
    idx = tuple(sorted(resolve_ray(fan, r) for r in rays))
    if len(set(idx)) != len(idx):
        raise UnknownRayError(f"repeated ray in {tuple(rays)!r}")
    return idx


# ---------------------------------------------------------------------------
# fan file format


def parse_fan(text: str) -> Fan:
    """Parse the line-oriented fan file format.

    Format: a ``dim <n>`` line, then ``ray <name> <n integers>`` lines
    (order defines indices), then ``maxcone <name> ... <name>`` lines with
    exactly n names. '#' starts a comment; blank lines are ignored.
    Only structural properties are checked here; run validate_fan for the
    geometric ones.
    """
    dim: int | None = None
    rays: list[tuple[str, tuple[int, ...]]] = []
    index: dict[str, int] = {}
    cones: list[list[int]] = []
    seen_maxcone = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kw = tokens[0]
        if kw == "dim":
            if dim is not None:
                raise FanSyntaxError("duplicate 'dim' line", lineno)
            if len(tokens) != 2:
                raise FanSyntaxError("expected 'dim <n>'", lineno)
            try:
                dim = int(tokens[1])
            except ValueError:
                raise FanSyntaxError("dimension must be an integer", lineno) from None
            if dim < 1:
                raise FanSyntaxError("dimension must be positive", lineno)
        elif kw == "ray":
            if dim is None:
                raise FanSyntaxError("'ray' before 'dim'", lineno)
            if seen_maxcone:
                raise FanSyntaxError("'ray' after 'maxcone'", lineno)
            if len(tokens) < 2 or not _NAME_RE.match(tokens[1]):
                raise FanSyntaxError("expected 'ray <name> <coordinates>'", lineno)
            name = tokens[1]
            if name in index:
                raise DuplicateNameError(
                    f"duplicate ray name {name!r} (line {lineno})"
                )
            coords = tokens[2:]
            if len(coords) != dim:
                raise DimensionMismatchError(
                    f"ray {name!r}: expected {dim} coordinates, got"
                    f" {len(coords)} (line {lineno})"
                )
            try:
                vec = tuple(int(c) for c in coords)
            except ValueError:
                raise FanSyntaxError(
                    f"ray {name!r}: coordinates must be integers", lineno
                ) from None
            index[name] = len(rays)
            rays.append((name, vec))
        elif kw == "maxcone":
            if dim is None:
                raise FanSyntaxError("'maxcone' before 'dim'", lineno)
            seen_maxcone = True
            cnames = tokens[1:]
            for nm in cnames:
                if nm not in index:
                    raise UnknownRayError(
                        f"maxcone references unknown ray {nm!r} (line {lineno})"
                    )
            if len(cnames) != dim:
                raise DimensionMismatchError(
                    f"maxcone must list exactly {dim} rays, got"
                    f" {len(cnames)} (line {lineno})"
                )
            if len(set(cnames)) != len(cnames):
                raise FanSyntaxError("repeated ray in maxcone", lineno)
            cones.append([index[nm] for nm in cnames])
        else:
            raise FanSyntaxError(f"unknown directive {kw!r}", lineno)
    if dim is None:
        raise FanSyntaxError("missing 'dim' line")
    return make_fan(dim, rays, cones)


def serialize_fan(fan: Fan) -> str:
    """Canonical text form: rays in input order, cones sorted by index tuple."""
    lines = [f"dim {fan.dim}"]
    for g in fan.generators:
        lines.append("ray " + g.name + " " + " ".join(str(c) for c in g.vector))
    for cone in sorted(fan.max_cones):
        lines.append("maxcone " + " ".join(fan.cone_names(cone)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# validation


@lru_cache(maxsize=65536)
def _det(vectors: tuple[lattice.IntVector, ...]) -> int:
    return lattice.determinant(vectors)


@lru_cache(maxsize=65536)
def _dual_rows(vectors: tuple[lattice.IntVector, ...]) -> tuple[lattice.IntVector, ...] | None:
    """Rows phi_i with phi_i(v_j) = delta_ij, or None when not unimodular."""
    try:
        inv = lattice.unimodular_inverse(vectors)
    except ValueError:
        return None
    n = len(vectors)
    return tuple(tuple(inv[r][i] for r in range(n)) for i in range(n))


def _cone_label(fan: Fan, cone: Cone) -> str:
    return "<" + ",".join(fan.cone_names(cone)) + ">"


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _in_shared_cone_3d(d, shared) -> bool:
    """Is d a nonnegative combination of the (at most two) shared vectors?"""
    if not shared:
        return False
    u = shared[0]
    if len(shared) == 1:
        return (
            _cross(d, u) == (0, 0, 0)
            and d[0] * u[0] + d[1] * u[1] + d[2] * u[2] > 0
        )
    v = shared[1]
    n = _cross(u, v)
    if n[0] * d[0] + n[1] * d[1] + n[2] * d[2] != 0:
        return False  # outside the span
    # d = a*u + b*v gives d x v = a*n and u x d = b*n; only signs matter
    dv = _cross(d, v)
    ud = _cross(u, d)
    return (
        dv[0] * n[0] + dv[1] * n[1] + dv[2] * n[2] >= 0
        and ud[0] * n[0] + ud[1] * n[1] + ud[2] * n[2] >= 0
    )


def _overlap_beyond_shared_3d(a_vecs, b_vecs, shared):
    """3-dimensional fast path: does the intersection of two unimodular
    cones exceed the cone on their shared generators?

    The intersection is cut out by the six integer facet normals (the dual
    bases); every extreme ray of a pointed cone in dimension 3 lies on two
    independent facets, so the cross products of normal pairs, filtered by
    the inequalities, generate the intersection exactly. Returns None when
    a dual basis is unavailable (non-unimodular input), signalling the
    caller to fall back to the general solver.
    """
    da = _dual_rows(a_vecs)
    db = _dual_rows(b_vecs)
    if da is None or db is None:
        return None
    normals = da + db
    shared_t = tuple(shared)
    m = len(normals)
    for i in range(m):
        ni = normals[i]
        for j in range(i + 1, m):
            d = _cross(ni, normals[j])
            if d == (0, 0, 0):
                continue
            for sx, sy, sz in (d, (-d[0], -d[1], -d[2])):
                for n in normals:
                    if n[0] * sx + n[1] * sy + n[2] * sz < 0:
                        break
                else:
                    if not _in_shared_cone_3d((sx, sy, sz), shared_t):
                        return True
    return False


def cones_meet_in_common_face(
    a_vecs: tuple[lattice.IntVector, ...], b_vecs: tuple[lattice.IntVector, ...]
) -> bool:
    """Whether two cones (given by generator vectors) intersect exactly in
    the cone spanned by their shared generators.

    Sufficient certificate first: a functional that vanishes on the shared
    generators, is positive on the rest of one cone and negative on the
    rest of the other (sums of dual-basis rows, tried from both sides).
    When the cheap certificates fail, the exact feasibility solver searches
    for a common point with weight outside the shared generators; such a
    point exists iff the intersection is strictly larger than the shared
    face. Full-dimensional cones in Z^3 take an integer-only fast path.
    """
    if b_vecs < a_vecs:  # the answer is symmetric: normalize the cache key
        a_vecs, b_vecs = b_vecs, a_vecs
    return _cones_meet_cached(a_vecs, b_vecs)


@lru_cache(maxsize=262144)
def _cones_meet_cached(
    a_vecs: tuple[lattice.IntVector, ...], b_vecs: tuple[lattice.IntVector, ...]
) -> bool:
    shared = set(a_vecs) & set(b_vecs)
    if (
        len(a_vecs) == 3
        and len(b_vecs) == 3
        and len(a_vecs[0]) == 3
        and len(shared) <= 2  # the membership helper handles at most a wall
    ):
        overlap = _overlap_beyond_shared_3d(a_vecs, b_vecs, sorted(shared))
        if overlap is not None:
            return not overlap
    a_only = [v for v in a_vecs if v not in shared]
    b_only = [v for v in b_vecs if v not in shared]
    if not a_only or not b_only:
        return True  # one cone is a face of the other

    dual = _dual_rows(a_vecs)
    if dual is not None:
        pos = dict(zip(a_vecs, dual))
        phi = [sum(col) for col in zip(*(pos[v] for v in a_only))]
        if all(lattice.dot(phi, w) < 0 for w in b_only):
            return True
    dual = _dual_rows(b_vecs)
    if dual is not None:
        pos = dict(zip(b_vecs, dual))
        psi = [sum(col) for col in zip(*(pos[v] for v in b_only))]
        if all(lattice.dot(psi, u) < 0 for u in a_only):
            return True

    # overlap search: U x - V y = 0 with x, y >= 0 and the coordinates on
    # non-shared generators summing to 1
    n = len(a_vecs[0])
    rows = [[u[i] for u in a_vecs] + [-v[i] for v in b_vecs] for i in range(n)]
    rows.append(
        [1 if v not in shared else 0 for v in a_vecs]
        + [1 if v not in shared else 0 for v in b_vecs]
    )
    rhs = [0] * n + [1]
    return lattice.solve_eq_nonneg(rows, rhs) is None


def _pair_is_face(fan: Fan, a: Cone, b: Cone) -> bool:
    return cones_meet_in_common_face(fan.cone_vectors(a), fan.cone_vectors(b))


def validate_fan(fan: Fan) -> ValidationReport:
    """Check smoothness, completeness and the face condition, with witnesses.

    smooth: every maximal cone's generators form a Z-basis.
    complete: every wall (codimension-1 face) lies in exactly two maximal
    cones and the wall-adjacency graph is connected; for fans of unimodular
    full-dimensional cones this forces the support to be the whole space.
    faces_ok: any two maximal cones intersect in the common face spanned by
    their shared rays, and every generator is used.
    """
    witnesses: list[str] = []

    smooth = True
    for cone in fan.max_cones:
        d = _det(fan.cone_vectors(cone))
        if d not in (1, -1):
            smooth = False
            witnesses.append(
                f"maximal cone {_cone_label(fan, cone)} has determinant {d}"
            )

    complete = True
    if not fan.max_cones:
        complete = False
        witnesses.append("fan has no maximal cones")
    else:
        wall_count: Counter[Cone] = Counter()
        for cone in fan.max_cones:
            for wall in combinations(cone, fan.dim - 1):
                wall_count[wall] += 1
        for wall, cnt in sorted(wall_count.items()):
            if cnt != 2:
                complete = False
                witnesses.append(
                    f"wall {_cone_label(fan, wall)} lies in {cnt} maximal"
                    " cone(s), expected 2"
                )
        if complete and len(fan.max_cones) > 1:
            adj: dict[Cone, list[int]] = {}
            for ci, cone in enumerate(fan.max_cones):
                for wall in combinations(cone, fan.dim - 1):
                    adj.setdefault(wall, []).append(ci)
            reached = {0}
            frontier = [0]
            neighbours: dict[int, set[int]] = {}
            for members in adj.values():
                for i in members:
                    neighbours.setdefault(i, set()).update(members)
            while frontier:
                nxt = []
                for i in frontier:
                    for j in neighbours.get(i, ()):
                        if j not in reached:
                            reached.add(j)
                            nxt.append(j)
                frontier = nxt
            if len(reached) != len(fan.max_cones):
                complete = False
                witnesses.append(
                    "wall-adjacency graph is disconnected"
                    f" ({len(reached)} of {len(fan.max_cones)} cones reached)"
                )

    faces_ok = True
    seen_vectors: dict[lattice.IntVector, str] = {}
    for g in fan.generators:
        if g.vector in seen_vectors:
            faces_ok = False
            witnesses.append(
                f"generators {seen_vectors[g.vector]} and {g.name} share the"
                f" vector {g.vector}"
            )
        else:
            seen_vectors[g.vector] = g.name
    used = set()
    for cone in fan.max_cones:
        used.update(cone)
    for i, g in enumerate(fan.generators):
        if i not in used:
            faces_ok = False
            witnesses.append(f"generator {g.name} lies in no maximal cone")
    for ai, bi in combinations(range(len(fan.max_cones)), 2):
        a, b = fan.max_cones[ai], fan.max_cones[bi]
        if a == b:
            faces_ok = False
            witnesses.append(
                f"maximal cone {_cone_label(fan, a)} appears more than once"
            )
            continue
        if not _pair_is_face(fan, a, b):
            faces_ok = False
            witnesses.append(
                f"cones {_cone_label(fan, a)} and {_cone_label(fan, b)}"
                " do not intersect in a common face"
            )

    return ValidationReport(smooth, complete, faces_ok, tuple(witnesses))


# ---------------------------------------------------------------------------
# geometry queries


def locate_relint(
    fan: Fan, point: Sequence[int]
) -> tuple[Cone, tuple[int, ...]]:
    """The unique cone holding ``point`` in its relative interior.

    Returns the cone as an index tuple together with the strictly positive
    integer coefficients over its generators; the zero vector yields the
    zero cone with no coefficients. Requires a valid complete fan.
    """
    pt = tuple(int(c) for c in point)
    if len(pt) != fan.dim:
        raise DimensionMismatchError(
            f"point has {len(pt)} coordinates in a dim-{fan.dim} fan"
        )
    if not any(pt):
        return ZERO_CONE, ()
    answers = set()
    for cone in fan.max_cones:
        dual = _dual_rows(fan.cone_vectors(cone))
        if dual is None:
            raise InternalInconsistencyError(
                f"maximal cone {_cone_label(fan, cone)} is not unimodular"
            )
        coords = [lattice.dot(row, pt) for row in dual]
        if all(c >= 0 for c in coords):
            face = tuple(i for i, c in zip(cone, coords) if c > 0)
            coeffs = tuple(c for c in coords if c > 0)
            answers.add((face, coeffs))
    if not answers:
        raise InternalInconsistencyError(
            f"point {pt} lies in no maximal cone; the fan is not complete"
        )
    if len(answers) > 1:
        raise InternalInconsistencyError(
            f"point {pt} has ambiguous location {sorted(answers)};"
            " the fan violates the face axioms"
        )
    return next(iter(answers))


def cone_in_fan(fan: Fan, cone: Cone) -> bool:
    """Whether the index set spans a cone of the fan (a face of a maximal cone)."""
    s = set(cone)
    return any(s <= set(mc) for mc in fan.max_cones)


# ---------------------------------------------------------------------------
# blow-up / blow-down


def _auto_name(taken: Iterable[str]) -> str:
    names = set(taken)
    k = 0
    while f"e{k}" in names:
        k += 1
    return f"e{k}"


def star_subdivide(
    fan: Fan, center: Iterable[int | str], new_name: str | None = None
) -> Fan:
    """Star subdivision at a cone: the combinatorial equivariant blow-up.

    A new ray is inserted at the sum of the center's generator vectors
    (primitive automatically when the fan is smooth), and every maximal
    cone containing the center is split into |center| cones, each obtained
    by swapping one center ray for the new one. Without an explicit name
    the next unused e<k> is chosen.
    """
    cidx = resolve_cone(fan, center)
    if len(cidx) < 2:
        raise CenterTooSmallError(
            "subdivision center needs at least 2 rays"
            " (a single ray gives the identity)"
        )
    if not cone_in_fan(fan, cidx):
        raise CenterNotInFanError(
            f"{_cone_label(fan, cidx)} is not a cone of the fan"
        )
    names = fan.names()
    name = new_name if new_name is not None else _auto_name(names)
    if name in names:
        raise NameCollisionError(f"ray name {name!r} already in use")
    vecs = fan.cone_vectors(cidx)
    new_vec = tuple(sum(col) for col in zip(*vecs))
    new_index = len(fan.generators)
    cset = set(cidx)
    cones: list[Iterable[int]] = []
    for mc in fan.max_cones:
        if cset <= set(mc):
            for i in cidx:
                cones.append((set(mc) - {i}) | {new_index})
        else:
            cones.append(mc)
    gens = [(g.name, g.vector) for g in fan.generators] + [(name, new_vec)]
    return make_fan(fan.dim, gens, cones)


def _star_relations(fan: Fan, ray_index: int):
    """Primitive relations of the shape x1+...+xh = ray, in collection order."""
    from . import mori  # deferred: mori builds on this module

    out = []
    for coll in mori.primitive_collections(fan):
        rel = mori.primitive_relation(fan, coll)
        if rel.target == (ray_index,) and rel.coefficients == (1,):
            out.append(rel)
    return out


def contract_ray(
    fan: Fan,
    ray: int | str,
    collection: Iterable[int | str] | None = None,
) -> Fan:
    """Blow down the divisor of ``ray``: the inverse of star subdivision.

    The contraction is steered by a relation x1+...+xh = ray. When
    ``collection`` is omitted, all such relations are tried in collection
    order and the first valid one is used; a ray may carry several (the
    choice then changes the target fan), so pass the collection to pin it.
    Valid means every maximal cone containing the ray contains exactly h-1
    of the x_i. The result is fully revalidated as defense in depth.
    """
    ridx = resolve_ray(fan, ray)
    rels = _star_relations(fan, ridx)
    if collection is not None:
        cidx = resolve_cone(fan, collection)
        rels = [r for r in rels if r.collection == cidx]
    if not rels:
        raise NoBlowdownRelationError(
            f"no relation of the shape x1+...+xh = {fan.generators[ridx].name}"
            + ("" if collection is None else " with the requested collection")
        )

    failures: list[tuple[Cone, tuple[Cone, ...]]] = []
    for rel in rels:
        cset = set(rel.collection)
        h = len(rel.collection)
        bad = tuple(
            mc
            for mc in fan.max_cones
            if ridx in mc and len(cset & set(mc)) != h - 1
        )
        if bad:
            failures.append((rel.collection, bad))
            continue
        new_cones = set()
        for mc in fan.max_cones:
            if ridx in mc:
                merged = (set(mc) - {ridx}) | cset
            else:
                merged = set(mc)
            new_cones.add(tuple(sorted(i - (i > ridx) for i in merged)))
        gens = [
            (g.name, g.vector)
            for i, g in enumerate(fan.generators)
            if i != ridx
        ]
        result = make_fan(fan.dim, gens, sorted(new_cones))
        report = validate_fan(result)
        if not report.ok:
            raise ResultInvalidError(
                "contraction produced an invalid fan: "
                + "; ".join(report.witnesses)
            )
        return result

    coll, bad = failures[0]
    names = ",".join(fan.cone_names(coll))
    raise StarConditionViolatedError(
        f"cannot contract {fan.generators[ridx].name} via {{{names}}}:"
        f" cone {_cone_label(fan, bad[0])} does not contain exactly"
        f" {len(coll) - 1} collection rays",
        witnesses=bad,
    )


# ---------------------------------------------------------------------------
# refinement and isomorphism


def refines(fine: Fan, coarse: Fan) -> bool:
    """True iff every maximal cone of ``fine`` lies in some cone of ``coarse``."""
    if fine.dim != coarse.dim:
        raise DimensionMismatchError(
            f"cannot compare fans of dimension {fine.dim} and {coarse.dim}"
        )
    duals = []
    for cone in coarse.max_cones:
        dual = _dual_rows(coarse.cone_vectors(cone))
        if dual is not None:
            duals.append(dual)
    for mc in fine.max_cones:
        vecs = fine.cone_vectors(mc)
        if not any(
            all(lattice.dot(row, v) >= 0 for v in vecs for row in dual)
            for dual in duals
        ):
            return False
    return True


def _columns(vectors: Sequence[lattice.IntVector]) -> tuple[lattice.IntVector, ...]:
    return tuple(zip(*vectors))


def _mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def _mat_vec(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def fan_isomorphism(a: Fan, b: Fan):
    """A GL(n,Z) matrix mapping a's generators and cones onto b's, or None.

    Search: the first maximal cone of ``a`` is mapped onto every ordered
    maximal cone of ``b``; each candidate map is accepted iff it carries
    the generator set bijectively onto b's and the maximal-cone set onto
    b's. The matrix acts on column vectors.
    """
    if (
        a.dim != b.dim
        or len(a.generators) != len(b.generators)
        or len(a.max_cones) != len(b.max_cones)
    ):
        return None
    n = a.dim
    identity = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    if not a.max_cones:
        return identity if sorted(a.vectors()) == sorted(b.vectors()) else None

    b_vec_index = {g.vector: i for i, g in enumerate(b.generators)}
    if len(b_vec_index) != len(b.generators):
        return None  # duplicate vectors: not a valid fan
    b_cone_set = set(b.max_cones)

    sigma = a.max_cones[0]
    try:
        u_inv = lattice.unimodular_inverse(_columns(a.cone_vectors(sigma)))
    except ValueError:
        return None
    a_vectors = a.vectors()
    for tau in b.max_cones:
        tau_vecs = b.cone_vectors(tau)
        for perm in permutations(tau_vecs):
            m = _mat_mul(_columns(perm), u_inv)
            images = [_mat_vec(m, v) for v in a_vectors]
            if any(img not in b_vec_index for img in images):
                continue
            mapping = [b_vec_index[img] for img in images]
            if len(set(mapping)) != len(mapping):
                continue
            if all(
                tuple(sorted(mapping[i] for i in cone)) in b_cone_set
                for cone in a.max_cones
            ):
                return m
    return None


def structural_key(fan: Fan):
    """Name-independent canonical key: lexicographically sorted generator
    vectors with cones relabeled accordingly. Equal keys mean equal fans
    as sets of cones in the fixed lattice (names and ray order ignored)."""
    order = sorted(range(len(fan.generators)), key=lambda i: fan.generators[i].vector)
    pos = {old: new for new, old in enumerate(order)}
    vectors = tuple(fan.generators[i].vector for i in order)
    cones = tuple(
        sorted(tuple(sorted(pos[i] for i in cone)) for cone in fan.max_cones)
    )
    return (fan.dim, vectors, cones)


def structurally_equal(a: Fan, b: Fan) -> bool:
    return structural_key(a) == structural_key(b)


def canonical_gl_key(fan: Fan):
    """Canonical form under GL(n,Z): minimize the structural key over all
    maps sending an ordered maximal cone onto the standard basis. Two valid
    fans get equal keys iff fan_isomorphism finds a map between them."""
    best = None
    vectors = fan.vectors()
    for mc in fan.max_cones:
        for perm in permutations(fan.cone_vectors(mc)):
            try:
                m = lattice.unimodular_inverse(_columns(perm))
            except ValueError:
                continue
            images = [_mat_vec(m, v) for v in vectors]
            order = sorted(range(len(images)), key=lambda i: images[i])
            pos = {old: new for new, old in enumerate(order)}
            key = (
                fan.dim,
                tuple(images[i] for i in order),
                tuple(
                    sorted(
                        tuple(sorted(pos[i] for i in cone))
                        for cone in fan.max_cones
                    )
                ),
            )
            if best is None or key < best:
                best = key
    return best
