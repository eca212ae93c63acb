"""Blow-down discovery and factorization of refinement morphisms.

A blow-down candidate is a primitive relation of the shape
x1+...+xh = x (single target ray with coefficient 1); it is valid when the
contraction it steers succeeds. Factorization searches for chains of valid
blow-downs carrying a fine fan onto a coarse one it refines, depth-first
with memoization of dead ends, optionally insisting that every strict
intermediate be Fano.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import mori
from .errors import NotARefinementError, StarConditionViolatedError
from .fan import Cone, Fan, contract_ray, refines, structural_key


@dataclass(frozen=True)
class BlowdownCandidate:
    relation: mori.PrimitiveRelation
    valid: bool
    # every maximal cone violating the star condition, when invalid
    obstruction: tuple[Cone, ...] | None
    target: Fan | None

    def ray_name(self, fan: Fan) -> str:
        return fan.generators[self.relation.target[0]].name


@dataclass(frozen=True)
class FactorStep:
    ray: str  # contracted ray name
    center: tuple[str, ...]  # blow-up center in the target, by name
    fan: Fan  # the fan after this contraction
    fano: bool
    projective: bool


@dataclass(frozen=True)
class FactorizationPath:
    steps: tuple[FactorStep, ...]


def blow_down_candidates(fan: Fan) -> tuple[BlowdownCandidate, ...]:
    """All relations of blow-down shape, each tested by actual contraction.

    Ordered by contracted ray name, then by collection.
    """
    star_rels = [
        rel
        for coll in mori.primitive_collections(fan)
        for rel in (mori.primitive_relation(fan, coll),)
        if len(rel.target) == 1 and rel.coefficients == (1,)
    ]
    star_rels.sort(key=lambda r: (fan.generators[r.target[0]].name, r.collection))
    out = []
    for rel in star_rels:
        try:
            target = contract_ray(fan, rel.target[0], rel.collection)
        except StarConditionViolatedError as exc:
            out.append(BlowdownCandidate(rel, False, exc.witnesses, None))
        else:
            out.append(BlowdownCandidate(rel, True, None, target))
    return tuple(out)


def blow_downs(fan: Fan) -> tuple[tuple[str, Fan, bool, bool], ...]:
    """Valid blow-downs as (ray name, target fan, target fano, target projective)."""
    out = []
    for cand in blow_down_candidates(fan):
        if cand.valid:
            out.append(
                (
                    cand.ray_name(fan),
                    cand.target,
                    mori.is_fano(cand.target)[0],
                    mori.is_projective(cand.target),
                )
            )
    return tuple(out)


def factor_morphism(
    fine: Fan,
    coarse: Fan,
    require_fano: bool = False,
    exhaustive: bool = False,
) -> tuple[FactorizationPath, ...]:
    """Factor the refinement morphism fine -> coarse into blow-downs.

    Depth-first backtracking over valid blow-down candidates whose targets
    still refine ``coarse``; a path is complete when the current fan equals
    ``coarse`` structurally. With ``require_fano``, intermediates strictly
    between the endpoints must be Fano. With ``exhaustive``, all complete
    paths are returned, otherwise only the first; the empty tuple means the
    search finished and no factorization exists. Candidate order (by
    contracted ray name, then collection) makes results deterministic.
    """
    if not refines(fine, coarse):
        raise NotARefinementError(
            "the first fan does not refine the second; no equivariant"
            " morphism to factor"
        )
    coarse_key = structural_key(coarse)
    dead_ends: set = set()
    paths: list[FactorizationPath] = []

    def flagged(step_fans):
        return tuple(
            FactorStep(
                ray,
                center,
                f,
                mori.is_fano(f)[0],
                mori.is_projective(f),
            )
            for ray, center, f in step_fans
        )

    def dfs(current: Fan, trail) -> bool:
        key = structural_key(current)
        if key == coarse_key:
            paths.append(FactorizationPath(flagged(trail)))
            return True
        if key in dead_ends:
            return False
        found = False
        for cand in blow_down_candidates(current):
            if not cand.valid:
                continue
            target = cand.target
            if not refines(target, coarse):
                continue
            if (
                require_fano
                and structural_key(target) != coarse_key
                and not mori.is_fano(target)[0]
            ):
                continue
            # collection rays survive the contraction, so their names name
            # the blow-up center in the target as well
            step = (
                cand.ray_name(current),
                current.cone_names(cand.relation.collection),
                target,
            )
            if dfs(target, trail + [step]):
                found = True
                if not exhaustive:
                    return True
        if not found:
            dead_ends.add(key)
        return found

    dfs(fine, [])
    return tuple(paths)
