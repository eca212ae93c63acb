"""Exact integer and rational linear algebra for lattice geometry.

Everything here is exact: integers are arbitrary precision and rational
results use `fractions.Fraction`, so yes/no answers (unimodularity,
feasibility, strict positivity) are decisions, never approximations.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DimensionMismatchError, ZeroVectorError

IntVector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]


def primitive_part(v: Sequence[int]) -> tuple[IntVector, int]:
    """Return (w, g) with v = g*w, g the gcd of the entries and w primitive."""
    vec = tuple(int(c) for c in v)
    if not any(vec):
        raise ZeroVectorError("the zero vector has no primitive part")
    g = gcd(*vec)
    return tuple(c // g for c in vec), g


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise DimensionMismatchError("determinant needs a square matrix")
    m = [[int(x) for x in r] for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss: the division is exact by construction
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def is_unimodular(basis: Sequence[Sequence[int]]) -> bool:
    """True iff the n given n-vectors form a Z-basis (determinant is +-1)."""
    vs = [tuple(v) for v in basis]
    if not vs:
        raise DimensionMismatchError("empty basis")
    n = len(vs[0])
    if len(vs) != n or any(len(v) != n for v in vs):
        raise DimensionMismatchError(
            f"expected {n} vectors of length {n}, got {len(vs)}"
        )
    return determinant(vs) in (1, -1)


def unimodular_inverse(rows: Sequence[Sequence[int]]) -> tuple[IntVector, ...]:
    """Exact inverse of a unimodular integer matrix (given and returned as rows).

    Raises ValueError when the matrix is not invertible over the integers.
    """
    n = len(rows)
    aug = [
        [Fraction(rows[i][j]) for j in range(n)]
        + [Fraction(1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = [row[n:] for row in aug]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


def solve_in_smooth_cone(
    generators: Sequence[Sequence[int]], point: Sequence[int]
) -> list[int] | None:
    """Integer coordinates of ``point`` over generators forming part of a Z-basis.

    Returns the unique integers c with point = sum c_i * g_i when the point
    lies in the generators' span with integral coordinates, else None.
    """
    gens = [tuple(g) for g in generators]
    pt = tuple(point)
    n = len(pt)
    if any(len(g) != n for g in gens):
        raise DimensionMismatchError("generator length differs from point length")
    if not gens:
        return [] if not any(pt) else None
    k = len(gens)
    # augmented system: columns are the generators, last column the point
    aug = [
        [Fraction(gens[j][i]) for j in range(k)] + [Fraction(pt[i])]
        for i in range(n)
    ]
    row = 0
    for col in range(k):
        piv = next((r for r in range(row, n) if aug[r][col] != 0), None)
        if piv is None:
            return None  # dependent generators: no unique solution
        aug[row], aug[piv] = aug[piv], aug[row]
        p = aug[row][col]
        aug[row] = [x / p for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        row += 1
    for r in range(row, n):
        if aug[r][k] != 0:
            return None  # point outside the span
    coeffs = [aug[i][k] for i in range(k)]
    if any(c.denominator != 1 for c in coeffs):
        return None
    return [int(c) for c in coeffs]


def solve_eq_nonneg(
    rows: Sequence[Sequence[int | Fraction]], rhs: Sequence[int | Fraction]
) -> list[Fraction] | None:
    """Find x >= 0 with (rows) @ x = rhs, exactly; None when infeasible.

    Phase-1 simplex over Fraction with Bland's rule (entering: smallest
    eligible structural column; leaving: smallest basic index among the
    minimum ratios), which guarantees termination. Artificial variables
    never re-enter the basis.
    """
    m = len(rows)
    if m != len(rhs):
        raise DimensionMismatchError("row count differs from rhs length")
    if m == 0:
        raise DimensionMismatchError("need at least one equation")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise DimensionMismatchError("ragged constraint matrix")
    if n == 0:
        return [] if all(Fraction(b) == 0 for b in rhs) else None

    tab: list[list[Fraction]] = []
    for i in range(m):
        b = Fraction(rhs[i])
        row = [Fraction(x) for x in rows[i]]
        if b < 0:
            b = -b
            row = [-x for x in row]
        tab.append(row + [Fraction(1 if j == i else 0) for j in range(m)] + [b])
    basis = list(range(n, n + m))
    # objective row: minimize the sum of artificials; for structural columns
    # this equals the reduced cost, artificial columns are never candidates
    obj = [sum(tab[i][j] for i in range(m)) for j in range(n + m + 1)]

    while True:
        enter = next((j for j in range(n) if obj[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            t = tab[i][enter]
            if t > 0:
                ratio = tab[i][-1] / t
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave is None:  # cannot happen: obj[enter] > 0 forces a positive entry
            return None
        p = tab[leave][enter]
        tab[leave] = [x / p for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter

    if obj[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = tab[i][-1]
    return x


def nonneg_rational_combination(
    generators: Sequence[Sequence[int | Fraction]],
    target: Sequence[int | Fraction],
) -> list[Fraction] | None:
    """Nonnegative rationals lam with sum lam_i * g_i = target, or None."""
    gens = [tuple(g) for g in generators]
    tgt = tuple(target)
    n = len(tgt)
    if any(len(g) != n for g in gens):
        raise DimensionMismatchError("generators and target differ in length")
    if not gens:
        return [] if all(Fraction(t) == 0 for t in tgt) else None
    rows = [[g[i] for g in gens] for i in range(n)]
    return solve_eq_nonneg(rows, list(tgt))


def separating_functional(
    zero_on: Sequence[Sequence[int]],
    positive_on: Sequence[Sequence[int]],
    negative_on: Sequence[Sequence[int]],
) -> RationalVector | None:
    """A rational functional vanishing on, strictly positive on, and strictly
    negative on the three vector families respectively; None if none exists.

    Strictness is normalized to >= 1 resp. <= -1, which loses no generality
    for finitely many vectors.
    """
    zs = [tuple(v) for v in zero_on]
    ps = [tuple(v) for v in positive_on]
    ns = [tuple(v) for v in negative_on]
    every = zs + ps + ns
    if not every:
        raise DimensionMismatchError("no vectors given")
    n = len(every[0])
    if any(len(v) != n for v in every):
        raise DimensionMismatchError("mixed vector lengths")

    # variables: phi+ (n), phi- (n), one slack per strict constraint
    k = len(ps) + len(ns)
    rows = []
    rhs = []
    slot = 0
    for v in zs:
        rows.append(list(v) + [-c for c in v] + [0] * k)
        rhs.append(0)
    for v in ps:
        row = list(v) + [-c for c in v] + [0] * k
        row[2 * n + slot] = -1
        slot += 1
        rows.append(row)
        rhs.append(1)
    for v in ns:
        row = list(v) + [-c for c in v] + [0] * k
        row[2 * n + slot] = 1
        slot += 1
        rows.append(row)
        rhs.append(-1)
    sol = solve_eq_nonneg(rows, rhs)
    if sol is None:
        return None
    return tuple(sol[j] - sol[n + j] for j in range(n))


def strictly_positive_functional(
    vectors: Sequence[Sequence[int]],
) -> RationalVector | None:
    """A rational functional phi with phi(v) > 0 for every given vector.

    Exists iff the cone generated by the vectors is strictly convex
    (contains no line). None signals non-existence, decided exactly.
    """
    vs = [tuple(v) for v in vectors]
    if not vs:
        raise DimensionMismatchError("need at least one vector")
    if any(not any(v) for v in vs):
        raise ZeroVectorError("no functional is positive on the zero vector")
    return separating_functional([], vs, [])


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise DimensionMismatchError("dot product of unequal lengths")
    return sum(a * b for a, b in zip(u, v))
