"""Exhaustive enumeration of hexahedron triangulations by backtracking.

For a fixed boundary triangulation, candidate tets are the 64 admissible
4-subsets.  The search keeps a coverage state per triangle: each of the 12
boundary triangles must end covered exactly once, every other triangle 0
or 2 times.  At each node we pick one deficient triangle (a boundary
triangle still uncovered, or an interior triangle covered once) and branch
over the tets that could supply the missing cover.

Every reachable state determines its branching triangle, and a legal
superset can contain at most one candidate resolving it, so each final tet
set is generated along exactly one path: the search is exhaustive and
duplicate-free.  Saturated dual-graph fragments (all triangles at their
cap) can never be attached to again and are pruned while deficits remain.

Coverage states are bitmasks over the 56 triangles; tets are indices into
the 64 admissible tets with precomputed triangle masks.
"""

from __future__ import annotations

from itertools import combinations

from .balls import ball_defect
from .boundary import BoundaryTriangulation, all_boundaries
from .template import ADMISSIBLE_TETS, ALL_TRIANGLES, TRIANGLE_INDEX

_N_TRIS = len(ALL_TRIANGLES)
_TET_TRIS = tuple(
    tuple(TRIANGLE_INDEX[tri] for tri in combinations(t, 3)) for t in ADMISSIBLE_TETS
)
_TET_TRIMASK = tuple(sum(1 << k for k in tris) for tris in _TET_TRIS)
_TRI_TETS: tuple[tuple[int, ...], ...] = tuple(
    tuple(i for i, t in enumerate(ADMISSIBLE_TETS) if set(ALL_TRIANGLES[k]) <= set(t))
    for k in range(_N_TRIS)
)

MAX_TETS_DEFAULT = 15
MIN_TETS = 5


def enumerate_triangulations(
    boundary: BoundaryTriangulation,
    max_tets: int = MAX_TETS_DEFAULT,
    validate: bool = True,
) -> list[tuple[tuple[int, ...], ...]]:
    """All tet sets forming a valid ball with the given boundary."""
    bmask = 0
    for tri in boundary.triangles:
        bmask |= 1 << TRIANGLE_INDEX[tri]
    not_bmask = ~bmask

    tet_trimask = _TET_TRIMASK
    tri_tets = _TRI_TETS
    results: list[tuple[tuple[int, ...], ...]] = []
    boundary_tris = boundary.triangles
    chosen: list[int] = []

    def saturated(last: int, c1: int, c2: int, blocked: int, used: int) -> bool:
        comp = 1 << last
        stack = [last]
        tris_seen = 0
        while stack:
            ti = stack.pop()
            tris_seen |= tet_trimask[ti]
            m = tet_trimask[ti] & c2
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                for other in tri_tets[j]:
                    ob = 1 << other
                    if used & ob and not comp & ob:
                        comp |= ob
                        stack.append(other)
        return tris_seen & ~blocked == 0

    def recurse(last: int, c1: int, c2: int, used: int):
        blocked = (c1 & bmask) | c2
        deficient = (bmask & ~(c1 | c2)) | (c1 & not_bmask)
        if not deficient:
            if MIN_TETS <= len(chosen) <= max_tets:
                tets = tuple(sorted(ADMISSIBLE_TETS[i] for i in chosen))
                if not validate or ball_defect(tets, boundary_tris) is None:
                    results.append(tets)
            return
        if len(chosen) >= max_tets:
            return
        if last >= 0 and saturated(last, c1, c2, blocked, used):
            return
        # Most-constrained deficient triangle first.
        best = None
        m = deficient
        while m:
            k = (m & -m).bit_length() - 1
            m &= m - 1
            cands = [
                ti
                for ti in tri_tets[k]
                if not used >> ti & 1 and not tet_trimask[ti] & blocked
            ]
            if best is None or len(cands) < len(best):
                best = cands
                if not cands:
                    return
                if len(cands) == 1:
                    break
        for ti in best:
            tm = tet_trimask[ti]
            chosen.append(ti)
            recurse(ti, (c1 | tm) & ~(c1 & tm), c2 | (c1 & tm), used | 1 << ti)
            chosen.pop()

    recurse(-1, 0, 0, 0)
    results.sort()
    return results


def enumerate_all_labeled(
    max_tets: int = MAX_TETS_DEFAULT,
) -> dict[tuple, list[tuple[tuple[int, ...], ...]]]:
    """Labeled triangulations for each of the 64 boundaries."""
    return {
        b.key(): enumerate_triangulations(b, max_tets=max_tets)
        for b in all_boundaries()
    }
