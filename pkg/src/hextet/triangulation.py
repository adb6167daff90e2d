"""Triangulations as tet sets: canonical forms, orbits, orientations."""

from __future__ import annotations

from itertools import combinations

from .template import (
    FACET_SET,
    SYMMETRY_GROUP,
    relabel_tets,
)


class InvalidTriangulation(ValueError):
    pass


def normalize_tets(tets) -> tuple[tuple[int, ...], ...]:
    """Sorted tuple of sorted 4-tuples; rejects facet quadruples and dups."""
    out = tuple(sorted(tuple(sorted(t)) for t in tets))
    seen = set()
    for t in out:
        if len(t) != 4 or len(set(t)) != 4:
            raise InvalidTriangulation(f"not a tetrahedron: {t}")
        if not all(1 <= v <= 8 for v in t):
            raise InvalidTriangulation(f"label out of range in {t}")
        if t in FACET_SET:
            raise InvalidTriangulation(f"boundary tetrahedron {t}")
        if t in seen:
            raise InvalidTriangulation(f"duplicate tetrahedron {t}")
        seen.add(t)
    return out


def canonical_key(tets) -> tuple[tuple[int, ...], ...]:
    """Lexicographically minimal relabeling of the tet set over all 48 symmetries.

    Two triangulations have equal keys iff one is the image of the other
    under a template symmetry.
    """
    tets = normalize_tets(tets)
    return min(relabel_tets(tets, g) for g in SYMMETRY_GROUP)


def orbit(tets) -> set[tuple[tuple[int, ...], ...]]:
    """All distinct labeled images of the tet set under the 48 symmetries."""
    tets = normalize_tets(tets)
    return {relabel_tets(tets, g) for g in SYMMETRY_GROUP}


def triangles_of(tets):
    """Triangle -> list of containing tets (triangle as sorted 3-tuple)."""
    cov: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for t in tets:
        for tri in combinations(t, 3):
            cov.setdefault(tri, []).append(t)
    return cov


def boundary_triangles(tets) -> tuple[tuple[int, ...], ...]:
    """Triangles lying in exactly one tet."""
    cov = triangles_of(tets)
    return tuple(sorted(tri for tri, ts in cov.items() if len(ts) == 1))


def consistent_orientation(tets) -> dict[tuple[int, ...], int]:
    """Orient every tet so adjacent tets induce opposite orientations on
    their shared triangle.

    Returns {tet: +1/-1} meaning the sorted vertex order is an even (+1) or
    odd (-1) permutation of the chosen orientation.  Normalized so the
    lexicographically smallest tet gets +1.  Raises if the tet adjacency
    graph is disconnected or no consistent orientation exists.
    """
    tets = normalize_tets(tets)
    cov = triangles_of(tets)
    orient: dict[tuple[int, ...], int] = {tets[0]: 1}
    stack = [tets[0]]
    while stack:
        cur = stack.pop()
        for tri in combinations(cur, 3):
            holders = cov[tri]
            if len(holders) != 2:
                continue
            other = holders[0] if holders[1] == cur else holders[1]
            # Removing the apex at 0-based position k of a sorted 4-tuple
            # induces (-1)^k times the sorted triangle orientation.
            apex_cur = next(v for v in cur if v not in tri)
            apex_oth = next(v for v in other if v not in tri)
            sign_cur = -1 if cur.index(apex_cur) % 2 else 1
            sign_oth = -1 if other.index(apex_oth) % 2 else 1
            needed = -orient[cur] * sign_cur * sign_oth
            if other in orient:
                if orient[other] != needed:
                    raise InvalidTriangulation("complex is not orientable")
            else:
                orient[other] = needed
                stack.append(other)
    if len(orient) != len(tets):
        raise InvalidTriangulation("tet adjacency graph is disconnected")
    if orient[tets[0]] != 1:
        orient = {t: -s for t, s in orient.items()}
    return orient
