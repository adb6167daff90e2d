"""Combinatorial hexahedron template: labels, edges, facets, symmetries.

The hexahedron is the combinatorial 3-cube on labels 1..8.  All other
modules share this vocabulary: the 12 template edges, the 6 quadrilateral
facets (with a fixed cyclic order each), the reference corner coordinates
of the unit cube, and the 48-element relabeling group that maps the edge
set onto itself.
"""

from __future__ import annotations

from itertools import combinations, permutations

LABELS = (1, 2, 3, 4, 5, 6, 7, 8)

# Facets as cyclic vertex sequences; consecutive pairs are template edges,
# the two diagonals of each facet are not.
FACET_CYCLES = (
    (1, 2, 3, 4),
    (1, 2, 6, 5),
    (1, 4, 8, 5),
    (2, 3, 7, 6),
    (3, 4, 8, 7),
    (5, 6, 7, 8),
)

FACETS = tuple(tuple(sorted(f)) for f in FACET_CYCLES)
FACET_SET = frozenset(FACETS)

EDGES = tuple(
    sorted(
        {
            tuple(sorted((cyc[i], cyc[(i + 1) % 4])))
            for cyc in FACET_CYCLES
            for i in range(4)
        }
    )
)

# For each facet, its two diagonals and the boundary triangles each induces.
# Choosing diagonal {a,c} of cycle (a,b,c,d) splits the quad into abc / acd.
FACET_DIAGONALS = tuple(
    (
        tuple(sorted((cyc[0], cyc[2]))),
        tuple(sorted((cyc[1], cyc[3]))),
    )
    for cyc in FACET_CYCLES
)


def facet_triangles(facet_idx: int, diagonal: tuple[int, int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two boundary triangles of a facet once `diagonal` is chosen."""
    cyc = FACET_CYCLES[facet_idx]
    a, c = diagonal
    others = [v for v in cyc if v != a and v != c]
    t1 = tuple(sorted((a, c, others[0])))
    t2 = tuple(sorted((a, c, others[1])))
    return t1, t2


# Reference corner positions of the unit cube, indexed by label.
CORNER_COORDS = {
    1: (0, 0, 0),
    2: (1, 0, 0),
    3: (1, 1, 0),
    4: (0, 1, 0),
    5: (0, 0, 1),
    6: (1, 0, 1),
    7: (1, 1, 1),
    8: (0, 1, 1),
}


def _compute_symmetry_group() -> tuple[tuple[int, ...], ...]:
    edge_set = set(EDGES)
    group = []
    for perm in permutations(LABELS):
        image = (0,) + perm  # image[v] = perm applied to label v
        if all(
            tuple(sorted((image[a], image[b]))) in edge_set for a, b in EDGES
        ):
            group.append(image)
    return tuple(group)


# Each group element g is a length-9 tuple with g[0] unused, g[v] = image of v.
SYMMETRY_GROUP = _compute_symmetry_group()


def compose(g, h):
    """g after h: (g*h)[v] = g[h[v]]."""
    return (0,) + tuple(g[h[v]] for v in LABELS)


def invert(g):
    inv = [0] * 9
    for v in LABELS:
        inv[g[v]] = v
    return tuple(inv)


def relabel_tet(tet, g):
    return tuple(sorted(g[v] for v in tet))


def relabel_tets(tets, g):
    return tuple(sorted(relabel_tet(t, g) for t in tets))


ALL_TRIANGLES = tuple(combinations(LABELS, 3))
TRIANGLE_INDEX = {t: i for i, t in enumerate(ALL_TRIANGLES)}

ALL_TETS = tuple(combinations(LABELS, 4))

# Tets allowed in a hexahedron triangulation: every 4-subset except the six
# facet quadruples (those are not strictly inside the hexahedron).
ADMISSIBLE_TETS = tuple(t for t in ALL_TETS if t not in FACET_SET)
