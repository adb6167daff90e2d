"""Decomposition graphs of hexahedron triangulations.

One node per tet; a black edge joins tets sharing a triangle, a grey edge
joins the two tets carrying the two boundary triangles of one facet.
Parallel edges are kept (same pair may get one black and up to two grey
edges), every node has total degree 4, and there are exactly 6 grey edges.

Graphs are compared by a canonical certificate computed with color
refinement plus individualization; `certificate(a) == certificate(b)` iff
the graphs are isomorphic by a color- and multiplicity-preserving node
bijection.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boundary import from_triangles
from .template import FACETS
from .triangulation import boundary_triangles, normalize_tets, triangles_of


@dataclass(frozen=True)
class DecompGraph:
    n: int
    black: tuple[tuple[int, int], ...]  # sorted pairs, each at most once
    grey: tuple[tuple[int, int], ...]  # sorted pairs, multiplicity kept

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for a, b in self.black + self.grey:
            deg[a] += 1
            deg[b] += 1
        return deg


def decomposition_graph(tets, boundary=None) -> DecompGraph:
    """Build the edge-colored multigraph of a triangulation.

    `boundary` may be given to pin the expected boundary; by default it is
    derived from the triangle coverage.  Nodes are indexed by the position
    of each tet in the sorted tet list.
    """
    tets = normalize_tets(tets)
    idx = {t: i for i, t in enumerate(tets)}
    cov = triangles_of(tets)

    btris = boundary_triangles(tets)
    if boundary is not None:
        if set(boundary.triangles) != set(btris):
            raise ValueError("boundary does not match the triangulation")
    else:
        boundary = from_triangles(btris)

    black = []
    for tri, holders in cov.items():
        if len(holders) == 2:
            a, b = sorted((idx[holders[0]], idx[holders[1]]))
            black.append((a, b))
        elif len(holders) > 2 or (len(holders) == 1 and tri not in btris):
            raise ValueError(f"bad triangle coverage at {tri}")

    grey = []
    btri_set = set(btris)
    for fi in range(len(FACETS)):
        facet_tris = [tri for tri in btri_set if set(tri) <= set(FACETS[fi])]
        if len(facet_tris) != 2:
            raise ValueError(f"facet {FACETS[fi]} does not carry 2 triangles")
        holders = sorted(idx[cov[tri][0]] for tri in facet_tris)
        grey.append((holders[0], holders[1]))

    g = DecompGraph(len(tets), tuple(sorted(black)), tuple(sorted(grey)))
    if any(d != 4 for d in g.degrees()):
        raise ValueError("decomposition graph degree is not 4 everywhere")
    if len(g.grey) != 6:
        raise ValueError("expected exactly 6 grey edges")
    return g


def _neighbor_profile(g: DecompGraph, coloring: list[int]) -> list[tuple]:
    prof: list[list] = [[] for _ in range(g.n)]
    for color, edges in (("b", g.black), ("g", g.grey)):
        for a, b in edges:
            prof[a].append((color, coloring[b]))
            prof[b].append((color, coloring[a]))
    return [tuple(sorted(p)) for p in prof]


def _refine(g: DecompGraph, coloring: list[int]) -> list[int]:
    while True:
        prof = _neighbor_profile(g, coloring)
        keys = [(coloring[v], prof[v]) for v in range(g.n)]
        order = sorted(set(keys))
        new = [order.index(k) for k in keys]
        if new == coloring:
            return new
        coloring = new


def _encode(g: DecompGraph, order: list[int]) -> tuple:
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    black = tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in g.black))
    grey = tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in g.grey))
    return (g.n, black, grey)


def certificate(g: DecompGraph) -> tuple:
    """Canonical form, invariant under color-preserving isomorphism."""
    best: list[tuple | None] = [None]

    def search(coloring: list[int]):
        coloring = _refine(g, coloring)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(coloring):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            order = sorted(range(g.n), key=lambda v: coloring[v])
            enc = _encode(g, order)
            if best[0] is None or enc < best[0]:
                best[0] = enc
            return
        for v in target:
            split = list(coloring)
            split[v] = -1  # individualize v ahead of its cell
            search(split)

    search([0] * g.n)
    assert best[0] is not None
    return best[0]


def graph_isomorphic(a: DecompGraph, b: DecompGraph) -> bool:
    if a.n != b.n or len(a.black) != len(b.black) or len(a.grey) != len(b.grey):
        return False
    return certificate(a) == certificate(b)


def graph_isomorphic_brute(a: DecompGraph, b: DecompGraph) -> bool:
    """Reference check by trying all node bijections (small graphs only)."""
    from itertools import permutations

    if a.n != b.n:
        return False
    bb = (tuple(sorted(b.black)), tuple(sorted(b.grey)))
    for perm in permutations(range(a.n)):
        img_black = tuple(
            sorted(tuple(sorted((perm[x], perm[y]))) for x, y in a.black)
        )
        img_grey = tuple(sorted(tuple(sorted((perm[x], perm[y]))) for x, y in a.grey))
        if (img_black, img_grey) == bb:
            return True
    return False
