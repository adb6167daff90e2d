"""Validation of tet sets as combinatorial 3-balls with a given boundary.

A candidate complex passes when:
  * every triangle lies in exactly 1 tet (boundary) or 2 tets (interior),
    and the once-covered triangles are exactly the requested boundary;
  * Euler characteristic V - E + F - T equals 1;
  * the link of every interior edge is a single cycle, the link of every
    boundary edge a single path ending at its two boundary triangles;
  * the link of every vertex is a triangulated disk;
  * the tet adjacency graph is connected.

Failures are reported as (code, simplex) so callers can tell which
invariant broke where.
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional


def ball_defect(tets, boundary_tris) -> Optional[tuple[str, tuple]]:
    """First violated ball invariant, or None when the complex is valid."""
    tets = sorted(tuple(sorted(t)) for t in tets)
    boundary = set(tuple(sorted(t)) for t in boundary_tris)
    if not tets:
        return ("empty", ())

    tri_cov: dict[tuple, list] = {}
    for t in tets:
        for tri in combinations(t, 3):
            tri_cov.setdefault(tri, []).append(t)

    for tri, holders in tri_cov.items():
        if len(holders) > 2:
            return ("triangle-overcovered", tri)
        if len(holders) == 1 and tri not in boundary:
            return ("interior-triangle-once", tri)
        if len(holders) == 2 and tri in boundary:
            return ("boundary-triangle-twice", tri)
    for tri in boundary:
        if tri not in tri_cov:
            return ("boundary-triangle-missing", tri)

    vertices = sorted({v for t in tets for v in t})
    edges = sorted({e for t in tets for e in combinations(t, 2)})
    V, E, F, T = len(vertices), len(edges), len(tri_cov), len(tets)
    if V - E + F - T != 1:
        return ("euler", (V, E, F, T))

    boundary_edges = {e for tri in boundary for e in combinations(tri, 2)}

    # Edge links: per containing tet the opposite edge contributes one link
    # edge between the two opposite vertices.
    for e in edges:
        link_edges = [
            tuple(v for v in t if v not in e) for t in tets if e[0] in t and e[1] in t
        ]
        deg: dict[int, int] = {}
        for a, b in link_edges:
            deg[a] = deg.get(a, 0) + 1
            deg[b] = deg.get(b, 0) + 1
        if e in boundary_edges:
            # Path: the two ends are the apexes of the two boundary triangles
            # containing e; inner vertices have degree 2.
            ends = sorted(
                next(v for v in tri if v not in e)
                for tri in boundary
                if e[0] in tri and e[1] in tri
            )
            if len(ends) != 2:
                return ("boundary-edge-triangles", e)
            odd = sorted(v for v, d in deg.items() if d == 1)
            if odd != ends or any(d > 2 for d in deg.values()):
                return ("boundary-edge-link", e)
            if len(link_edges) != len(deg) - 1:
                return ("boundary-edge-link-cycle", e)
        else:
            if any(d != 2 for d in deg.values()) or len(link_edges) != len(deg):
                return ("interior-edge-link", e)
        if not _connected_graph(deg.keys(), link_edges):
            return ("edge-link-disconnected", e)

    # Vertex links must be disks: connected surfaces with Euler number 1
    # whose boundary is a single cycle.
    for v in vertices:
        link_tris = [tuple(u for u in t if u != v) for t in tets if v in t]
        lv = {u for tri in link_tris for u in tri}
        le: dict[tuple, int] = {}
        for tri in link_tris:
            for le_ in combinations(tri, 2):
                le[le_] = le.get(le_, 0) + 1
        if any(c > 2 for c in le.values()):
            return ("vertex-link-edge", v)
        if len(lv) - len(le) + len(link_tris) != 1:
            return ("vertex-link-euler", v)
        rim = [e for e, c in le.items() if c == 1]
        rim_deg: dict[int, int] = {}
        for a, b in rim:
            rim_deg[a] = rim_deg.get(a, 0) + 1
            rim_deg[b] = rim_deg.get(b, 0) + 1
        if any(d != 2 for d in rim_deg.values()) or not _connected_graph(
            rim_deg.keys(), rim
        ):
            return ("vertex-link-boundary", v)
        if not _connected_graph(lv, le.keys()):
            return ("vertex-link-disconnected", v)

    # Tet adjacency through shared triangles.
    idx = {t: i for i, t in enumerate(tets)}
    adj = [[] for _ in tets]
    for holders in tri_cov.values():
        if len(holders) == 2:
            a, b = idx[holders[0]], idx[holders[1]]
            adj[a].append(b)
            adj[b].append(a)
    if not _connected_adj(adj):
        return ("dual-graph-disconnected", ())
    return None


def is_valid_ball(tets, boundary_tris) -> bool:
    return ball_defect(tets, boundary_tris) is None


def complex_counts(tets) -> tuple[int, int, int, int]:
    """(V, E, F, T) of the complex spanned by the tets."""
    tets = [tuple(sorted(t)) for t in tets]
    vertices = {v for t in tets for v in t}
    edges = {e for t in tets for e in combinations(t, 2)}
    tris = {tri for t in tets for tri in combinations(t, 3)}
    return len(vertices), len(edges), len(tris), len(tets)


def _connected_graph(nodes, edges) -> bool:
    nodes = list(nodes)
    if not nodes:
        return True
    adj: dict = {n: [] for n in nodes}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        for m in adj[stack.pop()]:
            if m not in seen:
                seen.add(m)
                stack.append(m)
    return len(seen) == len(nodes)


def _connected_adj(adj) -> bool:
    if not adj:
        return True
    seen = {0}
    stack = [0]
    while stack:
        for m in adj[stack.pop()]:
            if m not in seen:
                seen.add(m)
                stack.append(m)
    return len(seen) == len(adj)
