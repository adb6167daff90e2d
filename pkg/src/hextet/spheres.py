"""3-sphere triangulations with 9 vertices: ingestion and vertex deletion.

The classical dataset lists 1296 triangulations, one per line, as facet
lists on labels 1..9.  Deleting a vertex and its star from a sphere leaves
a 3-ball with 8 vertices; balls whose boundary matches a (relabeled)
hexahedron boundary reproduce the catalog, which is the independent
cross-check of the direct enumeration.
"""

from __future__ import annotations

import re
from itertools import combinations

from .boundary import all_boundaries
from .template import EDGES
from .triangulation import boundary_triangles, canonical_key


class SphereParseError(ValueError):
    def __init__(self, line_no: int, msg: str):
        super().__init__(f"line {line_no}: {msg}")
        self.line_no = line_no


def parse_sphere_line(line: str, line_no: int = 0) -> tuple[tuple[int, ...], ...]:
    """One triangulation as a facet list.

    Accepts either whitespace/comma separated groups of 4 labels or the
    compact digit-string format (labels 1..9, '123 456 789'-style tuples
    written as contiguous digits).
    """
    text = line.strip()
    if not text:
        raise SphereParseError(line_no, "empty line")
    groups: list[tuple[int, ...]] = []
    bracketed = re.findall(r"[\[\(\{]([^\]\)\}]*)[\]\)\}]", text)
    if bracketed:
        for grp in bracketed:
            labels = tuple(int(x) for x in re.findall(r"\d+", grp))
            groups.append(labels)
    else:
        tokens = re.findall(r"\d+", text)
        if all(len(t) == 4 for t in tokens):
            # each token is one tet written as 4 digits
            groups = [tuple(int(ch) for ch in t) for t in tokens]
        elif len(tokens) % 4 == 0 and all(len(t) == 1 for t in tokens):
            for i in range(0, len(tokens), 4):
                groups.append(tuple(int(t) for t in tokens[i : i + 4]))
        else:
            raise SphereParseError(line_no, f"cannot split {len(tokens)} labels into tets")
    tets = []
    for g in groups:
        if len(g) != 4 or len(set(g)) != 4:
            raise SphereParseError(line_no, f"not a 4-tuple: {g}")
        if not all(1 <= v <= 9 for v in g):
            raise SphereParseError(line_no, f"vertex out of range 1..9 in {g}")
        tets.append(tuple(sorted(g)))
    return tuple(sorted(tets))


def ingest_sphere_data(path) -> list[tuple[tuple[int, ...], ...]]:
    """Parse a facet-list file of 3-sphere triangulations on labels 1..9."""
    spheres = []
    with open(path, "r", encoding="utf-8") as fh:
        for i, line in enumerate(fh, start=1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            tets = parse_sphere_line(line, i)
            _check_closed(tets, i)
            spheres.append(tets)
    return spheres


def _check_closed(tets, line_no: int):
    cov: dict[tuple, int] = {}
    for t in tets:
        for tri in combinations(t, 3):
            cov[tri] = cov.get(tri, 0) + 1
    bad = [tri for tri, c in cov.items() if c != 2]
    if bad:
        raise SphereParseError(line_no, f"triangle {bad[0]} not in exactly 2 tets")


def delete_vertex_link(sphere_tets, v: int) -> tuple[tuple[int, ...], ...]:
    """Remove vertex v and all incident tets; relabel the rest 1..8
    order-preservingly."""
    if not 1 <= v <= 9:
        raise ValueError("vertex must be in 1..9")
    survivors = sorted(x for x in {u for t in sphere_tets for u in t} if x != v)
    relabel = {old: new for new, old in enumerate(survivors, start=1)}
    out = tuple(
        sorted(
            tuple(sorted(relabel[u] for u in t)) for t in sphere_tets if v not in t
        )
    )
    return out


def cone_over_boundary(tets, apex: int = 9) -> tuple[tuple[int, ...], ...]:
    """Close a ball into a sphere by coning its boundary over a new vertex."""
    cone = [tuple(sorted(tri + (apex,))) for tri in boundary_triangles(tets)]
    return tuple(sorted(tuple(sorted(t)) for t in list(tets) + cone))


_ALL_BOUNDARY_TRIS: set[tuple] | None = None


def _boundary_tri_sets() -> set[tuple]:
    global _ALL_BOUNDARY_TRIS
    if _ALL_BOUNDARY_TRIS is None:
        _ALL_BOUNDARY_TRIS = {b.triangles for b in all_boundaries()}
    return _ALL_BOUNDARY_TRIS


def hexahedron_relabelings(ball_tets):
    """Relabelings of an 8-vertex ball whose boundary becomes a hexahedron
    boundary triangulation; yields the relabeled tet sets.

    The assignment maps template labels to ball labels so that the 12
    template edges land on boundary edges of the ball; the 6 leftover
    boundary edges must then be facet diagonals, which the final triangle
    set comparison checks.
    """
    btris = boundary_triangles(ball_tets)
    if len(btris) != 12:
        return
    bedges = {e for tri in btris for e in combinations(tri, 2)}
    if len(bedges) != 18:
        return
    adjacency: dict[int, set[int]] = {v: set() for v in range(1, 9)}
    for a, b in bedges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    template_adj: dict[int, set[int]] = {v: set() for v in range(1, 9)}
    for a, b in EDGES:
        template_adj[a].add(b)
        template_adj[b].add(a)

    def extend(image: dict[int, int], used: set[int]):
        if len(image) == 8:
            yield dict(image)
            return
        v = len(image) + 1
        for cand in range(1, 9):
            if cand in used:
                continue
            ok = True
            for u in template_adj[v]:
                if u in image and image[u] not in adjacency[cand]:
                    ok = False
                    break
            if ok:
                image[v] = cand
                used.add(cand)
                yield from extend(image, used)
                del image[v]
                used.discard(cand)

    for image in extend({}, set()):
        inv = {image[v]: v for v in image}
        relabeled = tuple(
            sorted(tuple(sorted(inv[u] for u in t)) for t in ball_tets)
        )
        if tuple(sorted(boundary_triangles(relabeled))) in _boundary_tri_sets():
            yield relabeled


def catalog_keys_from_spheres(spheres) -> set[tuple]:
    """Canonical keys of all hexahedron triangulations obtainable by vertex
    deletion from the given spheres.

    Balls containing a boundary tetrahedron (a tet on the four corners of a
    facet) are not hexahedron triangulations and are skipped.
    """
    from .triangulation import InvalidTriangulation

    keys = set()
    seen_balls = set()
    for tets in spheres:
        for v in range(1, 10):
            ball = delete_vertex_link(tets, v)
            if ball in seen_balls:
                continue
            seen_balls.add(ball)
            for relabeled in hexahedron_relabelings(ball):
                try:
                    keys.add(canonical_key(relabeled))
                except InvalidTriangulation:
                    pass
                break  # one compatible relabeling decides the class
    return keys
