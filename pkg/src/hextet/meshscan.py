"""Detection and classification of hexahedra inside tetrahedral meshes.

A hexahedron occurrence is 8 mesh vertices mapped to the template labels
so that all 12 template edges are mesh edges, every facet is covered by
two mesh triangles across one of its diagonals, and the mesh tets spanned
by the corners form a catalog triangulation.

The detector grows corner maps from each seed vertex (label 1) through its
neighbors (labels 2, 4, 5) and common-neighbor completions (3, 6, 8, then
7); each geometric occurrence is reported once, keyed by its sorted corner
set.  `find_hexahedra_brute` is the independent oracle: it tries every
8-subset against all label bijections.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from .balls import ball_defect
from .boundary import from_triangles
from .catalog import CatalogEntry
from .kernels import jacobian_grid_min
from .meshio import TetMesh
from .template import CORNER_COORDS, EDGES, FACET_CYCLES
from .triangulation import boundary_triangles, canonical_key, normalize_tets

# template adjacency used by the growth order 1 -> (2,4,5) -> (3,6,8) -> 7
_ADJ = {v: set() for v in range(1, 9)}
for _a, _b in EDGES:
    _ADJ[_a].add(_b)
    _ADJ[_b].add(_a)

# binary corner order of the trilinear map: bit0 = u, bit1 = v, bit2 = w
TRILINEAR_LABEL_ORDER = tuple(
    sorted(CORNER_COORDS, key=lambda v: CORNER_COORDS[v][0] + 2 * CORNER_COORDS[v][1] + 4 * CORNER_COORDS[v][2])
)


class UnknownPatternError(ValueError):
    pass


@dataclass
class HexOccurrence:
    corners: tuple[int, ...]  # mesh vertex of template label i at index i-1
    tet_ids: tuple[int, ...]
    class_key: tuple
    class_id: str | None = None
    valid: bool | None = None

    @property
    def corner_set(self) -> tuple[int, ...]:
        return tuple(sorted(self.corners))


def _filling_tets(mesh: TetMesh, corner_map: dict[int, int]):
    """Mesh tets whose vertices all lie on the corners, as template tets."""
    inv = {m: t for t, m in corner_map.items()}
    cset = set(inv)
    ids, tets = [], []
    for v in cset:
        for ti in mesh.vertex_tets.get(v, ()):
            if ti in ids:
                continue
            tet = mesh.tets[ti]
            if all(int(u) in cset for u in tet):
                labeled = tuple(sorted(inv[int(u)] for u in tet))
                if labeled not in tets:
                    ids.append(ti)
                    tets.append(labeled)
    return tuple(ids), tuple(sorted(tets))


def _corner_map_valid(mesh: TetMesh, corners: dict[int, int]):
    """Check edges + facet triangles + filling; return occurrence pieces."""
    for a, b in EDGES:
        e = tuple(sorted((corners[a], corners[b])))
        if e not in mesh.edges:
            return None
    for cyc in FACET_CYCLES:
        found = 0
        for tri_labels in combinations(cyc, 3):
            tri = tuple(sorted(corners[l] for l in tri_labels))
            if tri in mesh.tri_tets:
                found += 1
        if found < 2:
            return None
    tet_ids, labeled = _filling_tets(mesh, corners)
    if not 5 <= len(labeled) <= 15:
        return None
    try:
        labeled = normalize_tets(labeled)
    except Exception:
        return None
    btris = boundary_triangles(labeled)
    try:
        from_triangles(btris)
    except ValueError:
        return None
    if ball_defect(labeled, btris) is not None:
        return None
    return tet_ids, labeled


def find_hexahedra(mesh: TetMesh) -> list[HexOccurrence]:
    """All hexahedron occurrences, one per 8-vertex corner set.

    The canonical corner map per occurrence prefers positive trilinear
    orientation at corner 1, then the lexicographically smallest tuple.
    """
    found: dict[tuple, list[tuple]] = {}
    adjacency = mesh.adjacency
    for v1 in range(mesh.n_vertices):
        nb1 = sorted(adjacency[v1])
        for v2, v4, v5 in permutations(nb1, 3):
            c3 = sorted(adjacency[v2] & adjacency[v4])
            c6 = sorted(adjacency[v2] & adjacency[v5])
            c8 = sorted(adjacency[v4] & adjacency[v5])
            for v3 in c3:
                if v3 in (v1, v2, v4, v5):
                    continue
                for v6 in c6:
                    if v6 in (v1, v2, v3, v4, v5):
                        continue
                    for v8 in c8:
                        if v8 in (v1, v2, v3, v4, v5, v6):
                            continue
                        for v7 in sorted(adjacency[v3] & adjacency[v6] & adjacency[v8]):
                            if v7 in (v1, v2, v3, v4, v5, v6, v8):
                                continue
                            corners = (v1, v2, v3, v4, v5, v6, v7, v8)
                            key = tuple(sorted(corners))
                            bucket = found.setdefault(key, [])
                            if corners not in bucket:
                                bucket.append(corners)
    return _resolve_occurrences(mesh, found)


def _resolve_occurrences(mesh: TetMesh, found: dict) -> list[HexOccurrence]:
    occurrences = []
    for key in sorted(found):
        best = None
        for corners in sorted(found[key]):
            cmap = {i + 1: corners[i] for i in range(8)}
            res = _corner_map_valid(mesh, cmap)
            if res is None:
                continue
            tet_ids, labeled = res
            orient_pos = _corner_orientation(mesh, corners) > 0
            cand = (not orient_pos, corners, tet_ids, labeled)
            if best is None or cand < best:
                best = cand
        if best is not None:
            _, corners, tet_ids, labeled = best
            occurrences.append(
                HexOccurrence(
                    corners=corners,
                    tet_ids=tuple(sorted(tet_ids)),
                    class_key=canonical_key(labeled),
                )
            )
    return occurrences


def _corner_orientation(mesh: TetMesh, corners) -> float:
    p = mesh.vertices
    o, a, b, c = corners[0], corners[1], corners[3], corners[4]
    return float(
        np.linalg.det(
            np.array([p[a] - p[o], p[b] - p[o], p[c] - p[o]], dtype=np.float64)
        )
    )


def find_hexahedra_brute(mesh: TetMesh) -> list[HexOccurrence]:
    """Oracle: all 8-subsets x all label bijections, no growth heuristics."""
    found: dict[tuple, list[tuple]] = {}
    verts = range(mesh.n_vertices)
    for subset in combinations(verts, 8):
        internal = {
            v: {u for u in mesh.adjacency[v] if u in subset} for v in subset
        }
        if any(len(internal[v]) < 3 for v in subset):
            continue

        def extend(image: list[int], used: set[int]):
            label = len(image) + 1
            if label > 8:
                yield tuple(image)
                return
            for cand in subset:
                if cand in used:
                    continue
                ok = True
                for u in _ADJ[label]:
                    if u <= len(image) and cand not in internal[image[u - 1]]:
                        ok = False
                        break
                if ok:
                    image.append(cand)
                    used.add(cand)
                    yield from extend(image, used)
                    image.pop()
                    used.discard(cand)

        bucket = found.setdefault(subset, [])
        for corners in extend([], set()):
            if corners not in bucket:
                bucket.append(corners)
    out = _resolve_occurrences(mesh, found)
    return out


def classify_occurrences(
    occurrences: list[HexOccurrence], catalog: list[CatalogEntry]
) -> dict[str, int]:
    """Per-class occurrence counts; raises UnknownPatternError when a tet
    set is not in the catalog (impossible on valid manifold input)."""
    by_key = {e.tets: e.id for e in catalog}
    counts: dict[str, int] = {}
    for occ in occurrences:
        cid = by_key.get(occ.class_key)
        if cid is None:
            raise UnknownPatternError(f"tet set not in catalog: {occ.class_key}")
        occ.class_id = cid
        counts[cid] = counts.get(cid, 0) + 1
    return counts


def pattern_table_row(counts: dict[str, int]) -> dict[int, int]:
    """Distinct patterns per tet count (the published tables' row shape)."""
    row = {n: 0 for n in range(5, 16)}
    seen = set()
    for cid in counts:
        if cid in seen:
            continue
        seen.add(cid)
        row[int(cid.split("_")[0])] += 1
    return row


def validity_proxy(occ: HexOccurrence, mesh: TetMesh, n_samples: int = 5) -> bool:
    """Positive corner Jacobians plus a positive n^3 trilinear sample grid.

    This is a documented proxy for hexahedron validity, weaker than the
    exact trilinear bound test; inverted or strongly folded elements fail.
    """
    corners = np.array(
        [mesh.vertices[occ.corners[l - 1]] for l in TRILINEAR_LABEL_ORDER],
        dtype=np.float64,
    )
    if corner_jacobians(corners).min() <= 0:
        return False
    return jacobian_grid_min(corners, n_samples=n_samples) > 0


def corner_jacobians(corners: np.ndarray) -> np.ndarray:
    """Jacobian determinant of the trilinear map at each of the 8 corners.

    `corners` in binary order (bit0 = u, bit1 = v, bit2 = w): at a corner
    the Jacobian columns are the differences along the three incident
    edges, signed toward increasing coordinates.
    """
    dets = np.empty(8)
    for k in range(8):
        su, sv, sw = k & 1, (k >> 1) & 1, (k >> 2) & 1
        du = (corners[k | 1] - corners[k & ~1]) * 1.0
        dv = corners[k | 2] - corners[k & ~2]
        dw = corners[k | 4] - corners[k & ~4]
        dets[k] = np.linalg.det(np.stack((du, dv, dw)))
    return dets
