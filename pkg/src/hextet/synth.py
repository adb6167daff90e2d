"""Synthetic tetrahedral meshes built from realized hexahedra.

Used by tests and by the bundled sample data: single realized catalog
hexahedra, mirror-glued pairs (the mirror shares the facet triangulation,
so the glue is conforming), and the classic 6-tet cube grid.
"""

from __future__ import annotations

import numpy as np

from .meshio import TetMesh, build_mesh
from .template import FACET_CYCLES


def mesh_from_realization(points: dict, tets) -> TetMesh:
    """Mesh of one realized hexahedron; labels 1..8 become vertices 0..7."""
    verts = [tuple(float(c) for c in points[v]) for v in range(1, 9)]
    mesh_tets = [tuple(v - 1 for v in t) for t in tets]
    return build_mesh(verts, mesh_tets, name="hex")


def mirror_glued_pair(points: dict, tets, facet_idx: int = 5) -> TetMesh:
    """Two copies of a realized hexahedron glued across a facet.

    The second copy is the mirror image through the plane fitted to the
    facet, so the shared quadrilateral keeps its diagonal and the glue is
    conforming.  Facet 5 is (5, 6, 7, 8); its plane must not cut the
    hexahedron for the construction to give a valid mesh, which holds for
    the near-cube realizations shipped with the package.
    """
    cyc = FACET_CYCLES[facet_idx]
    p = {v: np.array([float(c) for c in points[v]]) for v in range(1, 9)}
    a, b, c = p[cyc[0]], p[cyc[1]], p[cyc[2]]
    n = np.cross(b - a, c - a)
    n = n / np.linalg.norm(n)

    def mirror(x):
        return x - 2.0 * np.dot(x - a, n) * n

    verts = [tuple(p[v]) for v in range(1, 9)]
    index = {v: v - 1 for v in range(1, 9)}
    mirror_index = {}
    for v in range(1, 9):
        if v in cyc:
            mirror_index[v] = index[v]
        else:
            mirror_index[v] = len(verts)
            verts.append(tuple(mirror(p[v])))
    mesh_tets = [tuple(index[v] for v in t) for t in tets]
    mesh_tets += [tuple(mirror_index[v] for v in t) for t in tets]
    return build_mesh(verts, mesh_tets, name="glued-pair")


def cube_grid_mesh(nx: int = 1, ny: int = 1, nz: int = 1) -> TetMesh:
    """Axis-aligned (nx, ny, nz) grid of unit cubes, each split into the
    six tets around the main diagonal."""
    def vid(i, j, k):
        return (i * (ny + 1) + j) * (nz + 1) + k

    verts = [
        (float(i), float(j), float(k))
        for i in range(nx + 1)
        for j in range(ny + 1)
        for k in range(nz + 1)
    ]
    splits = (
        (0, 1, 3, 7), (0, 1, 5, 7), (0, 2, 3, 7),
        (0, 2, 6, 7), (0, 4, 5, 7), (0, 4, 6, 7),
    )
    tets = []
    for i in range(nx):
        for j in range(ny):
            for k in range(nz):
                corner = [
                    vid(i + (b & 1), j + ((b >> 1) & 1), k + ((b >> 2) & 1))
                    for b in range(8)
                ]
                for s in splits:
                    tets.append(tuple(corner[x] for x in s))
    return build_mesh(verts, tets, name=f"grid-{nx}x{ny}x{nz}")


def reference_cube_5tet_mesh() -> TetMesh:
    """Unit cube split into 5 tets (regular core), in template labeling."""
    from .exactgeom import reference_cube_points

    pts = reference_cube_points()
    tets = ((1, 2, 4, 5), (2, 3, 4, 7), (2, 4, 5, 7), (2, 5, 6, 7), (4, 5, 7, 8))
    return mesh_from_realization({v: pts[v] for v in pts}, tets)
