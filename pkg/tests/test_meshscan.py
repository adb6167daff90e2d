import random

import numpy as np
import pytest

from hextet.meshio import build_mesh
from hextet.meshscan import (
    classify_occurrences,
    corner_jacobians,
    find_hexahedra,
    find_hexahedra_brute,
    pattern_table_row,
    validity_proxy,
)
from hextet.synth import (
    cube_grid_mesh,
    mesh_from_realization,
    mirror_glued_pair,
    reference_cube_5tet_mesh,
)


def test_self_detection_of_five_tet_cube(catalog):
    mesh = reference_cube_5tet_mesh()
    occ = find_hexahedra(mesh)
    assert len(occ) == 1
    assert occ[0].corner_set == tuple(range(8))
    counts = classify_occurrences(occ, catalog)
    assert counts == {"5_A": 1}
    assert validity_proxy(occ[0], mesh)


def test_single_grid_cube_is_the_six_tet_fan(catalog):
    mesh = cube_grid_mesh(1, 1, 1)
    occ = find_hexahedra(mesh)
    assert len(occ) == 1
    assert occ[0].corner_set == tuple(range(8))
    cid = list(classify_occurrences(occ, catalog))[0]
    assert cid.startswith("6_")


def test_disjoint_union_counts_match_construction(catalog, witnesses):
    by_id = {w.class_id: w for w in witnesses}
    chosen = ["5_A", "6_A", "9_A"]
    verts, tets = [], []
    offset = 0
    for i, cid in enumerate(chosen):
        w = by_id[cid]
        m = mesh_from_realization(w.points, w.tets)
        verts.extend((m.vertices + np.array([6.0 * i, 0, 0])).tolist())
        tets.extend((m.tets + offset).tolist())
        offset += m.n_vertices
    mesh = build_mesh(verts, tets)
    occ = find_hexahedra(mesh)
    assert len(occ) == len(chosen)
    counts = classify_occurrences(occ, catalog)
    assert counts == {cid: 1 for cid in chosen}


def test_glued_pair_self_detects_both_copies(catalog, witnesses):
    w = next(x for x in witnesses if x.class_id == "5_A")
    mesh = mirror_glued_pair(w.points, w.tets)
    occ = find_hexahedra(mesh)
    counts = classify_occurrences(occ, catalog)
    assert counts["5_A"] == 2  # gluing may add spanning hexahedra on top


def test_brute_force_oracle_agreement_small_meshes(catalog):
    meshes = [
        reference_cube_5tet_mesh(),
        cube_grid_mesh(1, 1, 1),
        cube_grid_mesh(2, 1, 1),
    ]
    for mesh in meshes:
        fast = find_hexahedra(mesh)
        brute = find_hexahedra_brute(mesh)
        assert [o.corner_set for o in fast] == [o.corner_set for o in brute]
        assert [o.class_key for o in fast] == [o.class_key for o in brute]


def test_vertex_relabeling_leaves_occurrences_invariant(catalog):
    mesh = cube_grid_mesh(2, 1, 1)
    rng = random.Random(5)
    perm = list(range(mesh.n_vertices))
    rng.shuffle(perm)
    inv = np.argsort(perm)
    verts = mesh.vertices[inv]
    tets = [[perm[v] for v in t] for t in mesh.tets]
    shuffled = build_mesh(verts, tets)
    occ1 = find_hexahedra(mesh)
    occ2 = find_hexahedra(shuffled)
    keys1 = sorted(tuple(sorted(perm[v] for v in o.corner_set)) for o in occ1)
    keys2 = sorted(o.corner_set for o in occ2)
    assert keys1 == keys2
    assert sorted(str(o.class_key) for o in occ1) == sorted(
        str(o.class_key) for o in occ2
    )


def test_validity_proxy_flags_inverted_cube():
    mesh = reference_cube_5tet_mesh()
    occ = find_hexahedra(mesh)[0]
    # swap two corners of the map: the trilinear element inverts
    bad_corners = list(occ.corners)
    bad_corners[0], bad_corners[1] = bad_corners[1], bad_corners[0]
    from hextet.meshscan import HexOccurrence

    bad = HexOccurrence(tuple(bad_corners), occ.tet_ids, occ.class_key)
    assert validity_proxy(occ, mesh)
    assert not validity_proxy(bad, mesh)


def test_corner_jacobians_match_direct_determinants():
    rng = np.random.default_rng(7)
    cube = np.array(
        [[b & 1, (b >> 1) & 1, (b >> 2) & 1] for b in range(8)], dtype=float
    )
    shear = np.array([[1.0, 0.4, 0.1], [0.0, 1.0, 0.3], [0.0, 0.0, 1.0]])
    corners = cube @ shear.T + rng.normal(0, 0.05, (8, 3))
    dets = corner_jacobians(corners)
    for k in range(8):
        du = corners[k | 1] - corners[k & ~1]
        dv = corners[k | 2] - corners[k & ~2]
        dw = corners[k | 4] - corners[k & ~4]
        assert dets[k] == pytest.approx(np.linalg.det(np.stack((du, dv, dw))))


def test_pattern_table_row_counts_distinct_classes():
    row = pattern_table_row({"5_A": 3, "6_A": 1, "6_B": 2, "11_C": 1})
    assert row[5] == 1 and row[6] == 2 and row[11] == 1 and row[7] == 0


def test_empty_mesh_yields_nothing(catalog):
    mesh = build_mesh(np.zeros((0, 3)), [])
    assert find_hexahedra(mesh) == []
    assert classify_occurrences([], catalog) == {}


def test_bundled_eleven_hex_mesh_matches_construction_record(catalog):
    import json
    from pathlib import Path

    from hextet.meshio import load_mesh

    data = Path(__file__).resolve().parent.parent / "data" / "meshes"
    if not (data / "eleven-hexes.mesh").exists():
        import pytest

        pytest.skip("bundled sample meshes not present")
    mesh = load_mesh(data / "eleven-hexes.mesh")
    record = json.loads((data / "eleven-hexes.classes.json").read_text())
    occ = find_hexahedra(mesh)
    counts = classify_occurrences(occ, catalog)
    assert counts == {cid: 1 for cid in record}
