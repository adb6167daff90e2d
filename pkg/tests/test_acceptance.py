"""Acceptance suite: one test per criterion, each printing a PASS line.

Criteria 1-2 and 4-9 run unconditionally; criterion 3 needs the external
9-vertex 3-sphere dataset and is skipped (with a message) when the file is
absent.  Shipped artifacts under data/ are used where the criterion allows
it; enumeration, satisfiability and the cube oracle are recomputed from
scratch here.
"""

import json
import os
import time
from collections import Counter
from pathlib import Path

import numpy as np
import pytest

from hextet.boundary import boundary_classes
from hextet.catalog import build_catalog, counts_by_tets
from hextet.decomp import certificate, decomposition_graph
from hextet.exactgeom import (
    chirotope_of_points,
    hull_volume,
    in_convex_position,
    tiles_reference_cube,
    total_volume,
)
from hextet.finalpoly import FinalPolynomialCertificate
from hextet.realize import admissible_chirotopes, realize_class
from hextet.sat import Solver
from hextet.satenc import encode_instance
from hextet.template import SYMMETRY_GROUP, relabel_tets
from hextet.triangulation import canonical_key, orbit

DATA = Path(__file__).resolve().parent.parent / "data"

EXPECTED_DISTRIBUTION = {
    5: 1, 6: 5, 7: 5, 8: 7, 9: 13, 10: 20, 11: 35, 12: 30, 13: 28, 14: 19, 15: 11,
}


def _report(criterion, text):
    print(f"\nACCEPTANCE {criterion}: PASS - {text}")


def test_criterion_1_enumeration_counts():
    t0 = time.time()
    entries = build_catalog(workers=2)
    elapsed = time.time() - t0
    assert len(entries) == 174
    assert counts_by_tets(entries) == EXPECTED_DISTRIBUTION
    assert elapsed < 300, f"enumeration took {elapsed:.0f}s (budget 300s)"
    _report(1, f"174 classes, distribution 1,5,5,7,13,20,35,30,28,19,11 ({elapsed:.0f}s)")


def test_criterion_2_boundary_classes():
    t0 = time.time()
    classes, class_of = boundary_classes()
    elapsed = time.time() - t0
    assert len(class_of) == 64
    assert len(classes) == 7
    assert sum(len(v) for v in classes.values()) == 64
    assert elapsed < 1.0, f"boundary classification took {elapsed:.2f}s (budget 1s)"
    _report(2, f"64 labeled boundaries in 7 classes ({elapsed*1000:.0f}ms)")


def test_criterion_3_sphere_crosscheck(catalog):
    path = os.environ.get("HEXTET_SPHERE_DATA", str(DATA / "spheres-9v.txt"))
    if not Path(path).exists():
        pytest.skip(
            "the 1296-triangulation 3-sphere dataset is not bundled; set "
            "HEXTET_SPHERE_DATA to its facet-list file to run this criterion"
        )
    from hextet.spheres import catalog_keys_from_spheres, ingest_sphere_data

    spheres = ingest_sphere_data(path)
    assert len(spheres) == 1296
    keys = catalog_keys_from_spheres(spheres)
    assert keys == {canonical_key(e.tets) for e in catalog}
    _report(3, "vertex-deletion route reproduces the identical 174-class catalog")


def test_criterion_4_sat_realizability(catalog):
    t0 = time.time()
    unsat = []
    for e in catalog:
        inst = encode_instance(e.tets)
        s = Solver(inst.n_vars, inst.clauses)
        res = s.solve()
        assert res is not None
        if not res:
            unsat.append(e.id)
    elapsed = time.time() - t0
    assert len(catalog) - len(unsat) == 171
    assert len(unsat) == 3
    assert all(cid.startswith("15_") for cid in unsat)
    assert elapsed < 1800, f"174 instances took {elapsed:.0f}s (budget 1800s)"
    _report(4, f"171 satisfiable, 3 unsatisfiable (all 15 tets: {unsat}) in {elapsed:.0f}s")


def test_criterion_5_convex_variant(catalog, convex_summary, store):
    t0 = time.time()
    sat_infeasible = []
    for e in catalog:
        inst = encode_instance(e.tets, convex=True)
        s = Solver(inst.n_vars, inst.clauses)
        if s.solve() is False:
            sat_infeasible.append(e.id)
    plain_unsat = {"15_A", "15_B", "15_J"}
    convex_only_unsat = [c for c in sat_infeasible if c not in plain_unsat]
    assert len(convex_only_unsat) == 12

    # the one SAT-feasible but certified non-realizable class
    certified = convex_summary["certified"]
    assert len(certified) == 1
    the_class = certified[0]
    assert the_class.startswith("15_")
    assert the_class not in sat_infeasible

    # its certificate is shipped; re-verify exactly against the live
    # enumeration of its convex chirotopes
    e = next(x for x in catalog if x.id == the_class)
    chis = list(admissible_chirotopes(e.tets, convex=True, limit=64))
    certs = [
        FinalPolynomialCertificate.from_dict(d)
        for d in json.loads(store.get("certificates-convex").read_text())
        if d["classId"] == the_class
    ]
    assert {c.chirotope for c in certs} == set(chis)
    assert all(c.verify() for c in certs)

    lacking = sorted(convex_only_unsat) + [the_class]
    split = Counter(int(c.split("_")[0]) for c in lacking)
    assert split == Counter({12: 2, 13: 2, 14: 5, 15: 4})
    assert convex_summary["undecided"] == []
    elapsed = time.time() - t0
    _report(
        5,
        "13 classes lack convex realizations (2/2/5/4 at 12/13/14/15 tets); "
        f"12 SAT-infeasible, 1 certified by final polynomial ({the_class}) "
        f"in {elapsed:.0f}s",
    )


def test_criterion_6_realization_witnesses(catalog, witnesses, plain_summary):
    t0 = time.time()
    # every one of the 171 realizable classes ships an exactly verified witness
    realizable = {
        e.id for e in catalog if e.id not in set(plain_summary["satInfeasible"])
    }
    shipped = {w.class_id for w in witnesses}
    assert shipped == realizable
    assert len(shipped) == 171
    for w in witnesses:
        ok, detail = w.verify()
        assert ok, (w.class_id, detail)

    # classes with at most 12 tets must realize under default budgets, live
    failures = []
    for e in catalog:
        if e.tet_count > 12 or e.id not in realizable:
            continue
        res = realize_class(e.id, e.tets, seed=0)
        if res.status != "realized":
            failures.append(e.id)
    assert not failures, f"default-budget realization failed for {failures}"
    elapsed = time.time() - t0
    _report(
        6,
        f"171 shipped witnesses verify exactly; all {sum(1 for e in catalog if e.tet_count <= 12)} "
        f"classes with <= 12 tets realized live under default budgets ({elapsed:.0f}s)",
    )


def test_criterion_7_cube_oracle(catalog):
    t0 = time.time()
    labeled = 0
    classes = []
    five_tet_labeled = 0
    for e in catalog:
        hits = [t for t in orbit(e.tets) if tiles_reference_cube(t)]
        if hits:
            classes.append(e.id)
            labeled += len(hits)
            if e.tet_count == 5:
                five_tet_labeled += len(hits)
    assert labeled == 74
    assert len(classes) == 6
    assert five_tet_labeled == 2
    elapsed = time.time() - t0
    _report(
        7,
        f"the exact unit cube admits 74 labeled triangulations in 6 classes "
        f"({classes}), 2 of them with 5 tets ({elapsed:.0f}s)",
    )


def test_criterion_8a_chirotope_roundtrip(witnesses):
    for w in witnesses:
        assert chirotope_of_points(w.points) == w.chirotope
    _report(8, "(a) chirotope-of-points o realize is the identity on all 171 witnesses")


def test_criterion_8b_canonical_form_invariance(catalog):
    for e in catalog:
        key = canonical_key(e.tets)
        assert canonical_key(key) == key
        for g in SYMMETRY_GROUP:
            assert canonical_key(relabel_tets(e.tets, g)) == key
    _report(8, "(b) canonical form idempotent and invariant over 174 classes x 48 symmetries")


def test_criterion_8c_volume_equals_hull(witnesses, store):
    """Tet volumes must sum to the hull volume wherever that is attainable.

    For witnesses whose boundary triangles lie on the hull the equality is
    exact.  It is provably unattainable for the 13 classes without convex
    realizations (a vertex interior to the hull lies on the triangulation
    boundary, so the union is a strict subset) and for 13_AA (its only
    hull-boundary chirotope carries a shipped final polynomial); for those
    the strict deficit and the proof artifacts are asserted instead.
    """
    equal, structural = [], []
    for w in witnesses:
        vs, hv = total_volume(w.points, w.tets), hull_volume(w.points)
        if w.hull_boundary:
            assert vs == hv, (w.class_id, str(vs), str(hv))
            equal.append(w.class_id)
        else:
            assert vs < hv, (w.class_id, "expected a strict hull deficit")
            structural.append(w.class_id)
            if not w.convex:
                assert not in_convex_position(w.chirotope), w.class_id
    assert len(equal) == 157
    assert len(structural) == 14
    hull_certs = [
        FinalPolynomialCertificate.from_dict(d)
        for d in json.loads(store.get("certificates-hull-boundary").read_text())
    ]
    assert {d["classId"] for d in
            json.loads(store.get("certificates-hull-boundary").read_text())} == {"13_AA"}
    assert all(c.verify() for c in hull_certs)
    _report(
        8,
        "(c) volume sum == hull volume for all 157 hull-boundary witnesses; "
        "the 14 exceptions (13 non-convex classes + 13_AA) are certified "
        "structural, not search failures",
    )


def test_criterion_8d_graph_classification_agrees(catalog):
    certs = {}
    for e in catalog:
        certs[e.id] = certificate(e.graph)
    assert len(set(certs.values())) == 174
    import random

    rng = random.Random(9)
    for e in rng.sample(catalog, 20):
        g = rng.choice(SYMMETRY_GROUP)
        relabeled = relabel_tets(e.tets, g)
        assert certificate(decomposition_graph(relabeled)) == certs[e.id]
    _report(
        8,
        "(d) 174 pairwise distinct decomposition-graph certificates, each "
        "invariant over its symmetry orbit",
    )


def test_criterion_9_meshscan_oracle_equivalence(catalog):
    from scipy.spatial import Delaunay

    from hextet.meshio import build_mesh
    from hextet.meshscan import find_hexahedra, find_hexahedra_brute
    from hextet.synth import cube_grid_mesh

    t0 = time.time()
    meshes = [cube_grid_mesh(1, 1, 1), cube_grid_mesh(2, 1, 1), cube_grid_mesh(3, 1, 1)]
    rng = np.random.default_rng(42)
    for i in range(7):
        n = int(rng.integers(10, 21))
        pts = rng.random((n, 3))
        tri = Delaunay(pts)
        meshes.append(build_mesh(pts, [tuple(s) for s in tri.simplices]))
    # a jittered grid, to get meshes that actually contain hexahedra
    base = cube_grid_mesh(2, 2, 1)
    jitter = rng.normal(0, 0.04, base.vertices.shape)
    meshes.append(build_mesh(base.vertices + jitter, base.tets.tolist()))

    assert len(meshes) >= 10
    total_occ = 0
    for mesh in meshes:
        assert mesh.n_vertices <= 20, mesh.name
        fast = find_hexahedra(mesh)
        brute = find_hexahedra_brute(mesh)
        assert [o.corner_set for o in fast] == [o.corner_set for o in brute]
        assert [o.class_key for o in fast] == [o.class_key for o in brute]
        total_occ += len(fast)
    elapsed = time.time() - t0
    _report(
        9,
        f"{len(meshes)} randomized meshes (<= 20 vertices): detector output "
        f"equals brute-force template matching exactly; {total_occ} occurrences "
        f"cross-checked ({elapsed:.0f}s)",
    )
