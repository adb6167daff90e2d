import random

from hextet.decomp import (
    certificate,
    decomposition_graph,
    graph_isomorphic,
    graph_isomorphic_brute,
)
from hextet.template import SYMMETRY_GROUP, relabel_tets

FIVE_TET = ((1, 2, 4, 5), (2, 3, 4, 7), (2, 4, 5, 7), (2, 5, 6, 7), (4, 5, 7, 8))


def test_five_tet_graph_is_black_star_plus_grey_k4():
    g = decomposition_graph(FIVE_TET)
    assert g.n == 5
    assert len(g.black) == 4
    assert len(g.grey) == 6
    core = {b for e in g.black for b in e}
    counts = {v: sum(v in e for e in g.black) for v in core}
    hub = [v for v, c in counts.items() if c == 4]
    assert len(hub) == 1
    corners = sorted(set(range(5)) - set(hub))
    assert sorted(g.grey) == [
        (a, b) for i, a in enumerate(corners) for b in corners[i + 1:]
    ]
    assert g.degrees() == [4, 4, 4, 4, 4]


def test_all_graphs_have_six_grey_edges_and_degree_four(catalog):
    for e in catalog:
        assert len(e.graph.grey) == 6
        assert all(d == 4 for d in e.graph.degrees())


def test_every_seven_tet_class_has_an_interior_tet_node(catalog):
    # a tet with no boundary face shows up as a node with 4 black edges
    for e in catalog:
        if e.tet_count != 7:
            continue
        deg_black = [0] * e.graph.n
        deg_grey = [0] * e.graph.n
        for a, b in e.graph.black:
            deg_black[a] += 1
            deg_black[b] += 1
        for a, b in e.graph.grey:
            deg_grey[a] += 1
            deg_grey[b] += 1
        assert any(
            db == 4 and dg == 0 for db, dg in zip(deg_black, deg_grey)
        ), e.id


def test_graph_certificate_invariant_under_relabeling(catalog):
    rng = random.Random(3)
    for e in rng.sample(catalog, 12):
        cert = certificate(e.graph)
        for g in rng.sample(SYMMETRY_GROUP, 4):
            relabeled = relabel_tets(e.tets, g)
            assert certificate(decomposition_graph(relabeled)) == cert


def test_graph_isomorphic_to_itself_and_to_orbit_members(catalog):
    e = catalog[30]
    g1 = e.graph
    assert graph_isomorphic(g1, g1)
    img = decomposition_graph(relabel_tets(e.tets, SYMMETRY_GROUP[7]))
    assert graph_isomorphic(g1, img)


def test_different_node_counts_never_isomorphic(catalog):
    five = catalog[0].graph
    six = next(e for e in catalog if e.tet_count == 6).graph
    assert not graph_isomorphic(five, six)


def test_refinement_certificate_agrees_with_brute_force(catalog):
    small = [e for e in catalog if e.tet_count <= 7]
    rng = random.Random(5)
    for _ in range(20):
        a, b = rng.choice(small), rng.choice(small)
        fast = graph_isomorphic(a.graph, b.graph)
        assert fast == graph_isomorphic_brute(a.graph, b.graph)
        assert fast == (a.id == b.id)
