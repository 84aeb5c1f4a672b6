import copy
import itertools
import json
from fractions import Fraction
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artinlab.artincx import TypedComplex, build_ball
from artinlab.checks import (CONSISTENT, INCONCLUSIVE, VIOLATED, DiagramNotTree, DiskDiagram, Face,
                             InvalidEmbedding, OrderedVertexView, ShapeMismatch, TargetNotSpherical,
                             audit_hypotheses, check_4wheel, check_bowtie_free, check_flag, check_helly,
                             combine, f4_to_e6, gauss_bonnet, girth_report, order_relation,
                             replay_witness, shortest_cycle, subdivide, thicken, verify_homomorphism)
from artinlab.checks.helly import graph_to_json
from artinlab.checks.report import CheckReport
from artinlab.diagram import DynkinDiagram, GeneratorMap, named_diagram

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "artinlab" / "fixtures"
A3 = DynkinDiagram.linear([3, 3], ["a", "b", "c"])
B3 = DynkinDiagram.linear([4, 3], ["s1", "s2", "s3"])


def fixture(name):
    return json.loads((FIXTURES / f"{name}.json").read_text())


def closed(types, vertices, simplices):
    """A closed complex from {name: type} and simplices over names."""
    return TypedComplex.from_json({"types": types, "vertices": vertices, "simplices": simplices})


# ---------------------------------------------------------------------------
# posets

def test_path_is_not_transitive():
    data = fixture("order_path")
    view, rep = order_relation(TypedComplex.from_json(data["complex"]), data["order"])
    assert rep.status == VIOLATED
    assert replay_witness(rep.witness).status == VIOLATED


def test_simplex_is_a_chain():
    cx = closed(["1", "2", "3"], {"x": "1", "y": "2", "z": "3"}, [["x", "y", "z"]])
    view, rep = order_relation(cx, ["1", "2", "3"])
    assert rep.status == CONSISTENT
    assert len(view.relation_pairs()) == 3


def test_bowtie_fixtures():
    k22 = fixture("bowtie_k22")
    rep = check_bowtie_free(OrderedVertexView(TypedComplex.from_json(k22["complex"]), k22["order"]))
    assert rep.status == VIOLATED
    hexagon = fixture("bowtie_hexagon")
    rep = check_bowtie_free(OrderedVertexView(TypedComplex.from_json(hexagon["complex"]), hexagon["order"]))
    assert rep.status == CONSISTENT


def test_flag_fixture_and_modes():
    data = fixture("flag_hexagon")
    view = OrderedVertexView(TypedComplex.from_json(data["complex"]), data["order"])
    rep = check_flag(view, "upward")
    assert rep.status == VIOLATED
    assert replay_witness(rep.witness).status == VIOLATED
    with pytest.raises(ValueError):
        check_flag(view, "sideways")


def test_reversed_view_swaps_flag_directions():
    data = fixture("flag_hexagon")
    cx = TypedComplex.from_json(data["complex"])
    up = check_flag(OrderedVertexView(cx, data["order"]), "upward")
    down = check_flag(OrderedVertexView(cx, list(reversed(data["order"]))), "downward")
    assert up.status == down.status == VIOLATED


def brute_bowtie(view, core):
    """All x1, x2 < y1, y2 inside the core lacking a middle element anywhere in the ball."""
    less = lambda a, b: view.level[a] < view.level[b] and view.cx.adjacent(a, b)
    le = lambda a, b: a == b or less(a, b)
    n = view.cx.n_vertices
    quads = bad = 0
    for x1, x2 in itertools.combinations(core, 2):
        for y1, y2 in itertools.combinations(core, 2):
            if len({x1, x2, y1, y2}) < 4:
                continue
            if all(less(x, y) for x in (x1, x2) for y in (y1, y2)):
                quads += 1
                if not any(le(x1, z) and le(x2, z) and le(z, y1) and le(z, y2) for z in range(n)):
                    bad += 1
    return quads, bad


@pytest.mark.parametrize("d,order", [(A3, ["a", "b", "c"]), (A3, ["b", "a", "c"]), (B3, ["s1", "s2", "s3"])])
def test_bowtie_counts_match_brute_force(d, order):
    b = build_ball(d, None, 3)
    view = OrderedVertexView(b, order, 1)
    rep = check_bowtie_free(view)
    quads, bad = brute_bowtie(view, b.core(1))
    assert rep.statistics["quadruples"] == quads
    assert rep.statistics.get("without_middle", 0) == bad


def test_a3_linear_order_small_core():
    b = build_ball(A3, None, 3)
    view, rep = order_relation(b, ["a", "b", "c"], 1)
    assert rep.status == CONSISTENT
    assert check_bowtie_free(view).status == CONSISTENT
    assert check_flag(view, "upward").status == CONSISTENT


def test_thicken_of_a_chamber_is_complete():
    cx = closed(["1", "2", "3"], {"x": "1", "y": "2", "z": "3"}, [["x", "y", "z"]])
    th = thicken(OrderedVertexView(cx, ["1", "2", "3"]))
    assert th.graph.number_of_edges() == 3 and not th.uncertain


def test_thicken_joins_vertices_between_bounds():
    cx = closed(["1", "2", "3"], {"x": "1", "y1": "2", "y2": "2", "z": "3"},
                [["x", "y1", "z"], ["x", "y2", "z"]])
    th = thicken(OrderedVertexView(cx, ["1", "2", "3"]))
    names = {cx.vertex_names.index(n): n for n in cx.vertex_names}
    edges = {frozenset((names[u], names[v])) for u, v in th.graph.edges}
    assert frozenset(("y1", "y2")) in edges


def test_thicken_marks_truncated_vertices():
    b = build_ball(A3, None, 3)
    th = thicken(OrderedVertexView(b, ["a", "b", "c"], 1))
    assert th.uncertain == set(range(b.n_vertices)) - set(b.core(1))


# ---------------------------------------------------------------------------
# 4-wheels

def test_fourwheel_fixtures():
    for name, status in (("fourwheel_inside", CONSISTENT), ("fourwheel_outside", VIOLATED)):
        data = fixture(name)
        rep = check_4wheel(TypedComplex.from_json(data["complex"]), tree=[tuple(e) for e in data["typeTree"]])
        assert rep.status == status
        if status == VIOLATED:
            assert replay_witness(rep.witness).status == VIOLATED


def test_fourwheel_a3_ball():
    b = build_ball(A3, None, 3)
    assert check_4wheel(b, core_radius=1).status == CONSISTENT


def test_fourwheel_needs_a_tree():
    data = fixture("fourwheel_inside")
    cx = TypedComplex.from_json(data["complex"])
    with pytest.raises(DiagramNotTree):
        check_4wheel(cx)
    with pytest.raises(DiagramNotTree):
        check_4wheel(cx, tree=[("a", "b"), ("b", "c"), ("c", "a")])


# ---------------------------------------------------------------------------
# subdivisions

def test_b_subdivision_counts():
    d = named_diagram("D4")
    b = build_ball(d, None, 2)
    sb = subdivide(b, "B", ("s1", "s3"), ("s2", "s4"))
    t1, t3 = b.type_names.index("s1"), b.type_names.index("s3")
    pairs = {tuple(sorted((vs[t1], vs[t3]))) for vs in b.chamber_vertices}
    assert len(sb.midpoints) == len(pairs)
    assert len(sb.simplices) == 2 * len(b.simplices)
    assert sb.n_vertices == b.n_vertices + len(pairs)
    # every new top simplex has one vertex of each integer type 1..4
    assert all(sorted(sb.tvalue[v] for v in s) == [1, 2, 3, 4] for s in sb.simplices)


def test_d_subdivision_multiplies_by_four():
    d = DynkinDiagram.from_edges(["a1", "a2", "b", "c1", "c2"],
                                 [("a1", "b", 3), ("a2", "b", 3), ("c1", "b", 3), ("c2", "b", 3)])
    b = build_ball(d, None, 1)
    sb = subdivide(b, "D", (("a1", "a2"), ("c1", "c2")), ("b",))
    assert len(sb.simplices) == 4 * len(b.simplices)
    assert set(sb.tvalue) == {1, 2, 3, 4, 5}


def test_subdivision_shape_errors():
    b = build_ball(A3, None, 1)
    with pytest.raises(ShapeMismatch):
        subdivide(b, "B", ("a", "b"), ("c",))
    with pytest.raises(ShapeMismatch):
        subdivide(b, "B", ("a", "x"), ("b",))
    with pytest.raises(ShapeMismatch):
        subdivide(b, "Q", ("a", "c"), ("b",))
    with pytest.raises(ShapeMismatch):
        subdivide(build_ball(A3, ["a", "c"], 1), "B", ("a", "c"), ())


# ---------------------------------------------------------------------------
# Helly and girth

def brute_helly(g):
    """Every maximal family of pairwise meeting balls has a common vertex."""
    dist = dict(nx.all_pairs_shortest_path_length(g))
    nodes = list(g.nodes)
    diam = nx.diameter(g)
    balls = {}
    for v in nodes:
        for r in range(diam + 1):
            balls.setdefault(frozenset(u for u in nodes if dist[v][u] <= r), None)
    balls = list(balls)
    meet = nx.Graph()
    meet.add_nodes_from(range(len(balls)))
    meet.add_edges_from((i, j) for i, j in itertools.combinations(range(len(balls)), 2) if balls[i] & balls[j])
    return all(frozenset.intersection(*[balls[i] for i in c]) for c in nx.find_cliques(meet))


def test_helly_examples():
    assert check_helly(nx.path_graph(5)).status == CONSISTENT
    assert check_helly(nx.complete_graph(4)).status == CONSISTENT
    assert check_helly(nx.cycle_graph(3)).status == CONSISTENT
    for k in (4, 5, 6):
        rep = check_helly(nx.cycle_graph(k))
        assert rep.status == VIOLATED
        assert replay_witness(rep.witness).status == VIOLATED


@settings(max_examples=60)
@given(st.integers(2, 7), st.data())
def test_helly_matches_ball_cliques(n, data):
    edges = data.draw(st.sets(st.sampled_from(list(itertools.combinations(range(n), 2)))))
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    if not nx.is_connected(g):
        return
    assert (check_helly(g).status == CONSISTENT) == brute_helly(g)


def test_helly_truncated_failure_is_inconclusive():
    g = nx.cycle_graph(4)
    assert check_helly(g, safe=[0, 1, 2, 3]).status == INCONCLUSIVE


@settings(max_examples=40)
@given(st.integers(3, 8), st.data())
def test_shortest_cycle_matches_networkx(n, data):
    edges = data.draw(st.sets(st.sampled_from(list(itertools.combinations(range(n), 2)))))
    g = nx.Graph(list(edges))
    cyc = shortest_cycle(g)
    expected = nx.girth(g) if g.number_of_nodes() else float("inf")
    if cyc is None:
        assert expected == float("inf")
    else:
        assert len(cyc) == expected
        assert all(g.has_edge(cyc[k], cyc[(k + 1) % len(cyc)]) for k in range(len(cyc)))


def test_girth_report_and_replay():
    rep = girth_report(nx.cycle_graph(6), 7)
    assert rep.status == VIOLATED
    assert replay_witness(rep.witness).status == VIOLATED
    assert girth_report(nx.cycle_graph(6), 6).status == CONSISTENT
    assert girth_report(nx.path_graph(4), 6).status == CONSISTENT


# ---------------------------------------------------------------------------
# Gauss-Bonnet

@pytest.mark.parametrize("name", ["gb_flat_triangle", "gb_flat_square", "gb_flat_hexagon",
                                  "gb_hyperbolic_triangle", "gb_hyperbolic_pair"])
def test_gauss_bonnet_fixtures(name):
    data = fixture(name)
    rep = gauss_bonnet(DiskDiagram.from_json(data), data["geometry"])
    assert rep.ok and rep.exact


def test_flat_triangle_curvatures():
    rep = gauss_bonnet(DiskDiagram.from_json(fixture("gb_flat_triangle")))
    assert set(rep.curvature.values()) == {Fraction(2, 3)}
    assert rep.total == 2


def random_angles(draw, k, total):
    """k positive fractions summing to ``total``."""
    cuts = sorted(draw(st.lists(st.integers(1, 59), min_size=k - 1, max_size=k - 1, unique=True)))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [60])]
    return [Fraction(p, 60) * total for p in parts]


@st.composite
def fan_disks(draw, geometry):
    k = draw(st.integers(3, 9))
    faces = []
    for i in range(1, k - 1):
        total = 1 if geometry == "flat" else Fraction(draw(st.integers(10, 55)), 60)
        faces.append(Face(["p0", f"p{i}", f"p{i + 1}"], random_angles(draw, 3, total)))
    return DiskDiagram(faces)


@settings(max_examples=40)
@given(fan_disks("flat"))
def test_gauss_bonnet_flat_fans(dd):
    assert gauss_bonnet(dd, "flat").ok


@settings(max_examples=40)
@given(fan_disks("hyperbolic"))
def test_gauss_bonnet_hyperbolic_fans(dd):
    rep = gauss_bonnet(dd, "hyperbolic")
    assert rep.ok and rep.exact


@settings(max_examples=20)
@given(st.integers(1, 4), st.integers(1, 4))
def test_gauss_bonnet_square_grids(m, n):
    faces = [Face([f"{i},{j}", f"{i + 1},{j}", f"{i + 1},{j + 1}", f"{i},{j + 1}"], ["1/2"] * 4)
             for i in range(m) for j in range(n)]
    assert gauss_bonnet(DiskDiagram(faces)).ok


def test_invalid_disks():
    with pytest.raises(InvalidEmbedding):
        gauss_bonnet(DiskDiagram([Face(["a", "b", "c"], ["1/2", "1/2", "1/2"])]))
    annulus = [Face([f"o{i}", f"o{(i + 1) % 4}", f"i{(i + 1) % 4}", f"i{i}"], ["1/2"] * 4) for i in range(4)]
    with pytest.raises(InvalidEmbedding):
        gauss_bonnet(DiskDiagram(annulus))
    with pytest.raises(InvalidEmbedding):
        gauss_bonnet(DiskDiagram([Face(["a", "b", "c"], ["1/3"] * 3)]), "hyperbolic")
    with pytest.raises(InvalidEmbedding):
        gauss_bonnet(DiskDiagram([Face(["a", "b", "c"], ["1/3"] * 3)]), "spherical")


# ---------------------------------------------------------------------------
# homomorphisms

def test_identity_is_a_homomorphism():
    f = GeneratorMap(A3, A3, {s: (s,) for s in A3.vertices})
    assert verify_homomorphism(f).status == CONSISTENT


def test_f4_into_e6():
    f, sigma = f4_to_e6()
    rep = verify_homomorphism(f, sigma)
    assert rep.status == CONSISTENT
    assert rep.statistics["relations"] == 6 and rep.statistics["images_fixed"] == 4


def test_bad_map_is_violated_and_replays():
    data = fixture("hom_a3_bad")
    rep = replay_witness(data)
    assert rep.status == VIOLATED
    assert replay_witness(rep.witness).status == VIOLATED


def test_non_spherical_target_rejected():
    tri = DynkinDiagram.from_edges("abc", [("a", "b", 3), ("b", "c", 3), ("c", "a", 3)])
    with pytest.raises(TargetNotSpherical):
        verify_homomorphism(GeneratorMap(tri, tri, {s: (s,) for s in tri.vertices}))


# ---------------------------------------------------------------------------
# audits

def test_audit_ori_link_b3_tilde():
    d = DynkinDiagram.from_edges(["b1", "b2", "b3", "b4"], [("b1", "b3", 3), ("b2", "b3", 3), ("b3", "b4", 4)])
    for which in ("ori_link0", "ori_link"):
        rep = audit_hypotheses(d, list(d.vertices), which, radius=3)
        assert rep.status == CONSISTENT, rep.text()


def test_audit_rejects_wrong_shape():
    with pytest.raises(ShapeMismatch):
        audit_hypotheses(A3, ["a", "b", "c"], "ori_link2", radius=2)
    with pytest.raises(ValueError):
        audit_hypotheses(A3, ["a", "b", "c"], "nonsense")


# ---------------------------------------------------------------------------
# replay and reports

@pytest.mark.parametrize("name", ["bowtie_k22", "flag_hexagon", "order_path", "fourwheel_outside",
                                  "helly_c4", "girth_hexagon", "hom_a3_bad"])
def test_negative_fixtures_replay_violated(name):
    assert replay_witness(fixture(name)).status == VIOLATED


def test_tampered_certificate_is_inconclusive():
    tri = DynkinDiagram.from_edges("abc", [("a", "b", 3), ("b", "c", 3), ("c", "a", 3)])
    b = build_ball(tri, None, 3)
    view, rep = order_relation(b, ["a", "b", "c"], 1)
    assert rep.status == VIOLATED and "certificate" in rep.witness
    assert replay_witness(rep.witness).status == VIOLATED
    bad = copy.deepcopy(rep.witness)
    bad["certificate"]["chamber_yz"] = bad["certificate"]["chamber_xy"]
    assert replay_witness(bad).status == INCONCLUSIVE


def test_combine_precedence():
    c = CheckReport("x", CONSISTENT)
    i = CheckReport("x", INCONCLUSIVE)
    v = CheckReport("x", VIOLATED)
    assert combine("all", [c, c]).status == CONSISTENT
    assert combine("all", [c, i]).status == INCONCLUSIVE
    assert combine("all", [i, v, c]).status == VIOLATED
    assert [r.exit_code for r in (c, v, i)] == [0, 1, 2]


def test_report_json_is_serializable():
    rep = check_helly(nx.cycle_graph(4))
    text = json.dumps(rep.to_json(), sort_keys=True)
    assert json.loads(text)["witness"]["graph"] == graph_to_json(nx.cycle_graph(4))
