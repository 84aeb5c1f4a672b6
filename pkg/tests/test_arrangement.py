import itertools
from collections import defaultdict
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from artinlab.arrangement import (Arrangement, ArrangementError, BudgetExceeded, NotCentral, NotSubset,
                                  bounded_complex, collapse_map, compute_faces, coordinate_hyperplane, decone,
                                  dual_complex, h3_wall_system, walls_through)
from artinlab.coxeter import reflection_arrangement
from artinlab.diagram import DynkinDiagram, named_diagram


def rank2(m):
    return reflection_arrangement(DynkinDiagram.linear([m], ["a", "b"]))


@st.composite
def line_arrangements(draw, max_lines=6):
    lines, keys = [], set()
    for _ in range(draw(st.integers(1, max_lines))):
        a, b = draw(st.integers(-3, 3)), draw(st.integers(-3, 3))
        c = draw(st.integers(-3, 3))
        if a == b == 0:
            continue
        lead = Fraction(a) if a else Fraction(b)
        key = (a / lead, b / lead, c / lead)
        if key in keys:
            continue
        keys.add(key)
        lines.append(((a, b), c))
    assume(lines)
    return lines


def intersection_points(lines):
    """Points where lines meet, with the number of lines through each (exact rationals)."""
    through = defaultdict(set)
    for (i, ((a1, b1), c1)), (j, ((a2, b2), c2)) in itertools.combinations(enumerate(lines), 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        p = (Fraction(c1 * b2 - c2 * b1, det), Fraction(a1 * c2 - a2 * c1, det))
        through[p] |= {i, j}
    return through


# examples ------------------------------------------------------------------------

def test_two_orthogonal_lines():
    lat = compute_faces(Arrangement.central([(1, 0), (0, 1)]))
    assert len(lat) == 9 and len(lat.chambers) == 4 and lat.fvector == (1, 4, 4)


def test_rank_two_a2_faces_and_hexagon():
    lat = compute_faces(rank2(3))
    assert len(lat) == 13
    dc = dual_complex(lat)
    assert dc.fvector() == (6, 6, 1)
    walls = {dc.edge_wall(f) for f, _, _ in dc.edges}
    assert len(walls) == 3
    assert nx.cycle_basis(dc.graph) and len(nx.cycle_basis(dc.graph)[0]) == 6


def test_b3_chambers_equal_group_order():
    assert len(compute_faces(reflection_arrangement(named_diagram("B3"))).chambers) == 48


def test_single_hyperplane_in_line():
    dc = dual_complex(Arrangement.central([(1,)]))
    assert dc.fvector() == (2, 1)


def test_gate_examples_on_hexagon():
    dc = dual_complex(rank2(3))
    for x in dc.chambers:
        assert dc.gate_project(x, x) == x
    for F in dc.lattice.of_dim(1):
        for x in dc.chambers:
            ends = dc.cell_vertices[F]
            best = min(dc.distance(x, v) for v in ends)
            nearest = [v for v in ends if dc.distance(x, v) == best]
            assert nearest == [dc.gate_project(x, F)]


def test_parallel_faces_gate_to_themselves():
    dc = dual_complex(reflection_arrangement(named_diagram("A3")))
    for zeros, members in dc.parallel_classes.items():
        for E, F in itertools.permutations(members, 2):
            g = dc.gate_face(E, F)
            assert (g.E_prime, g.F_prime) == (E, F)
            assert sorted(g.translation.values()) == sorted(dc.cell_vertices[F])


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        compute_faces(Arrangement.central([(1, k) for k in range(70)]))


def test_duplicate_and_zero_hyperplanes_rejected():
    with pytest.raises(ArrangementError):
        Arrangement.central([(1, 1), (2, 2)])
    with pytest.raises(ArrangementError):
        Arrangement.central([(0, 0)])


def test_json_roundtrip_with_irrational_coefficients():
    a = reflection_arrangement(named_diagram("H3"))
    b = Arrangement.from_json(a.to_json())
    assert b.normals == a.normals and b.field.L == a.field.L


# deconing, collapsing, bounded complex --------------------------------------------

def test_decone_type_a3_at_first_coordinate():
    a = reflection_arrangement(named_diagram("A3"), model=True)
    b = decone(a, coordinate_hyperplane(a, 1))
    got = {b.normalized(i) for i in range(len(b))}
    one, zero = Fraction(1), Fraction(0)
    # y_i = 0, y_i = 1, y_1 = y_2 in the chart x_1 = 1, coordinates (x_2, x_3)
    expected = {(one, zero, zero), (zero, one, zero), (one, zero, one), (zero, one, one), (one, -one, zero)}
    assert len(b) == 5 and b.dim == 2
    assert {tuple(Fraction(str(x)) for x in k) for k in got} == expected


def test_decone_two_lines():
    b = decone(Arrangement.central([(1, 0), (0, 1)]), 0)
    assert b.dim == 1 and len(b) == 1
    lat = compute_faces(b)
    assert lat.fvector == (1, 2)


def test_decone_needs_central():
    with pytest.raises(NotCentral):
        decone(Arrangement.affine(1, [((1,), 1)]), 0)


@pytest.mark.parametrize("n,fvec", [(3, (4, 5, 2)), (4, (8, 19, 18, 6))])
def test_deconed_type_a_is_cube_in_orthoschemes(n, fvec):
    a = reflection_arrangement(named_diagram(f"A{n}"), model=True)
    bc = bounded_complex(decone(a, coordinate_hyperplane(a, 1)))
    assert bc.fvector == fvec
    # each top cell is an orthoscheme 0 < y_p(1) < ... < y_p(n-1) < 1: its witness orders the coordinates
    top = [i for i in bc.faces if bc.lattice.dims[i] == n - 1]
    orders = set()
    for i in top:
        p = [Fraction(str(x)) for x in bc.lattice.witnesses[i]]
        assert all(0 < x < 1 for x in p) and len(set(p)) == len(p)
        orders.add(tuple(sorted(range(len(p)), key=lambda k: p[k])))
    assert len(orders) == len(top)


def test_collapse_examples():
    a = Arrangement.central([(1, 0), (0, 1)])
    ident = collapse_map(a, [0, 1])
    assert ident.face_map == list(range(len(ident.source.faces)))
    cm = collapse_map(a, [0])
    assert len(cm.target.chambers) == 2
    assert len(cm.collapsed_edges) == 2
    assert all(cm.source.dims[i] == 1 for i in cm.collapsed_edges)
    with pytest.raises(NotSubset):
        collapse_map(a, [5])


def test_collapse_sends_faces_to_faces():
    a = reflection_arrangement(named_diagram("B3"))
    cm = collapse_map(a, [0, 3, 5])
    for i, Fs in enumerate(cm.source.faces):
        assert cm.target.faces[cm.face_map[i]] == tuple(Fs[k] for k in cm.sub)


def test_bounded_complex_degenerate_cases():
    assert bounded_complex(Arrangement.affine(2, [((1, 0), 0), ((1, 0), 1)])).fvector == ()
    assert bounded_complex(Arrangement.affine(2, [((1, 1), 0)])).fvector == ()


# walls of H3 -----------------------------------------------------------------------

def test_h3_walls():
    system = h3_wall_system(named_diagram("H3"))
    sub, idx = walls_through(system, [])
    assert idx == [] and len(sub) == 0
    sub, idx = walls_through(system, range(len(system.complex.vertices)))
    assert len(idx) == 15
    for k in range(15):
        on_wall = set(system.wall_cycle(k))
        assert on_wall == {v for v in range(len(system.complex.vertices)) if k in system.walls_of_vertex(v)}


# properties ---------------------------------------------------------------------------

@given(line_arrangements())
def test_line_arrangement_counts_match_intersection_oracle(lines):
    a = Arrangement.affine(2, lines)
    lat = compute_faces(a)
    pts = intersection_points(lines)
    excess = sum(len(v) - 1 for v in pts.values())
    assert len(lat.chambers) == 1 + len(lines) + excess
    assert len(lat.of_dim(0)) == len(pts)
    parallel_only = not pts
    bounded_chambers = sum(1 for c in lat.chambers if lat.bounded[c])
    assert bounded_chambers == (0 if parallel_only else 1 - len(lines) + excess)
    assert sum((-1) ** d for d in lat.dims) == 1


@given(line_arrangements())
def test_face_witnesses_realize_their_sign_vectors(lines):
    a = Arrangement.affine(2, lines)
    lat = compute_faces(a)
    for F, p in zip(lat.faces, lat.witnesses):
        assert a.sign_vector(p) == F


@st.composite
def central_planes(draw):
    normals, keys = [], set()
    for _ in range(draw(st.integers(1, 6))):
        v = tuple(draw(st.integers(-2, 2)) for _ in range(3))
        if not any(v):
            continue
        lead = Fraction(next(x for x in v if x))
        key = tuple(x / lead for x in v)
        if key not in keys:
            keys.add(key)
            normals.append(v)
    assume(normals)
    return Arrangement.central(normals)


@given(central_planes())
def test_central_fan_euler_and_gallery_distance(a):
    lat = compute_faces(a)
    assert sum((-1) ** d for d in lat.dims) == -1
    dc = dual_complex(lat)
    dist = dict(nx.all_pairs_shortest_path_length(dc.graph))
    for x in dc.chambers:
        for y in dc.chambers:
            assert dist[x][y] == dc.distance(x, y)


@given(central_planes())
def test_gates_are_unique_nearest_vertices(a):
    dc = dual_complex(a)
    for F in range(len(dc.faces)):
        verts = dc.cell_vertices[F]
        for x in dc.chambers:
            best = min(dc.distance(x, v) for v in verts)
            nearest = [v for v in verts if dc.distance(x, v) == best]
            assert nearest == [dc.gate_project(x, F)]
            path = dc.elementary_segment(x, F)
            assert path[0] == x and path[-1] == nearest[0] and len(path) == best + 1
