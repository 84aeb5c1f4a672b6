import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artinlab.coxeter import (CoxeterGroup, GroupTooLargeOrInfinite, NotSpherical, coxeter_complex,
                              enumerate_group, reflection_arrangement, reflection_data)
from artinlab.diagram import DynkinDiagram, named_diagram


# independent permutation models ---------------------------------------------

def perm_generators_a(n):
    """Adjacent transpositions of S_{n+1} acting on positions."""
    gens = []
    for i in range(n):
        p = list(range(n + 1))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(tuple(p))
    return gens


def signed_generators_b(n):
    """Signed permutations of {±1..±n} as tuples of images of 1..n; the last generator flips n."""
    gens = []
    for i in range(n - 1):
        p = list(range(1, n + 1))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(tuple(p))
    p = list(range(1, n + 1))
    p[-1] = -p[-1]
    gens.append(tuple(p))
    return gens


def compose_perm(p, q):
    """p then q for plain permutations."""
    return tuple(q[x] for x in p)


def compose_signed(p, q):
    return tuple((1 if x > 0 else -1) * q[abs(x) - 1] for x in p)


def closure(gens, compose):
    ident = tuple(range(len(gens[0]))) if min(gens[0]) == 0 else tuple(range(1, len(gens[0]) + 1))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def conjugacy_closure(gens, group, compose, inverse):
    return {compose(compose(inverse(g), s), g) for g in group for s in gens}


def inv_perm(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def inv_signed(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[abs(x) - 1] = (i + 1) * (1 if x > 0 else -1)
    return tuple(out)


# tests ------------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_type_a_matches_symmetric_group(n):
    d = DynkinDiagram.linear([3] * (n - 1)) if n > 1 else DynkinDiagram(("s1",))
    t = enumerate_group(d)
    group = closure(perm_generators_a(n), compose_perm)
    refl = conjugacy_closure(perm_generators_a(n), group, compose_perm, inv_perm)
    assert t.order == len(group) == math.factorial(n + 1)
    assert len(t.reflections) == len(refl)
    assert t.length[t.longest] == len(refl)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type_b_matches_signed_permutations(n):
    d = DynkinDiagram.linear([3] * (n - 2) + [4])
    t = enumerate_group(d)
    gens = signed_generators_b(n)
    group = closure(gens, compose_signed)
    refl = conjugacy_closure(gens, group, compose_signed, inv_signed)
    assert t.order == len(group) == 2**n * math.factorial(n)
    assert len(t.reflections) == len(refl) == n * n


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7, 8, 12])
def test_dihedral_orders(m):
    t = enumerate_group(DynkinDiagram.linear([m], ["a", "b"]))
    assert t.order == 2 * m
    assert len(t.reflections) == m == t.length[t.longest]


def test_word_equality_examples():
    a2 = CoxeterGroup(DynkinDiagram.linear([3], ["a", "b"]))
    assert a2.equal("aba", "bab")
    assert a2.equal("abab", "ba")
    b2 = CoxeterGroup(DynkinDiagram.linear([4], ["a", "b"]))
    assert not b2.equal("aba", "bab")
    assert b2.equal("abab", "baba")


def test_infinite_group_raises():
    with pytest.raises(GroupTooLargeOrInfinite):
        enumerate_group(DynkinDiagram.linear([math.inf], ["a", "b"]), limit=1000)
    with pytest.raises(GroupTooLargeOrInfinite):
        enumerate_group(named_diagram("~A2"), limit=1000)


@given(st.lists(st.integers(0, 2), max_size=14), st.lists(st.integers(0, 2), max_size=14))
def test_a3_word_problem_agrees_with_permutations(u, v):
    W = CoxeterGroup(DynkinDiagram.linear([3, 3]))
    gens = perm_generators_a(3)

    def perm(word):
        p = (0, 1, 2, 3)
        for s in word:
            p = compose_perm(p, gens[s])
        return p
    assert W.equal(u, v) == (perm(u) == perm(v))


@given(st.lists(st.integers(0, 2), max_size=16))
def test_b3_reduced_length_agrees_with_signed_inversions(word):
    W = CoxeterGroup(DynkinDiagram.linear([3, 4]))
    gens = signed_generators_b(3)
    p = (1, 2, 3)
    for s in word:
        p = compose_signed(p, gens[s])
    # l(w) = inv(w) + #{i <= j : w(i) + w(j) < 0} when the sign change acts on the first
    # coordinate; relabel k -> n+1-k to move our sign change there
    q = [(1 if x > 0 else -1) * (4 - abs(x)) for x in reversed(p)]
    inv = sum(1 for i in range(3) for j in range(i + 1, 3) if q[i] > q[j])
    nsp = sum(1 for i in range(3) for j in range(i, 3) if q[i] + q[j] < 0)
    assert W.length(word) == inv + nsp


@given(st.data())
def test_group_table_laws(data):
    t = enumerate_group(named_diagram("H3"))
    x, y, z = (data.draw(st.integers(0, t.order - 1)) for _ in range(3))
    assert t.mul(t.mul(x, y), z) == t.mul(x, t.mul(y, z))
    assert t.mul(x, t.inv(x)) == 0
    assert len(t.word(x)) == t.length[x]
    for s in range(t.rank):
        assert abs(int(t.length[t.right[x, s]]) - int(t.length[x])) == 1
    assert t.element(t.word(x)) == x


def _normal_set(arr):
    return {tuple(Fraction(str(c)) if c.is_rational() else c for c in arr.normalized(i)[:-1]) for i in range(len(arr))}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type_a_model_hyperplanes(n):
    a = reflection_arrangement(DynkinDiagram.linear([3] * (n - 1)), model=True)
    e = lambda i: tuple(Fraction(int(k == i)) for k in range(n))
    expected = {e(i) for i in range(n)} | {tuple(x - y for x, y in zip(e(i), e(j)))
                                          for i in range(n) for j in range(i + 1, n)}
    assert len(a) == n * (n + 1) // 2
    assert _normal_set(a) == expected


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type_b_model_hyperplanes(n):
    a = reflection_arrangement(DynkinDiagram.linear([3] * (n - 2) + [4]), model=True)
    e = lambda i: tuple(Fraction(int(k == i)) for k in range(n))
    expected = {e(i) for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            expected.add(tuple(x - y for x, y in zip(e(i), e(j))))
            expected.add(tuple(x + y for x, y in zip(e(i), e(j))))
    assert len(a) == n * n
    assert _normal_set(a) == expected


def test_h3_has_fifteen_reflecting_planes():
    assert len(reflection_arrangement(named_diagram("H3"))) == 15


def test_reflection_arrangement_rejects_affine():
    with pytest.raises(NotSpherical):
        reflection_arrangement(named_diagram("~A2"))


@pytest.mark.parametrize("name,fvec", [("A2", (6, 6)), ("B2", (8, 8)), ("A3", (14, 36, 24)),
                                       ("B3", (26, 72, 48)), ("H3", (62, 180, 120))])
def test_coxeter_complex_fvectors(name, fvec):
    d = DynkinDiagram.linear({"A2": [3], "B2": [4], "A3": [3, 3], "B3": [3, 4], "H3": [5, 3]}[name])
    cx = coxeter_complex(d)
    assert cx.fvector == fvec
    assert cx.euler_characteristic == (2 if d.rank == 3 else 0)


def test_chamber_signs_distinguish_chambers():
    t = enumerate_group(DynkinDiagram.linear([3, 4]))
    data = reflection_data(t)
    assert len({data.chamber_signs(w) for w in range(t.order)}) == t.order


@given(st.lists(st.integers(0, 3), max_size=10), st.sets(st.integers(0, 3)), st.sets(st.integers(0, 3)))
def test_parabolic_product_agrees_with_enumeration(word, X, Y):
    d = DynkinDiagram.linear([3, 3, 3])
    W = CoxeterGroup(d)
    t = enumerate_group(d)
    w = t.element(word)
    WX, WY = t.parabolic_elements(sorted(X)), t.parabolic_elements(sorted(Y))
    product = {t.mul(x, y) for x in WX for y in WY}
    assert W.in_parabolic_product(word, X, Y) == (w in product)
