"""Dynkin diagrams, Coxeter matrices, classification and diagram predicates."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .exactnum import CycloField, ExactReal, field_for_labels

INF = math.inf
TILDE = "̃"


class DiagramError(ValueError):
    pass


class DisconnectedDiagram(DiagramError):
    pass


class NotGraphIsomorphism(DiagramError):
    pass


class NotSurjective(DiagramError):
    pass


class NotMorphism(DiagramError):
    pass


def _parse_label(m):
    if m in ("inf", "oo", "∞") or m == INF:
        return INF
    m = int(m)
    if m < 2:
        raise DiagramError(f"edge label must be >= 2 or inf, got {m}")
    return m


def _label_str(m):
    return "inf" if m == INF else m


@dataclass(frozen=True)
class DynkinDiagram:
    """Coxeter matrix on an ordered set of named generators.

    ``labels`` holds the off-diagonal entries different from 2, keyed by
    vertex-index pairs ``(i, j)`` with ``i < j``.
    """

    vertices: tuple
    labels: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise DiagramError("duplicate vertex names")
        clean = {}
        for (i, j), m in dict(self.labels).items():
            if i == j:
                raise DiagramError("self loops are not allowed")
            m = _parse_label(m)
            if m != 2:
                clean[(min(i, j), max(i, j))] = m
        object.__setattr__(self, "labels", clean)

    # constructors -----------------------------------------------------
    @classmethod
    def from_edges(cls, vertices: Sequence, edges: Iterable) -> "DynkinDiagram":
        vertices = tuple(str(v) for v in vertices)
        index = {v: k for k, v in enumerate(vertices)}
        labels = {}
        for a, b, m in edges:
            if str(a) not in index or str(b) not in index:
                raise DiagramError(f"edge ({a},{b}) uses an unknown vertex")
            i, j = index[str(a)], index[str(b)]
            labels[(min(i, j), max(i, j))] = m
        return cls(vertices, labels)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence], names: Sequence | None = None) -> "DynkinDiagram":
        n = len(matrix)
        names = tuple(names) if names else tuple(f"s{k + 1}" for k in range(n))
        labels = {}
        for i in range(n):
            if matrix[i][i] not in (1, "1"):
                raise DiagramError("diagonal entries must be 1")
            for j in range(i + 1, n):
                if matrix[i][j] != matrix[j][i]:
                    raise DiagramError("Coxeter matrix must be symmetric")
                labels[(i, j)] = matrix[i][j]
        return cls(names, labels)

    @classmethod
    def linear(cls, labels: Sequence, names: Sequence | None = None) -> "DynkinDiagram":
        """Path diagram with the given consecutive edge labels, e.g. ``[5, 3]`` for H3."""
        n = len(labels) + 1
        names = tuple(names) if names else tuple(f"s{k + 1}" for k in range(n))
        return cls(names, {(k, k + 1): m for k, m in enumerate(labels)})

    @classmethod
    def from_json(cls, data) -> "DynkinDiagram":
        if isinstance(data, (str, Path)):
            data = json.loads(Path(data).read_text())
        try:
            return cls.from_edges(data["vertices"], data.get("edges", []))
        except (KeyError, TypeError) as exc:
            raise DiagramError(f"malformed diagram data: {exc}") from exc

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[self.vertices[i], self.vertices[j], _label_str(m)]
                      for (i, j), m in sorted(self.labels.items())],
        }

    # views --------------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.vertices)

    def index(self, v) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise DiagramError(f"unknown generator {v!r}") from None

    def m(self, a, b):
        """Coxeter matrix entry for generators a, b (names or indices)."""
        i = a if isinstance(a, int) else self.index(a)
        j = b if isinstance(b, int) else self.index(b)
        if i == j:
            return 1
        return self.labels.get((min(i, j), max(i, j)), 2)

    @cached_property
    def coxeter_matrix(self) -> tuple:
        n = self.rank
        return tuple(tuple(self.m(i, j) for j in range(n)) for i in range(n))

    @cached_property
    def dynkin_graph(self) -> nx.Graph:
        """Edges where m != 2, carrying the label (possibly inf)."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        for (i, j), m in self.labels.items():
            g.add_edge(self.vertices[i], self.vertices[j], label=m)
        return g

    @cached_property
    def presentation_graph(self) -> nx.Graph:
        """Edges where m < inf, carrying the label (including 2)."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                m = self.m(i, j)
                if m != INF:
                    g.add_edge(self.vertices[i], self.vertices[j], label=m)
        return g

    def is_connected(self) -> bool:
        return self.rank > 0 and nx.is_connected(self.dynkin_graph)

    def subdiagram(self, subset: Iterable) -> "DynkinDiagram":
        keep = [v for v in self.vertices if v in set(subset)]
        return DynkinDiagram.from_edges(
            keep, [(a, b, d["label"]) for a, b, d in self.dynkin_graph.subgraph(keep).edges(data=True)])

    def components(self) -> list:
        return [tuple(v for v in self.vertices if v in c)
                for c in nx.connected_components(self.dynkin_graph)]

    def relabel(self, mapping: Mapping) -> "DynkinDiagram":
        return DynkinDiagram(tuple(mapping[v] for v in self.vertices), self.labels)

    @cached_property
    def field(self) -> CycloField:
        return field_for_labels(self.labels.values())

    def cosine_matrix(self, scale: int = 2) -> list:
        """``scale * B`` with ``B_st = -cos(pi/m_st)`` (``-1`` for inf) over the diagram's field."""
        F = self.field
        n = self.rank
        half = scale * ExactReal(F, (1,)) / 2
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                row.append(-half * F.two_cos(self.m(i, j)) if i != j else half * 2)
            out.append(row)
        return out

    def __str__(self):
        edges = ", ".join(f"{a}-{b}:{_label_str(m)}" for a, b, m in
                          ((self.vertices[i], self.vertices[j], m) for (i, j), m in sorted(self.labels.items())))
        return f"Diagram[{' '.join(self.vertices)}; {edges}]"

    def __hash__(self):
        return hash((self.vertices, tuple(sorted(self.labels.items()))))

    def __eq__(self, other):
        return (isinstance(other, DynkinDiagram) and self.vertices == other.vertices
                and self.labels == other.labels)


@dataclass(frozen=True)
class GeneratorMap:
    source: DynkinDiagram
    target: DynkinDiagram
    images: Mapping  # generator -> tuple of target generators

    def __post_init__(self):
        imgs = {}
        for s in self.source.vertices:
            if s not in self.images:
                raise DiagramError(f"no image for generator {s!r}")
            w = self.images[s]
            w = (w,) if isinstance(w, str) else tuple(w)
            if not w:
                raise DiagramError(f"empty image for generator {s!r}")
            for t in w:
                self.target.index(t)
            imgs[s] = w
        object.__setattr__(self, "images", imgs)


# ---------------------------------------------------------------------------
# definiteness

def characteristic_polynomial(mat: list) -> list:
    """Coefficients c_0..c_n of det(xI - M) by the Faddeev-LeVerrier recursion."""
    n = len(mat)
    if n == 0:
        return [1]
    zero = mat[0][0] * 0
    coeffs = [zero] * (n + 1)
    coeffs[n] = zero + 1
    Mk = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        Mk = [[sum((mat[i][l] * Mk[l][j] for l in range(n)), zero) + (coeffs[n - k + 1] if i == j else zero)
               for j in range(n)] for i in range(n)]
        trace = sum((sum((mat[i][l] * Mk[l][i] for l in range(n)), zero) for i in range(n)), zero)
        coeffs[n - k] = -trace / k
    return coeffs


def inertia(mat: list) -> tuple[int, int, int]:
    """(positive, zero, negative) eigenvalue counts of a real symmetric matrix over an exact field.

    All roots of the characteristic polynomial are real, so Descartes' rule of
    signs is exact."""
    c = characteristic_polynomial(mat)
    n = len(mat)
    zero_mult = 0
    while zero_mult < n and c[zero_mult] == 0:
        zero_mult += 1
    rest = c[zero_mult:]

    def changes(seq):
        signs = [s for s in (x.sign() if isinstance(x, ExactReal) else (x > 0) - (x < 0) for x in seq) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    pos = changes(rest)
    neg = changes([x if k % 2 == 0 else -x for k, x in enumerate(rest)])
    return pos, zero_mult, neg


POSITIVE_DEFINITE = "positive-definite"
SEMIDEFINITE_CORANK1 = "positive-semidefinite-corank-1"
INDEFINITE = "indefinite"


def definiteness(d: DynkinDiagram) -> str:
    pos, zero, neg = inertia(d.cosine_matrix())
    if neg == 0 and zero == 0:
        return POSITIVE_DEFINITE
    if neg == 0 and zero == 1:
        return SEMIDEFINITE_CORANK1
    return INDEFINITE


# ---------------------------------------------------------------------------
# catalog of spherical and affine diagrams

def _path(n, labels=None):
    labels = labels or [3] * (n - 1)
    return [(k, k + 1, labels[k]) for k in range(n - 1)]


def _named(n, edges):
    return DynkinDiagram.from_edges([f"v{k}" for k in range(n)], [(f"v{a}", f"v{b}", m) for a, b, m in edges])


def catalog_for_rank(n: int) -> list[tuple[str, str, int, DynkinDiagram]]:
    """(family, display name, index, diagram) for every connected spherical and affine type of rank n."""
    return list(_catalog(n))


@lru_cache(maxsize=None)
def _catalog(n: int) -> tuple:
    out = []

    def add(family, name, idx, edges):
        out.append((family, name, idx, _named(n, edges)))

    if n >= 1:
        add("A", f"A{n}", n, _path(n))
    if n >= 3:
        add("B", f"B{n}", n, _path(n, [3] * (n - 2) + [4]))
    if n == 2:
        add("B", "B2", 2, [(0, 1, 4)])
    if n >= 4:
        add("D", f"D{n}", n, _path(n - 1) + [(n - 3, n - 1, 3)])
    if n in (6, 7, 8):
        add(f"E{n}", f"E{n}", n, _path(n - 1) + [(2, n - 1, 3)])
    if n == 4:
        add("F4", "F4", 4, _path(4, [3, 4, 3]))
        add("H4", "H4", 4, _path(4, [5, 3, 3]))
    if n == 3:
        add("H3", "H3", 3, _path(3, [5, 3]))
    # affine types; index k means rank k + 1
    k = n - 1
    if n == 2:
        add("Ã1-infinity", "Ã1", 1, [(0, 1, INF)])
    if n >= 3:
        add("Ã", f"Ã{k}", k, [(i, (i + 1) % n, 3) for i in range(n)])
    if n >= 4:
        # B~k: D-type fork at one end, label 4 at the other
        add("B̃", f"B{TILDE}{k}", k, [(0, 2, 3), (1, 2, 3)] + [(i, i + 1, 3) for i in range(2, n - 2)]
            + [(n - 2, n - 1, 4)])
    if n >= 3:
        add("C̃", f"C{TILDE}{k}", k, _path(n, [4] + [3] * (n - 3) + [4]))
    if n >= 5:
        add("D̃", f"D{TILDE}{k}", k, [(0, 2, 3), (1, 2, 3)] + [(i, i + 1, 3) for i in range(2, n - 3)]
            + [(n - 3, n - 2, 3), (n - 3, n - 1, 3)])
    if n == 7:
        add("Ẽ6", "Ẽ6", 6, [(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (2, 5, 3), (5, 6, 3)])
    if n == 8:
        add("Ẽ7", "Ẽ7", 7, _path(7) + [(3, 7, 3)])
    if n == 9:
        add("Ẽ8", "Ẽ8", 8, _path(8) + [(5, 8, 3)])
    if n == 5:
        add("F̃4", f"F{TILDE}4", 4, _path(5, [3, 3, 4, 3]))
    if n == 3:
        add("G̃2", f"G{TILDE}2", 2, _path(3, [3, 6]))
    return tuple(out)


def _edge_match(a, b):
    return a["label"] == b["label"]


def _isomorphic(d1: DynkinDiagram, d2: DynkinDiagram, labeled: bool = True) -> bool:
    g1, g2 = d1.dynkin_graph, d2.dynkin_graph
    if g1.number_of_nodes() != g2.number_of_nodes() or g1.number_of_edges() != g2.number_of_edges():
        return False
    return GraphMatcher(g1, g2, edge_match=_edge_match if labeled else None).is_isomorphic()


@dataclass(frozen=True)
class TypeLabel:
    family: str
    rank: int
    definiteness: str
    name: str = "OTHER"
    shape: tuple = ()

    @property
    def spherical(self) -> bool:
        return self.definiteness == POSITIVE_DEFINITE

    @property
    def affine(self) -> bool:
        return self.definiteness == SEMIDEFINITE_CORANK1

    @property
    def kind(self) -> str:
        return {POSITIVE_DEFINITE: "spherical", SEMIDEFINITE_CORANK1: "affine"}.get(self.definiteness, "indefinite")

    def __str__(self):
        return f"{self.name} {self.kind} rank {self.rank}"


def classify(d: DynkinDiagram) -> TypeLabel:
    """Definiteness of the cosine matrix, then the named family matched by labeled shape."""
    if not d.is_connected():
        raise DisconnectedDiagram(f"{d} is not connected")
    defn = definiteness(d)
    n = d.rank
    name, family = "OTHER", "OTHER"
    if n == 2 and defn == POSITIVE_DEFINITE:
        m = d.m(0, 1)
        family, name = {3: ("A", "A2"), 4: ("B", "B2")}.get(m, (f"I2({m})", f"I2({m})"))
    else:
        for fam, nm, _, cand in _catalog(n):
            if _isomorphic(d, cand):
                family, name = fam, nm
                break
    if family != "OTHER":
        spherical_family = not (any(ch in family for ch in ("̃", "Ã", "Ẽ")) or family.endswith("infinity"))
        expected = POSITIVE_DEFINITE if spherical_family else SEMIDEFINITE_CORANK1
        if expected != defn:
            raise AssertionError(f"catalog mismatch for {name}: definiteness {defn}")
    shape = tuple(nm for _, nm, _, cand in _catalog(n) if _isomorphic(d, cand, labeled=False))
    return TypeLabel(family, n, defn, name, shape)


def is_spherical(d: DynkinDiagram) -> bool:
    """Every component positive-definite (the empty diagram counts as spherical)."""
    return all(definiteness(d.subdiagram(c)) == POSITIVE_DEFINITE for c in d.components())


# ---------------------------------------------------------------------------
# predicates

def is_admissible(d: DynkinDiagram, sub: Iterable) -> bool:
    """For each x in sub, points of sub separated by x inside sub stay separated by x in d."""
    sub = set(sub)
    for v in sub:
        d.index(v)
    G = d.dynkin_graph
    H = G.subgraph(sub)
    for x in sub:
        comp_big = {}
        for k, c in enumerate(nx.connected_components(G.subgraph(set(G) - {x}))):
            for v in c:
                comp_big[v] = k
        comps_small = list(nx.connected_components(H.subgraph(sub - {x})))
        for i in range(len(comps_small)):
            for j in range(i + 1, len(comps_small)):
                bi = {comp_big[v] for v in comps_small[i]}
                bj = {comp_big[v] for v in comps_small[j]}
                if bi & bj:
                    return False
    return True


def dominates(d1: DynkinDiagram, d2: DynkinDiagram, bij: Mapping) -> bool:
    """bij must be a presentation-graph isomorphism; then compare labels edge by edge."""
    if set(bij) != set(d1.vertices) or set(bij.values()) != set(d2.vertices) or len(bij) != d2.rank:
        raise NotGraphIsomorphism("map is not a bijection of generator sets")
    ok = True
    for i, a in enumerate(d1.vertices):
        for b in d1.vertices[i + 1:]:
            m1, m2 = d1.m(a, b), d2.m(bij[a], bij[b])
            if (m1 == INF) != (m2 == INF):
                raise NotGraphIsomorphism(f"edge {a}-{b} is not preserved")
            if m1 < m2:
                ok = False
    return ok


def check_special_folding(f: GeneratorMap) -> bool:
    """Raise for structural failures (not surjective / not a graph morphism); return the fiber completeness."""
    img = {}
    for s, w in f.images.items():
        if len(w) != 1:
            raise DiagramError(f"image of {s!r} is not a single generator")
        img[s] = w[0]
    if set(img.values()) != set(f.target.vertices):
        raise NotSurjective("folding misses target vertices: "
                            + ", ".join(sorted(set(f.target.vertices) - set(img.values()))))
    G, H = f.source.dynkin_graph, f.target.dynkin_graph
    for a, b in G.edges():
        if not H.has_edge(img[a], img[b]):
            raise NotMorphism(f"edge {a}-{b} does not map to an edge")
    fibers = {t: [s for s in img if img[s] == t] for t in f.target.vertices}
    for x, y in H.edges():
        for a in fibers[x]:
            for b in fibers[y]:
                if not G.has_edge(a, b):
                    return False
    return True


# ---------------------------------------------------------------------------
# catalog files

CATALOG_DIR = Path(__file__).with_name("catalog")


def named_diagram(name: str) -> DynkinDiagram:
    """Standard diagrams by name (A3, B4, D4, E6, F4, H3, H4, I2(5), ~A3, ~C3, ...) or a catalog file stem."""
    path = CATALOG_DIR / f"{name}.json"
    if path.exists():
        return DynkinDiagram.from_json(path)
    s = name.strip()
    if s.startswith("I2(") and s.endswith(")"):
        return DynkinDiagram.linear([_parse_label(s[3:-1])], ["a", "b"])
    affine = s.startswith("~")
    if affine:
        s = s[1:]
    fam, num = s[:1].upper(), s[1:]
    if not num.isdigit():
        raise DiagramError(f"unknown diagram name {name!r}")
    k = int(num)
    rank = k + 1 if affine else k
    table = {("A", False): "A", ("B", False): "B", ("D", False): "D", ("E", False): f"E{k}",
             ("F", False): "F4", ("H", False): f"H{k}", ("A", True): "Ã", ("B", True): "B̃",
             ("C", True): "C̃", ("D", True): "D̃", ("E", True): f"Ẽ{k}", ("F", True): "F̃4",
             ("G", True): "G̃2"}
    want = table.get((fam, affine))
    if affine and fam == "A" and k == 1:
        want = "Ã1-infinity"
    if fam == "C" and not affine:
        want = "B"
    for family, _, idx, cand in _catalog(rank):
        if family == want and idx == k:
            return cand.relabel({v: f"s{j + 1}" for j, v in enumerate(cand.vertices)})
    raise DiagramError(f"unknown diagram name {name!r}")
