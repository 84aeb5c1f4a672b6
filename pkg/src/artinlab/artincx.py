"""Finite witnessed balls of Artin complexes.

A chamber is a group element g; it spans the simplex whose vertices are the
cosets g A_{S - T} for the vertex types T (a single generator for relative
Artin complexes, a folding fiber for folded ones).  Balls contain every
element of word length <= r over S and S^-1.

When A_S is spherical, chambers are deduplicated by Garside normal form and
vertices are identified exactly.  When only the vertex stabilizers are
spherical (e.g. affine diagrams), the ball runs in word mode: chambers are
freely reduced words and two chambers share a vertex when a path of
stabilizer letters inside the ball joins them.  Word mode never merges
distinct cosets, but may keep duplicates; it is flagged ``exact = False``.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from .arrangement import BudgetExceeded
from .coxeter import CoxeterGroup, NotSpherical, coxeter_complex
from .diagram import DiagramError, DynkinDiagram, GeneratorMap, check_special_folding, is_spherical
from .garside import GarsideStructure, format_word

BALL_BUDGET = int(os.environ.get("ARTINLAB_BUDGET", "60000"))


class BallError(ValueError):
    pass


class NonSphericalVertexStabilizer(BallError):
    pass


class NotSpecialFolding(BallError):
    pass


class NotAClosedPath(BallError):
    pass


# ---------------------------------------------------------------------------
# generic typed complexes

class TypedComplex:
    """Finite vertex-typed simplicial complex given by its maximal simplices.

    ``depth`` is None for closed finite inputs (every relation known).  For
    truncated balls, ``depth[v]`` is the word length of the least chamber
    containing v and ``safe_radius(v) = radius - depth[v]``.
    """

    def __init__(self, type_names: Sequence[str], vertex_types: Sequence[int],
                 simplices: Iterable[Sequence[int]], vertex_names: Sequence[str] | None = None,
                 witnesses: Sequence[str] | None = None, depth: Sequence[int] | None = None,
                 radius: int | None = None):
        self.type_names = tuple(str(t) for t in type_names)
        self.vertex_types = list(vertex_types)
        self.simplices = [tuple(sorted(s)) for s in simplices]
        self.vertex_names = list(vertex_names) if vertex_names is not None else \
            [f"v{k}" for k in range(len(self.vertex_types))]
        self.witnesses = list(witnesses) if witnesses is not None else [""] * len(self.simplices)
        self.depth = list(depth) if depth is not None else None
        self.radius = radius
        for s in self.simplices:
            types = [self.vertex_types[v] for v in s]
            if len(set(types)) != len(types):
                raise BallError(f"simplex {s} has two vertices of the same type")

    # basic views ----------------------------------------------------------
    @property
    def closed(self) -> bool:
        return self.depth is None

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_types)

    def type_of(self, v: int) -> str:
        return self.type_names[self.vertex_types[v]]

    def safe_radius(self, v: int) -> int | None:
        if self.closed:
            return None
        return self.radius - self.depth[v]

    def core(self, r: int | None = None) -> list:
        """Vertices with a witness chamber at word length <= r (all of them when closed)."""
        if self.closed or r is None:
            return list(range(self.n_vertices))
        return [v for v in range(self.n_vertices) if self.depth[v] <= r]

    @cached_property
    def neighbors(self) -> list:
        nb = [set() for _ in range(self.n_vertices)]
        for s in self.simplices:
            for u in s:
                nb[u].update(s)
        for u in range(self.n_vertices):
            nb[u].discard(u)
        return nb

    @cached_property
    def vertex_simplices(self) -> list:
        out = [[] for _ in range(self.n_vertices)]
        for k, s in enumerate(self.simplices):
            for v in s:
                out[v].append(k)
        return out

    def adjacent(self, u: int, v: int) -> bool:
        """Adjacency witnessed by a simplex of the complex."""
        return v in self.neighbors[u]

    def certified_nonadjacent(self, u: int, v: int) -> bool:
        """Non-adjacency proven independently of truncation."""
        if self.closed:
            return u != v and not self.adjacent(u, v)
        return u != v and self.vertex_types[u] == self.vertex_types[v] and self.exact_vertices

    @property
    def exact_vertices(self) -> bool:
        return True

    def are_adjacent(self, u: int, v: int):
        """True, False, or None when the ball cannot decide."""
        if self.adjacent(u, v):
            return True
        if self.certified_nonadjacent(u, v):
            return False
        return None

    def edges(self) -> list:
        return sorted({(u, v) for u in range(self.n_vertices) for v in self.neighbors[u] if u < v})

    def faces(self) -> set:
        out = set()
        for s in self.simplices:
            for k in range(1, len(s) + 1):
                out.update(itertools.combinations(s, k))
        return out

    def fvector(self) -> tuple:
        counts = {}
        for f in self.faces():
            counts[len(f)] = counts.get(len(f), 0) + 1
        return tuple(counts.get(k, 0) for k in range(1, max(counts, default=0) + 1))

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        for v in range(self.n_vertices):
            g.add_node(v, type=self.type_of(v))
        g.add_edges_from(self.edges())
        return g

    def stats(self) -> dict:
        per_type = {t: 0 for t in self.type_names}
        for v in range(self.n_vertices):
            per_type[self.type_of(v)] += 1
        edge_types = {}
        for u, v in self.edges():
            key = "-".join(sorted((self.type_of(u), self.type_of(v))))
            edge_types[key] = edge_types.get(key, 0) + 1
        return {"vertices": self.n_vertices, "vertices_per_type": per_type,
                "edges": sum(edge_types.values()), "edges_per_type": dict(sorted(edge_types.items())),
                "top_simplices": len(self.simplices), "fvector": list(self.fvector()),
                "radius": self.radius, "closed": self.closed}

    def induced(self, keep: Iterable[int]) -> "TypedComplex":
        """Full subcomplex on a vertex subset (maximal faces of the restricted simplices)."""
        keep = sorted(set(keep))
        new = {v: k for k, v in enumerate(keep)}
        faces = {tuple(new[v] for v in s if v in new) for s in self.simplices}
        faces.discard(())
        maximal = [f for f in faces if not any(set(f) < set(g) for g in faces)]
        isolated = set(range(len(keep))) - {v for f in maximal for v in f}
        maximal += [(v,) for v in sorted(isolated)]
        return TypedComplex(self.type_names, [self.vertex_types[v] for v in keep], sorted(maximal),
                            [self.vertex_names[v] for v in keep],
                            depth=None if self.closed else [self.depth[v] for v in keep],
                            radius=self.radius)

    # serialization --------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "types": list(self.type_names),
            "closed": self.closed,
            "radius": self.radius,
            "vertices": [{"id": v, "name": self.vertex_names[v], "type": self.type_of(v),
                          "safeRadius": self.safe_radius(v)} for v in range(self.n_vertices)],
            "simplices": [{"vertices": list(s), "witness": w} for s, w in zip(self.simplices, self.witnesses)],
            "edges": [list(e) for e in self.edges()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TypedComplex":
        """Read either the export format or a compact fixture

        ``{"types": [...], "vertices": {"x1": "a", ...}, "simplices": [["x1", "y1"], ...]}``.
        """
        types = [str(t) for t in data["types"]]
        tindex = {t: k for k, t in enumerate(types)}
        verts = data["vertices"]
        if isinstance(verts, dict):
            names = list(verts)
            vtypes = [tindex[str(verts[n])] for n in names]
            safe = None
        else:
            names = [str(v.get("name", v["id"])) for v in verts]
            vtypes = [tindex[str(v["type"])] for v in verts]
            safe = [v.get("safeRadius") for v in verts]
        nindex = {n: k for k, n in enumerate(names)}
        simplices, witnesses = [], []
        for s in data.get("simplices", []):
            if isinstance(s, dict):
                vs, w = s["vertices"], s.get("witness", "")
            else:
                vs, w = s, ""
            simplices.append([nindex[str(v)] if str(v) in nindex else int(v) for v in vs])
            witnesses.append(w)
        closed = data.get("closed", True)
        if closed or safe is None or any(x is None for x in safe):
            return cls(types, vtypes, simplices, names, witnesses)
        radius = int(data["radius"])
        return cls(types, vtypes, simplices, names, witnesses, depth=[radius - s for s in safe], radius=radius)


# ---------------------------------------------------------------------------
# chamber enumeration

@dataclass
class _Chambers:
    words: list            # signed words ((s, e), ...)
    depth: list
    nbr: list              # nbr[c][(s, e)] -> chamber index (within the ball)
    elems: list | None     # GarsideElements in exact mode
    wimg: list | None      # Coxeter group element index in exact mode
    index: dict = field(default_factory=dict)


def _letters(n: int) -> list:
    return [(s, e) for s in range(n) for e in (1, -1)]


def _enumerate_exact(G: GarsideStructure, r: int, budget: int) -> _Chambers:
    n = G.n
    one = G.identity()
    ch = _Chambers([()], [0], [dict()], [one], [0], {one.key: 0})
    frontier = [0]
    right = G.right
    for level in range(r + 1):
        new = []
        for c in frontier:
            g = ch.elems[c]
            for s, e in _letters(n):
                h = G.mul_letter(g, s, e)
                j = ch.index.get(h.key)
                if j is None:
                    if level == r:
                        continue
                    j = len(ch.words)
                    if j >= budget:
                        raise BudgetExceeded(f"ball exceeds {budget} chambers")
                    ch.index[h.key] = j
                    ch.words.append(ch.words[c] + ((s, e),))
                    ch.depth.append(level + 1)
                    ch.nbr.append({})
                    ch.elems.append(h)
                    ch.wimg.append(right[ch.wimg[c]][s])
                    new.append(j)
                ch.nbr[c][(s, e)] = j
        frontier = new
    return ch


def _enumerate_words(n: int, r: int, budget: int) -> _Chambers:
    ch = _Chambers([()], [0], [dict()], None, None, {(): 0})
    frontier = [0]
    for level in range(r + 1):
        new = []
        for c in frontier:
            w = ch.words[c]
            for s, e in _letters(n):
                if w and w[-1] == (s, -e):
                    ch.nbr[c][(s, e)] = ch.index[w[:-1]]
                    continue
                if level == r:
                    continue
                j = len(ch.words)
                if j >= budget:
                    raise BudgetExceeded(f"ball exceeds {budget} chambers")
                key = w + ((s, e),)
                ch.index[key] = j
                ch.words.append(key)
                ch.depth.append(level + 1)
                ch.nbr.append({})
                new.append(j)
                ch.nbr[c][(s, e)] = j
        frontier = new
    return ch


class _UnionFind:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            if a < b:
                self.p[b] = a
            else:
                self.p[a] = b


# ---------------------------------------------------------------------------
# balls

class TypedComplexBall(TypedComplex):
    """Radius-r ball of a relative or folded Artin complex."""

    def __init__(self, diagram: DynkinDiagram, type_names, removed, radius: int,
                 chambers: _Chambers, G: GarsideStructure | None, kind: str = "relative"):
        self.diagram = diagram
        self.removed = [frozenset(T) for T in removed]
        self.stabilizers = [frozenset(range(diagram.rank)) - T for T in self.removed]
        self.kind = kind
        self.G = G
        self.exact = G is not None
        self.chamber_words = chambers.words
        self.chamber_depth = chambers.depth
        self.chamber_elements = chambers.elems
        self.chamber_w = chambers.wimg
        self._chambers = chambers
        ntypes = len(self.removed)
        nch = len(chambers.words)
        labels = []   # labels[t][c] = class root
        for t in range(ntypes):
            labels.append(self._identify(chambers, self.stabilizers[t]))
        order = sorted({(labels[t][c], t) for t in range(ntypes) for c in range(nch)})
        vid = {key: k for k, key in enumerate(order)}
        self.chamber_vertices = [tuple(vid[(labels[t][c], t)] for t in range(ntypes)) for c in range(nch)]
        self.vertex_chamber = [key[0] for key in order]
        vertex_types = [key[1] for key in order]
        depth = [chambers.depth[c] for c in self.vertex_chamber]
        seen, simplices, witnesses, self.simplex_chambers = {}, [], [], []
        for c, vs in enumerate(self.chamber_vertices):
            key = tuple(sorted(vs))
            if key not in seen:
                seen[key] = len(simplices)
                simplices.append(key)
                witnesses.append(self.chamber_word(c))
                self.simplex_chambers.append([])
            self.simplex_chambers[seen[key]].append(c)
        self.simplex_index = seen
        super().__init__(type_names, vertex_types, simplices, None, witnesses, depth, radius)

    # vertex identification -------------------------------------------------
    def _identify(self, ch: _Chambers, X: frozenset) -> list:
        """labels[c] = least chamber index in the coset class of c modulo A_X."""
        nch = len(ch.words)
        uf = _UnionFind(nch)
        for c in range(nch):
            for (s, e), j in ch.nbr[c].items():
                if s in X:
                    uf.union(c, j)
        if self.exact:
            table = self.G.table
            buckets = {}
            for c in range(nch):
                if uf.find(c) == c:
                    buckets.setdefault(table.min_coset_rep(ch.wimg[c], X), []).append(c)
            elems = ch.elems
            for comps in buckets.values():
                if len(comps) < 2:
                    continue
                reps = []
                for c in comps:
                    for rep in reps:
                        if (elems[rep].inverse() * elems[c]).support() <= X:
                            uf.union(rep, c)
                            break
                    else:
                        reps.append(c)
        return [uf.find(c) for c in range(nch)]

    @property
    def exact_vertices(self) -> bool:
        return self.exact

    # chamber helpers ---------------------------------------------------------
    def chamber_word(self, c: int) -> str:
        return format_word([(self.diagram.vertices[s], e) for s, e in self.chamber_words[c]])

    def chamber_of(self, word) -> int | None:
        """Index of the chamber represented by a signed word, if inside the ball."""
        word = [(self.diagram.index(s) if not isinstance(s, int) else s, e) for s, e in word]
        if self.exact:
            g = self.G.identity()
            for s, e in word:
                g = self.G.mul_letter(g, s, e)
            return self._chambers.index.get(g.key)
        return self._chambers.index.get(tuple(_free_reduce(word)))

    def chambers_of_vertex(self, v: int) -> list:
        t = self.vertex_types[v]
        return [c for c, vs in enumerate(self.chamber_vertices) if vs[t] == v]

    def _w_word(self, u: int, v: int) -> list:
        """Letters of g_u^-1 g_v in the Coxeter group."""
        a = self.chamber_words[self.vertex_chamber[u]]
        b = self.chamber_words[self.vertex_chamber[v]]
        return [s for s, _ in reversed(a)] + [s for s, _ in b]

    def certified_nonadjacent(self, u: int, v: int) -> bool:
        """The Coxeter image of g_u^-1 g_v avoids W_Xu W_Xv, so the cosets cannot meet."""
        if u == v:
            return False
        Xu = self.stabilizers[self.vertex_types[u]]
        Xv = self.stabilizers[self.vertex_types[v]]
        if self.exact:
            if self.vertex_types[u] == self.vertex_types[v]:
                return True
            t = self.G.table
            w = t.mul(int(t.inverse[self.chamber_w[self.vertex_chamber[u]]]),
                      self.chamber_w[self.vertex_chamber[v]])
            return _double_coset_min(t, w, Xu, Xv) != 0
        return not self.coxeter.in_parabolic_product(self._w_word(u, v), Xu, Xv)

    @cached_property
    def coxeter(self) -> CoxeterGroup:
        return self.G.table.group if self.exact else CoxeterGroup(self.diagram)

    def stats(self) -> dict:
        out = super().stats()
        out.update({"chambers": len(self.chamber_words), "exact": self.exact, "kind": self.kind})
        return out

    def to_json(self) -> dict:
        out = super().to_json()
        out["diagram"] = self.diagram.to_json()
        out["exact"] = self.exact
        out["kind"] = self.kind
        out["typeStabilizers"] = {self.type_names[t]: sorted(self.diagram.vertices[s] for s in X)
                                  for t, X in enumerate(self.stabilizers)}
        return out


def _free_reduce(word) -> list:
    out = []
    for s, e in word:
        if out and out[-1] == (s, -e):
            out.pop()
        else:
            out.append((s, e))
    return out


def _double_coset_min(table, w: int, X: Iterable[int], Y: Iterable[int]) -> int:
    """Minimal element of W_X w W_Y, by descending greedily on both sides."""
    mx = sum(1 << s for s in X)
    my = sum(1 << s for s in Y)
    while True:
        d = int(table.left_descent[w]) & mx
        if d:
            w = int(table.left[w, (d & -d).bit_length() - 1])
            continue
        d = int(table.right_descent[w]) & my
        if d:
            w = int(table.right[w, (d & -d).bit_length() - 1])
            continue
        return w


_GARSIDE_CACHE: dict = {}


def garside_for(d: DynkinDiagram) -> GarsideStructure:
    key = (d.vertices, tuple(sorted(d.labels.items())))
    if key not in _GARSIDE_CACHE:
        _GARSIDE_CACHE[key] = GarsideStructure(d)
    return _GARSIDE_CACHE[key]


def _build(d: DynkinDiagram, type_names, removed, r: int, kind: str, budget: int | None) -> TypedComplexBall:
    if r < 0:
        raise BallError("radius must be non-negative")
    budget = budget or BALL_BUDGET
    S = set(range(d.rank))
    for name, T in zip(type_names, removed):
        X = S - set(T)
        if X and not is_spherical(d.subdiagram([d.vertices[s] for s in X])):
            raise NonSphericalVertexStabilizer(f"stabilizer of type {name} is not spherical")
    if is_spherical(d):
        G = garside_for(d)
        ch = _enumerate_exact(G, r, budget)
    else:
        G = None
        ch = _enumerate_words(d.rank, r, budget)
    return TypedComplexBall(d, type_names, removed, r, ch, G, kind)


def build_ball(d: DynkinDiagram, targets: Iterable | None = None, r: int = 2,
               budget: int | None = None) -> TypedComplexBall:
    """Ball of the relative Artin complex Delta_{S,S'} (S' = targets, default all of S)."""
    targets = list(d.vertices) if targets is None else [t for t in d.vertices if t in set(targets)]
    if not targets:
        raise BallError("no target types")
    return _build(d, targets, [{d.index(t)} for t in targets], r, "relative", budget)


# ---------------------------------------------------------------------------
# links

@dataclass
class LinkResult:
    link: TypedComplex
    vertex: int
    safe: bool
    link_radius: int
    iso_checked: bool = False
    iso_ok: bool | None = None
    join_components: list = field(default_factory=list)
    join_ok: bool | None = None
    details: dict = field(default_factory=dict)


def vertex_link(b: TypedComplexBall, v: int, link_radius: int | None = None) -> LinkResult:
    """Witnessed link of v, compared with a fresh ball of the smaller diagram when safe."""
    t = b.vertex_types[v]
    nb = sorted(b.neighbors[v])
    simplices = [tuple(u for u in s if u != v) for s in b.simplices if v in s]
    simplices = [s for s in simplices if s]
    local = {u: k for k, u in enumerate(nb)}
    link = TypedComplex(b.type_names, [b.vertex_types[u] for u in nb],
                        [[local[u] for u in s] for s in simplices], [b.vertex_names[u] for u in nb],
                        depth=[b.depth[u] for u in nb], radius=b.radius)
    safe_r = b.safe_radius(v)
    r = safe_r if link_radius is None else min(link_radius, safe_r)
    res = LinkResult(link, v, safe=bool(nb) and safe_r >= 1, link_radius=max(r, 0))
    if not nb or r < 0 or b.kind != "relative":
        return res
    X = sorted(b.stabilizers[t])
    sub = b.diagram.subdiagram([b.diagram.vertices[s] for s in X])
    sub_targets = [b.type_names[k] for k in range(len(b.type_names)) if k != t]
    if not sub_targets:
        return res
    small = build_ball(sub, sub_targets, r) if (is_spherical(sub) or b.exact) else None
    if small is None:
        return res
    g = b.chamber_words[b.vertex_chamber[v]]
    vmap, ok = {}, True
    big_type = {k2: b.type_names.index(name) for k2, name in enumerate(small.type_names)}
    mapped_simplices = set()
    for c in range(len(small.chamber_words)):
        word = list(g) + [(sub.vertices[s], e) for s, e in small.chamber_words[c]]
        word = [(b.diagram.index(s) if isinstance(s, str) else s, e) for s, e in word]
        cb = b.chamber_of(word)
        if cb is None:
            ok = False
            continue
        img = []
        for k2, u in enumerate(small.chamber_vertices[c]):
            target = b.chamber_vertices[cb][big_type[k2]]
            if vmap.setdefault(u, target) != target:
                ok = False
            img.append(target)
        if b.chamber_vertices[cb][t] != v:
            ok = False
        mapped_simplices.add(tuple(sorted(img)))
    injective = len(set(vmap.values())) == len(vmap)
    types_ok = all(b.type_names[b.vertex_types[vmap[u]]] == small.type_of(u) for u in vmap)
    res.iso_checked = True
    res.iso_ok = ok and injective and types_ok and set(vmap.values()) <= set(nb)
    res.details = {"small_vertices": small.n_vertices, "mapped": len(vmap),
                   "link_vertices": len(nb), "small_simplices": len(small.simplices),
                   "mapped_simplices": len(mapped_simplices)}
    # join decomposition over components of the stabilizer diagram carrying target types
    comps = [c for c in sub.components() if any(x in sub_targets for x in c)]
    res.join_components = [sorted(x for x in c if x in sub_targets) for c in comps]
    if len(comps) > 1:
        comp_of = {}
        for k, c in enumerate(comps):
            for x in c:
                comp_of[x] = k
        jok = True
        for a in range(small.n_vertices):
            for a2 in range(a + 1, small.n_vertices):
                ka, kb = comp_of[small.type_of(a)], comp_of[small.type_of(a2)]
                if ka != kb and small.depth[a] + small.depth[a2] <= r and not small.adjacent(a, a2):
                    jok = False
        res.join_ok = jok
    return res


# ---------------------------------------------------------------------------
# folding onto the Coxeter complex

@dataclass
class FoldResult:
    chamber_images: list       # chamber -> Coxeter group element
    vertex_images: dict        # ball vertex -> Coxeter complex vertex
    well_defined: bool
    types_preserved: bool
    simplicial: bool
    apartment_ok: bool
    apartment_chambers: int
    apartment_vertices: int

    @property
    def ok(self) -> bool:
        return self.well_defined and self.types_preserved and self.simplicial and self.apartment_ok


def fold_to_coxeter(b: TypedComplexBall) -> FoldResult:
    if not b.exact:
        raise NotSpherical("folding to the Coxeter complex needs a spherical diagram")
    table = b.G.table
    cx = coxeter_complex(b.diagram, table)
    gens = [next(iter(T)) if len(T) == 1 else None for T in b.removed]
    vimg, well = {}, True
    for c, vs in enumerate(b.chamber_vertices):
        w = b.chamber_w[c]
        for t, v in enumerate(vs):
            s = gens[t]
            if s is None:
                img = (t, table.min_coset_rep(w, b.stabilizers[t]))
            else:
                img = int(cx.chambers[w, s])
            if vimg.setdefault(v, img) != img:
                well = False
    types_ok = all(cx.vertices[img][0] == gens[b.vertex_types[v]] for v, img in vimg.items()
                   if isinstance(img, int))
    # each chamber lands on the Coxeter chamber of its image, so simplices go to simplices
    simplicial = all(
        all(vimg[v] == int(cx.chambers[b.chamber_w[c], gens[t]]) for t, v in enumerate(vs) if gens[t] is not None)
        for c, vs in enumerate(b.chamber_vertices))
    # apartment: lifts of all of W; same A-coset exactly when same W-coset
    G = b.G
    lifts = [G.simple(w) for w in range(table.order)]
    ap_ok = True
    ap_vertices = 0
    for t, X in enumerate(b.stabilizers):
        classes = {}
        for w in range(table.order):
            classes.setdefault(table.min_coset_rep(w, X), []).append(w)
        ap_vertices += len(classes)
        for members in classes.values():
            base = lifts[members[0]].inverse()
            for w in members[1:]:
                if not (base * lifts[w]).support() <= X:
                    ap_ok = False
    return FoldResult(list(b.chamber_w), vimg, well, types_ok, simplicial, ap_ok, table.order, ap_vertices)


# ---------------------------------------------------------------------------
# folded complexes

@dataclass
class FoldedBall:
    ball: TypedComplexBall
    unfolded: TypedComplexBall              # Delta_{S, S''} on the same chambers
    embedding: dict                          # folded vertex -> tuple of unfolded vertices
    embedding_consistent: bool


def folded_complex(d: DynkinDiagram, f: GeneratorMap, sub: Iterable | None = None, r: int = 2,
                   budget: int | None = None) -> FoldedBall:
    if f.source != d:
        raise BallError("folding source differs from the diagram")
    try:
        complete = check_special_folding(f)
    except DiagramError as exc:
        raise NotSpecialFolding(str(exc)) from exc
    if not complete:
        raise NotSpecialFolding("fibers of adjacent vertices are not completely joined")
    sub = list(f.target.vertices) if sub is None else [x for x in f.target.vertices if x in set(sub)]
    fibers = [frozenset(d.index(s) for s, w in f.images.items() if w[0] == x) for x in sub]
    ball = _build(d, sub, fibers, r, "folded", budget)
    unfolded_types = [d.vertices[s] for s in sorted(set().union(*fibers))]
    unfolded = build_ball(d, unfolded_types, r, budget)
    pos = {name: k for k, name in enumerate(unfolded.type_names)}
    emb, ok = {}, True
    for c, vs in enumerate(ball.chamber_vertices):
        uv = unfolded.chamber_vertices[c]
        for t, v in enumerate(vs):
            img = tuple(sorted(uv[pos[d.vertices[s]]] for s in fibers[t]))
            if emb.setdefault(v, img) != img:
                ok = False
    return FoldedBall(ball, unfolded, emb, ok)


# ---------------------------------------------------------------------------
# cycles to words

@dataclass
class CycleWord:
    cycle: list
    chambers: list             # chamber index per edge (x_i, x_{i+1})
    words: list                # signed words (generator names) for w_i = g_{i-1}^-1 g_i
    in_stabilizer: list        # w_i in A_{X(x_i)} (None in word mode)
    product_trivial: bool
    elements: list | None = None

    def formatted(self) -> list:
        return [format_word(w) for w in self.words]


def _edge_chambers(b: TypedComplexBall, u: int, v: int) -> list:
    tu, tv = b.vertex_types[u], b.vertex_types[v]
    return [c for c, vs in enumerate(b.chamber_vertices) if vs[tu] == u and vs[tv] == v]


def cycle_to_word(b: TypedComplexBall, cycle: Sequence[int], chambers: Sequence[int] | None = None) -> CycleWord:
    n = len(cycle)
    if n < 2:
        raise NotAClosedPath("a cycle needs at least two vertices")
    chosen = []
    for i in range(n):
        u, v = cycle[i], cycle[(i + 1) % n]
        options = _edge_chambers(b, u, v)
        if not options:
            raise NotAClosedPath(f"vertices {u} and {v} are not joined by a witnessed edge")
        if chambers is not None:
            if chambers[i] not in options:
                raise NotAClosedPath(f"chamber {chambers[i]} does not contain edge ({u}, {v})")
            chosen.append(chambers[i])
        else:
            chosen.append(options[0])
    words, elems, inside = [], [], []
    for i in range(n):
        prev, cur = chosen[i - 1], chosen[i]
        X = b.stabilizers[b.vertex_types[cycle[i]]]
        if b.exact:
            el = b.chamber_elements[prev].inverse() * b.chamber_elements[cur]
            elems.append(el)
            inside.append(el.support() <= X)
            words.append(tuple(el.short_word()))
        else:
            a, c = b.chamber_words[prev], b.chamber_words[cur]
            red = _free_reduce([(s, -e) for s, e in reversed(a)] + list(c))
            words.append(tuple((b.diagram.vertices[s], e) for s, e in red))
            inside.append(None)
    if b.exact:
        total = b.G.identity()
        for el in elems:
            total = total * el
        trivial = total.is_trivial()
    else:
        trivial = not _free_reduce([x for w in words for x in w])
    return CycleWord(list(cycle), chosen, words, inside, trivial, elems if b.exact else None)


@dataclass
class CycleEquivalence:
    q: list                  # q_i = g_i^-1 g'_i as signed words
    q_in_stabilizer: list    # q_i in A_{X(x_i) & X(x_{i+1})}
    conjugation_ok: bool     # u_i = q_{i-1}^-1 w_i q_i

    @property
    def ok(self) -> bool:
        return self.conjugation_ok and all(self.q_in_stabilizer)


def cycle_equivalence(b: TypedComplexBall, first: CycleWord, second: CycleWord) -> CycleEquivalence:
    if not b.exact:
        raise NotSpherical("equivalence of cycle words is decided with normal forms")
    if first.cycle != second.cycle:
        raise BallError("cycle words belong to different cycles")
    n = len(first.cycle)
    E = b.chamber_elements
    qs = [E[first.chambers[i]].inverse() * E[second.chambers[i]] for i in range(n)]
    qwords, inside = [], []
    for i in range(n):
        qwords.append(tuple(qs[i].short_word()))
        X = b.stabilizers[b.vertex_types[first.cycle[i]]] & b.stabilizers[b.vertex_types[first.cycle[(i + 1) % n]]]
        inside.append(qs[i].support() <= X)
    conj = all(second.elements[i] == qs[i - 1].inverse() * first.elements[i] * qs[i] for i in range(n))
    return CycleEquivalence(qwords, inside, conj)


def apartment_cycle(b: TypedComplexBall) -> list:
    """For a rank-2 ball containing the whole base apartment: its vertices in cyclic order."""
    if not b.exact or b.diagram.rank != 2:
        raise BallError("apartment cycles are produced for spherical rank-2 balls")
    table = b.G.table
    # alternating walk e, a, ab, aba, ... closes up after 2m steps
    order = [0]
    for k in range(table.order - 1):
        order.append(int(table.right[order[-1], k % 2]))
    chambers = [b.chamber_of([(s, 1) for s in table.word(w)]) for w in order]
    if any(c is None for c in chambers):
        raise BallError("ball too small to contain the base apartment")
    cycle = []
    for i, c in enumerate(chambers):
        nxt = chambers[(i + 1) % len(chambers)]
        shared = set(b.chamber_vertices[c]) & set(b.chamber_vertices[nxt])
        cycle.append(shared.pop())
    return cycle
