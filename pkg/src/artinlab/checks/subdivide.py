"""Edge subdivisions of relative Artin complexes.

The complex must carry exactly the listed types and, when it comes with a
diagram, the types must form a fork (b1, b2 both attached to the first chain
type) or a double fork (a1, a2 at the head of the chain, c1, c2 at its tail).

(b1, b2)-subdivision: every edge between types b1 and b2 gets a midpoint of
type m; each top simplex {x1, x2, x3, ...} becomes {x1, m, x3, ...} and
{x2, m, x3, ...}.  Integer types: b1, b2 -> 1, m -> 2, b_i -> i.

D-tilde subdivision: midpoints a (of a1-a2 edges) and c (of c1-c2 edges);
each top simplex splits into four.  Integer types: a_i -> 1, a -> 2,
b_k -> k + 2, c -> n + 3, c_j -> n + 4.
"""
from __future__ import annotations

from typing import Sequence

import networkx as nx

from ..artincx import TypedComplex


class ShapeMismatch(ValueError):
    pass


class SubdividedBall(TypedComplex):
    def __init__(self, base: TypedComplex, kind: str, tvalues: list, base_vertex: list,
                 midpoints: dict, simplices: list, depth):
        self.base = base
        self.kind = kind
        self.base_vertex = base_vertex          # new vertex -> base vertex (None for midpoints)
        self.midpoints = midpoints              # (u, v) base edge -> new vertex
        self.midpoint_edge = {m: e for e, m in midpoints.items()}
        top = max(tvalues)
        names = [base.vertex_names[b] if b is not None else f"m{base.vertex_names[e[0]]}.{base.vertex_names[e[1]]}"
                 for b, e in zip(base_vertex, [self._edge_or_none(k) for k in range(len(base_vertex))])]
        super().__init__([str(t) for t in range(1, top + 1)], [t - 1 for t in tvalues], simplices, names,
                         depth=depth, radius=base.radius)
        self.tvalue = list(tvalues)

    def _edge_or_none(self, k):
        return self.midpoint_edge.get(k, (None, None))

    @property
    def exact_vertices(self) -> bool:
        return self.base.exact_vertices

    def certified_nonadjacent(self, u: int, v: int) -> bool:
        if self.closed:
            return u != v and not self.adjacent(u, v)
        if u == v:
            return False
        if self.vertex_types[u] == self.vertex_types[v]:
            return self.exact_vertices
        bu, bv = self.base_vertex[u], self.base_vertex[v]
        if bu is not None and bv is not None:
            return self.base.certified_nonadjacent(bu, bv)
        if bu is None and bv is None:
            ends = self.midpoint_edge[u] + self.midpoint_edge[v]
            return any(self.base.certified_nonadjacent(a, b) for a in self.midpoint_edge[u]
                       for b in self.midpoint_edge[v] if a != b) if len(set(ends)) == 4 else False
        m, w = (u, bv) if bu is None else (v, bu)
        return any(self.base.certified_nonadjacent(w, e) for e in self.midpoint_edge[m] if e != w)


def _check_shape(base: TypedComplex, kind: str, names: list, edges: list):
    missing = [t for t in names if t not in base.type_names]
    if missing:
        raise ShapeMismatch(f"types {missing} are absent from the complex")
    if set(names) != set(base.type_names):
        raise ShapeMismatch("subdivision types must be exactly the complex's types")
    d = getattr(base, "diagram", None)
    if d is not None:
        g = d.dynkin_graph.subgraph(names)
        want = nx.Graph(edges)
        if set(map(frozenset, g.edges())) != set(map(frozenset, want.edges())):
            raise ShapeMismatch(f"type diagram is not {kind}-shaped")


def subdivide(base: TypedComplex, kind: str, pairs: Sequence, chain: Sequence) -> SubdividedBall:
    """kind 'B': pairs = (b1, b2), chain = (b3, ..., b_{n+1});
    kind 'D': pairs = ((a1, a2), (c1, c2)), chain = (b1, ..., bn)."""
    chain = [str(x) for x in chain]
    if kind == "B":
        b1, b2 = (str(x) for x in pairs)
        if not chain:
            raise ShapeMismatch("B-shaped subdivision needs at least one chain type")
        names = [b1, b2] + chain
        edges = [(b1, chain[0]), (b2, chain[0])] + list(zip(chain, chain[1:]))
        _check_shape(base, "fork", names, edges)
        tval = {b1: 1, b2: 1, **{t: k + 3 for k, t in enumerate(chain)}}
        split = [(b1, b2, 2)]
    elif kind == "D":
        (a1, a2), (c1, c2) = ((str(x) for x in p) for p in pairs)
        if not chain:
            raise ShapeMismatch("D-shaped subdivision needs at least one chain type")
        n = len(chain)
        names = [a1, a2] + chain + [c1, c2]
        edges = [(a1, chain[0]), (a2, chain[0]), (c1, chain[-1]), (c2, chain[-1])] + list(zip(chain, chain[1:]))
        _check_shape(base, "double-fork", names, edges)
        tval = {a1: 1, a2: 1, **{t: k + 3 for k, t in enumerate(chain)}, c1: n + 4, c2: n + 4}
        split = [(a1, a2, 2), (c1, c2, n + 3)]
    else:
        raise ShapeMismatch(f"unknown subdivision kind {kind!r}")
    nb = base.n_vertices
    tvalues = [tval[base.type_of(v)] for v in range(nb)]
    base_vertex = list(range(nb))
    depth = None if base.closed else list(base.depth)
    midpoints = {}

    def midpoint(u, v):
        key = (min(u, v), max(u, v))
        if key not in midpoints:
            midpoints[key] = len(base_vertex)
            base_vertex.append(None)
            tvalues.append(t_mid[key_types(key)])
            if depth is not None:
                depth.append(max(base.depth[u], base.depth[v]))
        return midpoints[key]

    t_mid = {}
    for p, q, t in split:
        t_mid[frozenset((p, q))] = t

    def key_types(key):
        return frozenset((base.type_of(key[0]), base.type_of(key[1])))

    simplices = []
    for s in base.simplices:
        by_type = {base.type_of(v): v for v in s}
        if len(by_type) != len(base.type_names):
            raise ShapeMismatch("subdivision needs top simplices containing every type")
        rest = [by_type[t] for t in chain]
        if kind == "B":
            x1, x2 = by_type[b1], by_type[b2]
            m = midpoint(x1, x2)
            simplices += [[x1, m] + rest, [x2, m] + rest]
        else:
            ma = midpoint(by_type[a1], by_type[a2])
            mc = midpoint(by_type[c1], by_type[c2])
            for ai in (a1, a2):
                for cj in (c1, c2):
                    simplices.append([by_type[ai], ma] + rest + [mc, by_type[cj]])
    return SubdividedBall(base, kind, tvalues, base_vertex, midpoints, simplices, depth)
