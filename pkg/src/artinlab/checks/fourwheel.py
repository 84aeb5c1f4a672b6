"""Labeled 4-wheel condition: induced 4-cycles have an apex of a type in the spanning subtree."""
from __future__ import annotations

import networkx as nx

from ..artincx import TypedComplex
from .posets import SAMPLE, bits, closed_witness, default_core
from .report import CONSISTENT, INCONCLUSIVE, VIOLATED, CheckReport


class DiagramNotTree(ValueError):
    pass


def type_tree_of(cx: TypedComplex, tree=None) -> nx.Graph:
    """The tree on type names: given explicitly, or the Dynkin graph on the ball's types."""
    if tree is None:
        if not hasattr(cx, "diagram"):
            raise DiagramNotTree("a type tree is required for complexes without a diagram")
        d = cx.diagram
        if any(len(T) != 1 for T in cx.removed):
            raise DiagramNotTree("folded types carry no single-vertex tree")
        tree = d.dynkin_graph.subgraph(list(cx.type_names)).copy()
    elif not isinstance(tree, nx.Graph):
        g = nx.Graph()
        g.add_nodes_from(cx.type_names)
        g.add_edges_from(tree)
        tree = g
    if set(tree.nodes) != set(cx.type_names) or not nx.is_tree(tree):
        raise DiagramNotTree("type diagram is not a tree on the vertex types")
    return tree


def spanning_subtree(tree: nx.Graph, types) -> set:
    """Vertices of the minimal subtree containing ``types``."""
    types = list(dict.fromkeys(types))
    out = {types[0]}
    for t in types[1:]:
        out.update(nx.shortest_path(tree, types[0], t))
    return out


def check_4wheel(cx: TypedComplex, tree=None, core_radius: int | None = None) -> CheckReport:
    tree = type_tree_of(cx, tree)
    core_radius = default_core(cx, core_radius)
    n = cx.n_vertices
    nb = [sum(1 << u for u in cx.neighbors[v]) for v in range(n)]
    type_mask = {}
    for v in range(n):
        type_mask[cx.type_of(v)] = type_mask.get(cx.type_of(v), 0) | (1 << v)
    core = sum(1 << v for v in cx.core(core_radius))
    radius = None if cx.closed else core_radius
    cycles = undecided = missing = 0
    sample = []
    for x1 in bits(core):
        # x3 at distance two from x1, larger index; x1 is the least vertex of the cycle
        second = 0
        for u in bits(nb[x1] & core):
            second |= nb[u]
        second &= core & ~nb[x1] & ~((1 << (x1 + 1)) - 1)
        for x3 in bits(second):
            diag13 = cx.are_adjacent(x1, x3)
            if diag13:
                continue
            mids = [u for u in bits(nb[x1] & nb[x3] & core) if u > x1]
            for i, x2 in enumerate(mids):
                for x4 in mids[i + 1:]:
                    diag24 = cx.are_adjacent(x2, x4)
                    if diag24:
                        continue
                    if diag13 is None or diag24 is None:
                        undecided += 1
                        continue
                    cycles += 1
                    cyc = [x1, x2, x3, x4]
                    allowed = 0
                    for t in spanning_subtree(tree, [cx.type_of(v) for v in cyc]):
                        allowed |= type_mask.get(t, 0)
                    common = nb[x1] & nb[x2] & nb[x3] & nb[x4]
                    if common & allowed:
                        continue
                    missing += 1
                    if cx.closed:
                        witness = {"kind": "4wheel", "cycle": [cx.vertex_names[v] for v in cyc],
                                   "typeTree": [list(e) for e in tree.edges()],
                                   "complex": closed_witness(cx, set(cyc) | set(bits(common)))}
                        return CheckReport("4wheel", VIOLATED, witness, None, None, {"induced_4_cycles": cycles})
                    if len(sample) < SAMPLE:
                        sample.append([cx.vertex_names[v] for v in cyc])
    stats = {"induced_4_cycles": cycles, "undecided_diagonals": undecided, "without_apex": missing}
    if missing:
        return CheckReport("4wheel", INCONCLUSIVE, None, radius, cx.radius, stats,
                           [f"no apex inside the ball, e.g. {sample}"])
    notes = [] if not undecided else ["4-cycles with an undecided diagonal were skipped"]
    return CheckReport("4wheel", CONSISTENT, None, radius, cx.radius, stats, notes)
