"""Helly property of graph balls and shortest-cycle (girth) reports."""
from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable

import networkx as nx
import numpy as np

from .report import CONSISTENT, INCONCLUSIVE, VIOLATED, CheckReport


def graph_to_json(g: nx.Graph) -> dict:
    nodes = sorted(g.nodes, key=str)
    return {"nodes": [str(v) for v in nodes], "edges": sorted([sorted([str(u), str(v)]) for u, v in g.edges])}


def graph_from_json(data: dict) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(str(v) for v in data.get("nodes", []))
    g.add_edges_from((str(u), str(v)) for u, v in data["edges"])
    return g


def distance_matrix(g: nx.Graph, nodes: list) -> np.ndarray:
    index = {v: k for k, v in enumerate(nodes)}
    D = np.full((len(nodes), len(nodes)), np.inf)
    for v, dist in nx.all_pairs_shortest_path_length(g):
        row = index[v]
        for u, d in dist.items():
            D[row, index[u]] = d
    return D


def helly_triple_violation(D: np.ndarray, triple) -> bool:
    """Balls containing two of the triple have empty common intersection.

    For each centre v the smallest ball around v holding two of the triple
    has radius equal to the second smallest distance from v to the triple;
    larger balls only grow, so these balls alone decide the intersection.
    """
    d2 = np.sort(D[:, list(triple)], axis=1)[:, 1]
    return not bool((D <= d2[None, :]).all(axis=1).any())


def check_helly(g: nx.Graph, safe: Iterable | None = None, radius: int | None = None) -> CheckReport:
    """Triple criterion for the Helly property of the ball hypergraph.

    A hypergraph is Helly iff for every three vertices the edges containing
    at least two of them share a vertex.  With ``safe`` given, the graph is a
    truncation: only triples inside ``safe`` are scanned and a failure is
    INCONCLUSIVE, since vertices outside the truncation could fill the gap.
    """
    nodes = sorted(g.nodes, key=str)
    D = distance_matrix(g, nodes)
    index = {v: k for k, v in enumerate(nodes)}
    scan = range(len(nodes)) if safe is None else sorted(index[v] for v in safe if v in index)
    triples = failures = 0
    first = None
    for t in itertools.combinations(scan, 3):
        triples += 1
        if helly_triple_violation(D, t):
            failures += 1
            if first is None:
                first = [str(nodes[k]) for k in t]
            if safe is None:
                witness = {"kind": "helly", "triple": first, "graph": graph_to_json(g)}
                return CheckReport("helly", VIOLATED, witness, None, None,
                                   {"vertices": len(nodes), "triples": triples})
    stats = {"vertices": len(nodes), "triples": triples, "failing_triples": failures}
    if failures:
        return CheckReport("helly", INCONCLUSIVE, None, radius, None, stats,
                           [f"triple {first} has no common point inside the truncation"])
    return CheckReport("helly", CONSISTENT, None, radius, None, stats)


def shortest_cycle(g: nx.Graph, nodes: Iterable | None = None) -> list | None:
    """A shortest cycle of the (induced) graph as a vertex list, or None."""
    h = g if nodes is None else g.subgraph(nodes)
    best = None
    for root in h.nodes:
        parent = {root: None}
        depth = {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * depth[u] + 1 >= len(best):
                break
            for w in h.neighbors(u):
                if w not in depth:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = depth[u] + depth[w] + 1
                    if best is None or length < len(best):
                        cyc = _join_paths(parent, u, w)
                        if cyc is not None:
                            best = cyc
    return best


def _join_paths(parent, u, w):
    def path(x):
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out
    pu, pw = path(u), path(w)
    common = set(pu) & set(pw)
    # cut both paths at their last common ancestor so the cycle is embedded
    cu = next(k for k, x in enumerate(pu) if x in common)
    cw = pw.index(pu[cu])
    cyc = pu[:cu + 1] + list(reversed(pw[:cw]))
    return cyc if len(cyc) >= 3 else None


def girth_report(g: nx.Graph, bound: int, safe: Iterable | None = None,
                 radius: int | None = None) -> CheckReport:
    """One-sided girth evidence: VIOLATED when an embedded cycle shorter than
    ``bound`` exists (the cycle itself is the witness), otherwise CONSISTENT
    with the radius of the searched graph."""
    cyc = shortest_cycle(g, safe)
    stats = {"vertices": g.number_of_nodes() if safe is None else len(set(safe)),
             "edges": g.number_of_edges(), "bound": bound,
             "shortest_cycle": None if cyc is None else len(cyc)}
    if cyc is not None and len(cyc) < bound:
        witness = {"kind": "girth", "bound": bound, "cycle": [str(v) for v in cyc],
                   "graph": graph_to_json(g.subgraph(cyc))}
        return CheckReport("girth", VIOLATED, witness, radius, None, stats)
    notes = ["no cycle inside the searched region"] if cyc is None else []
    return CheckReport("girth", CONSISTENT, None, radius, None, stats, notes)


def verify_cycle(g: nx.Graph, cycle: list) -> bool:
    """Is ``cycle`` an embedded cycle of g?"""
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        return False
    return all(g.has_edge(cycle[k], cycle[(k + 1) % len(cycle)]) for k in range(len(cycle)))
