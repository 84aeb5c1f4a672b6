"""Ball-scale audits of the combinatorial hypotheses behind the contractibility criteria.

Each audit builds the relative Artin complexes its hypothesis names, runs
the order, bowtie and flag checks on them and aggregates the results into one
report with one subreport per hypothesis.
"""
from __future__ import annotations

from typing import Mapping, Sequence

import networkx as nx

from ..artincx import build_ball
from ..diagram import DynkinDiagram, is_admissible
from .posets import OrderedVertexView, bits, check_bowtie_free, check_flag, check_order, order_relation
from .report import CONSISTENT, VIOLATED, CheckReport, combine
from .subdivide import ShapeMismatch, subdivide

AUDITS = ("ori_link0", "ori_link", "ori_link2", "contractibleII", "contractible")
SIMPLY_CONNECTED_NOTE = "simple connectivity of the complex is a cited fact and is not checked here"


def _component_with(d: DynkinDiagram, removed, keep) -> list:
    g = d.dynkin_graph.copy()
    g.remove_nodes_from(removed if isinstance(removed, (list, tuple, set)) else [removed])
    comp = nx.node_connected_component(g, keep)
    return [v for v in d.vertices if v in comp]


def _admissibility(d: DynkinDiagram, sub) -> CheckReport:
    ok = is_admissible(d, sub)
    return CheckReport("admissible", CONSISTENT if ok else VIOLATED,
                       None if ok else {"kind": "admissibility", "diagram": d.to_json(), "subset": list(sub)},
                       statistics={"subset": " ".join(sub)})


def _label(name: str, report: CheckReport) -> CheckReport:
    report.check = f"{name}: {report.check}"
    return report


def poset_checks(view: OrderedVertexView, flags: Sequence[str], order_report: CheckReport | None = None) -> list:
    out = [order_report if order_report is not None else check_order(view), check_bowtie_free(view)]
    out += [check_flag(view, mode) for mode in flags]
    return out


def _ball_poset(d: DynkinDiagram, types: list, order: list, radius: int, core: int | None, flags, title: str,
                budget: int | None) -> CheckReport:
    b = build_ball(d, types, radius, budget)
    view, rep = order_relation(b, order, core)
    return combine(title, poset_checks(view, flags, rep), [f"ball radius {radius}, {b.stats()['vertices']} vertices"])


def _subdivided_poset(d: DynkinDiagram, types: list, pair, chain, radius: int, core: int | None, title: str,
                      budget: int | None) -> CheckReport:
    b = build_ball(d, types, radius, budget)
    s = subdivide(b, "B", pair, chain)
    view, rep = order_relation(s, [str(t) for t in range(1, len(s.type_names) + 1)], core)
    return combine(title, poset_checks(view, ["downward"], rep),
                   [f"ball radius {radius}, {len(s.midpoints)} midpoints"])


# ---------------------------------------------------------------------------
# shape recognition

def _tree(d: DynkinDiagram, sub) -> nx.Graph:
    g = d.dynkin_graph.subgraph(sub).copy()
    if not nx.is_tree(g):
        raise ShapeMismatch("the subdiagram is not a tree")
    return g


def star_roles(d: DynkinDiagram, sub, roles: Mapping | None = None) -> dict:
    g = _tree(d, sub)
    if roles:
        a, leaves = roles["a"], [roles["b1"], roles["b2"], roles["b3"]]
    else:
        centers = [v for v in sub if g.degree(v) == 3]
        if len(sub) != 4 or len(centers) != 1:
            raise ShapeMismatch("expected a star with three edges")
        a = centers[0]
        leaves = [v for v in sub if v != a]
    if len(sub) != 4 or sorted(g.neighbors(a)) != sorted(leaves):
        raise ShapeMismatch("expected a star with three edges")
    return {"a": a, "b1": leaves[0], "b2": leaves[1], "b3": leaves[2]}


def fork_roles(d: DynkinDiagram, sub, roles: Mapping | None = None) -> dict:
    """b1, b2 attached to b3, then the chain b3 ... b_{n+1}; n >= 3."""
    g = _tree(d, sub)
    if roles:
        b = [roles[f"b{k}"] for k in range(1, len(sub) + 1)]
    else:
        branch = [v for v in sub if g.degree(v) == 3]
        if len(sub) < 4 or len(branch) != 1 or any(g.degree(v) > 3 for v in sub):
            raise ShapeMismatch("expected a fork: two leaves on the first vertex of a chain")
        b3 = branch[0]
        nbrs = [v for v in sub if g.has_edge(b3, v)]
        leaves = [v for v in nbrs if g.degree(v) == 1]
        if len(sub) == 4:
            # three leaves: the end of the chain is the one whose edge label stands out
            labels = {v: d.m(b3, v) for v in leaves}
            odd = [v for v in leaves if list(labels.values()).count(labels[v]) == 1]
            end = odd[0] if len(odd) == 1 else leaves[-1]
            b1, b2 = [v for v in leaves if v != end]
            chain = [b3, end]
        else:
            if len(leaves) != 2:
                raise ShapeMismatch("expected exactly two leaves at the branch vertex")
            b1, b2 = leaves
            rest = [v for v in sub if v not in (b1, b2)]
            h = g.subgraph(rest)
            ends = [v for v in rest if h.degree(v) == 1 and v != b3]
            chain = nx.shortest_path(h, b3, ends[0])
        b = [b1, b2] + chain
    path = [(b[0], b[2]), (b[1], b[2])] + list(zip(b[2:], b[3:]))
    if set(map(frozenset, g.edges())) != set(map(frozenset, path)):
        raise ShapeMismatch("roles do not describe a fork")
    return {f"b{k + 1}": v for k, v in enumerate(b)}


def double_fork_roles(d: DynkinDiagram, sub, roles: Mapping | None = None) -> dict:
    """a1, a2 on b1, chain b1 ... bn, c1, c2 on bn; at least five vertices."""
    g = _tree(d, sub)
    if roles:
        n = len(sub) - 4
        out = dict(roles)
        a1, a2, c1, c2 = roles["a1"], roles["a2"], roles["c1"], roles["c2"]
        chain = [roles[f"b{k}"] for k in range(1, n + 1)]
    else:
        if len(sub) < 5:
            raise ShapeMismatch("expected a double fork on at least five vertices")
        leaves = [v for v in sub if g.degree(v) == 1]
        if len(leaves) != 4:
            raise ShapeMismatch("expected four leaves")
        inner = [v for v in sub if v not in leaves]
        h = g.subgraph(inner)
        if len(inner) == 1:
            chain = inner
        else:
            ends = [v for v in inner if h.degree(v) == 1]
            if len(ends) != 2:
                raise ShapeMismatch("inner vertices do not form a chain")
            chain = nx.shortest_path(h, ends[0], ends[1])
        head = [v for v in leaves if g.has_edge(v, chain[0])]
        tail = [v for v in leaves if g.has_edge(v, chain[-1]) and v not in head] if len(chain) > 1 \
            else [v for v in leaves if v not in head[:2]]
        head = head[:2]
        if len(head) != 2 or len(tail) != 2:
            raise ShapeMismatch("expected two leaves at each end of the chain")
        a1, a2 = head
        c1, c2 = tail
        out = {"a1": a1, "a2": a2, "c1": c1, "c2": c2}
        out.update({f"b{k + 1}": v for k, v in enumerate(chain)})
    want = [(a1, chain[0]), (a2, chain[0]), (c1, chain[-1]), (c2, chain[-1])] + list(zip(chain, chain[1:]))
    if set(map(frozenset, g.edges())) != set(map(frozenset, want)):
        raise ShapeMismatch("roles do not describe a double fork")
    return out


# ---------------------------------------------------------------------------
# audits

def _per_vertex(title: str, view: OrderedVertexView, which: str) -> CheckReport:
    """For every scanned vertex x, run bowtie plus flag on V>=x (upward) or V<=x (downward)."""
    cx = view.cx
    counts = {CONSISTENT: 0, "INCONCLUSIVE": 0, VIOLATED: 0}
    bad = []
    for x in bits(view.core_mask):
        mask = view.ge[x] if which == "upward" else view.le[x]
        part = view.restricted(list(bits(mask)))
        reps = [check_bowtie_free(part), check_flag(part, which)]
        r = combine(f"{cx.vertex_names[x]}", reps)
        counts[r.status] += 1
        if r.status != CONSISTENT and len(bad) < 3:
            bad.append(r)
    status = VIOLATED if counts[VIOLATED] else ("INCONCLUSIVE" if counts["INCONCLUSIVE"] else CONSISTENT)
    return CheckReport(title, status, None, view.radius, view.witness_radius,
                       {"vertices": sum(counts.values()), **{k.lower(): v for k, v in counts.items()}},
                       subreports=bad)


def audit_contractible_ii(d, sub, order=None, radius=4, core=None, budget=None) -> CheckReport:
    order = list(order or sub)
    b = build_ball(d, sub, radius, budget)
    view, rep = order_relation(b, order, core)
    items = [
        _label("partial order", rep),
        _per_vertex("V>=x bowtie free and upward flag", view, "upward"),
        _per_vertex("V<=x bowtie free and downward flag", view, "downward"),
    ]
    return combine("contractibleII", items, [SIMPLY_CONNECTED_NOTE, f"order {' < '.join(order)}"])


def audit_contractible(d, sub, order=None, radius=4, core=None, budget=None) -> CheckReport:
    """Cyclic order on the types; each vertex link is ordered starting after the vertex's type."""
    cyc = list(order or sub)
    b = build_ball(d, sub, radius, budget)
    probe = OrderedVertexView(b, cyc, core)
    orders, bows = [], []
    for x in bits(probe.core_mask):
        i = cyc.index(b.type_of(x))
        rebased = cyc[i + 1:] + cyc[:i]
        view = OrderedVertexView(b, {t: k for k, t in enumerate(rebased)} | {cyc[i]: len(cyc)}, core,
                                 subset=b.neighbors[x])
        orders.append(check_order(view))
        bows.append(check_bowtie_free(view))
    items = [_label("link orders", combine("order", orders)),
             _label("links bowtie free", combine("bowtie", bows))]
    for item, parts in zip(items, (orders, bows)):
        item.statistics = {"links": len(parts), **{s.lower(): sum(r.status == s for r in parts)
                                                   for s in (CONSISTENT, "INCONCLUSIVE", VIOLATED)}}
        item.subreports = [r for r in parts if r.status != CONSISTENT][:3]
    return combine("contractible", items, [SIMPLY_CONNECTED_NOTE, f"cyclic order {' < '.join(cyc)} < {cyc[0]}"])


def audit_ori_link0(d, sub, roles=None, radius=4, core=None, budget=None) -> CheckReport:
    r = fork_roles(d, sub, roles)
    n1 = len(sub)
    b = [r[f"b{k}"] for k in range(1, n1 + 1)]
    parts = [_admissibility(d, sub)]
    lam = d.subdiagram(_component_with(d, b[-1], b[2]))
    lam_sub = [v for v in b[:-1]]
    parts.append(_subdivided_poset(lam, lam_sub, (b[0], b[1]), b[2:-1], radius, core,
                                   f"({b[0]},{b[1]})-subdivision of the complex on "
                                   f"{' '.join(lam_sub)} is bowtie free and downward flag", budget))
    for i in (0, 1):
        other = b[1 - i]
        lam = d.subdiagram(_component_with(d, b[i], b[2]))
        types = [other] + b[2:]
        parts.append(_ball_poset(lam, types, types, radius, core, ["upward"],
                                 f"without {b[i]}: order {' < '.join(types)} is bowtie free and upward flag",
                                 budget))
    return combine("ori_link0", parts, [f"roles {r}"])


def audit_ori_link(d, sub, roles=None, radius=4, core=None, budget=None) -> CheckReport:
    r = star_roles(d, sub, roles)
    a, b1, b2, b3 = r["a"], r["b1"], r["b2"], r["b3"]
    parts = [_admissibility(d, sub)]
    for bi, bj in ((b2, b3), (b3, b2)):
        lam = d.subdiagram(_component_with(d, bi, a))
        types = [bj, a, b1]
        parts.append(_ball_poset(lam, types, types, radius, core, ["upward"],
                                 f"without {bi}: order {' < '.join(types)} is bowtie free "
                                 f"and upward flag", budget))
    lam = d.subdiagram(_component_with(d, b1, a))
    types = [b2, a, b3]
    parts.append(_ball_poset(lam, types, types, radius, core, ["weak-up", "weak-down"],
                             f"without {b1}: order {' < '.join(types)} is bowtie free and weakly flag", budget))
    return combine("ori_link", parts, [f"roles {r}"])


def audit_ori_link2(d, sub, roles=None, radius=4, core=None, budget=None) -> CheckReport:
    r = double_fork_roles(d, sub, roles)
    n = len(sub) - 4
    chain = [r[f"b{k}"] for k in range(1, n + 1)]
    parts = [_admissibility(d, sub)]
    for pair, ends, rev in (((r["a1"], r["a2"]), (r["c1"], r["c2"]), False),
                            ((r["c1"], r["c2"]), (r["a1"], r["a2"]), True)):
        body = list(reversed(chain)) if rev else chain
        for k, drop in enumerate(ends):
            keep = ends[1 - k]
            lam = d.subdiagram(_component_with(d, drop, chain[0]))
            types = list(pair) + body + [keep]
            parts.append(_subdivided_poset(lam, types, pair, body + [keep], radius, core,
                                           f"({pair[0]},{pair[1]})-subdivision without {drop}: "
                                           f"bowtie free and downward flag", budget))
    return combine("ori_link2", parts, [f"roles {r}"])


def audit_hypotheses(d: DynkinDiagram, sub: Sequence[str], which: str, roles: Mapping | None = None,
                     order: Sequence[str] | None = None, radius: int = 4, core: int | None = None,
                     budget: int | None = None) -> CheckReport:
    sub = [v for v in sub]
    for v in sub:
        d.index(v)
    if which == "contractibleII":
        return audit_contractible_ii(d, sub, order, radius, core, budget)
    if which == "contractible":
        return audit_contractible(d, sub, order, radius, core, budget)
    if which == "ori_link0":
        return audit_ori_link0(d, sub, roles, radius, core, budget)
    if which == "ori_link":
        return audit_ori_link(d, sub, roles, radius, core, budget)
    if which == "ori_link2":
        return audit_ori_link2(d, sub, roles, radius, core, budget)
    raise ValueError(f"unknown audit {which!r}; choose from {AUDITS}")
