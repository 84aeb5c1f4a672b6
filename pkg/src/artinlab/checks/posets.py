"""Order relations on typed complexes: transitivity, bowtie-freeness, flagness, thickening.

Vertex sets are handled as Python integer bitmasks.  Relations come from
witnessed adjacency only, so every configuration found is genuine; an
absent middle element or bound is certain only for closed inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import networkx as nx

from ..artincx import TypedComplex
from .report import CONSISTENT, INCONCLUSIVE, VIOLATED, CheckReport

SAMPLE = 5
WITNESS_MARGIN = 2


def default_core(cx: TypedComplex, core_radius: int | None = None) -> int | None:
    """Scanned radius: given, or the ball radius minus the witness margin."""
    if core_radius is not None or cx.closed:
        return core_radius
    return max(cx.radius - WITNESS_MARGIN, 0)


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def closed_witness(cx: TypedComplex, vertices: Iterable[int]) -> dict:
    """The induced subcomplex on ``vertices`` as a closed fixture."""
    keep = sorted(set(vertices))
    new = {v: k for k, v in enumerate(keep)}
    faces = {tuple(sorted(new[v] for v in s if v in new)) for s in cx.simplices}
    faces.discard(())
    maximal = sorted(f for f in faces if not any(set(f) < set(g) for g in faces))
    covered = {v for f in maximal for v in f}
    maximal += [(v,) for v in range(len(keep)) if v not in covered]
    sub = TypedComplex(cx.type_names, [cx.vertex_types[v] for v in keep], maximal,
                       [cx.vertex_names[v] for v in keep])
    return sub.to_json()


class OrderedVertexView:
    """The relation x < y iff x, y adjacent and level(type x) < level(type y).

    ``levels`` maps type names to integers (a linear order is a list of type
    names).  ``subset`` restricts the poset, ``core_radius`` selects the
    vertices whose configurations are scanned.
    """

    def __init__(self, cx: TypedComplex, order: Sequence[str] | Mapping[str, int],
                 core_radius: int | None = None, subset: Iterable[int] | None = None):
        if isinstance(order, Mapping):
            levels = {str(k): int(v) for k, v in order.items()}
        else:
            levels = {str(t): k for k, t in enumerate(order)}
        missing = [t for t in {cx.type_of(v) for v in range(cx.n_vertices)} if t not in levels]
        if missing:
            raise ValueError(f"order does not cover types {sorted(missing)}")
        core_radius = default_core(cx, core_radius)
        self.cx = cx
        self.levels = levels
        self.core_radius = core_radius
        n = cx.n_vertices
        self.level = [levels[cx.type_of(v)] for v in range(n)]
        sub = (1 << n) - 1 if subset is None else sum(1 << v for v in set(subset))
        self.universe = sub
        less, greater = [0] * n, [0] * n
        for v in bits(sub):
            lv = self.level[v]
            for u in cx.neighbors[v]:
                if not sub >> u & 1:
                    continue
                if self.level[u] < lv:
                    less[v] |= 1 << u
                elif self.level[u] > lv:
                    greater[v] |= 1 << u
        self.less, self.greater = less, greater
        self.le = [less[v] | (1 << v) if sub >> v & 1 else 0 for v in range(n)]
        self.ge = [greater[v] | (1 << v) if sub >> v & 1 else 0 for v in range(n)]
        core = cx.core(core_radius)
        self.core_mask = sum(1 << v for v in core) & sub

    # derived views ---------------------------------------------------------
    def restricted(self, subset: Iterable[int]) -> "OrderedVertexView":
        return OrderedVertexView(self.cx, self.levels, self.core_radius, subset)

    def reversed(self) -> "OrderedVertexView":
        """Same poset with the order reversed (downward checks become upward ones)."""
        other = object.__new__(OrderedVertexView)
        other.__dict__.update(self.__dict__)
        other.levels = {k: -v for k, v in self.levels.items()}
        other.level = [-x for x in self.level]
        other.less, other.greater = self.greater, self.less
        other.le, other.ge = self.ge, self.le
        return other

    @property
    def radius(self):
        return None if self.cx.closed else self.core_radius

    @property
    def witness_radius(self):
        return self.cx.radius

    def relation_pairs(self) -> list:
        return sorted((u, v) for v in bits(self.universe) for u in bits(self.less[v]))

    def is_maximal(self, v: int) -> bool:
        return self.greater[v] == 0

    def is_minimal(self, v: int) -> bool:
        return self.less[v] == 0

    def names(self, vs) -> list:
        return [self.cx.vertex_names[v] for v in vs]

    def _report(self, check, status, witness=None, stats=None, notes=None) -> CheckReport:
        return CheckReport(check, status, witness, self.radius, self.witness_radius,
                           stats or {}, notes or [])


# ---------------------------------------------------------------------------
# order relation

def order_relation(cx: TypedComplex, order, core_radius: int | None = None) -> tuple[OrderedVertexView, CheckReport]:
    """Build the relation and test transitivity and gradedness on the scanned region."""
    view = OrderedVertexView(cx, order, core_radius)
    return view, check_order(view)


def check_order(view: OrderedVertexView) -> CheckReport:
    cx = view.cx
    triples = unknown = 0
    unknown_sample = []
    for y in bits(view.core_mask):
        for x in bits(view.less[y] & view.core_mask):
            for z in bits(view.greater[y] & view.core_mask):
                triples += 1
                rel = cx.are_adjacent(x, z)
                if rel:
                    continue
                if rel is False:
                    witness = {"kind": "transitivity", "order": view.levels,
                               "configuration": {"x": cx.vertex_names[x], "y": cx.vertex_names[y],
                                                 "z": cx.vertex_names[z]}}
                    if cx.closed:
                        witness["complex"] = closed_witness(cx, [x, y, z])
                    else:
                        witness["certificate"] = nonadjacency_certificate(cx, x, y, z)
                    return view._report("order", VIOLATED, witness, {"triples": triples})
                unknown += 1
                if len(unknown_sample) < SAMPLE:
                    unknown_sample.append(view.names([x, y, z]))
    graded, bad = _graded(view)
    stats = {"relations": sum(popcount(view.less[v]) for v in bits(view.universe)),
             "triples": triples, "undecided": unknown, "graded": graded}
    if not graded:
        w = {"kind": "graded", "order": view.levels, "interval": view.names(bad)}
        if cx.closed:
            w["complex"] = closed_witness(cx, _interval(view, *bad) | set(bad))
            return view._report("order", VIOLATED, w, stats)
        return view._report("order", INCONCLUSIVE, None, stats, [f"ungraded interval {w['interval']}"])
    if unknown:
        return view._report("order", INCONCLUSIVE, None, stats,
                            [f"transitivity undecided within the ball, e.g. {unknown_sample}"])
    return view._report("order", CONSISTENT, None, stats)


def _interval(view: OrderedVertexView, x: int, y: int) -> set:
    return set(bits(view.ge[x] & view.le[y]))


def _graded(view: OrderedVertexView):
    """Every interval [x, y] with x < y has all maximal chains of equal length."""
    for y in bits(view.core_mask):
        for x in bits(view.less[y] & view.core_mask):
            elems = sorted(_interval(view, x, y), key=lambda v: view.level[v])
            inside = sum(1 << v for v in elems)
            longest, shortest = {x: 0}, {x: 0}
            for v in elems[1:]:
                preds = [u for u in bits(view.less[v] & inside) if u in longest]
                # cover relations: u < v with nothing of the interval strictly between
                covers = [u for u in preds if not (view.greater[u] & view.less[v] & inside)]
                if not covers:
                    continue
                longest[v] = max(longest[u] for u in covers) + 1
                shortest[v] = min(shortest[u] for u in covers) + 1
            if longest.get(y) != shortest.get(y):
                return False, (x, y)
    return True, None


def nonadjacency_certificate(cx, x: int, y: int, z: int) -> dict:
    """Chamber words proving x < y < z and that x, z lie in disjoint cosets."""
    d = cx.diagram
    tx, ty, tz = (cx.vertex_types[v] for v in (x, y, z))

    def shared(u, v, tu, tv):
        for c in range(len(cx.chamber_words)):
            vs = cx.chamber_vertices[c]
            if vs[tu] == u and vs[tv] == v:
                return c
        raise ValueError("no witness chamber")

    c1, c2 = shared(x, y, tx, ty), shared(y, z, ty, tz)
    return {"diagram": d.to_json(),
            "stabilizers": {k: sorted(d.vertices[s] for s in cx.stabilizers[t])
                            for k, t in (("x", tx), ("y", ty), ("z", tz))},
            "chamber_xy": cx.chamber_word(c1), "chamber_yz": cx.chamber_word(c2)}


# ---------------------------------------------------------------------------
# bowtie-free

def check_bowtie_free(view: OrderedVertexView, witness_radius: int | None = None) -> CheckReport:
    """Every x1, x2 < y1, y2 (distinct) has z with x_i <= z <= y_j."""
    cx = view.cx
    core = view.core_mask
    quads = missing = 0
    sample = []
    for y1 in bits(core):
        lower1 = view.less[y1] & core
        if popcount(lower1) < 2:
            continue
        partners = 0
        for x in bits(lower1):
            partners |= view.greater[x]
        partners &= core & ~((1 << (y1 + 1)) - 1)
        for y2 in bits(partners):
            L = lower1 & view.less[y2]
            if popcount(L) < 2:
                continue
            top = view.le[y1] & view.le[y2]
            xs = list(bits(L))
            for i, x1 in enumerate(xs):
                above1 = view.ge[x1] & top
                for x2 in xs[i + 1:]:
                    quads += 1
                    if above1 & view.ge[x2]:
                        continue
                    missing += 1
                    conf = [x1, x2, y1, y2]
                    if cx.closed:
                        cand = set(conf)
                        common = cx.neighbors[x1] & cx.neighbors[x2] & cx.neighbors[y1] & cx.neighbors[y2]
                        witness = {"kind": "bowtie", "order": view.levels,
                                   "configuration": view.names(conf),
                                   "complex": closed_witness(cx, cand | common)}
                        return view._report("bowtie", VIOLATED, witness, {"quadruples": quads})
                    if len(sample) < SAMPLE:
                        sample.append(view.names(conf))
    stats = {"quadruples": quads, "without_middle": missing}
    if missing:
        return view._report("bowtie", INCONCLUSIVE, None, stats,
                            [f"no middle element inside the ball, e.g. {sample}"])
    return view._report("bowtie", CONSISTENT, None, stats)


# ---------------------------------------------------------------------------
# flagness

FLAG_MODES = ("upward", "downward", "weak-up", "weak-down")


def check_flag(view: OrderedVertexView, mode: str = "upward") -> CheckReport:
    """Pairwise bounded triples have a common bound (weak modes ignore maximal elements)."""
    if mode not in FLAG_MODES:
        raise ValueError(f"mode must be one of {FLAG_MODES}")
    v = view if mode in ("upward", "weak-up") else view.reversed()
    weak = mode.startswith("weak")
    cx = view.cx
    n = cx.n_vertices
    nonmax = sum(1 << x for x in bits(v.universe) if v.greater[x])
    bounds_ok = nonmax if weak else v.universe
    scan = v.core_mask & (nonmax if weak else v.universe)
    # pair[x] = elements sharing an admissible upper bound with x
    pair = [0] * n
    for x in bits(scan):
        m = 0
        for z in bits(v.ge[x] & bounds_ok):
            m |= v.le[z]
        pair[x] = m & scan
    triples = missing = 0
    sample = []
    for x1 in bits(scan):
        for x2 in bits(pair[x1] & ~((1 << (x1 + 1)) - 1)):
            g12 = v.ge[x1] & v.ge[x2]
            covered = 0
            for z in bits(g12):
                covered |= v.le[z]
            third = pair[x1] & pair[x2] & ~((1 << (x2 + 1)) - 1)
            triples += popcount(third)
            bad = third & ~covered
            if not bad:
                continue
            for x3 in bits(bad):
                missing += 1
                conf = [x1, x2, x3]
                if cx.closed:
                    keep = set(conf)
                    for a, b in ((x1, x2), (x1, x3), (x2, x3)):
                        bound = next(bits(v.ge[a] & v.ge[b] & bounds_ok))
                        keep.add(bound)
                        if weak:
                            # keep the bound non-maximal in the extracted complex
                            keep.add(next(bits(v.greater[bound])))
                    if weak:
                        keep |= {next(bits(v.greater[x])) for x in conf}
                    keep |= set(bits(v.ge[x1] & v.ge[x2] & v.ge[x3])) | set(bits(g12))
                    witness = {"kind": "flag", "mode": mode, "order": view.levels,
                               "configuration": view.names(conf), "complex": closed_witness(cx, keep)}
                    return view._report(f"flag-{mode}", VIOLATED, witness, {"triples": triples})
                if len(sample) < SAMPLE:
                    sample.append(view.names(conf))
    stats = {"triples": triples, "without_common_bound": missing}
    if missing:
        return view._report(f"flag-{mode}", INCONCLUSIVE, None, stats,
                            [f"no common bound inside the ball, e.g. {sample}"])
    return view._report(f"flag-{mode}", CONSISTENT, None, stats)


# ---------------------------------------------------------------------------
# thickening

@dataclass
class Thickening:
    graph: nx.Graph
    uncertain: set          # vertices whose neighborhoods may be truncated


def thicken(view: OrderedVertexView) -> Thickening:
    """y1 ~ y2 when z1 <= y_i <= z2 for some z1 of the lowest and z2 of the highest type."""
    cx = view.cx
    low, high = min(view.levels.values()), max(view.levels.values())
    g = nx.Graph()
    for v in bits(view.universe):
        g.add_node(v, type=cx.type_of(v))
    for z1 in bits(view.universe):
        if view.level[z1] != low:
            continue
        for z2 in bits(view.ge[z1]):
            if view.level[z2] != high:
                continue
            clique = list(bits(view.ge[z1] & view.le[z2]))
            for i, a in enumerate(clique):
                for b in clique[i + 1:]:
                    g.add_edge(a, b)
    uncertain = set() if cx.closed else set(bits(view.universe & ~view.core_mask))
    return Thickening(g, uncertain)
