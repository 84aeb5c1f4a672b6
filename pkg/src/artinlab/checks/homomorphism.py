"""Checking that a generator assignment defines a homomorphism of Artin groups."""
from __future__ import annotations

from typing import Mapping

from ..artincx import garside_for
from ..coxeter import NotSpherical
from ..diagram import INF, DynkinDiagram, GeneratorMap, is_spherical
from ..garside import format_word
from .report import CONSISTENT, VIOLATED, CheckReport


class TargetNotSpherical(ValueError):
    pass


def alternating(a: tuple, b: tuple, m: int) -> list:
    """The positive word a b a b ... with m factors, as (letter, 1) pairs."""
    out = []
    for k in range(m):
        out += [(t, 1) for t in (a if k % 2 == 0 else b)]
    return out


def relation_pairs(d: DynkinDiagram) -> list:
    """Unordered generator pairs carrying a relation (every pair with finite m)."""
    vs = d.vertices
    return [(vs[i], vs[j], d.m(vs[i], vs[j])) for i in range(len(vs)) for j in range(i + 1, len(vs))
            if d.m(vs[i], vs[j]) != INF]


def verify_homomorphism(f: GeneratorMap, equivariance: Mapping | None = None) -> CheckReport:
    """Normal-form comparison of both sides of every source relation after substitution.

    ``equivariance`` is a map on target generators (a diagram symmetry);
    when given, each image word must be fixed by it in the target group.
    """
    if not is_spherical(f.target):
        raise TargetNotSpherical(f"target {f.target} is not spherical; no normal forms available")
    try:
        G = garside_for(f.target)
    except NotSpherical as exc:
        raise TargetNotSpherical(str(exc)) from exc
    checked, failures = [], []
    for s, t, m in relation_pairs(f.source):
        left = alternating(f.images[s], f.images[t], m)
        right = alternating(f.images[t], f.images[s], m)
        same = G.from_word(left) == G.from_word(right)
        entry = {"relation": f"({s} {t})^{m}", "left": format_word(left), "right": format_word(right),
                 "holds": same}
        checked.append(entry)
        if not same:
            failures.append(entry)
    fixed = []
    if equivariance is not None:
        for s in f.source.vertices:
            img = [(t, 1) for t in f.images[s]]
            moved = [(equivariance[t], 1) for t in f.images[s]]
            same = G.from_word(img) == G.from_word(moved)
            fixed.append({"generator": s, "image": format_word(img), "moved": format_word(moved), "fixed": same})
            if not same:
                failures.append(fixed[-1])
    stats = {"relations": len(checked), "relations_holding": sum(e["holds"] for e in checked)}
    if equivariance is not None:
        stats["images_fixed"] = sum(e["fixed"] for e in fixed)
    if failures:
        witness = {"kind": "homomorphism", "map": map_to_json(f),
                   "equivariance": dict(equivariance) if equivariance is not None else None,
                   "failures": failures}
        return CheckReport("homomorphism", VIOLATED, witness, None, None, stats)
    return CheckReport("homomorphism", CONSISTENT, None, None, None, stats)


def map_to_json(f: GeneratorMap) -> dict:
    return {"source": f.source.to_json(), "target": f.target.to_json(),
            "images": {s: list(w) for s, w in f.images.items()}}


def map_from_json(data: dict) -> tuple[GeneratorMap, dict | None]:
    f = GeneratorMap(DynkinDiagram.from_json(data["source"]), DynkinDiagram.from_json(data["target"]),
                     {s: tuple(w) for s, w in data["images"].items()})
    return f, data.get("equivariance")


def f4_to_e6() -> tuple[GeneratorMap, dict]:
    """F4 -> E6 sending the outer generators to products of commuting E6 generators
    swapped by the diagram involution, and the involution itself."""
    f4 = DynkinDiagram.linear([3, 4, 3], ["s1", "s2", "s3", "s4"])
    e6 = DynkinDiagram.from_edges(["t1", "t2", "t3", "t4", "t5", "t"],
                                  [("t1", "t2", 3), ("t2", "t3", 3), ("t3", "t4", 3), ("t4", "t5", 3),
                                   ("t3", "t", 3)])
    phi = GeneratorMap(f4, e6, {"s1": ("t1", "t5"), "s2": ("t2", "t4"), "s3": ("t3",), "s4": ("t",)})
    sigma = {"t1": "t5", "t2": "t4", "t3": "t3", "t4": "t2", "t5": "t1", "t": "t"}
    return phi, sigma
