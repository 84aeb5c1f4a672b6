"""Re-verify a VIOLATED witness from its serialized form alone."""
from __future__ import annotations

import networkx as nx

from ..artincx import TypedComplex, _free_reduce, garside_for
from ..coxeter import CoxeterGroup
from ..diagram import DynkinDiagram, is_admissible, is_spherical
from ..garside import parse_word
from .fourwheel import check_4wheel
from .helly import check_helly, graph_from_json, verify_cycle
from .homomorphism import map_from_json, verify_homomorphism
from .posets import check_bowtie_free, check_flag, order_relation
from .report import CONSISTENT, INCONCLUSIVE, VIOLATED, CheckReport


class ReplayError(ValueError):
    pass


def verify_nonadjacency_certificate(cert: dict, order: dict | None = None) -> tuple[bool, list]:
    """Check x < y < z with x, z in disjoint cosets, using only the certificate.

    x = c1 A_X, y = c1 A_Y = c2 A_Y, z = c2 A_Z.  The equality of the two
    cosets for y is checked in the Artin group (normal forms when spherical,
    otherwise by a freely reduced word in the letters of Y).  Disjointness of
    the cosets of x and z follows when the Coxeter image of c1^-1 c2 avoids
    the product W_X W_Z.
    """
    d = DynkinDiagram.from_json(cert["diagram"])
    X, Y, Z = (set(cert["stabilizers"][k]) for k in ("x", "y", "z"))
    c1, c2 = parse_word(cert["chamber_xy"]), parse_word(cert["chamber_yz"])
    q = [(s, -e) for s, e in reversed(c1)] + c2
    reasons = []
    if is_spherical(d):
        G = garside_for(d)
        y_ok = G.from_word(q).in_parabolic(Y)
    else:
        y_ok = all(s in Y for s, _ in _free_reduce(q))
    if not y_ok:
        reasons.append("the two chambers do not share the middle vertex")
    W = CoxeterGroup(d)
    idx = lambda S: {d.index(s) for s in S}
    if W.in_parabolic_product([d.index(s) for s, _ in q], idx(X), idx(Z)):
        reasons.append("the Coxeter image does not separate the outer vertices")
    if order is not None:
        S = set(d.vertices)
        types = []
        for T in (X, Y, Z):
            missing = S - T
            if len(missing) != 1:
                reasons.append("stabilizers are not maximal parabolics")
                break
            types.append(next(iter(missing)))
        else:
            lv = [order[t] for t in types]
            if not lv[0] < lv[1] < lv[2]:
                reasons.append("types are not increasing along the configuration")
    return not reasons, reasons


def replay_witness(witness: dict) -> CheckReport:
    """Rerun the check a witness came from; VIOLATED again means the witness stands."""
    kind = witness.get("kind")
    if kind is None:
        raise ReplayError("witness has no kind")
    if "certificate" in witness:
        ok, reasons = verify_nonadjacency_certificate(witness["certificate"], witness.get("order"))
        return CheckReport(f"replay-{kind}", VIOLATED if ok else INCONCLUSIVE, witness if ok else None,
                           notes=reasons or ["certificate verified algebraically"])
    if kind == "helly":
        return check_helly(graph_from_json(witness["graph"]))
    if kind == "girth":
        cyc = [str(v) for v in witness["cycle"]]
        g = graph_from_json(witness["graph"]) if "graph" in witness else nx.cycle_graph(cyc)
        ok = verify_cycle(g, cyc) and len(cyc) < witness["bound"]
        return CheckReport("replay-girth", VIOLATED if ok else INCONCLUSIVE, witness if ok else None,
                           statistics={"cycle_length": len(cyc), "bound": witness["bound"]})
    if kind == "homomorphism":
        f, sigma = map_from_json(witness["map"])
        return verify_homomorphism(f, sigma or witness.get("equivariance"))
    if kind == "admissibility":
        d = DynkinDiagram.from_json(witness["diagram"])
        ok = is_admissible(d, witness["subset"])
        return CheckReport("replay-admissible", CONSISTENT if ok else VIOLATED, None if ok else witness)
    if "complex" not in witness:
        raise ReplayError(f"witness of kind {kind!r} carries neither a complex nor a certificate")
    cx = TypedComplex.from_json(witness["complex"])
    if kind == "4wheel":
        return check_4wheel(cx, tree=[tuple(e) for e in witness["typeTree"]])
    order = witness["order"]
    view, report = order_relation(cx, order)
    if kind in ("transitivity", "graded"):
        return report
    if kind == "bowtie":
        return check_bowtie_free(view)
    if kind == "flag":
        return check_flag(view, witness["mode"])
    raise ReplayError(f"unknown witness kind {kind!r}")
