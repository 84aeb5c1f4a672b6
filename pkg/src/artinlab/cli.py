"""Batch command line: one subcommand per module operation.

Exit codes: 0 success or CONSISTENT, 1 VIOLATED, 2 INCONCLUSIVE, 3 input
error, 4 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import arrangement as arr
from .artincx import (BallError, BudgetExceeded, TypedComplex, apartment_cycle, build_ball, cycle_to_word,
                      fold_to_coxeter, garside_for, vertex_link)
from .checks import (FLAG_MODES, CheckReport, DiskDiagram, InvalidEmbedding, ReplayError, ShapeMismatch,
                     check_4wheel, check_bowtie_free, check_flag, check_helly, f4_to_e6, gauss_bonnet,
                     girth_report, order_relation, replay_witness, subdivide, thicken, verify_homomorphism)
from .checks.audit import AUDITS, audit_hypotheses
from .checks.helly import graph_from_json
from .checks.homomorphism import map_from_json, map_to_json
from .checks.report import INCONCLUSIVE, VIOLATED
from .coxeter import GroupTooLargeOrInfinite, enumerate_group, reflection_arrangement
from .diagram import CATALOG_DIR, DiagramError, DynkinDiagram, classify, named_diagram
from .garside import GarsideError, coset_equal, format_word, parse_word
from .salvetti import audit_retractions, build_salvetti, extract_presentation

FIXTURE_DIR = Path(__file__).parent / "fixtures"

INPUT_ERRORS = (DiagramError, arr.ArrangementError, BallError, GarsideError, InvalidEmbedding, ShapeMismatch,
                ReplayError, FileNotFoundError, json.JSONDecodeError, KeyError, ValueError)
BUDGET_ERRORS = (BudgetExceeded, GroupTooLargeOrInfinite)


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    """Everything a subcommand needs; built from the parsed arguments."""

    command: str
    action: str | None = None
    source: str | None = None
    subset: list | None = None
    order: list | None = None
    radius: int | None = None
    witness_radius: int | None = None
    core: int | None = None
    budget: int | None = None
    output: str | None = None
    seed: int = 0
    format: str = "text"
    threads: int = 1
    options: dict = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        for name in ("radius", "witness_radius", "budget", "threads"):
            val = getattr(self, name)
            if val is not None and val <= 0:
                raise InputError(f"{name.replace('_', '-')} must be positive")
        if self.core is not None and self.core < 0:
            raise InputError("core must be non-negative")
        if self.radius and self.witness_radius and self.witness_radius < self.radius:
            raise InputError("witness radius must be at least the radius")
        if self.output is not None and not Path(self.output).parent.exists():
            raise InputError(f"output directory of {self.output} does not exist")
        return self

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        known = {"command", "action", "source", "subset", "order", "radius", "witness_radius", "core", "budget",
                 "output", "seed", "format", "threads", "func"}
        opts = {k: v for k, v in vars(ns).items() if k not in known}
        return cls(ns.command, getattr(ns, "action", None), getattr(ns, "source", None),
                   _split(getattr(ns, "subset", None)), _split(getattr(ns, "order", None)),
                   getattr(ns, "radius", None), getattr(ns, "witness_radius", None), getattr(ns, "core", None),
                   getattr(ns, "budget", None), getattr(ns, "output", None), getattr(ns, "seed", 0),
                   ns.format, ns.threads, opts).validate()


@dataclass
class Outcome:
    """What a subcommand returns: a text rendering, a structured payload and an exit code."""

    text: str
    data: object
    code: int = 0

    @classmethod
    def of_report(cls, report: CheckReport) -> "Outcome":
        return cls(report.text(), report.to_json(), report.exit_code)


def _split(value):
    if value is None:
        return None
    if isinstance(value, list):
        return value
    return [x.strip() for x in value.split(",") if x.strip()]


# ---------------------------------------------------------------------------
# input resolution

def load_source(source: str) -> tuple[str, object, dict]:
    """Resolve a file path, a catalog or fixture name, or a standard diagram name.

    Returns (kind, object, raw json) with kind one of diagram, complex, graph,
    arrangement, map, disk, witness.
    """
    if source is None:
        raise InputError("no input given")
    path = Path(source)
    if not path.exists():
        for base in (CATALOG_DIR, FIXTURE_DIR):
            cand = base / f"{source}.json"
            if cand.exists():
                path = cand
                break
    if not path.exists():
        if source.endswith(".json"):
            raise FileNotFoundError(source)
        return "diagram", named_diagram(source), {}
    raw = json.loads(path.read_text())
    if not isinstance(raw, dict):
        raise InputError(f"{source}: expected a JSON object")
    if "hyperplanes" in raw:
        return "arrangement", arr.Arrangement.from_json(raw), raw
    if "faces" in raw:
        return "disk", DiskDiagram.from_json(raw), raw
    if "complex" in raw:
        return "complex", TypedComplex.from_json(raw["complex"]), raw
    if "graph" in raw and raw.get("kind") in ("helly", "girth", None):
        return "graph", graph_from_json(raw["graph"]), raw
    if "map" in raw or ("source" in raw and "images" in raw):
        return "map", map_from_json(raw.get("map", raw)), raw
    if "types" in raw and "simplices" in raw:
        return "complex", TypedComplex.from_json(raw), raw
    if "nodes" in raw and "edges" in raw:
        return "graph", graph_from_json(raw), raw
    if "vertices" in raw and "edges" in raw:
        return "diagram", DynkinDiagram.from_json(raw), raw
    raise InputError(f"{source}: unrecognized input file")


def load_diagram(source: str) -> tuple[DynkinDiagram, dict]:
    kind, obj, raw = load_source(source)
    if kind != "diagram":
        raise InputError(f"{source} is a {kind}, not a diagram")
    return obj, raw


def _ball_for(cfg: RunConfig, default_radius: int = 4):
    """Ball of the diagram in cfg.source with catalog defaults for types, radius and core.

    With a witness radius the ball is built to that radius and the scan uses
    cfg.radius as its core.
    """
    d, raw = load_diagram(cfg.source)
    types = cfg.subset or raw.get("subset") or list(d.vertices)
    radius = cfg.radius or raw.get("radius") or default_radius
    core = cfg.core if cfg.core is not None else raw.get("core")
    if cfg.witness_radius:
        core = radius if cfg.core is None else cfg.core
        radius = cfg.witness_radius
    order = cfg.order or raw.get("order") or types
    order = [t for t in order if t in set(types)]
    ball = build_ball(d, types, radius, cfg.budget)
    return d, ball, order, core


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, default=str)


# ---------------------------------------------------------------------------
# subcommands

def cmd_classify(cfg: RunConfig) -> Outcome:
    d, _ = load_diagram(cfg.source)
    label = classify(d)
    return Outcome(str(label), {"name": label.name, "family": label.family, "kind": label.kind,
                                "rank": label.rank, "definiteness": label.definiteness,
                                "shapes": list(label.shape)})


def cmd_enumerate(cfg: RunConfig) -> Outcome:
    d, _ = load_diagram(cfg.source)
    t = enumerate_group(d, cfg.budget)
    data = {"order": t.order, "reflections": len(t.reflections), "longestLength": int(t.length[t.longest]),
            "rank": t.rank}
    text = f"order {data['order']}\nreflections {data['reflections']}\nlongest element length {data['longestLength']}"
    return Outcome(text, data)


def _arrangement_for(cfg: RunConfig) -> arr.Arrangement:
    kind, obj, _ = load_source(cfg.source)
    if kind == "arrangement":
        return obj
    if kind == "diagram":
        return reflection_arrangement(obj, model=cfg.options.get("model", False))
    raise InputError(f"{cfg.source} is a {kind}, not an arrangement or diagram")


def _hyperplane_index(a: arr.Arrangement, spec: str) -> int:
    """A hyperplane by name, by index, or as x<k> for the coordinate hyperplane x_k = 0."""
    if spec in a.names:
        return a.names.index(spec)
    if spec.startswith("x") and spec[1:].isdigit():
        return arr.coordinate_hyperplane(a, int(spec[1:]))
    try:
        return int(spec)
    except ValueError:
        raise InputError(f"no hyperplane {spec!r}") from None


def cmd_arrangement(cfg: RunConfig) -> Outcome:
    action = cfg.action
    if action == "walls":
        d, _ = load_diagram(cfg.source)
        system = arr.h3_wall_system(d)
        points = [int(p) for p in _split(cfg.options.get("points")) or []]
        sub, idx = arr.walls_through(system, points)
        data = {"walls": idx, "arrangement": sub.to_json()}
        return Outcome(f"{len(idx)} walls: {idx}\n" + "\n".join(sub.describe()), data)
    a = _arrangement_for(cfg)
    if action == "decone":
        h = _hyperplane_index(a, cfg.options.get("hyperplane") or "0")
        out = arr.decone(a, h)
        return _write_or_show(cfg, out.to_json(), "\n".join(out.describe()))
    if action == "faces":
        lat = arr.compute_faces(a)
        data = {"hyperplanes": len(a), "fvector": list(lat.fvector), "chambers": len(lat.chambers),
                "bounded": sum(lat.bounded)}
        text = (f"hyperplanes {len(a)}\nf-vector {tuple(lat.fvector)}\nchambers {len(lat.chambers)}\n"
                f"bounded faces {sum(lat.bounded)}")
        return Outcome(text, data)
    if action == "dual":
        dc = arr.dual_complex(a)
        data = dc.to_json()
        text = f"dual complex: {len(dc.lattice.chambers)} vertices, cells by dimension {_cells_by_dim(dc.lattice)}"
        return _write_or_show(cfg, data, text)
    if action == "collapse":
        sub = [_hyperplane_index(a, s) for s in _split(cfg.options.get("sub")) or []]
        cm = arr.collapse_map(a, sub)
        data = {"sub": list(cm.sub), "sourceChambers": len(cm.source.chambers),
                "targetChambers": len(cm.target.chambers), "collapsedEdges": len(cm.collapsed_edges),
                "vertexMap": {str(k): v for k, v in sorted(cm.vertex_map.items())}}
        text = (f"collapse onto {list(cm.sub)}: {data['sourceChambers']} -> {data['targetChambers']} chambers, "
                f"{data['collapsedEdges']} edges collapsed")
        return Outcome(text, data)
    if action == "bounded":
        if cfg.options.get("decone"):
            a = arr.decone(a, _hyperplane_index(a, cfg.options["decone"]))
        bc = arr.bounded_complex(a)
        data = {"fvector": list(bc.fvector), "faces": len(bc.faces)}
        return Outcome(f"bounded complex f-vector {tuple(bc.fvector)}", data)
    raise InputError(f"unknown arrangement action {action!r}")


def _cells_by_dim(lat) -> list:
    n = lat.arrangement.dim
    return [len(lat.of_dim(n - k)) for k in range(n + 1)]


def _write_or_show(cfg: RunConfig, data, text: str) -> Outcome:
    if cfg.output:
        Path(cfg.output).write_text(_dump(data) + "\n")
        text = f"{text}\nwritten to {cfg.output}"
    return Outcome(text, data)


def cmd_salvetti(cfg: RunConfig) -> Outcome:
    kind, obj, _ = load_source(cfg.source)
    d = obj if kind == "diagram" else None
    a = reflection_arrangement(d) if d is not None else _arrangement_for(cfg)
    sc = build_salvetti(arr.dual_complex(a))
    if cfg.action == "build":
        data = {"cells": list(sc.counts), "eulerCharacteristic": sc.euler_characteristic}
        return Outcome(f"cells by dimension {tuple(sc.counts)}\nEuler characteristic {sc.euler_characteristic}", data)
    if cfg.action == "retract":
        audit = audit_retractions(sc)
        data = {"ok": audit.ok, "pairsChecked": audit.pairs_checked,
                "propertyFailures": len(audit.property_failures), "identityFailures": len(audit.identity_failures),
                "compatibilityFailures": len(audit.compatibility_failures)}
        text = "\n".join(f"{k}: {v}" for k, v in data.items())
        return Outcome(text, data, 0 if audit.ok else 1)
    if cfg.action == "presentation":
        if d is None:
            raise InputError("presentation extraction needs a diagram")
        p = extract_presentation(sc, d)
        data = {"generators": list(p.generators), "relators": [[list(x), list(y)] for x, y in p.relators]}
        return Outcome(str(p), data)
    raise InputError(f"unknown salvetti action {cfg.action!r}")


def cmd_nf(cfg: RunConfig) -> Outcome:
    d, _ = load_diagram(cfg.source)
    g = garside_for(d).from_word(parse_word(cfg.options["word"]))
    data = {"normalForm": str(g), "deltaPower": g.p, "shortWord": format_word(g.short_word())}
    return Outcome(f"{g}\nshort word: {data['shortWord'] or '1'}", data)


def cmd_coset(cfg: RunConfig) -> Outcome:
    d, _ = load_diagram(cfg.source)
    G = garside_for(d)
    X = cfg.subset or []
    for s in X:
        d.index(s)
    g, h = (G.from_word(parse_word(cfg.options[k])) for k in ("word1", "word2"))
    same = coset_equal(g, h, X)
    return Outcome("same coset" if same else "different cosets", {"sameCoset": same, "parabolic": X})


def cmd_ball(cfg: RunConfig) -> Outcome:
    d, ball, _, _ = _ball_for(cfg, default_radius=2)
    stats = ball.stats()
    text = "\n".join(f"{k}: {v}" for k, v in stats.items())
    if cfg.output:
        Path(cfg.output).write_text(_dump(ball.to_json()) + "\n")
        text += f"\nwritten to {cfg.output}"
    return Outcome(text, stats)


def _vertex_id(ball, spec) -> int:
    if spec is None:
        core = ball.core(0)
        return core[0]
    if spec in ball.vertex_names:
        return ball.vertex_names.index(spec)
    return int(spec)


def cmd_link(cfg: RunConfig) -> Outcome:
    d, ball, _, _ = _ball_for(cfg, default_radius=3)
    v = _vertex_id(ball, cfg.options.get("vertex"))
    res = vertex_link(ball, v)
    data = {"vertex": v, "type": ball.type_of(v), "link": res.link.stats(), "safe": res.safe,
            "linkRadius": res.link_radius, "isomorphismChecked": res.iso_checked, "isomorphic": res.iso_ok,
            "joinOk": res.join_ok}
    text = "\n".join(f"{k}: {v}" for k, v in data.items())
    code = 1 if res.iso_ok is False or res.join_ok is False else 0
    return Outcome(text, data, code)


def cmd_fold(cfg: RunConfig) -> Outcome:
    d, ball, _, _ = _ball_for(cfg, default_radius=2)
    res = fold_to_coxeter(ball)
    data = {"wellDefined": res.well_defined, "typesPreserved": res.types_preserved,
            "simplicial": res.simplicial, "apartmentOk": res.apartment_ok,
            "apartmentChambers": res.apartment_chambers, "apartmentVertices": res.apartment_vertices}
    text = "\n".join(f"{k}: {v}" for k, v in data.items())
    return Outcome(text, data, 0 if res.ok else 1)


def cmd_cycleword(cfg: RunConfig) -> Outcome:
    d, ball, _, _ = _ball_for(cfg, default_radius=2)
    spec = _split(cfg.options.get("cycle"))
    cycle = apartment_cycle(ball) if not spec else [_vertex_id(ball, s) for s in spec]
    cw = cycle_to_word(ball, cycle)
    data = {"cycle": list(cw.cycle), "chambers": list(cw.chambers), "words": cw.formatted(),
            "inStabilizer": cw.in_stabilizer, "productTrivial": cw.product_trivial}
    text = "\n".join(f"{k}: {v}" for k, v in data.items())
    return Outcome(text, data)


def cmd_subdivide(cfg: RunConfig) -> Outcome:
    d, ball, _, _ = _ball_for(cfg, default_radius=3)
    o = cfg.options
    if o["kind"] == "B":
        pairs = _split(o.get("pair"))
    else:
        pairs = [_split(p) for p in (o.get("pair") or "").split(";")]
    sb = subdivide(ball, o["kind"], pairs, _split(o.get("chain")) or [])
    stats = sb.stats()
    stats.update({"midpoints": len(sb.midpoints), "baseSimplices": len(ball.simplices)})
    text = "\n".join(f"{k}: {v}" for k, v in stats.items())
    if cfg.output:
        Path(cfg.output).write_text(_dump(sb.to_json()) + "\n")
        text += f"\nwritten to {cfg.output}"
    return Outcome(text, stats)


def _complex_and_order(cfg: RunConfig):
    """(complex, order, core) from a fixture or a diagram ball."""
    kind, obj, raw = load_source(cfg.source)
    if kind == "complex":
        order = cfg.order or raw.get("order") or obj.type_names
        return obj, order, cfg.core, raw
    if kind == "diagram":
        _, ball, order, core = _ball_for(cfg)
        return ball, order, core, raw
    raise InputError(f"{cfg.source} is a {kind}; expected a diagram or a complex")


def cmd_check(cfg: RunConfig) -> Outcome:
    action = cfg.action
    if action in ("girth", "helly"):
        kind, obj, raw = load_source(cfg.source)
        if kind == "graph":
            if action == "helly":
                return Outcome.of_report(check_helly(obj))
            bound = cfg.options.get("bound") or raw.get("bound")
            if bound is None:
                raise InputError("girth needs --bound")
            return Outcome.of_report(girth_report(obj, int(bound)))
    cx, order, core, raw = _complex_and_order(cfg)
    if action == "4wheel":
        tree = cfg.options.get("tree")
        if tree is not None:
            tree = [tuple(e.split("-")) for e in _split(tree)]
        elif "typeTree" in raw:
            tree = [tuple(e) for e in raw["typeTree"]]
        return Outcome.of_report(check_4wheel(cx, tree, core))
    if action == "girth":
        bound = cfg.options.get("bound") or raw.get("bound")
        if bound is None:
            raise InputError("girth needs --bound")
        safe = None if cx.closed else cx.core(core if core is not None else cx.radius)
        rep = girth_report(cx.graph(), int(bound), safe, None if cx.closed else cx.radius)
        if rep.status == VIOLATED and not cx.exact_vertices:
            # word-mode balls may split one vertex into several, so a short cycle may not be embedded
            rep = CheckReport("girth", INCONCLUSIVE, None, None, None, rep.statistics,
                              ["vertices are not exact; the short cycle may not be embedded"])
        return Outcome.of_report(rep)
    view, order_report = order_relation(cx, order, core)
    if action == "poset" or order_report.status == VIOLATED:
        return Outcome.of_report(order_report)
    if action == "bowtie":
        return Outcome.of_report(check_bowtie_free(view))
    if action == "flag":
        return Outcome.of_report(check_flag(view, cfg.options.get("mode") or raw.get("mode") or "upward"))
    if action == "helly":
        th = thicken(view)
        safe = [v for v in th.graph.nodes if v not in th.uncertain]
        return Outcome.of_report(check_helly(th.graph, None if cx.closed else safe, view.radius))
    raise InputError(f"unknown check {action!r}")


def cmd_gb(cfg: RunConfig) -> Outcome:
    kind, obj, raw = load_source(cfg.source)
    if kind != "disk":
        raise InputError(f"{cfg.source} is not a disk diagram")
    geometry = cfg.options.get("geometry") or raw.get("geometry") or "flat"
    rep = gauss_bonnet(obj, geometry)
    return Outcome(rep.text(), rep.to_json(), 0 if rep.ok else 1)


def cmd_verify_hom(cfg: RunConfig) -> Outcome:
    if cfg.source is None or cfg.options.get("f4_e6"):
        f, sigma = f4_to_e6()
    else:
        kind, obj, raw = load_source(cfg.source)
        if kind != "map":
            raise InputError(f"{cfg.source} is not a generator map")
        f, sigma = obj
        sigma = sigma or raw.get("equivariance")
    rep = verify_homomorphism(f, sigma)
    out = Outcome.of_report(rep)
    if cfg.output:
        Path(cfg.output).write_text(_dump({**map_to_json(f), "equivariance": sigma}) + "\n")
    return out


def _roles(spec) -> dict | None:
    if not spec:
        return None
    out = {}
    for item in _split(spec):
        k, _, v = item.partition("=")
        if not v:
            raise InputError(f"role {item!r} is not of the form role=vertex")
        out[k] = v
    return out


def cmd_audit(cfg: RunConfig) -> Outcome:
    d, raw = load_diagram(cfg.source)
    sub = cfg.subset or raw.get("subset") or list(d.vertices)
    order = cfg.order or raw.get("order")
    rep = audit_hypotheses(d, sub, cfg.options["which"], _roles(cfg.options.get("roles")), order,
                           cfg.radius or 4, cfg.core, cfg.budget)
    return Outcome.of_report(rep)


def cmd_replay(cfg: RunConfig) -> Outcome:
    kind, obj, raw = load_source(cfg.source)
    witness = raw.get("witness", raw)
    return Outcome.of_report(replay_witness(witness))


COMMANDS = {"classify": cmd_classify, "enumerate": cmd_enumerate, "arrangement": cmd_arrangement,
            "salvetti": cmd_salvetti, "nf": cmd_nf, "coset": cmd_coset, "ball": cmd_ball, "link": cmd_link,
            "fold": cmd_fold, "cycleword": cmd_cycleword, "subdivide": cmd_subdivide, "check": cmd_check,
            "gb": cmd_gb, "verify-hom": cmd_verify_hom, "audit": cmd_audit, "replay": cmd_replay}


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--threads", type=int, default=1, help="worker cap (runs are single-threaded)")
    common.add_argument("--budget", type=int, default=None, help="enumeration budget (default ARTINLAB_BUDGET)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", "-o", default=None, help="write the full artifact to this file")

    ball = argparse.ArgumentParser(add_help=False)
    ball.add_argument("--subset", help="comma-separated vertex types of the relative complex")
    ball.add_argument("--order", help="comma-separated linear order on the types")
    ball.add_argument("--radius", type=int, help="ball radius (or scanned radius with --witness-radius)")
    ball.add_argument("--witness-radius", type=int, help="radius of the ball searched for witnesses")
    ball.add_argument("--core", type=int, help="scanned radius (default: radius minus 2)")

    p = argparse.ArgumentParser(prog="artinlab", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, helptext, parents=(common,), source=True, source_help="diagram name or JSON file"):
        sp = sub.add_parser(name, help=helptext, parents=list(parents))
        if source:
            sp.add_argument("source", help=source_help)
        return sp

    add("classify", "name a Coxeter diagram")
    add("enumerate", "enumerate a finite Coxeter group")

    sp = sub.add_parser("arrangement", help="hyperplane arrangement operations")
    asub = sp.add_subparsers(dest="action", required=True)
    for name, helptext in (("faces", "face lattice"), ("dual", "dual complex"), ("decone", "decone at a hyperplane"),
                           ("collapse", "collapse to a sub-arrangement"), ("bounded", "bounded complex"),
                           ("walls", "H3 walls through Coxeter-complex vertices")):
        ap = asub.add_parser(name, help=helptext, parents=[common])
        ap.add_argument("source", help="diagram (reflection arrangement) or arrangement JSON")
        ap.add_argument("--model", action="store_true", help="use classical model coordinates")
        if name == "decone":
            ap.add_argument("--hyperplane", default="0", help="index, name, or x<k> for the hyperplane x_k = 0")
        if name == "bounded":
            ap.add_argument("--decone", help="decone at this hyperplane first (index, name, or x<k>)")
        if name == "collapse":
            ap.add_argument("--sub", required=True, help="comma-separated hyperplane indices or names")
        if name == "walls":
            ap.add_argument("--points", required=True, help="comma-separated Coxeter-complex vertex ids")

    sp = sub.add_parser("salvetti", help="Salvetti complex operations")
    ssub = sp.add_subparsers(dest="action", required=True)
    for name in ("build", "retract", "presentation"):
        ssub.add_parser(name, parents=[common]).add_argument("source", help="diagram or arrangement JSON")

    sp = add("nf", "Garside normal form of a word")
    sp.add_argument("word", help="word such as 'a b^-1 c'")
    sp = add("coset", "compare two left cosets of a standard parabolic", parents=(common,))
    sp.add_argument("word1")
    sp.add_argument("word2")
    sp.add_argument("--subset", required=True, help="comma-separated generators of the parabolic")

    add("ball", "ball of the relative Artin complex", parents=(common, ball))
    sp = add("link", "witnessed vertex link", parents=(common, ball))
    sp.add_argument("--vertex", help="vertex id or name (default: the base vertex of the first type)")
    add("fold", "fold a spherical ball onto the Coxeter complex", parents=(common, ball))
    sp = add("cycleword", "words of a cycle of the ball", parents=(common, ball))
    sp.add_argument("--cycle", help="comma-separated vertex ids (default: an apartment cycle)")
    sp = add("subdivide", "subdivide a ball along a fork or double fork", parents=(common, ball))
    sp.add_argument("--kind", choices=("B", "D"), required=True)
    sp.add_argument("--pair", required=True, help="B: 'b1,b2'; D: 'a1,a2;c1,c2'")
    sp.add_argument("--chain", default="", help="comma-separated chain types")

    sp = sub.add_parser("check", help="finite checks with three-valued reports")
    csub = sp.add_subparsers(dest="action", required=True)
    for name in ("poset", "bowtie", "flag", "4wheel", "girth", "helly"):
        cp = csub.add_parser(name, parents=[common, ball])
        cp.add_argument("source", help="diagram, catalog entry, or fixture JSON")
        if name == "flag":
            cp.add_argument("--mode", choices=FLAG_MODES)
        if name == "4wheel":
            cp.add_argument("--tree", help="type tree edges such as 'a-b,b-c'")
        if name == "girth":
            cp.add_argument("--bound", type=int)

    sp = add("gb", "combinatorial Gauss-Bonnet on a disk diagram", source_help="disk diagram JSON")
    sp.add_argument("--geometry", choices=("flat", "hyperbolic"))
    sp = sub.add_parser("verify-hom", help="check that a generator map is a homomorphism", parents=[common])
    sp.add_argument("source", nargs="?", help="map JSON (default: the F4 to E6 map)")
    sp.add_argument("--f4-e6", action="store_true", help="use the built-in F4 to E6 map")
    sp = add("audit", "audit the hypotheses of a contractibility criterion", parents=(common, ball))
    sp.add_argument("--which", choices=AUDITS, required=True)
    sp.add_argument("--roles", help="role assignments such as 'a=b3,b1=b4'")
    add("replay", "re-verify a witness file", source_help="witness or fixture JSON")
    return p


def run(cfg: RunConfig) -> Outcome:
    return COMMANDS[cfg.command](cfg)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
        out = run(cfg)
    except BUDGET_ERRORS as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 4
    except INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    print(_dump(out.data) if cfg.format == "structured" else out.text)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
