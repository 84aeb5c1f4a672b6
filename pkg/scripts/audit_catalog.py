"""Audit the hypotheses of the contractibility criteria on the catalog diagrams.

Prints one status line per (diagram, audit) pair and optionally writes the
full reports as JSON.
"""
import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from artinlab.checks import EXIT_CODES, audit_hypotheses
from artinlab.cli import load_source

DEFAULT_JOBS = [
    ("B3", "contractibleII"),
    ("H3", "contractibleII"),
    ("B3_tilde", "ori_link0"),
    ("B3_tilde", "ori_link"),
    ("D4_tilde", "ori_link2"),
]


@dataclass
class AuditConfig:
    radius: int = 3
    core: int | None = None
    budget: int | None = None
    jobs: list = field(default_factory=lambda: list(DEFAULT_JOBS))
    output: str | None = None


def run(cfg: AuditConfig) -> list:
    rows = []
    for name, which in cfg.jobs:
        _, d, raw = load_source(name)
        sub = raw.get("subset", list(d.vertices))
        start = time.perf_counter()
        rep = audit_hypotheses(d, sub, which, order=raw.get("order"), radius=cfg.radius, core=cfg.core,
                               budget=cfg.budget)
        rows.append({"diagram": name, "audit": which, "status": rep.status,
                     "seconds": round(time.perf_counter() - start, 2), "report": rep.to_json()})
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radius", type=int, default=3)
    ap.add_argument("--core", type=int)
    ap.add_argument("--budget", type=int)
    ap.add_argument("--job", action="append", metavar="DIAGRAM:AUDIT",
                    help="e.g. B3_tilde:ori_link (repeatable; default: the built-in list)")
    ap.add_argument("-o", "--output", help="write all reports to this JSON file")
    args = ap.parse_args(argv)
    jobs = [tuple(j.split(":", 1)) for j in args.job] if args.job else list(DEFAULT_JOBS)
    cfg = AuditConfig(args.radius, args.core, args.budget, jobs, args.output)
    rows = run(cfg)
    for r in rows:
        print(f"{r['diagram']:<10} {r['audit']:<15} {r['status']:<13} {r['seconds']:.2f}s")
    if cfg.output:
        with open(cfg.output, "w") as fh:
            json.dump({"config": asdict(cfg), "results": rows}, fh, indent=2, sort_keys=True)
    return max((EXIT_CODES[r["status"]] for r in rows), default=0)


if __name__ == "__main__":
    sys.exit(main())
