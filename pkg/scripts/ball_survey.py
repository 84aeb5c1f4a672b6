"""Ball statistics and poset checks for the spherical catalog diagrams.

For each diagram and radius: chambers, vertices per type, and the status of
the order, bowtie and flag checks on the default core (radius - 2).
"""
import argparse
import sys
from dataclasses import dataclass

from artinlab.artincx import build_ball
from artinlab.checks import OrderedVertexView, check_bowtie_free, check_flag, check_order
from artinlab.cli import load_source


@dataclass
class SurveyConfig:
    diagrams: tuple = ("A3", "B3", "H3")
    radii: tuple = (3, 4)
    budget: int | None = None


def survey(cfg: SurveyConfig):
    for name in cfg.diagrams:
        _, d, raw = load_source(name)
        order = raw.get("order", list(d.vertices))
        for r in cfg.radii:
            b = build_ball(d, raw.get("subset"), r, cfg.budget)
            view = OrderedVertexView(b, order)
            row = {"diagram": name, "radius": r, "chambers": len(b.chamber_words),
                   "vertices": b.stats()["vertices_per_type"], "order": check_order(view).status,
                   "bowtie": check_bowtie_free(view).status,
                   "upward": check_flag(view, "upward").status,
                   "downward": check_flag(view, "downward").status}
            yield row


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--diagrams", default="A3,B3,H3")
    ap.add_argument("--radii", default="3,4")
    ap.add_argument("--budget", type=int)
    args = ap.parse_args(argv)
    cfg = SurveyConfig(tuple(args.diagrams.split(",")), tuple(int(x) for x in args.radii.split(",")),
                       args.budget)
    for row in survey(cfg):
        print(f"{row['diagram']:<4} r={row['radius']} chambers={row['chambers']:<6} "
              f"order={row['order']} bowtie={row['bowtie']} up={row['upward']} down={row['downward']} "
              f"vertices={row['vertices']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
