"""Run the acceptance suite and print one PASS/FAIL line per criterion."""
import argparse
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-k", dest="select", help="pytest -k expression, e.g. criterion_8")
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args(argv)
    cmd = [str(ROOT / "tests" / "test_acceptance.py"), "-p", "no:cacheprovider",
           "-v" if args.verbose else "-q"]
    if args.select:
        cmd += ["-k", args.select]
    return int(pytest.main(cmd))


if __name__ == "__main__":
    sys.exit(main())
