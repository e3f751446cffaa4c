"""Sweep the interchange law over a grid of path lengths and print or save the table."""
from __future__ import annotations

import argparse
from fractions import Fraction
from pathlib import Path

from moorecat.bundle import load_fixture
from moorecat.interchange import SWEEP_GRID, interchange_sweep, sweep_report
from moorecat.report import dumps
from moorecat.space import parse_rational

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden" / "interchange_sweep.json"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", default="interchange-default")
    ap.add_argument("--grid", nargs="*", help="lengths as p/q (default 0 1/2 1 3/2)")
    ap.add_argument("--write-golden", action="store_true")
    ap.add_argument("--summary", action="store_true", help="print only counts and the locus")
    args = ap.parse_args()
    grid = tuple(parse_rational(g) for g in args.grid) if args.grid else SWEEP_GRID
    M = next(iter(load_fixture(args.fixture).monoidal.values()))
    rep = sweep_report(M, interchange_sweep(M, grid))
    text = dumps(rep)
    if args.write_golden:
        GOLDEN.write_text(text, encoding="utf-8")
        print(f"wrote {GOLDEN}")
    elif args.summary:
        print("counts:", rep["counts"])
        print("equal off r=v,s=z:", len(rep["locus"]["equal_off_matched"]))
        print("r=v,s=z but not equal:", len(rep["locus"]["matched_not_equal"]))
        for c in rep["cells"]:
            if c["verdict"] == "equal":
                r, v, s, z = (Fraction(c[k]) for k in "rvsz")
                tag = "matched" if (r == v and s == z) else "off"
                print(f"  r={c['r']} v={c['v']} s={c['s']} z={c['z']}  {tag}")
    else:
        print(text, end="")


if __name__ == "__main__":
    main()
