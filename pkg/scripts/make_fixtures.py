"""Regenerate the shipped JSON fixtures from their Python builders."""
from __future__ import annotations

import argparse
from pathlib import Path

from moorecat.bundle import dumps_bundle, fixture_bundle
from moorecat.fixtures import SHIPPED

DATA = Path(__file__).resolve().parents[1] / "src" / "moorecat" / "data"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true", help="fail if any file is stale instead of writing")
    args = ap.parse_args()
    stale = []
    for name in SHIPPED:
        path = DATA / f"{name}.json"
        text = dumps_bundle(fixture_bundle(name))
        if args.check:
            if not path.exists() or path.read_text(encoding="utf-8") != text:
                stale.append(name)
        else:
            path.write_text(text, encoding="utf-8")
            print(f"wrote {path.name}")
    if stale:
        raise SystemExit(f"stale fixtures: {', '.join(stale)}")


if __name__ == "__main__":
    main()
