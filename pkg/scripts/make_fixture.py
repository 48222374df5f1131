"""Regenerate the shipped synthetic panel under fixtures/synthetic/."""

import argparse
from pathlib import Path

from netrisk.fixture import DEFAULT_SEED, write_fixture

ROOT = Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(ROOT / "fixtures" / "synthetic"))
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = ap.parse_args()
    for name, path in write_fixture(args.out, args.seed).items():
        print(f"{name}: {path}")
