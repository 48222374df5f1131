"""SRI time series on the synthetic panel: CSV + SVG plot, plus the peak.

    python scripts/sri_figure.py [--out results/]
"""

import argparse
from pathlib import Path

from netrisk import load_panel, sri_series
from netrisk.cli import write_atomic
from netrisk.report import emit_svg_plot, fmt, sri_csv

ROOT = Path(__file__).resolve().parents[1]
FIX = ROOT / "fixtures" / "synthetic"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(ROOT / "results"))
    ap.add_argument("--mode", choices=("directed", "undirected"), default="undirected")
    ap.add_argument("--normalized", action="store_true")
    ap.add_argument("--threshold", type=float, default=0.0)
    args = ap.parse_args()

    panel = load_panel(FIX / "exposures.csv", FIX / "risk_inputs.csv", FIX / "transitions.csv")
    series = sri_series(panel, args.threshold, args.mode, args.normalized)
    out = Path(args.out)
    write_atomic(out / "sri.csv", sri_csv(series))
    write_atomic(out / "sri.svg", emit_svg_plot(series))
    for period, value in series.points:
        print(f"{period}  {fmt(value):>10}")
    print(f"peak: {series.argmax}")


if __name__ == "__main__":
    main()
