"""Density, NEL and SRI per quarter of the synthetic panel, and DOT snapshots
for the first quarter and 2009Q4."""

from pathlib import Path

from netrisk import build_network, load_panel, risk_report
from netrisk.cli import write_atomic
from netrisk.report import export_dot, fmt

ROOT = Path(__file__).resolve().parents[1]
FIX = ROOT / "fixtures" / "synthetic"

if __name__ == "__main__":
    panel = load_panel(FIX / "exposures.csv", FIX / "risk_inputs.csv", FIX / "transitions.csv")
    print(f"{'period':8} {'density':>8} {'NEL':>10} {'SRI':>10}")
    for p in panel.periods:
        r = risk_report(panel, p)
        print(f"{p:8} {fmt(r.density):>8} {fmt(r.nel):>10} {fmt(r.sri):>10}")
    for p in (panel.periods[0], "2009Q4"):
        write_atomic(ROOT / "results" / f"network_{p}.dot", export_dot(build_network(panel, p)))
