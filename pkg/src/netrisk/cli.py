"""``netrisk`` command line.

Exit status: 0 success, 1 data/validation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from netrisk.errors import NetriskError, UnknownPeriod
from netrisk.ingest import Panel, build_panel, load_panel, parse_exposure_csv, parse_transitions_csv, read_csv
from netrisk.mcsim import CascadeConfig, simulate_expected_loss
from netrisk.netgraph import betweenness, build_network, density
from netrisk.report import centrality_csv, emit_svg_plot, export_dot, fmt, risk_csv, sri_csv, to_json
from netrisk.riskcore import (
    default_transition_matrix,
    network_default_probability,
    network_expected_loss,
    risk_report,
    risk_vectors,
    sri_series,
)

FORMATS = {
    "network": ("dot", "json"),
    "centrality": ("csv", "json"),
    "risk": ("json", "csv"),
    "sri": ("csv", "svg", "json"),
    "simulate": ("json", "csv"),
}
NEEDS_RISK = {"risk", "sri", "simulate"}


@dataclass
class RunConfig:
    subcommand: str
    exposures: str
    risk_inputs: str | None = None
    transitions: str | None = None
    period: str | None = None
    all_periods: bool = False
    threshold: float = 0.0
    mode: str = "undirected"
    normalized: bool = False
    out: str | None = None
    format: str | None = None
    trials: int = 100_000
    seed: int = 0

    @property
    def fmt(self) -> str:
        return self.format or FORMATS[self.subcommand][0]


def write_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _non_negative(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not x >= 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return x


def _positive_int(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if x < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return x


def _seed(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= x < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer: {text!r}")
    return x


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--exposures", required=True, metavar="FILE")
    common.add_argument("--risk-inputs", metavar="FILE")
    common.add_argument("--transitions", metavar="FILE")
    sel = common.add_mutually_exclusive_group()
    sel.add_argument("--period", metavar="YYYYQn")
    sel.add_argument("--all", dest="all_periods", action="store_true")
    common.add_argument("--threshold", type=_non_negative, default=0.0)
    common.add_argument("--mode", choices=("directed", "undirected"), default="undirected")
    common.add_argument("--normalized", action="store_true")
    common.add_argument("--format")
    common.add_argument("--out", metavar="PATH")

    parser = argparse.ArgumentParser(prog="netrisk", description="Sovereign debt network risk toolkit.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("network", parents=[common], help="export the exposure network (DOT/JSON)")
    sub.add_parser("centrality", parents=[common], help="betweenness centrality per country")
    sub.add_parser("risk", parents=[common], help="DTM/NDP/NEL/SRI report")
    sub.add_parser("sri", parents=[common], help="systemic risk index series over all periods")
    sim = sub.add_parser("simulate", parents=[common], help="Monte Carlo check of NEL")
    sim.add_argument("--trials", type=_positive_int, default=100_000)
    sim.add_argument("--seed", type=_seed, default=0)
    return parser


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    parser = make_parser()
    ns = parser.parse_args(argv)
    cmd = ns.subcommand
    if ns.format is not None and ns.format not in FORMATS[cmd]:
        parser.error(f"{cmd}: --format {ns.format!r} not valid for {cmd} (choose from {', '.join(FORMATS[cmd])})")
    if cmd in NEEDS_RISK and not ns.risk_inputs:
        parser.error(f"{cmd}: --risk-inputs is required")
    if cmd == "sri" and ns.period:
        parser.error(f"{cmd}: --period is not accepted by sri; the series always covers every period")
    if cmd == "simulate" and not ns.period:
        parser.error(f"{cmd}: --period is required for simulate")
    if cmd in ("network", "centrality", "risk") and not (ns.period or ns.all_periods):
        parser.error(f"{cmd}: one of --period or --all is required")
    if cmd == "network" and ns.all_periods and not ns.out:
        parser.error(f"{cmd}: --out DIR is required with --all")
    return RunConfig(
        subcommand=cmd,
        exposures=ns.exposures,
        risk_inputs=ns.risk_inputs,
        transitions=ns.transitions,
        period=ns.period,
        all_periods=ns.all_periods,
        threshold=ns.threshold,
        mode=ns.mode,
        normalized=ns.normalized,
        out=ns.out,
        format=ns.format,
        trials=getattr(ns, "trials", 100_000),
        seed=getattr(ns, "seed", 0),
    )


def _load(cfg: RunConfig) -> Panel:
    if cfg.risk_inputs:
        return load_panel(cfg.exposures, cfg.risk_inputs, cfg.transitions)
    exposures = read_csv(cfg.exposures, parse_exposure_csv)
    transitions = read_csv(cfg.transitions, parse_transitions_csv) if cfg.transitions else None
    return build_panel(exposures, [], transitions, require_risk=False)


def _periods(cfg: RunConfig, panel: Panel) -> list[str]:
    if cfg.all_periods or cfg.period is None:
        return list(panel.periods)
    if cfg.period not in panel.periods:
        raise UnknownPeriod(f"period {cfg.period} not present in {cfg.exposures}")
    return [cfg.period]


def _emit(cfg: RunConfig, text: str, written: list[Path]) -> None:
    if cfg.out:
        write_atomic(cfg.out, text)
        written.append(Path(cfg.out))
    else:
        sys.stdout.write(text)


def _cmd_network(cfg, panel, written) -> str:
    periods = _periods(cfg, panel)
    texts = {}
    for p in periods:
        net = build_network(panel, p, cfg.threshold)
        if cfg.fmt == "dot":
            texts[p] = export_dot(net)
        else:
            texts[p] = to_json(
                {
                    "period": p,
                    "countries": list(net.countries),
                    "threshold": net.threshold,
                    "density": density(net) if net.n >= 2 else 0.0,
                    "edges": [{"from": a, "to": b, "claim": w} for a, b, w in sorted(net.edges())],
                }
            )
    if cfg.all_periods:
        outdir = Path(cfg.out)
        for p, text in texts.items():
            path = outdir / f"{p}.{cfg.fmt}"
            write_atomic(path, text)
            written.append(path)
    else:
        _emit(cfg, texts[periods[0]], written)
    return f"network: {len(periods)} period(s), {len(panel.countries)} countries"


def _cmd_centrality(cfg, panel, written) -> str:
    periods = _periods(cfg, panel)
    rows = []
    result = {}
    for p in periods:
        cent = betweenness(build_network(panel, p, cfg.threshold), cfg.mode, cfg.normalized)
        result[p] = dict(cent.values)
        rows += [(p, c, cent[c]) for c in panel.countries]
    if cfg.fmt == "csv":
        text = centrality_csv(rows)
    else:
        text = to_json({"mode": cfg.mode, "normalized": cfg.normalized, "centrality": result})
    _emit(cfg, text, written)
    return f"centrality: {len(periods)} period(s), mode={cfg.mode}, normalized={cfg.normalized}"


def _cmd_risk(cfg, panel, written) -> str:
    reports = [risk_report(panel, p, cfg.threshold, cfg.mode, cfg.normalized) for p in _periods(cfg, panel)]
    if cfg.fmt == "csv":
        text = risk_csv(reports)
    elif cfg.all_periods:
        text = to_json([r.to_dict() for r in reports])
    else:
        text = to_json(reports[0].to_dict())
    _emit(cfg, text, written)
    if len(reports) == 1:
        r = reports[0]
        return f"risk {r.period}: NEL={fmt(r.nel)} SRI={fmt(r.sri)} density={fmt(r.density)}"
    return f"risk: {len(reports)} periods"


def _cmd_sri(cfg, panel, written) -> str:
    series = sri_series(panel, cfg.threshold, cfg.mode, cfg.normalized)
    if cfg.fmt == "csv":
        text = sri_csv(series)
    elif cfg.fmt == "svg":
        text = emit_svg_plot(series)
    else:
        text = to_json({"series": dict(series.points), "argmax": series.argmax})
    _emit(cfg, text, written)
    peak = dict(series.points)[series.argmax]
    return f"sri: {len(series)} periods; argmax: {series.argmax} (sri={fmt(peak)})"


def _cmd_simulate(cfg, panel, written) -> str:
    (period,) = _periods(cfg, panel)
    net = build_network(panel, period, cfg.threshold)
    rv = risk_vectors(panel, period)
    est = simulate_expected_loss(net, panel.transitions, rv.dp, rv.loss, CascadeConfig(cfg.trials, cfg.seed))
    ndp = network_default_probability(rv.dp, default_transition_matrix(panel.transitions, net))
    nel = network_expected_loss(ndp, rv.loss)
    if cfg.fmt == "json":
        text = to_json(
            {
                "period": period,
                "trials": est.trials,
                "seed": cfg.seed,
                "mean": est.mean,
                "std_error": est.std_error,
                "nel": nel,
            }
        )
    else:
        text = "period,trials,seed,mean,std_error,nel\n" + (
            f"{period},{est.trials},{cfg.seed},{fmt(est.mean)},{fmt(est.std_error)},{fmt(nel)}\n"
        )
    _emit(cfg, text, written)
    z = (est.mean - nel) / est.std_error if est.std_error > 0 else 0.0
    return f"simulate {period}: mean={fmt(est.mean)} se={fmt(est.std_error)} NEL={fmt(nel)} z={fmt(z)}"


COMMANDS = {
    "network": _cmd_network,
    "centrality": _cmd_centrality,
    "risk": _cmd_risk,
    "sri": _cmd_sri,
    "simulate": _cmd_simulate,
}


def run(cfg: RunConfig) -> tuple[int, list[Path]]:
    written: list[Path] = []
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            panel = _load(cfg)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        summary = COMMANDS[cfg.subcommand](cfg, panel, written)
    except NetriskError as exc:
        print(f"netrisk: error: {exc}", file=sys.stderr)
        return 1, written
    except OSError as exc:
        print(f"netrisk: error: {exc}", file=sys.stderr)
        return 1, written
    if cfg.out:
        print(summary)
        for path in written:
            print(f"wrote {path}")
    else:
        print(summary, file=sys.stderr)
    return 0, written


def main(argv: Sequence[str] | None = None) -> int:
    cfg = parse_config(argv)
    status, _ = run(cfg)
    return status


if __name__ == "__main__":
    sys.exit(main())
