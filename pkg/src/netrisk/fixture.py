"""Synthetic 20-country x 25-quarter panel (2005Q1 .. 2011Q1).

The real consolidated-claims panel is not redistributable, so the tests and
demo scripts run on this generated stand-in. Its shape is planted:

* most quarters are core-periphery graphs (complete core, each periphery
  country tied to two core members, sparse periphery-periphery ties that
  thicken over time);
* quarter index ``PEAK_INDEX`` (2010Q2) is a pure star around one hub,
  the maximum-intermediation layout, and debt ratios peak there too;
* the last quarter is a complete directed graph (all 380 ties).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from netrisk.ingest import EXPOSURE_HEADER, RISK_HEADER, TRANSITION_HEADER

COUNTRIES = (
    "AT", "AU", "BE", "CA", "CH", "DE", "DK", "ES", "FI", "FR",
    "GB", "GR", "IE", "IT", "JP", "NL", "PT", "SE", "TR", "US",
)  # fmt: skip
PERIODS = tuple(f"{y}Q{q}" for y in range(2005, 2012) for q in range(1, 5))[:25]
PEAK_INDEX = 21
COMPLETE_INDEX = 24
HUB = "DE"
DEFAULT_SEED = 20100402


def _num(x: float) -> str:
    return repr(round(float(x), 4))


def _adjacency(rng: np.random.Generator, t: int) -> np.ndarray:
    n = len(COUNTRIES)
    adj = np.zeros((n, n), dtype=bool)
    if t == COMPLETE_INDEX:
        adj[:] = True
    elif t == PEAK_INDEX:
        h = COUNTRIES.index(HUB)
        adj[h, :] = True
        adj[:, h] = True
    else:
        core_size = 8 - round(4 * t / PEAK_INDEX) if t < PEAK_INDEX else 6
        core = rng.choice(n, size=core_size, replace=False)
        adj[np.ix_(core, core)] = True
        periphery = [k for k in range(n) if k not in set(core.tolist())]
        for k in periphery:
            for c in rng.choice(core, size=2, replace=False):
                # at least one direction per tie
                fwd = rng.random() < 0.7
                back = rng.random() < 0.7 or not fwd
                adj[k, c] |= fwd
                adj[c, k] |= back
        extra = rng.random((n, n)) < 0.01 + 0.25 * t / len(PERIODS)
        adj |= extra
    np.fill_diagonal(adj, False)
    return adj


def generate(seed: int = DEFAULT_SEED) -> tuple[str, str, str]:
    """Return (exposures_csv, risk_inputs_csv, transitions_csv) texts."""
    rng = np.random.default_rng(seed)
    n = len(COUNTRIES)

    exp_lines = [",".join(EXPOSURE_HEADER)]
    for t, period in enumerate(PERIODS):
        adj = _adjacency(rng, t)
        claims = np.exp(rng.normal(6.5 + 0.03 * t, 1.2, (n, n)))
        zero_rows = rng.random((n, n)) < 0.05
        for i, a in enumerate(COUNTRIES):
            for j, b in enumerate(COUNTRIES):
                if i == j:
                    continue
                if adj[i, j]:
                    exp_lines.append(f"{period},{a},{b},{_num(max(claims[i, j], 1.0))}")
                elif zero_rows[i, j]:
                    exp_lines.append(f"{period},{a},{b},0.0")

    base_debt = rng.uniform(0.3, 1.2, n)
    base_debt[COUNTRIES.index(HUB)] = 1.0
    base_p = rng.uniform(0.002, 0.03, n)
    base_loss = rng.uniform(100.0, 5000.0, n)
    risk_lines = [",".join(RISK_HEADER)]
    for t, period in enumerate(PERIODS):
        stress = 0.8 + 0.6 * np.exp(-(((t - PEAK_INDEX) / 2.5) ** 2))
        debt = base_debt * stress * rng.uniform(0.95, 1.05, n)
        p = np.clip(base_p * stress, 0.0, 1.0)
        loss = base_loss * (1.0 + 0.02 * t)
        for k, c in enumerate(COUNTRIES):
            risk_lines.append(f"{period},{c},{_num(p[k])},{_num(loss[k])},{_num(debt[k])}")

    tr_lines = [",".join(TRANSITION_HEADER)]
    for i, a in enumerate(COUNTRIES):
        for j, b in enumerate(COUNTRIES):
            if i != j and rng.random() < 0.4:
                tr_lines.append(f"{a},{b},{_num(rng.uniform(0.05, 0.4))}")

    return tuple("\n".join(lines) + "\n" for lines in (exp_lines, risk_lines, tr_lines))


def write_fixture(directory: str | Path, seed: int = DEFAULT_SEED) -> dict[str, Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {}
    for name, text in zip(("exposures", "risk_inputs", "transitions"), generate(seed)):
        path = directory / f"{name}.csv"
        path.write_text(text, encoding="utf-8", newline="")
        paths[name] = path
    return paths
