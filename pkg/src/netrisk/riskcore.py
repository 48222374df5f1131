"""Default transition matrix, network default probability, network expected
loss and the systemic risk index.

DTM = Q (elementwise) (Adj + I)     diagonal stays q_ii = 1
NDP = DP @ DTM                      row vector, first-order contagion sum
NEL = NDP @ L                       scalar
SRI = sum_i d_i * g(i)              g = betweenness centrality
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from netrisk.errors import DimensionMismatch, MissingCountry, MissingRiskInput, NetriskError
from netrisk.ingest import Panel, TransitionTable
from netrisk.netgraph import CentralityVector, ExposureNetwork, Mode, betweenness, build_network, density


@dataclass(frozen=True, eq=False)
class RiskVectors:
    countries: tuple[str, ...]
    dp: np.ndarray
    loss: np.ndarray
    debt_gdp: np.ndarray

    def debt_map(self) -> dict[str, float]:
        return dict(zip(self.countries, self.debt_gdp.tolist()))


@dataclass(frozen=True, eq=False)
class RiskReport:
    period: str
    countries: tuple[str, ...]
    density: float
    dtm: np.ndarray
    ndp: np.ndarray
    nel: float
    sri: float
    centrality: CentralityVector

    def to_dict(self) -> dict:
        return {
            "period": self.period,
            "countries": list(self.countries),
            "density": self.density,
            "centrality": {c: self.centrality[c] for c in self.countries},
            "ndp": dict(zip(self.countries, self.ndp.tolist())),
            "nel": self.nel,
            "sri": self.sri,
        }


@dataclass(frozen=True)
class SriSeries:
    points: tuple[tuple[str, float], ...]

    @property
    def periods(self) -> list[str]:
        return [p for p, _ in self.points]

    @property
    def values(self) -> list[float]:
        return [v for _, v in self.points]

    @property
    def argmax(self) -> str:
        # first period attaining the maximum
        best = max(range(len(self.points)), key=lambda k: (self.points[k][1], -k))
        return self.points[best][0]

    def __len__(self) -> int:
        return len(self.points)


def default_transition_matrix(transitions: TransitionTable | np.ndarray, network: ExposureNetwork) -> np.ndarray:
    n = network.n
    if isinstance(transitions, TransitionTable):
        q = transitions.matrix(network.countries)
    else:
        q = np.array(transitions, dtype=float)
        if q.shape != (n, n):
            raise DimensionMismatch(f"Q is {q.shape}, network has {n} nodes")
        np.fill_diagonal(q, 1.0)
    mask = (network.adjacency != 0).astype(float)
    np.fill_diagonal(mask, 1.0)
    return q * mask


def network_default_probability(dp, dtm, clip: bool = False) -> np.ndarray:
    """``ndp[j] = sum_i dp[i] * dtm[i, j]``.

    Entries can exceed 1 (several channels into one node add up); pass
    ``clip=True`` to cap them at 1.
    """
    dp = np.asarray(dp, dtype=float)
    dtm = np.asarray(dtm, dtype=float)
    if dtm.ndim != 2 or dtm.shape[0] != dtm.shape[1] or dp.shape != (dtm.shape[0],):
        raise DimensionMismatch(f"dp {dp.shape} incompatible with dtm {dtm.shape}")
    ndp = dp @ dtm
    if clip:
        ndp = np.clip(ndp, 0.0, 1.0)
    return ndp


def network_expected_loss(ndp, loss) -> float:
    ndp = np.asarray(ndp, dtype=float)
    loss = np.asarray(loss, dtype=float)
    if ndp.ndim != 1 or ndp.shape != loss.shape:
        raise DimensionMismatch(f"ndp {ndp.shape} incompatible with loss {loss.shape}")
    return float(ndp @ loss)


def systemic_risk_index(debt_gdp: Mapping[str, float], centrality: CentralityVector) -> float:
    missing = [c for c in debt_gdp if c not in centrality.values]
    if missing:
        raise MissingCountry(f"centrality lacks {', '.join(sorted(missing))}")
    return float(sum(d * centrality.values[c] for c, d in debt_gdp.items()))


def risk_vectors(panel: Panel, period: str) -> RiskVectors:
    recs = panel.risk_inputs.get(period, {})
    cs = panel.countries
    missing = [c for c in cs if c not in recs]
    if missing:
        raise MissingRiskInput(f"no risk input for {', '.join(missing)} in {period}")
    return RiskVectors(
        countries=cs,
        dp=np.array([recs[c].default_prob for c in cs]),
        loss=np.array([recs[c].loss for c in cs]),
        debt_gdp=np.array([recs[c].debt_gdp for c in cs]),
    )


def _tagged(period: str, exc: NetriskError) -> NetriskError:
    if hasattr(exc, "period") and exc.period is None:
        exc.period = period
    elif not hasattr(exc, "period"):
        exc.args = (f"[{period}] {exc}",)
    return exc


def risk_report(
    panel: Panel,
    period: str,
    threshold: float = 0.0,
    mode: Mode = "undirected",
    normalized: bool = False,
    clip: bool = False,
) -> RiskReport:
    net = build_network(panel, period, threshold)
    rv = risk_vectors(panel, period)
    dtm = default_transition_matrix(panel.transitions, net)
    ndp = network_default_probability(rv.dp, dtm, clip=clip)
    cent = betweenness(net, mode, normalized)
    return RiskReport(
        period=period,
        countries=net.countries,
        density=density(net) if net.n >= 2 else 0.0,
        dtm=dtm,
        ndp=ndp,
        nel=network_expected_loss(ndp, rv.loss),
        sri=systemic_risk_index(rv.debt_map(), cent),
        centrality=cent,
    )


def _period_sri(panel: Panel, period: str, threshold: float, mode: Mode, normalized: bool) -> float:
    try:
        net = build_network(panel, period, threshold)
        cent = betweenness(net, mode, normalized)
        return systemic_risk_index(risk_vectors(panel, period).debt_map(), cent)
    except NetriskError as exc:
        raise _tagged(period, exc)


def sri_series(
    panel: Panel,
    threshold: float = 0.0,
    mode: Mode = "undirected",
    normalized: bool = False,
    workers: int = 1,
) -> SriSeries:
    def one(p: str) -> float:
        return _period_sri(panel, p, threshold, mode, normalized)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            values = list(pool.map(one, panel.periods))
    else:
        values = [one(p) for p in panel.periods]
    return SriSeries(tuple(zip(panel.periods, values)))
