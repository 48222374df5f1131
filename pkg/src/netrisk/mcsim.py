"""Monte Carlo check of the network expected loss.

Each trial draws independent initial defaults ``Bernoulli(p_i)``; every
defaulted node ``i`` then transmits to each ``j`` in its masked row
(adjacency plus self-loop) with probability ``q_ij``. The trial loss is
``l_j`` per realised transmission, so a node hit ``k`` times counts
``k * l_j``. Under that accounting the estimator is unbiased for NEL.

Randomness comes from a Philox counter-based generator keyed by ``seed``.
Trial ``t`` consumes a fixed block of outputs starting at counter offset
``t * block``, so any chunking (or parallel split) of trials gives the
same per-trial draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from netrisk.errors import DimensionMismatch, ProbOutOfRange
from netrisk.ingest import TransitionTable
from netrisk.netgraph import ExposureNetwork
from netrisk.riskcore import default_transition_matrix

CHUNK_TRIALS = 1 << 16
_PHILOX_WORDS = 4  # uint64 outputs per counter increment


@dataclass(frozen=True)
class CascadeConfig:
    trials: int = 100_000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class CascadeEstimate:
    mean: float
    std_error: float
    trials: int


def _uniforms(seed: int, first_trial: int, n_trials: int, block: int) -> np.ndarray:
    bitgen = np.random.Philox(key=seed)
    bitgen.advance(first_trial * block // _PHILOX_WORDS)
    raw = bitgen.random_raw(n_trials * block)
    # top 53 bits -> [0, 1)
    return ((raw >> np.uint64(11)).astype(np.float64) * 2.0**-53).reshape(n_trials, block)


def trial_losses(
    probs: np.ndarray, transmit: np.ndarray, loss: np.ndarray, seed: int, first_trial: int, n_trials: int
) -> np.ndarray:
    """Loss of trials ``first_trial .. first_trial + n_trials - 1``."""
    n = probs.shape[0]
    need = n + n * n
    block = -(-need // _PHILOX_WORDS) * _PHILOX_WORDS
    u = _uniforms(seed, first_trial, n_trials, block)
    initial = u[:, :n] < probs
    hits = u[:, n:need].reshape(n_trials, n, n) < transmit
    realised = initial[:, :, None] & hits
    return realised.sum(axis=1) @ loss


def simulate_expected_loss(
    network: ExposureNetwork,
    transitions: TransitionTable | np.ndarray,
    dp,
    loss,
    config: CascadeConfig = CascadeConfig(),
) -> CascadeEstimate:
    n = network.n
    dp = np.asarray(dp, dtype=float)
    loss = np.asarray(loss, dtype=float)
    if dp.shape != (n,) or loss.shape != (n,):
        raise DimensionMismatch(f"dp {dp.shape} / loss {loss.shape} do not match {n} nodes")
    if ((dp < 0) | (dp > 1)).any():
        raise ProbOutOfRange("default probabilities must lie in [0, 1]")
    transmit = default_transition_matrix(transitions, network)
    if ((transmit < 0) | (transmit > 1)).any():
        raise ProbOutOfRange("transition probabilities must lie in [0, 1]")

    # Chan et al. pairwise combination of chunk means / sums of squares
    count = 0
    mean = 0.0
    m2 = 0.0
    for start in range(0, config.trials, CHUNK_TRIALS):
        k = min(CHUNK_TRIALS, config.trials - start)
        x = trial_losses(dp, transmit, loss, config.seed, start, k)
        cm = float(x.mean())
        cm2 = float(((x - cm) ** 2).sum())
        delta = cm - mean
        total = count + k
        mean += delta * k / total
        m2 += cm2 + delta * delta * count * k / total
        count = total

    std = math.sqrt(m2 / (count - 1)) if count > 1 else 0.0
    return CascadeEstimate(mean=mean, std_error=std / math.sqrt(count), trials=count)
