"""Seeded, worker-count-invariant Monte-Carlo estimation.

Sampling is counter-based: the stream is cut into fixed-size chunks and
chunk j draws from a Philox generator keyed by (seed, j), so sample i is
a pure function of (seed, i) and workers need no shared state.  Partial
sums are reduced in chunk order with numpy's pairwise summation, which
makes the result bitwise identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from paswipt.config import Config, LinearHarvest, LogisticHarvest
from paswipt.energy import logistic_harvest_power
from paswipt.geometry import Scheme, optimal_squared_distance

CHUNK_SIZE = 1 << 15  # fixed; changing it changes every stream

_MASK64 = (1 << 64) - 1

METRICS = ("energy-lm", "energy-nlm", "rate")


@dataclass(frozen=True)
class EstimateWithCI:
    mean: float
    std_error: float
    n_samples: int
    seed: int


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    key = (seed & _MASK64) | (chunk_index << 64)
    return np.random.Generator(np.random.Philox(key=key))


def _chunk_ue(config: Config, seed: int, chunk_index: int, size: int):
    g = config.geometry
    rng = _chunk_rng(seed, chunk_index)
    x_u = rng.random(size) * g.d_x
    y_u = rng.random(size) * g.d_y
    assert np.all((x_u >= 0) & (x_u <= g.d_x) & (y_u >= 0) & (y_u <= g.d_y))
    return x_u, y_u


def sample_ue_stream(config: Config, seed: int, n: int):
    """The first n UE positions of the stream, as (x, y) arrays."""
    if n < 1:
        raise ValueError("n must be >= 1")
    xs, ys = [], []
    for j in range(0, -(-n // CHUNK_SIZE)):
        size = min(CHUNK_SIZE, n - j * CHUNK_SIZE)
        x_u, y_u = _chunk_ue(config, seed, j, size)
        xs.append(x_u)
        ys.append(y_u)
    return np.concatenate(xs), np.concatenate(ys)


def _metric_values(metric: str, scheme: Scheme, config: Config, x_u, y_u):
    l = optimal_squared_distance(scheme, config.geometry, x_u, y_u)
    p = config.protocol
    s = config.system
    if metric == "energy-lm":
        model = config.harvest
        if not isinstance(model, LinearHarvest):
            raise ValueError("energy-lm requires a LinearHarvest config")
        return p.alpha * p.beta * model.eta * s.transmit_power_w / l
    if metric == "energy-nlm":
        model = config.harvest
        if not isinstance(model, LogisticHarvest):
            raise ValueError("energy-nlm requires a LogisticHarvest config")
        return p.alpha * logistic_harvest_power(model, p.beta * s.transmit_power_w / l)
    if metric == "rate":
        mu_gamma = s.path_loss_factor_m2 * s.transmit_snr
        return (1.0 - p.alpha * p.beta) * np.log1p(mu_gamma / l) / math.log(2.0)
    raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")


def _chunk_stats(args):
    metric, scheme, config, seed, chunk_index, size = args
    x_u, y_u = _chunk_ue(config, seed, chunk_index, size)
    v = _metric_values(metric, scheme, config, x_u, y_u)
    return np.sum(v), np.sum(v * v)


def estimate(
    metric: str,
    scheme: Scheme,
    config: Config,
    n: int = 1_000_000,
    seed: int = 0,
    workers: int = 1,
) -> EstimateWithCI:
    """Sample mean and standard error of the per-UE metric.

    Pipeline per sample: uniform UE draw -> optimal antenna placement ->
    squared distance -> metric formula.
    """
    if n < 2:
        raise ValueError("n must be >= 2 for a variance estimate")
    n_chunks = -(-n // CHUNK_SIZE)
    jobs = [
        (metric, scheme, config, seed, j, min(CHUNK_SIZE, n - j * CHUNK_SIZE))
        for j in range(n_chunks)
    ]
    if workers > 1 and n_chunks > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(_chunk_stats, jobs))
    else:
        stats = [_chunk_stats(job) for job in jobs]

    sums = np.array([s for s, _ in stats])
    sumsqs = np.array([q for _, q in stats])
    total = np.sum(sums)
    total_sq = np.sum(sumsqs)
    mean = total / n
    var = max(0.0, (total_sq - n * mean * mean) / (n - 1))
    return EstimateWithCI(
        mean=float(mean),
        std_error=float(math.sqrt(var / n)),
        n_samples=n,
        seed=seed,
    )
