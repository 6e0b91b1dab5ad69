"""Average harvested energy: closed forms, Jensen bound, and quadrature.

Harvested "energy" is reported in watts, i.e. average power over the
unit-normalized protocol period.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from paswipt.config import (
    HarvestModel,
    LinearHarvest,
    LogisticHarvest,
    ProtocolParams,
    RegionGeometry,
    SystemParams,
)
from paswipt.distributions import SquaredDistanceDistribution
from paswipt.geometry import Scheme


@dataclass(frozen=True)
class EnergyResult:
    value_w: float
    scheme: Scheme
    method: str  # "closed" | "bound" | "quadrature" | "monte-carlo"


def logistic_harvest_power(model: LogisticHarvest, p_in):
    """Saturating transfer curve: phi/(1-Omega) * (sigmoid(a(p-b)) - Omega),
    clamped at zero.  Vectorized; exact 0.0 at p_in = 0.

    Uses expit throughout so a*(p_in - b) in the hundreds neither
    overflows nor loses the zero-input cancellation (the offset Omega is
    the same expit evaluation at -a*b).
    """
    p_in = np.asarray(p_in, dtype=float)
    omega = expit(-model.slope_per_w * model.turn_on_w)
    raw = model.saturation_w / (1.0 - omega) * (
        expit(model.slope_per_w * (p_in - model.turn_on_w)) - omega
    )
    out = np.maximum(raw, 0.0)
    return out if out.ndim else float(out)


def harvest_power(model: HarvestModel, p_in):
    """Harvested power for incident power p_in under either model."""
    if isinstance(model, LinearHarvest):
        p_in = np.asarray(p_in, dtype=float)
        out = model.eta * p_in
        return out if out.ndim else float(out)
    return logistic_harvest_power(model, p_in)


def mean_inverse_squared_distance(scheme: Scheme, geom: RegionGeometry) -> float:
    """E[1 / L] for the optimal squared distance L, in closed form.

    Edge/center: (varpi / (h d_y)) * arctan(d_y / (varpi h)).
    Diagonal: 2/(Lam h) * arctan(Lam / h) - ln(1 + Lam^2/h^2) / Lam^2.
    """
    h = geom.height
    if scheme is Scheme.DDS:
        lam = geom.diagonal_half_width
        return 2.0 / (lam * h) * math.atan(lam / h) - math.log1p(lam**2 / h**2) / lam**2
    varpi = scheme.line_factor
    return varpi / (h * geom.d_y) * math.atan(geom.d_y / (varpi * h))


def avg_energy_lm_closed(
    scheme: Scheme, system: SystemParams, protocol: ProtocolParams,
    geom: RegionGeometry, lm: LinearHarvest,
) -> float:
    """alpha beta eta P_t * E[1/L], with the scheme's closed-form kernel."""
    return (
        protocol.alpha * protocol.beta * lm.eta * system.transmit_power_w
        * mean_inverse_squared_distance(scheme, geom)
    )


def avg_energy_nlm_bound(
    scheme: Scheme, system: SystemParams, protocol: ProtocolParams,
    geom: RegionGeometry, nlm: LogisticHarvest,
) -> float:
    """Jensen upper bound: alpha * Phi(beta P_t E[1/L])."""
    p_in = protocol.beta * system.transmit_power_w * mean_inverse_squared_distance(scheme, geom)
    return protocol.alpha * logistic_harvest_power(nlm, p_in)


def avg_energy_quadrature(
    scheme: Scheme, system: SystemParams, protocol: ProtocolParams,
    geom: RegionGeometry, model: HarvestModel,
) -> float:
    """Exact expectation alpha * E[harvest(beta P_t / L)] by adaptive
    quadrature against the scheme's distance law."""
    dist = SquaredDistanceDistribution(scheme, geom)
    beta_pt = protocol.beta * system.transmit_power_w
    return protocol.alpha * dist.expect(lambda l: harvest_power(model, beta_pt / l))
