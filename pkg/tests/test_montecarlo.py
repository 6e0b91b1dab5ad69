import numpy as np
import pytest
from scipy import stats

from paswipt.config import ProtocolParams
from paswipt.energy import avg_energy_lm_closed, avg_energy_nlm_bound
from paswipt.geometry import Scheme
from paswipt.montecarlo import CHUNK_SIZE, estimate, sample_ue_stream
from paswipt.rate import avg_rate_closed


def test_rejects_too_few_samples(lm_config):
    with pytest.raises(ValueError):
        estimate("rate", Scheme.EDS, lm_config, n=1)


def test_rejects_unknown_metric(lm_config):
    with pytest.raises(ValueError, match="metric"):
        estimate("outage", Scheme.EDS, lm_config, n=100)


def test_metric_model_mismatch(lm_config, nlm_config):
    with pytest.raises(ValueError, match="LogisticHarvest"):
        estimate("energy-nlm", Scheme.EDS, lm_config, n=100)
    with pytest.raises(ValueError, match="LinearHarvest"):
        estimate("energy-lm", Scheme.EDS, nlm_config, n=100)


def test_zero_prefactor_rate(lm_config):
    cfg = lm_config.replace(protocol=ProtocolParams(1.0, 1.0))
    est = estimate("rate", Scheme.CDS, cfg, n=1000, seed=3)
    assert est.mean == 0.0
    assert est.std_error == 0.0


def test_stream_is_reproducible(lm_config):
    x1, y1 = sample_ue_stream(lm_config, seed=42, n=70_000)
    x2, y2 = sample_ue_stream(lm_config, seed=42, n=70_000)
    assert np.array_equal(x1, x2)
    assert np.array_equal(y1, y2)
    # a prefix of a longer stream is the same stream
    x3, _ = sample_ue_stream(lm_config, seed=42, n=CHUNK_SIZE + 10)
    assert np.array_equal(x3, x1[: CHUNK_SIZE + 10])


def test_stream_differs_across_seeds(lm_config):
    x1, _ = sample_ue_stream(lm_config, seed=1, n=1000)
    x2, _ = sample_ue_stream(lm_config, seed=2, n=1000)
    assert not np.array_equal(x1, x2)


def test_stream_covers_rectangle_uniformly(lm_config):
    g = lm_config.geometry
    n = 1_000_000
    x, y = sample_ue_stream(lm_config, seed=9, n=n)
    assert np.all((x >= 0) & (x <= g.d_x) & (y >= 0) & (y <= g.d_y))
    # uniform mean within 4 sigma
    tol = 4 * g.d_x / np.sqrt(12 * n)
    assert abs(x.mean() - g.d_x / 2) < tol
    ks = stats.kstest(y, stats.uniform(loc=0, scale=g.d_y).cdf)
    assert ks.statistic < 0.0019  # 99% one-sample critical value at n=1e6


def test_worker_count_invariance(lm_config):
    kwargs = dict(n=100_000, seed=123)
    ref = estimate("energy-lm", Scheme.DDS, lm_config, workers=1, **kwargs)
    for workers in (4, 8):
        est = estimate("energy-lm", Scheme.DDS, lm_config, workers=workers, **kwargs)
        assert est.mean == ref.mean  # bitwise
        assert est.std_error == ref.std_error


@pytest.mark.parametrize("scheme", list(Scheme))
def test_agrees_with_lm_energy_closed_form(scheme, lm_config):
    s, p, g = lm_config.system, lm_config.protocol, lm_config.geometry
    closed = avg_energy_lm_closed(scheme, s, p, g, lm_config.harvest)
    est = estimate("energy-lm", scheme, lm_config, n=1_000_000, seed=8)
    assert abs(est.mean - closed) <= 4 * est.std_error


@pytest.mark.parametrize("scheme", list(Scheme))
def test_agrees_with_rate_closed_form(scheme, lm_config):
    s, p, g = lm_config.system, lm_config.protocol, lm_config.geometry
    closed = avg_rate_closed(scheme, s, p, g).value_bits_s_hz
    est = estimate("rate", scheme, lm_config, n=1_000_000, seed=8)
    assert abs(est.mean - closed) <= 4 * est.std_error


@pytest.mark.parametrize("scheme", list(Scheme))
def test_nlm_estimate_below_jensen_bound(scheme, nlm_config):
    s, p, g = nlm_config.system, nlm_config.protocol, nlm_config.geometry
    bound = avg_energy_nlm_bound(scheme, s, p, g, nlm_config.harvest)
    est = estimate("energy-nlm", scheme, nlm_config, n=1_000_000, seed=8)
    assert est.mean <= bound + 4 * est.std_error + 1e-12


def test_estimate_records_inputs(lm_config):
    est = estimate("rate", Scheme.EDS, lm_config, n=5000, seed=77)
    assert est.n_samples == 5000
    assert est.seed == 77
    assert est.std_error > 0
