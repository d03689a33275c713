import math

import numpy as np
import pytest

import optospec

FIG = dict(g1=0.8, g2=0.05, kappa=0.02)


def test_model_params_validation():
    p = optospec.ModelParams(**FIG)
    assert "g2=0.05" in repr(p)
    with pytest.raises(ValueError):
        optospec.ModelParams(g1=0.8, g2=-0.3, kappa=0.02)
    with pytest.raises(ValueError):
        optospec.ModelParams(kappa=0.0)


def test_closed_forms():
    p = optospec.ModelParams(**FIG)
    r1 = math.log(4 * 0.05 + 1) / 4
    assert optospec.sub_peak_spacing(p) == pytest.approx(math.exp(2 * r1) - 1, rel=1e-12)
    assert optospec.sideband_location(0, 0, p) == pytest.approx(-optospec.energy_shift(p), abs=1e-12)
    t = optospec.transition_matrix(p, 30)
    assert t.shape == (30, 30)
    assert np.sum(t[:, 0] ** 2) == pytest.approx(1.0, abs=1e-8)


def test_emission_unit_integral_and_inference():
    p = optospec.ModelParams(**FIG)
    res = optospec.emission(p, "number:0", grid=(-8.0, 4.0, 0.002))
    assert res["deltas"].shape == res["values"].shape
    assert res["integral_check"]["ok"]
    assert abs(res["integral_check"]["total"] - 1.0) < 5e-3
    report = optospec.analyze(res["deltas"], res["values"], kappa=0.02)
    assert report["inferred"]["g2"] == pytest.approx(0.05, rel=0.02)
    assert report["inferred"]["g1"] == pytest.approx(0.8, rel=0.02)


def test_sideband_weights_sum_to_one():
    p = optospec.ModelParams(**FIG)
    lines = optospec.sideband_weights(p, "thermal:1")
    assert sum(line["weight"] for line in lines) == pytest.approx(1.0, abs=1e-6)
    assert any(line["location"] > 0 for line in lines)


def test_scattering_elastic_limit():
    p = optospec.ModelParams(g1=0.0, g2=0.0, kappa=0.02)
    res = optospec.scattering(p, "number:0", delta0=0.0, epsilon=2.0, grid=(-10.0, 10.0, 0.002), n_max=4)
    d, s = res["deltas"], res["values"]
    ref = 2.0 / math.pi / (d**2 + 4.0)
    assert np.max(np.abs(s - ref) / ref) < 1e-10


def test_usage_errors():
    p = optospec.ModelParams(**FIG)
    with pytest.raises(optospec.UsageError):
        optospec.emission(p, "bogus:1")
    with pytest.raises(ValueError):
        optospec.analyze([0.0, 1.0], [1.0], kappa=0.02)


def test_quick_verify():
    report = optospec.verify(time_domain=False)
    assert report["checks"]
    assert all(c["pass"] for c in report["checks"])
