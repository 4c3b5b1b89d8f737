"""Suite runner: determinism, corrupt-hook negative path, polynomial emission."""

from fractions import Fraction as F

import pytest

from vertexkz import MultiPoly
from vertexkz.report import RunConfig, emit_polynomial, parallel_map, run_suites


def test_default_run_passes():
    report = run_suites(RunConfig(L_min=1, L_max=2, points_per_test=3))
    assert report["all_pass"]
    assert report["schema"] == 1
    assert report["orientation"] == "DW-standard"
    names = [s["suite"] for s in report["suites"]]
    assert names == list(RunConfig().suites)
    assert report["calibration"]["1"] == "1"
    assert report["calibration"]["2"] == "1"


def test_reports_are_deterministic_modulo_timings():
    config = RunConfig(L_min=1, L_max=2, points_per_test=2)
    first = run_suites(config)
    second = run_suites(config)
    first.pop("timings")
    second.pop("timings")
    assert first == second


def test_corrupt_weights_fail_and_partial_report_survives():
    config = RunConfig(
        L_min=2, L_max=2, points_per_test=2, corrupt_weights=True,
        suites=("functional", "kz"),
    )
    report = run_suites(config)
    assert not report["all_pass"]
    assert "FAILED" in report["orientation_note"]
    functional = next(s for s in report["suites"] if s["suite"] == "functional")
    assert not functional["pass"]
    failing = [c for c in functional["checks"] if not c["pass"]]
    assert failing and all("residual" in c for c in failing if "residual" in c)


def test_threads_parameter_does_not_change_results():
    base = run_suites(RunConfig(L_min=2, L_max=2, points_per_test=2, suites=("functional",)))
    threaded = run_suites(
        RunConfig(L_min=2, L_max=2, points_per_test=2, suites=("functional",), threads=4)
    )
    base.pop("timings")
    threaded.pop("timings")
    base["config"].pop("threads")
    threaded["config"].pop("threads")
    assert base == threaded


def test_parallel_map_preserves_order():
    items = list(range(20))
    assert parallel_map(lambda x: x * x, items, 1) == [x * x for x in items]
    assert parallel_map(lambda x: x * x, items, 4) == [x * x for x in items]


def test_env_threads_parsing(monkeypatch):
    from vertexkz.report import env_threads

    monkeypatch.setenv("VERTEXKZ_THREADS", "3")
    assert env_threads() == 3
    monkeypatch.setenv("VERTEXKZ_THREADS", "not-a-number")
    assert env_threads() == 1
    monkeypatch.setenv("VERTEXKZ_THREADS", "0")
    assert env_threads() == 1


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(L_min=0, L_max=2)
    with pytest.raises(ValueError):
        RunConfig(L_min=3, L_max=2)
    with pytest.raises(ValueError):
        RunConfig(L_min=1, L_max=9, suites=("oracle",))
    with pytest.raises(ValueError):
        RunConfig(suites=("nonsense",))
    with pytest.raises(ValueError):
        RunConfig(L_min=1, L_max=2, mu=(F(1),))
    with pytest.raises(ValueError):
        RunConfig(points_per_test=0)


def test_emit_polynomial_round_trip_and_route_ratio():
    config = RunConfig(L_min=2, L_max=2)
    doc_oracle = emit_polynomial(config, via="oracle")
    doc_det = emit_polynomial(config, via="det")
    poly_oracle = MultiPoly.from_json_dict(doc_oracle["polynomial"])
    poly_det = MultiPoly.from_json_dict(doc_det["polynomial"])
    assert poly_oracle == MultiPoly.from_json_dict(poly_oracle.to_json_dict())
    # coefficient-wise ratio between the two routes is one constant (here 1)
    ratios = {
        poly_det.terms[key] / coeff for key, coeff in poly_oracle.terms.items()
    }
    assert ratios == {F(1)}


def test_emit_polynomial_L1_is_the_constant_eta():
    doc = emit_polynomial(RunConfig(L_min=1, L_max=1), via="oracle")
    assert doc["polynomial"]["terms"] == [{"exponents": [0], "coeff": "1/3"}]


def test_emit_polynomial_budget():
    with pytest.raises(ValueError, match="L <= 6"):
        emit_polynomial(RunConfig(L_min=7, L_max=7), via="oracle")
    with pytest.raises(ValueError):
        emit_polynomial(RunConfig(L_min=1, L_max=1), via="elsewhere")
