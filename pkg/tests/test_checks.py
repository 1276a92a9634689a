"""
Named checks: pass criteria and the property suites run by ``all``.
"""

import math
from typing import Any, Callable, List

import pytest

from muntzlab import (
    BlockSpectrum,
    Bracket,
    CantorSelfSimilar,
    checks,
    generate_lacunary,
    generate_quasi_lacunary,
)
from muntzlab.checks import (
    ALL_CHECKS,
    CHECKS,
    PROPERTY_SUITES,
    CheckInputs,
    bernstein_check,
    cantor_check,
    decoupling_check,
    quadrature_check,
    ratios_check,
    spectrum_check,
)


FakeScan = Callable[..., Bracket]


def scan_with(half_high: float, full_high: float) -> FakeScan:
    """
    A scan whose upper endpoint depends only on the sample count.
    """

    def fake(statistic: Any, sampler: Any, samples: int, seed: int) -> Bracket:
        high = half_high if samples < 10 else full_high
        return Bracket(0.5, high, 0, samples - 1, samples, seed)

    return fake


@pytest.fixture
def small_inputs() -> CheckInputs:
    return CheckInputs(spectrum=generate_lacunary(1.0, 2.0, 4), trials=10, seed=5)


@pytest.mark.parametrize("check", (decoupling_check, bernstein_check), ids=("decoupling", "bernstein"))
def test_unstable_bracket_fails(
    check: Callable[[CheckInputs], Any],
    small_inputs: CheckInputs,
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    monkeypatch.setattr(checks, "sample_bracket", scan_with(2.0, 3.0))

    report = check(small_inputs)

    assert not report.results["stable"]
    assert report.results["drift"] == pytest.approx(0.5)
    assert not report.passed


@pytest.mark.parametrize("check", (decoupling_check, bernstein_check), ids=("decoupling", "bernstein"))
def test_stable_bracket_passes(
    check: Callable[[CheckInputs], Any],
    small_inputs: CheckInputs,
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    monkeypatch.setattr(checks, "sample_bracket", scan_with(2.0, 2.01))

    report = check(small_inputs)

    assert report.results["stable"]
    assert report.passed
    assert report.results["half_sample_bracket"]["samples"] == 5
    assert report.results["bracket"]["samples"] == 10


def test_unbounded_bracket_fails(
    small_inputs: CheckInputs, monkeypatch: pytest.MonkeyPatch
) -> None:
    monkeypatch.setattr(checks, "sample_bracket", scan_with(math.inf, math.inf))

    assert not decoupling_check(small_inputs).passed


def test_single_block_spectrum_has_null_q() -> None:
    report = spectrum_check(CheckInputs(spectrum=BlockSpectrum.from_exponents([2.0])))

    assert report.results["q"] is None
    assert report.parameters["spectrum"]["ratio_lower"] is None
    assert "Infinity" not in report.to_json()


def test_suites_only_run_under_all() -> None:
    assert set(PROPERTY_SUITES) == {"quadrature", "cantor", "ratios"}
    assert not set(PROPERTY_SUITES) & set(CHECKS)
    assert list(ALL_CHECKS) == [*CHECKS, *PROPERTY_SUITES]


def test_quadrature_suite() -> None:
    report = quadrature_check(CheckInputs())

    assert report.passed
    assert report.results["worst_relative_error"] < 1e-8
    for value in report.results["jacobi_moment_limits"].values():
        assert value == pytest.approx(1.0, abs=0.02)
    assert report.results["beta_one_deviation"] < 1e-12
    assert report.seed is None


def test_cantor_suite(cantor: CantorSelfSimilar) -> None:
    report = cantor_check(CheckInputs(measure=cantor))

    assert report.passed
    assert report.results["tail_relative_error"] < 1e-12
    assert report.results["moment_error"] < 1e-9
    assert report.results["beta_expected"] == pytest.approx(math.log(2.0) / math.log(3.0))


def test_cantor_suite_uses_given_ratio() -> None:
    report = cantor_check(CheckInputs(measure=CantorSelfSimilar(0.25)))

    assert report.parameters["measure"]["r"] == 0.25
    assert report.results["tail_relative_error"] < 1e-12
    assert report.results["beta_expected"] == pytest.approx(0.5)
    assert report.results["beta_hat"] == pytest.approx(0.5, abs=0.05)


def test_cantor_suite_defaults_to_middle_third() -> None:
    report = cantor_check(CheckInputs())

    assert report.parameters["measure"]["r"] == pytest.approx(1.0 / 3.0)


def test_ratios_suite(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(checks, "sample_bracket", scan_with(0.9, 0.9))

    report = ratios_check(CheckInputs(spectrum=generate_lacunary(0.5, 2.0, 6), trials=10))

    names: List[str] = [
        "pointwise",
        "block_projection",
        "newman",
        "flat_lower",
        "derivative_switch",
        "derivative_translation",
    ]
    assert all(report.results[name]["stable"] for name in names)
    assert report.results["dilation"]["bounded"]
    assert report.passed
    witnesses = {row.witness.split(":")[0] for row in report.rows}
    assert witnesses == {*names, "dilation"}


def test_ratios_suite_dilation_above_one_fails(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(checks, "sample_bracket", scan_with(1.5, 1.5))

    report = ratios_check(CheckInputs(spectrum=generate_lacunary(1.0, 2.0, 4), trials=10))

    assert not report.results["dilation"]["bounded"]
    assert not report.passed


def test_ratios_suite_without_smooth_blocks(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(checks, "sample_bracket", scan_with(0.9, 0.9))

    report = ratios_check(CheckInputs(spectrum=generate_lacunary(0.1, 2.0, 3), trials=10))

    assert "newman" not in report.results
    assert report.results["pointwise"]["stable"]


@pytest.mark.slow
def test_ratios_suite_sampled() -> None:
    report = ratios_check(CheckInputs(spectrum=generate_lacunary(1.0, 2.0, 5), trials=6, seed=2))

    assert report.seed == 2
    assert report.results["dilation"]["bounded"]
    assert report.results["dilation"]["bracket"]["high"] <= 1.0 + 1e-9
    for name in ("pointwise", "newman", "derivative_switch"):
        assert report.results[name]["bracket"]["low"] > 0.0


@pytest.mark.slow
@pytest.mark.parametrize("p", (1.0, 2.0, 3.5), ids=str)
@pytest.mark.parametrize("alpha", (-0.5, 0.0, 1.0), ids=str)
def test_decoupling_bracket_settles(p: float, alpha: float) -> None:
    report = decoupling_check(CheckInputs(p=p, alpha=alpha, trials=1000, seed=1))

    assert report.parameters["spectrum"]["blocks"] == 12
    assert report.results["bracket"]["low"] > 0.0
    assert report.results["drift"] < 0.05
    assert report.passed


@pytest.mark.slow
def test_ratio_brackets_settle() -> None:
    s = generate_quasi_lacunary([1.0, 1.5], 4.0, 2)
    inputs = CheckInputs(spectrum=s, trials=1000, seed=4)

    report = ratios_check(inputs)

    for name in (
        "pointwise",
        "block_projection",
        "newman",
        "flat_lower",
        "derivative_switch",
        "derivative_translation",
    ):
        assert report.results[name]["drift"] < 0.05, name
    assert report.results["dilation"]["bracket"]["high"] <= 1.0 + 1e-9
    assert report.results["dilation"]["bracket"]["samples"] == 1000
    assert bernstein_check(inputs).results["drift"] < 0.05
