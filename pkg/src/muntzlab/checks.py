"""
Named checks behind the command line. Each one turns a set of inputs into a
:class:`~muntzlab.reports.CheckReport`.
"""

import dataclasses
import logging
import math
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from .embeddings import (
    EmbeddingProblem,
    double_integral_condition,
    embedding_constant_search,
    embedding_ratio,
    moment_series,
    schur_kernel_sums,
)
from .errors import DegenerateFitError, DomainError, SpectrumError
from .inequalities import (
    bernstein_ratio,
    block_projection_ratio,
    decoupling_ratio,
    derivative_switch_ratio,
    derivative_translation_ratio,
    dilation_norm_check,
    flat_lower_ratio,
    kernel_ratio,
    newman_ratio,
    pointwise_block_ratio,
    random_block_polynomial,
    random_polynomial,
    sample_bracket,
)
from .measure import (
    CantorSelfSimilar,
    JacobiWeight,
    MeasureSpec,
    beta_class_fit,
    cantor_atoms,
    cantor_moment_table,
    classify,
    moment,
    tail,
)
from .poly import MuntzPolynomial, block_decompose
from .quad import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    beta_asymptotic_check,
    beta_function,
    integrate_weighted,
)
from .reports import Bracket, CheckReport, CsvRow
from .spectrum import DEFAULT_RATIO_FLOOR, BlockSpectrum, generate_lacunary
from .typing import FloatArray, Verdict


__all__ = (
    "ALL_CHECKS",
    "CHECKS",
    "PROPERTY_SUITES",
    "CheckInputs",
    "bernstein_check",
    "cantor_check",
    "classify_check",
    "decoupling_check",
    "embedding_check",
    "kernel_check",
    "quadrature_check",
    "ratios_check",
    "schur_check",
    "spectrum_check",
    "spectrum_rejected",
)

log = logging.getLogger(__name__)

STABILITY_TOL = 0.05
CLASSIFY_GRID = tuple(float(e) for e in np.logspace(-12.0, 0.0, 37))
KERNEL_POINTS = 65


def default_spectrum() -> BlockSpectrum:
    return generate_lacunary(1.0, 2.0, 12)


@dataclasses.dataclass(frozen=True)
class CheckInputs:
    """
    Everything a check may read. Absent spectra and measures fall back to
    the geometric spectrum ``2 ** k`` (12 terms) and ``nu_(beta - 1)``.
    """

    spectrum: Optional[BlockSpectrum] = None
    measure: Optional[MeasureSpec] = None
    digests: Dict[str, str] = dataclasses.field(default_factory=dict)
    p: float = 2.0
    beta: float = 0.5
    alpha: Optional[float] = None
    q_exp: Optional[float] = None
    exponents: Tuple[float, ...] = ()
    i_max: int = 12
    trials: int = 200
    seed: int = 0
    cfg: QuadratureConfig = DEFAULT_CONFIG

    @property
    def resolved_spectrum(self) -> BlockSpectrum:
        return default_spectrum() if self.spectrum is None else self.spectrum

    @property
    def resolved_measure(self) -> MeasureSpec:
        if self.measure is None:
            return JacobiWeight(self.beta - 1.0)
        return self.measure


def _describe_measure(mu: MeasureSpec) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"kind": type(mu).__name__}
    for key, value in dataclasses.asdict(mu).items():
        payload[key] = list(value) if isinstance(value, tuple) else value
    return payload


def _finite_or_none(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


def _describe_spectrum(s: BlockSpectrum) -> Dict[str, Any]:
    return {
        "length": len(s),
        "blocks": s.block_count,
        "ratio_lower": _finite_or_none(s.ratio_lower),
        "block_cap": s.block_cap,
        "first": s.exponents[0],
        "last": s.exponents[-1],
    }


def _report(
    name: str,
    inputs: CheckInputs,
    parameters: Dict[str, Any],
    results: Dict[str, Any],
    passed: bool,
    rows: List[CsvRow],
    *,
    seeded: bool = False,
) -> CheckReport:
    from . import __version__

    return CheckReport(
        check_name=name,
        input_digests=dict(sorted(inputs.digests.items())),
        parameters=parameters,
        results=results,
        passed=passed,
        seed=inputs.seed if seeded else None,
        tool_version=__version__,
        rows=tuple(rows),
    )


def _bracket_results(small: Bracket, large: Bracket) -> Dict[str, Any]:
    drift = small.drift(large)
    return {
        "bracket": large.as_dict(),
        "half_sample_bracket": small.as_dict(),
        "drift": drift,
        "stable": drift < STABILITY_TOL,
    }


def _bracket_passed(large: Bracket, results: Dict[str, Any]) -> bool:
    """
    Positive finite bracket whose endpoints held still when the sample doubled.
    """
    return large.low > 0.0 and math.isfinite(large.high) and bool(results["stable"])


def _bracket_rows(
    bracket: Bracket, param1: Optional[float], param2: Optional[float]
) -> List[CsvRow]:
    return [
        CsvRow(param1, param2, bracket.low, f"low:trial={bracket.low_trial}"),
        CsvRow(param1, param2, bracket.high, f"high:trial={bracket.high_trial}"),
    ]


def _scan(
    statistic: Callable[[MuntzPolynomial], float],
    sampler: Callable[[np.random.Generator], MuntzPolynomial],
    inputs: CheckInputs,
) -> Tuple[Bracket, Bracket]:
    half = max(1, inputs.trials // 2)
    return (
        sample_bracket(statistic, sampler, half, inputs.seed),
        sample_bracket(statistic, sampler, inputs.trials, inputs.seed),
    )


def spectrum_check(inputs: CheckInputs) -> CheckReport:
    s = inputs.resolved_spectrum
    ratios = [
        nxt[0] / prev[-1] for prev, nxt in zip(s.blocks[:-1], s.blocks[1:])
    ]
    rows = [
        CsvRow(k + 1, len(s.blocks[k + 1]), ratio, "inter-block ratio")
        for k, ratio in enumerate(ratios)
    ]
    return _report(
        "spectrum",
        inputs,
        {"spectrum": _describe_spectrum(s)},
        {
            "q": _finite_or_none(s.ratio_lower),
            "N": s.block_cap,
            "block_sizes": [len(block) for block in s.blocks],
            "muntz_sum": s.muntz_sum,
        },
        True,
        rows,
    )


def spectrum_rejected(exc: SpectrumError, inputs: CheckInputs) -> CheckReport:
    """
    Report for a spectrum file that failed validation.
    """
    return _report(
        "spectrum",
        inputs,
        {},
        {"constraint": exc.constraint, "index": exc.index, "message": exc.message},
        False,
        [],
    )


def decoupling_check(inputs: CheckInputs) -> CheckReport:
    s = inputs.resolved_spectrum
    p = inputs.p
    alpha = 0.0 if inputs.alpha is None else inputs.alpha
    cfg = inputs.cfg

    def statistic(f: MuntzPolynomial) -> float:
        return decoupling_ratio(block_decompose(f, s), p, alpha, cfg).ratio

    small, large = _scan(statistic, lambda rng: random_polynomial(s, rng), inputs)
    results = _bracket_results(small, large)
    return _report(
        "decoupling",
        inputs,
        {"spectrum": _describe_spectrum(s), "p": p, "alpha": alpha, "trials": inputs.trials},
        results,
        _bracket_passed(large, results),
        _bracket_rows(large, p, alpha),
        seeded=True,
    )


def kernel_check(inputs: CheckInputs) -> CheckReport:
    s = inputs.resolved_spectrum
    alpha = 1.0 if inputs.alpha is None else inputs.alpha
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive for the kernel estimate, got {alpha!r}")
    upper = min(1.0 - 1e-8, 1.0 - 10.0 / s.exponents[-1])
    grid = np.linspace(0.5, max(upper, 0.5), KERNEL_POINTS)
    extremes = kernel_ratio(s, alpha, grid)
    return _report(
        "kernel",
        inputs,
        {"spectrum": _describe_spectrum(s), "alpha": alpha, "t_max": float(grid[-1])},
        {**extremes._asdict(), "spread": extremes.high / extremes.low},
        extremes.low > 0.0 and math.isfinite(extremes.high),
        [
            CsvRow(alpha, extremes.low_at, extremes.low, "low"),
            CsvRow(alpha, extremes.high_at, extremes.high, "high"),
        ],
    )


def bernstein_check(inputs: CheckInputs) -> CheckReport:
    s = inputs.resolved_spectrum
    mu = inputs.resolved_measure
    p, beta, cfg = inputs.p, inputs.beta, inputs.cfg
    q_exp = p if inputs.q_exp is None else inputs.q_exp
    alpha = 0.0 if inputs.alpha is None else inputs.alpha

    def statistic(f: MuntzPolynomial) -> float:
        return bernstein_ratio(f, p, q_exp, alpha, mu, beta, cfg).ratio

    small, large = _scan(statistic, lambda rng: random_block_polynomial(s, rng), inputs)
    results = _bracket_results(small, large)
    return _report(
        "bernstein",
        inputs,
        {
            "spectrum": _describe_spectrum(s),
            "measure": _describe_measure(mu),
            "p": p,
            "q": q_exp,
            "alpha": alpha,
            "beta": beta,
            "trials": inputs.trials,
        },
        results,
        _bracket_passed(large, results),
        _bracket_rows(large, p, q_exp),
        seeded=True,
    )


def _verdicts(
    s: BlockSpectrum, mu: MeasureSpec, p: float, beta: float, cfg: QuadratureConfig
) -> Tuple[Dict[str, Any], bool]:
    """
    Summability and double-integral verdicts; coherent unless one converges
    while the other diverges.
    """
    if not 0.0 < beta < 1.0:
        return {}, True
    problem = EmbeddingProblem(spectrum=s, mu=mu, p=p, beta=beta)
    series = moment_series(problem, len(s), cfg)
    integral = double_integral_condition(mu, beta, cfg=cfg)
    decided = {series.verdict, integral.verdict} - {Verdict.inconclusive}
    return (
        {"moment_series": series.as_dict(), "double_integral": integral.as_dict()},
        len(decided) <= 1,
    )


def _verdict_rows(results: Dict[str, Any]) -> List[CsvRow]:
    rows: List[CsvRow] = []
    for name in ("moment_series", "double_integral"):
        if name in results:
            diagnosis: Dict[str, Any] = results[name]
            for index, value in enumerate(diagnosis["partial_sums"]):
                rows.append(CsvRow(name, index, value, diagnosis["verdict"]))
    return rows


def embedding_check(inputs: CheckInputs) -> CheckReport:
    s = inputs.resolved_spectrum
    mu = inputs.resolved_measure
    problem = EmbeddingProblem(
        spectrum=s, mu=mu, p=inputs.p, beta=inputs.beta, rhs_weight_alpha=inputs.alpha
    )
    rows = [
        CsvRow(
            k,
            lam,
            embedding_ratio(MuntzPolynomial.monomial(lam), problem, inputs.cfg).ratio,
            "monomial",
        )
        for k, lam in enumerate(s.exponents)
    ]
    search = embedding_constant_search(
        problem, inputs.trials, inputs.seed, ascent_steps=10, cfg=inputs.cfg
    )
    verdicts, coherent = _verdicts(s, mu, inputs.p, inputs.beta, inputs.cfg)
    return _report(
        "embedding",
        inputs,
        {
            "spectrum": _describe_spectrum(s),
            "measure": _describe_measure(mu),
            "p": inputs.p,
            "beta": inputs.beta,
            "rhs_alpha": inputs.alpha,
            "trials": inputs.trials,
        },
        {"search": search.as_dict(), **verdicts, "coherent": coherent},
        coherent,
        rows + _verdict_rows(verdicts),
        seeded=True,
    )


def classify_check(inputs: CheckInputs) -> CheckReport:
    s = inputs.resolved_spectrum
    mu = inputs.resolved_measure
    beta = inputs.beta
    membership = classify(mu, beta, CLASSIFY_GRID)
    fit: Optional[Dict[str, Any]]
    try:
        fitted = beta_class_fit(mu, CLASSIFY_GRID, beta)
    except DegenerateFitError as exc:
        log.info("no tail fit: %s", exc)
        fit = None
    else:
        fit = {
            "beta_hat": fitted.beta_hat,
            "constant_hat": fitted.constant_hat,
            "sup_ratio": fitted.sup_ratio,
        }
    verdicts, coherent = _verdicts(s, mu, inputs.p, beta, inputs.cfg)
    rows = [
        CsvRow(eps, beta, ratio, "tail/eps^beta")
        for eps, ratio in zip(membership.grid, membership.ratios)
    ]
    return _report(
        "classify",
        inputs,
        {
            "spectrum": _describe_spectrum(s),
            "measure": _describe_measure(mu),
            "p": inputs.p,
            "beta": beta,
        },
        {
            "membership": {
                "sup_ratio": membership.sup_ratio,
                "fine_ratio": membership.fine_ratio,
                "coarse_ratio": membership.coarse_ratio,
                "bounded": membership.bounded,
            },
            "fit": fit,
            **verdicts,
            "coherent": coherent,
        },
        coherent,
        rows + _verdict_rows(verdicts),
    )


def schur_check(inputs: CheckInputs) -> CheckReport:
    i_max = inputs.i_max
    exponents = inputs.exponents or (inputs.p,)
    s = (
        generate_lacunary(1.0, 2.0, 4 * i_max + 4)
        if inputs.spectrum is None
        else inputs.spectrum
    )
    if len(s) <= 2 * i_max:
        raise DomainError(f"spectrum needs more than {2 * i_max} exponents")
    coarse = schur_kernel_sums(s, exponents, inputs.beta, i_max)
    fine = schur_kernel_sums(s, exponents, inputs.beta, 2 * i_max)
    drift = max(abs(b - a) for a, b in zip(coarse.by_position, fine.by_position))
    monotone = all(b >= a - 1e-12 for a, b in zip(coarse.by_position, fine.by_position))
    rows = [
        CsvRow(level, position, value, "sup kernel sum")
        for level, sums in ((i_max, coarse), (2 * i_max, fine))
        for position, value in enumerate(sums.by_position)
    ]
    return _report(
        "schur",
        inputs,
        {
            "spectrum": _describe_spectrum(s),
            "exponents": list(exponents),
            "beta": inputs.beta,
            "i_max": i_max,
        },
        {
            "row": fine.row,
            "col": fine.col,
            "by_position": list(fine.by_position),
            "coarse_by_position": list(coarse.by_position),
            "drift": drift,
            "monotone": monotone,
        },
        monotone and all(math.isfinite(v) for v in fine.by_position),
        rows,
    )


ORACLE_EXPONENTS = tuple(float(x) for x in np.geomspace(0.5, 1e4, 20))
ORACLE_ALPHAS = (-0.5, 0.0, 1.0, 2.5)
ORACLE_TOL = 1e-8
ASYMPTOTIC_BETAS = (0.5, 1.0, 2.0)
ASYMPTOTIC_X = 1e4
ASYMPTOTIC_TOL = 0.02
CANTOR_TAIL_LEVELS = 15
CANTOR_MOMENT_ORDER = 10
CANTOR_ATOM_DEPTH = 12
CANTOR_FIT_GRID = tuple(float(e) for e in np.logspace(-15.0, 0.0, 61))
DILATION_RHOS = (0.5, 0.9, 0.99)
DILATION_SLACK = 1e-9


def _monomial(lam: float) -> Callable[[FloatArray], FloatArray]:
    def g(t: FloatArray) -> FloatArray:
        return np.asarray(t, dtype=np.float64) ** lam

    return g


def quadrature_check(inputs: CheckInputs) -> CheckReport:
    """
    Double-exponential integrals of ``t ** lam (1 - t) ** alpha`` against the
    Beta closed form, and the Stirling limits of Beta and Jacobi moments.
    """
    cfg = inputs.cfg
    tolerance = max(ORACLE_TOL, 10.0 * cfg.rel_tol)
    rows: List[CsvRow] = []
    worst, worst_at = 0.0, (math.nan, math.nan)
    for alpha in ORACLE_ALPHAS:
        for lam in ORACLE_EXPONENTS:
            exact = beta_function(lam + 1.0, alpha + 1.0)
            error = abs(integrate_weighted(_monomial(lam), alpha, cfg) - exact) / exact
            rows.append(CsvRow(lam, alpha, error, "relative error"))
            if error > worst:
                worst, worst_at = error, (lam, alpha)

    beta_limits: Dict[str, float] = {}
    jacobi_limits: Dict[str, float] = {}
    for beta in ASYMPTOTIC_BETAS:
        ((_, ratio),) = beta_asymptotic_check(beta, [ASYMPTOTIC_X])
        beta_limits[f"{beta:g}"] = ratio
        scaled = moment(JacobiWeight(beta - 1.0), ASYMPTOTIC_X, cfg) * math.exp(
            beta * math.log(ASYMPTOTIC_X) - math.lgamma(beta)
        )
        jacobi_limits[f"{beta:g}"] = scaled
        rows.append(CsvRow(ASYMPTOTIC_X, beta, ratio, "beta limit"))
        rows.append(CsvRow(ASYMPTOTIC_X, beta, scaled, "jacobi moment limit"))
    exact_one = max(
        abs(ratio - 1.0)
        for _, ratio in beta_asymptotic_check(1.0, [10.0, 1e3, 1e4, 1e6])
    )
    limits_ok = all(
        abs(value - 1.0) < ASYMPTOTIC_TOL
        for value in (*beta_limits.values(), *jacobi_limits.values())
    )

    return _report(
        "quadrature",
        inputs,
        {
            "exponents": list(ORACLE_EXPONENTS),
            "alphas": list(ORACLE_ALPHAS),
            "tolerance": tolerance,
            "x": ASYMPTOTIC_X,
        },
        {
            "worst_relative_error": worst,
            "worst_at": {"lambda": worst_at[0], "alpha": worst_at[1]},
            "beta_limits": beta_limits,
            "jacobi_moment_limits": jacobi_limits,
            "beta_one_deviation": exact_one,
        },
        worst < tolerance and limits_ok and exact_one < 1e-12,
        rows,
    )


def cantor_check(inputs: CheckInputs) -> CheckReport:
    """
    Exact tails at the construction scales, the moment recursion against
    barycentre atoms, and the fitted tail exponent ``log 2 / log(1 / r)``.
    Runs on the ``--measure`` Cantor measure, else on the middle-third one.
    """
    mu = (
        inputs.measure
        if isinstance(inputs.measure, CantorSelfSimilar)
        else CantorSelfSimilar(1.0 / 3.0)
    )
    rows: List[CsvRow] = []
    tail_error = 0.0
    for m in range(CANTOR_TAIL_LEVELS + 1):
        value = tail(mu, mu.r**m)
        tail_error = max(tail_error, abs(value * 2.0**m - 1.0))
        rows.append(CsvRow(m, mu.r**m, value, "tail"))

    table = cantor_moment_table(mu.r, CANTOR_MOMENT_ORDER)
    points, weight = cantor_atoms(mu.r, CANTOR_ATOM_DEPTH)
    approximations = [
        float(np.sum(points**n)) * weight for n in range(CANTOR_MOMENT_ORDER + 1)
    ]
    moment_error = max(abs(float(a) - b) for a, b in zip(table, approximations))
    rows.extend(
        CsvRow(n, None, float(value), "moment") for n, value in enumerate(table)
    )

    expected = math.log(2.0) / math.log(1.0 / mu.r)
    fit = beta_class_fit(mu, CANTOR_FIT_GRID)

    return _report(
        "cantor",
        inputs,
        {
            "measure": _describe_measure(mu),
            "tail_levels": CANTOR_TAIL_LEVELS,
            "moment_order": CANTOR_MOMENT_ORDER,
            "atom_depth": CANTOR_ATOM_DEPTH,
        },
        {
            "tail_relative_error": tail_error,
            "moment_error": moment_error,
            "beta_expected": expected,
            "beta_hat": fit.beta_hat,
        },
        tail_error < 1e-12
        and moment_error < 1e-9
        and abs(fit.beta_hat - expected) < 0.01,
        rows,
    )


def _bounded_spectrum(s: BlockSpectrum) -> Optional[BlockSpectrum]:
    """
    The blocks whose exponents are all at least 1, where derivatives stay
    bounded; None when there are none.
    """
    first = next((k for k, block in enumerate(s.blocks) if block[0] >= 1.0), None)
    if first is None:
        return None
    if first == 0:
        return s
    start = s.block_starts[first]
    return BlockSpectrum.from_exponents(
        s.exponents[start:],
        [index - start for index in s.block_starts[first:]],
        block_cap=s.block_cap,
        ratio_floor=min(DEFAULT_RATIO_FLOOR, s.ratio_lower),
    )


Statistic = Callable[[MuntzPolynomial], float]
Sampler = Callable[[np.random.Generator], MuntzPolynomial]


def ratios_check(inputs: CheckInputs) -> CheckReport:
    """
    Seeded brackets for the pointwise, Newman, flat-lower, block projection
    and derivative ratios, each compared with its half-sample bracket, and
    the dilation bound (never above 1) over the same draws.
    """
    s = inputs.resolved_spectrum
    p, cfg = inputs.p, inputs.cfg
    alpha = 0.0 if inputs.alpha is None else inputs.alpha
    middle = s.block_count // 2
    anchor = s.anchors[middle]
    weight = JacobiWeight(alpha)

    def spread(rng: np.random.Generator) -> MuntzPolynomial:
        return random_polynomial(s, rng)

    def one_block(rng: np.random.Generator) -> MuntzPolynomial:
        return random_block_polynomial(s, rng)

    def dilation(f: MuntzPolynomial) -> float:
        return max(
            dilation_norm_check(f, rho, p, anchor, cfg).ratio for rho in DILATION_RHOS
        )

    statistics: Dict[str, Tuple[Statistic, Sampler]] = {
        "pointwise": (lambda f: pointwise_block_ratio(f, s).ratio, one_block),
        "block_projection": (
            lambda f: block_projection_ratio(f, s, middle, p, cfg).ratio,
            spread,
        ),
    }
    smooth = _bounded_spectrum(s)
    if smooth is None:
        log.warning("no block with exponents >= 1; derivative ratios skipped")
    else:

        def smooth_spread(rng: np.random.Generator) -> MuntzPolynomial:
            return random_polynomial(smooth, rng)

        def smooth_block(rng: np.random.Generator) -> MuntzPolynomial:
            return random_block_polynomial(smooth, rng)

        statistics.update(
            {
                "newman": (lambda f: newman_ratio(f).ratio, smooth_spread),
                "flat_lower": (
                    lambda f: flat_lower_ratio(f, p, alpha, cfg).ratio,
                    smooth_block,
                ),
                "derivative_switch": (
                    lambda f: derivative_switch_ratio(f, p, alpha, cfg).ratio,
                    smooth_spread,
                ),
                "derivative_translation": (
                    lambda f: derivative_translation_ratio(f, p, weight, cfg).ratio,
                    smooth_spread,
                ),
            }
        )

    results: Dict[str, Any] = {}
    rows: List[CsvRow] = []
    passed = True
    for name, (statistic, sampler) in statistics.items():
        small, large = _scan(statistic, sampler, inputs)
        entry = _bracket_results(small, large)
        results[name] = entry
        passed = passed and _bracket_passed(large, entry)
        rows.extend(
            row._replace(witness=f"{name}:{row.witness}")
            for row in _bracket_rows(large, p, alpha)
        )

    dilated = sample_bracket(dilation, spread, inputs.trials, inputs.seed)
    bounded = dilated.high <= 1.0 + DILATION_SLACK
    results["dilation"] = {"bracket": dilated.as_dict(), "bounded": bounded}
    passed = passed and bounded
    rows.extend(
        row._replace(witness=f"dilation:{row.witness}")
        for row in _bracket_rows(dilated, p, anchor)
    )

    return _report(
        "ratios",
        inputs,
        {
            "spectrum": _describe_spectrum(s),
            "p": p,
            "alpha": alpha,
            "block": middle,
            "rhos": list(DILATION_RHOS),
            "trials": inputs.trials,
        },
        results,
        passed,
        rows,
        seeded=True,
    )


CHECKS: Dict[str, Callable[[CheckInputs], CheckReport]] = {
    "spectrum": spectrum_check,
    "decoupling": decoupling_check,
    "kernel": kernel_check,
    "bernstein": bernstein_check,
    "embedding": embedding_check,
    "classify": classify_check,
    "schur": schur_check,
}

# Property suites that only run under ``all``.
PROPERTY_SUITES: Dict[str, Callable[[CheckInputs], CheckReport]] = {
    "quadrature": quadrature_check,
    "cantor": cantor_check,
    "ratios": ratios_check,
}

ALL_CHECKS: Dict[str, Callable[[CheckInputs], CheckReport]] = {
    **CHECKS,
    **PROPERTY_SUITES,
}
