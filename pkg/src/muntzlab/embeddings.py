"""
Carleson embeddings of Müntz spaces: the summability and double-integral
characterizations, extremal constant search and Schur kernel sums.
"""

import dataclasses
import functools
import logging
import math
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .errors import AccuracyError, DegenerateInputError, DomainError, PreconditionError
from .inequalities import trial_rng
from .measure import (
    JacobiWeight,
    MeasureSpec,
    integrate,
    lp_integrals,
    moment,
    resolvent,
    tail,
)
from .poly import MuntzPolynomial, block_decompose
from .quad import DEFAULT_CONFIG, QuadratureConfig, integrate_log_panels
from .reports import RatioReport, SeriesDiagnosis
from .spectrum import BlockSpectrum
from .typing import FloatArray, Verdict


__all__ = (
    "CONVERGES_BELOW",
    "DIVERGES_ABOVE",
    "DualProfile",
    "EmbeddingProblem",
    "SchurSums",
    "TailRow",
    "diagnose",
    "double_integral_condition",
    "dual_profile",
    "embedding_constant_search",
    "embedding_ratio",
    "moment_series",
    "multilinear_ratio",
    "reverse_embedding_check",
    "schur_kernel_sums",
    "tail_necessity_check",
)

log = logging.getLogger(__name__)

CONVERGES_BELOW = -0.1
DIVERGES_ABOVE = -0.02
CONJUGATE_TOL = 1e-12
DEFAULT_DELTAS = tuple(10.0**-k for k in range(1, 9))


@dataclasses.dataclass(frozen=True)
class EmbeddingProblem:
    """
    Is ``f -> f`` bounded from the Müntz space with exponent ``p / beta`` into
    ``L^p(mu)``?

    The right-hand side is Lebesgue measure, or ``nu_alpha`` when
    ``rhs_weight_alpha`` is given.

    :raises DomainError: ``p < beta`` while ``beta >= 1``, or ``p < 1``
    """

    spectrum: BlockSpectrum
    mu: MeasureSpec
    p: float
    beta: float
    rhs_weight_alpha: Optional[float] = None

    def __post_init__(self) -> None:
        if not self.beta > 0.0:
            raise DomainError(f"beta must be positive, got {self.beta!r}")
        if not self.p >= 1.0:
            raise DomainError(f"p must be at least 1, got {self.p!r}")
        if self.beta >= 1.0 and self.p < self.beta:
            raise DomainError(f"p must be at least beta={self.beta}, got {self.p!r}")
        if self.rhs_weight_alpha is not None and not self.rhs_weight_alpha > -1.0:
            raise DomainError(
                f"rhs_weight_alpha must exceed -1, got {self.rhs_weight_alpha!r}"
            )

    @property
    def source_exponent(self) -> float:
        return self.p / self.beta

    @property
    def rhs_measure(self) -> JacobiWeight:
        alpha = 0.0 if self.rhs_weight_alpha is None else self.rhs_weight_alpha
        return JacobiWeight(alpha)


class TailRow(NamedTuple):
    """
    One exponent of :func:`tail_necessity_check`: the tail at ``1 / lam``,
    the bound ``e ** p * moment(p lam)``, the sharper Chebyshev bound
    ``moment(p lam) * (1 - 1 / lam) ** (-p lam)`` and the target ``lam ** -beta``.
    """

    index: int
    lam: float
    tail: float
    moment_bound: float
    chebyshev_bound: float
    power: float


class SchurSums(NamedTuple):
    """
    Suprema of the kernel sums with one index held fixed, for every position
    of the fixed index. ``row`` fixes the first index and ``col`` the last.
    """

    row: float
    col: float
    by_position: Tuple[float, ...]


class DualProfile(NamedTuple):
    h1: MuntzPolynomial
    h2: MuntzPolynomial


def diagnose(
    terms: Sequence[float], positions: Optional[Sequence[float]] = None
) -> SeriesDiagnosis:
    """
    Verdict on a nonnegative series from the slope of ``log(term)`` over the
    tail half of the data.

    Slope below -0.1 per step converges, at or above -0.02 (terms no longer
    shrinking) diverges, anything between is inconclusive. Terms that
    underflowed to zero count as convergent.

    >>> diagnose([1.0, 1.0, 1.0, 1.0]).verdict.value
    'diverges'
    """
    values = np.asarray(terms, dtype=np.float64)
    if values.size < 2:
        raise DegenerateInputError("a verdict needs at least two terms")
    if np.any(values < 0.0):
        raise DomainError("series terms must be nonnegative")
    if positions is None:
        x = np.arange(values.size, dtype=np.float64)
    else:
        x = np.asarray(positions, dtype=np.float64)
    partial_sums = tuple(float(v) for v in np.cumsum(values))

    start = values.size // 2
    tail_x, tail_y = x[start:], values[start:]
    positive = tail_y > 0.0
    if int(np.count_nonzero(positive)) < 2:
        return SeriesDiagnosis(partial_sums, Verdict.converges, -math.inf)
    slope = float(np.polyfit(tail_x[positive], np.log(tail_y[positive]), 1)[0])
    if not positive[-1] or slope < CONVERGES_BELOW:
        verdict = Verdict.converges
    elif slope >= DIVERGES_ABOVE:
        verdict = Verdict.diverges
    else:
        verdict = Verdict.inconclusive

    return SeriesDiagnosis(partial_sums, verdict, slope)


def _require_subunit_beta(beta: float) -> None:
    if not 0.0 < beta < 1.0:
        raise DomainError(f"beta must lie in (0, 1), got {beta!r}")


def moment_series(
    problem: EmbeddingProblem, k: int, cfg: Optional[QuadratureConfig] = None
) -> SeriesDiagnosis:
    """
    Partial sums of ``lam ** (beta / (1 - beta)) * moment(mu, p lam) ** (1 / (1 - beta))``
    over the first ``k`` exponents, with a convergence verdict.

    :raises DomainError: beta outside (0, 1) or k out of range
    """
    _require_subunit_beta(problem.beta)
    if not 2 <= k <= len(problem.spectrum):
        raise DomainError(f"k must be in [2, {len(problem.spectrum)}], got {k!r}")
    beta, p = problem.beta, problem.p
    terms: List[float] = []
    for lam in problem.spectrum.exponents[:k]:
        value = moment(problem.mu, p * lam, cfg)
        if value <= 0.0:
            terms.append(0.0)
            continue
        terms.append(
            math.exp((beta * math.log(lam) + math.log(value)) / (1.0 - beta))
        )

    return diagnose(terms)


def double_integral_condition(
    mu: MeasureSpec,
    beta: float,
    delta_grid: Sequence[float] = DEFAULT_DELTAS,
    cfg: Optional[QuadratureConfig] = None,
) -> SeriesDiagnosis:
    """
    Truncated integrals ``I(delta)`` of ``resolvent(mu, rho) ** (1 / (1 - beta))``
    over ``[0, 1 - delta]``.

    The verdict reads the growth of the increments of ``I`` between
    consecutive deltas against ``log10(1 / delta)``: bounded integrals have
    geometrically shrinking increments.

    :raises DomainError: beta outside (0, 1) or a bad delta grid
    """
    _require_subunit_beta(beta)
    cfg = DEFAULT_CONFIG if cfg is None else cfg
    power = 1.0 / (1.0 - beta)

    def integrand(rho: FloatArray) -> FloatArray:
        return np.asarray(resolvent(mu, rho, cfg), dtype=np.float64) ** power

    panels = integrate_log_panels(integrand, delta_grid, cfg)
    if panels.size < 3:
        raise DomainError("delta grid needs at least three points")
    decades = -np.log10(np.asarray(delta_grid, dtype=np.float64))
    diagnosis = diagnose(panels[1:].tolist(), decades[1:].tolist())

    return diagnosis._replace(
        partial_sums=tuple(float(v) for v in np.cumsum(panels))
    )


def embedding_ratio(
    f: MuntzPolynomial,
    problem: EmbeddingProblem,
    cfg: Optional[QuadratureConfig] = None,
) -> RatioReport:
    """
    ``||f||_{L^p(mu)} / ||f||_{L^(p / beta)(rhs)}``.

    :raises DegenerateInputError: f is zero
    :raises MembershipError: f uses an exponent outside the spectrum
    """
    if not f:
        raise DegenerateInputError("the zero polynomial has no ratio")
    for exponent, _ in f.terms:
        problem.spectrum.index_of(exponent)
    p, q = problem.p, problem.source_exponent
    numerator = float(lp_integrals(problem.mu, (f,), p, cfg)[0]) ** (1.0 / p)
    denominator = float(lp_integrals(problem.rhs_measure, (f,), q, cfg)[0]) ** (1.0 / q)

    return RatioReport(
        ratio=numerator / denominator,
        witness=_describe(f),
        context={
            "p": p,
            "beta": problem.beta,
            "rhs_alpha": problem.rhs_weight_alpha,
        },
    )


def _describe(f: MuntzPolynomial) -> str:
    return ";".join(f"{c:.17g}*t^{e:.17g}" for e, c in f.terms)


def _ratio_or_none(
    coefficients: Sequence[float],
    problem: EmbeddingProblem,
    cfg: Optional[QuadratureConfig],
) -> Optional[float]:
    f = MuntzPolynomial.from_terms(zip(problem.spectrum.exponents, coefficients))
    try:
        return embedding_ratio(f, problem, cfg).ratio
    except (DegenerateInputError, AccuracyError) as exc:
        log.debug("candidate skipped: %s", exc)
        return None


def _ascend(
    coefficients: List[float],
    value: float,
    problem: EmbeddingProblem,
    steps: int,
    cfg: Optional[QuadratureConfig],
) -> Tuple[List[float], float]:
    step = 0.5
    for _ in range(steps):
        improved = False
        for index in range(len(coefficients)):
            if coefficients[index] == 0.0:
                continue
            for factor in (1.0 + step, 1.0 - step):
                trial = list(coefficients)
                trial[index] *= factor
                candidate = _ratio_or_none(trial, problem, cfg)
                if candidate is not None and candidate > value:
                    coefficients, value, improved = trial, candidate, True
        if not improved:
            step /= 2.0

    return coefficients, value


def embedding_constant_search(
    problem: EmbeddingProblem,
    trials: int,
    seed: int,
    ascent_steps: int = 20,
    cfg: Optional[QuadratureConfig] = None,
) -> RatioReport:
    """
    Lower estimate of the embedding constant.

    Candidates are every monomial of the spectrum, the balanced profile
    ``lam ** (beta / p)`` (which has comparable block contributions) and
    ``trials`` seeded Gaussian coefficient vectors. The best non-monomial
    candidate is refined by coordinate ascent with multiplicative moves
    ``x (1 +- step)``; the step starts at 0.5 and halves after a sweep
    without improvement.
    """
    if trials < 1:
        raise DomainError(f"trials must be at least 1, got {trials!r}")
    exponents = problem.spectrum.exponents
    best_value = -math.inf
    best: List[float] = []

    for index in range(len(exponents)):
        unit = [0.0] * len(exponents)
        unit[index] = 1.0
        value = _ratio_or_none(unit, problem, cfg)
        if value is not None and value > best_value:
            best, best_value = unit, value

    seed_value = -math.inf
    seed_vector: List[float] = []
    candidates: List[List[float]] = [
        [lam ** (problem.beta / problem.p) for lam in exponents]
    ]
    for trial in range(trials):
        candidates.append(trial_rng(seed, trial).standard_normal(len(exponents)).tolist())
    for coefficients in candidates:
        value = _ratio_or_none(coefficients, problem, cfg)
        if value is not None and value > seed_value:
            seed_vector, seed_value = coefficients, value

    if seed_vector:
        refined, refined_value = _ascend(seed_vector, seed_value, problem, ascent_steps, cfg)
        if refined_value > best_value:
            best, best_value = refined, refined_value
    if not best:
        raise DegenerateInputError("no candidate produced a ratio")

    witness = MuntzPolynomial.from_terms(zip(exponents, best))
    return RatioReport(
        ratio=best_value,
        witness=_describe(witness),
        context={
            "p": problem.p,
            "beta": problem.beta,
            "trials": trials,
            "seed": seed,
            "ascent_steps": ascent_steps,
        },
    )


def tail_necessity_check(
    problem: EmbeddingProblem,
    k_range: Sequence[int],
    cfg: Optional[QuadratureConfig] = None,
) -> List[TailRow]:
    """
    For every index in ``k_range``: ``mu([1 - 1 / lam, 1])`` next to the moment
    bounds that dominate it and the power ``lam ** -beta`` that should
    dominate both when the embedding holds.
    """
    rows: List[TailRow] = []
    p = problem.p
    for k in k_range:
        lam = problem.spectrum.exponents[k]
        value = moment(problem.mu, p * lam, cfg)
        chebyshev = math.inf
        if lam > 1.0:
            chebyshev = value * math.exp(-p * lam * math.log1p(-1.0 / lam))
        rows.append(
            TailRow(
                index=k,
                lam=lam,
                tail=tail(problem.mu, min(1.0, 1.0 / lam)),
                moment_bound=math.e**p * value,
                chebyshev_bound=chebyshev,
                power=lam**-problem.beta,
            )
        )

    return rows


def reverse_embedding_check(
    f: MuntzPolynomial,
    p: float,
    alpha: float,
    cfg: Optional[QuadratureConfig] = None,
) -> RatioReport:
    """
    ``||f||_{L^(p / beta)} / ||f||_{L^p(nu_alpha)}`` with ``beta = 1 + alpha``.

    :raises DomainError: alpha outside (-1, 0)
    :raises PreconditionError: p <= beta
    """
    if not f:
        raise DegenerateInputError("the zero polynomial has no ratio")
    if not -1.0 < alpha < 0.0:
        raise DomainError(f"alpha must lie in (-1, 0), got {alpha!r}")
    beta = 1.0 + alpha
    if not p > beta:
        raise PreconditionError("p > beta", f"p={p} must exceed beta={beta}")
    q = p / beta
    numerator = float(lp_integrals(JacobiWeight(0.0), (f,), q, cfg)[0]) ** (1.0 / q)
    denominator = float(lp_integrals(JacobiWeight(alpha), (f,), p, cfg)[0]) ** (1.0 / p)

    return RatioReport(
        ratio=numerator / denominator,
        witness=_describe(f),
        context={"p": p, "alpha": alpha, "beta": beta},
    )


def _conjugate_exponents(exponents: Sequence[float]) -> Tuple[float, ...]:
    values = tuple(float(p) for p in exponents)
    if len(values) == 1:
        (p,) = values
        if not p > 1.0:
            raise DomainError(f"exponent must exceed 1, got {p!r}")
        values = (p, p / (p - 1.0))
    if any(not p > 1.0 for p in values):
        raise DomainError("every exponent must exceed 1")
    total = math.fsum(1.0 / p for p in values)
    if abs(total - 1.0) > CONJUGATE_TOL:
        raise DomainError(f"reciprocal exponents sum to {total!r}, not 1")
    return values


def schur_kernel_sums(
    s: BlockSpectrum, exponents: Sequence[float], beta: float, i_max: int
) -> SchurSums:
    """
    Schur test sums of the kernel
    ``z_1 ... z_(n-1) / (1 + z_1 ** p_1 + ... + z_(n-1) ** p_(n-1))`` with
    ``z_j = (lam_(i_j) / lam_(i_n)) ** (beta / p_j)``.

    One index is held fixed at a value ``<= i_max`` and the others run over
    the whole spectrum; the supremum over the fixed value is reported for
    each position. A single exponent ``p`` is completed by its conjugate.

    >>> from muntzlab.spectrum import generate_lacunary
    >>> sums = schur_kernel_sums(generate_lacunary(1.0, 2.0, 1), [2.0], 1.0, 0)
    >>> sums.row
    0.5

    :raises DomainError: the exponents are not conjugate, or i_max is too large
    """
    ps = _conjugate_exponents(exponents)
    if not beta > 0.0:
        raise DomainError(f"beta must be positive, got {beta!r}")
    if not 0 <= i_max < len(s):
        raise DomainError(f"i_max must be in [0, {len(s)}), got {i_max!r}")
    n = len(ps)
    log_lam = np.log(np.array(s.exponents, dtype=np.float64))
    scales = np.array([beta / p for p in ps[:-1]])
    powers_ = np.array(ps[:-1])

    def kernel_sum(position: int, fixed: int) -> float:
        axes: List[FloatArray] = []
        for slot in range(n):
            if slot == position:
                axes.append(log_lam[fixed : fixed + 1])
            else:
                axes.append(log_lam)
        grids = np.meshgrid(*axes, indexing="ij", sparse=True)
        last = grids[-1]
        log_z = [scales[j] * (grids[j] - last) for j in range(n - 1)]
        log_denominator = functools.reduce(
            np.logaddexp, (powers_[j] * log_z[j] for j in range(n - 1)), 0.0
        )
        return float(np.sum(np.exp(sum(log_z) - log_denominator)))

    by_position = tuple(
        max(kernel_sum(position, fixed) for fixed in range(i_max + 1))
        for position in range(n)
    )

    return SchurSums(row=by_position[0], col=by_position[-1], by_position=by_position)


def multilinear_ratio(
    functions: Sequence[MuntzPolynomial],
    exponents: Sequence[float],
    alpha: float,
    mu: MeasureSpec,
    s: BlockSpectrum,
    cfg: Optional[QuadratureConfig] = None,
) -> RatioReport:
    """
    ``|integral prod f_j dmu|`` over
    ``prod_j (sum_k ||f_(j,k)||_(L^(p_j)(nu_alpha)) ** p_j) ** (1 / p_j)``,
    the blocks ``f_(j,k)`` taken over ``s``.
    """
    ps = _conjugate_exponents(exponents)
    if len(functions) != len(ps):
        raise DomainError(f"{len(ps)} exponents for {len(functions)} functions")
    if any(not f for f in functions):
        raise DegenerateInputError("the zero polynomial has no ratio")

    def product(t: FloatArray) -> FloatArray:
        values = np.ones_like(np.asarray(t, dtype=np.float64))
        for f in functions:
            values = values * f(t)
        return values

    numerator = abs(integrate(mu, product, cfg))
    denominator = 1.0
    for f, p in zip(functions, ps):
        blocks = [block for block in block_decompose(f, s).blocks if block]
        integrals = lp_integrals(JacobiWeight(alpha), blocks, p, cfg)
        denominator *= math.fsum(integrals.tolist()) ** (1.0 / p)

    return RatioReport(
        ratio=numerator / denominator,
        witness=f"functions={len(functions)}",
        context={"alpha": alpha, "exponents": ",".join(f"{p:g}" for p in ps)},
    )


def dual_profile(
    f: MuntzPolynomial,
    s: BlockSpectrum,
    p: float,
    beta: float,
    cfg: Optional[QuadratureConfig] = None,
) -> DualProfile:
    """
    Positive test polynomials built from the block norms ``n_k`` of ``f`` in
    ``L^(p / beta)``:
    ``h1 = sum n_k lam_k ** (beta / p) t ** lam_k`` and
    ``h2 = sum n_k ** ((p - beta) / beta) lam_k ** ((p - beta) / p) t ** lam_k``,
    ``lam_k`` the block anchors.
    """
    if not p > beta > 0.0:
        raise DomainError(f"need p > beta > 0, got p={p!r}, beta={beta!r}")
    decomposition = block_decompose(f, s)
    used = decomposition.nonzero()
    if not used:
        raise DegenerateInputError("the zero polynomial has no profile")
    q = p / beta
    norms = lp_integrals(
        JacobiWeight(0.0), [decomposition.blocks[k] for k in used], q, cfg
    ) ** (1.0 / q)
    anchors = [s.anchors[k] for k in used]
    h1 = MuntzPolynomial.from_terms(
        (lam, float(n) * lam ** (beta / p)) for lam, n in zip(anchors, norms)
    )
    h2 = MuntzPolynomial.from_terms(
        (lam, float(n) ** ((p - beta) / beta) * lam ** ((p - beta) / p))
        for lam, n in zip(anchors, norms)
    )

    return DualProfile(h1=h1, h2=h2)
