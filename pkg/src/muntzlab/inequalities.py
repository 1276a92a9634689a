"""
Ratio statistics for the standalone Müntz inequalities, and the seeded
scans that turn them into empirical brackets.

Every statistic is a quotient of two norms (or integrals) that the
corresponding inequality asserts to be bounded; its implicit constant is
reported as an empirical extreme with a witness.
"""

import logging
import math
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    AccuracyError,
    DegenerateInputError,
    DomainError,
    PreconditionError,
    TruncationError,
)
from .measure import JacobiWeight, MeasureSpec, PowerWeight, integrate, lp_integrals, tail
from .poly import (
    BlockDecomposition,
    MuntzPolynomial,
    block_decompose,
    derivative,
    dilate,
    search_grid,
    sign_changes,
    sup_norm,
)
from .quad import DEFAULT_CONFIG, QuadratureConfig, integrate_weighted_vector
from .reports import Bracket, RatioReport
from .spectrum import BlockSpectrum
from .typing import FloatArray, Integrand


__all__ = (
    "KernelRange",
    "LocalMaximum",
    "bernstein_ratio",
    "block_projection_ratio",
    "decoupling_ratio",
    "derivative_switch_ratio",
    "derivative_translation_ratio",
    "dilation_norm_check",
    "flat_lower_ratio",
    "holder_embedding_ratio",
    "ipp_check",
    "kernel_ratio",
    "loc_max_check",
    "newman_ratio",
    "pointwise_block_ratio",
    "random_block_polynomial",
    "random_polynomial",
    "sample_bracket",
    "trial_rng",
)

log = logging.getLogger(__name__)

KERNEL_T_RANGE = (0.5, 1.0 - 1e-8)
KERNEL_MIN_REACH = 10.0
IPP_SLACK = 1e-9

Statistic = Callable[[MuntzPolynomial], float]
Sampler = Callable[[np.random.Generator], MuntzPolynomial]


class KernelRange(NamedTuple):
    """
    Extremes of ``(1 - t) ** alpha * sum(lam ** alpha * t ** lam)`` over a grid.
    """

    low: float
    high: float
    low_at: float
    high_at: float


class LocalMaximum(NamedTuple):
    argmax: float
    lower_bound: float
    satisfied: bool


def _require_nonzero(f: MuntzPolynomial) -> None:
    if not f:
        raise DegenerateInputError("the zero polynomial has no ratio")


def _require_vanishing(f: MuntzPolynomial) -> None:
    _require_nonzero(f)
    if not f.vanishes_at_zero:
        raise PreconditionError("f(0) = 0", "f must vanish at zero")


def _require_p(p: float) -> None:
    if not p >= 1.0:
        raise DomainError(f"p must be at least 1, got {p!r}")


def _bounded_derivative(f: MuntzPolynomial) -> float:
    """
    ``max |f'|``, which must be finite.
    """
    df = derivative(f)
    if not df:
        raise DegenerateInputError("f is constant")
    value = sup_norm(df).value
    if math.isinf(value):
        raise DomainError("f' is unbounded: an exponent lies below 1")
    return value


def pointwise_block_ratio(f_k: MuntzPolynomial, s: BlockSpectrum, /) -> RatioReport:
    """
    ``sup |f(x)| / (x ** (lam / N) * max |f|)`` for a polynomial living in one
    block, ``lam`` being the smallest exponent of that block.

    :raises DegenerateInputError: f is zero
    :raises PreconditionError: f uses more than one block
    """
    _require_nonzero(f_k)
    used = block_decompose(f_k, s).nonzero()
    if len(used) != 1:
        raise PreconditionError("single block", f"f spans blocks {used}")
    block = used[0]
    anchor = s.anchors[block]
    norm = sup_norm(f_k).value

    grid = search_grid(f_k.exponents.tolist())[1:]
    ratios = np.abs(f_k(grid)) / (np.exp(anchor / s.block_cap * np.log(grid)) * norm)
    best = int(np.argmax(ratios))

    return RatioReport(
        ratio=float(ratios[best]),
        witness=f"t={grid[best]:.17g}",
        context={"block": block, "N": s.block_cap, "anchor": anchor},
    )


def newman_ratio(f: MuntzPolynomial, /) -> RatioReport:
    """
    ``max |f'| / (sum(lam) * max |f|)``.

    >>> newman_ratio(MuntzPolynomial.monomial(3.0)).ratio
    1.0

    :raises DegenerateInputError: f is zero or constant
    :raises DomainError: f' is unbounded
    """
    _require_nonzero(f)
    derivative_norm = _bounded_derivative(f)
    norm = sup_norm(f)
    total = math.fsum(e for e, _ in f.terms)

    return RatioReport(
        ratio=derivative_norm / (total * norm.value),
        witness=f"t={norm.argmax:.17g}",
        context={"exponent_sum": total},
    )


def bernstein_ratio(
    f_k: MuntzPolynomial,
    p: float,
    q_exp: float,
    alpha: float,
    mu: MeasureSpec,
    beta: float,
    cfg: Optional[QuadratureConfig] = None,
) -> RatioReport:
    """
    ``||f||_{L^p(mu)} / (lam ** delta * ||f||_{L^q(nu_alpha)})`` with
    ``delta = (1 + alpha) / q - beta / p`` and ``lam`` the smallest exponent
    of ``f_k``.

    The tail condition on ``mu`` is the caller's responsibility.
    """
    _require_nonzero(f_k)
    _require_p(p)
    if not q_exp >= 1.0:
        raise DomainError(f"q_exp must be at least 1, got {q_exp!r}")
    if not beta > 0.0:
        raise DomainError(f"beta must be positive, got {beta!r}")
    delta = (1.0 + alpha) / q_exp - beta / p
    anchor = float(f_k.terms[0][0])
    numerator = float(lp_integrals(mu, (f_k,), p, cfg)[0]) ** (1.0 / p)
    denominator = float(lp_integrals(JacobiWeight(alpha), (f_k,), q_exp, cfg)[0]) ** (
        1.0 / q_exp
    )

    return RatioReport(
        ratio=numerator / (anchor**delta * denominator),
        witness=f"lambda={anchor:.17g}",
        context={"p": p, "q": q_exp, "alpha": alpha, "beta": beta, "delta": delta},
    )


def flat_lower_ratio(
    f_k: MuntzPolynomial,
    p: float,
    alpha: float,
    cfg: Optional[QuadratureConfig] = None,
) -> RatioReport:
    """
    ``||f||_{L^p(nu_alpha)} / min(|f|^(1 + g) / |f'|^g, |f|)`` with sup norms
    and ``g = (1 + alpha) / p``; bounded below for block polynomials.
    """
    _require_nonzero(f_k)
    _require_p(p)
    gamma = (1.0 + alpha) / p
    norm = sup_norm(f_k).value
    derivative_norm = _bounded_derivative(f_k)
    flat = min(norm ** (1.0 + gamma) / derivative_norm**gamma, norm)
    integral = float(lp_integrals(JacobiWeight(alpha), (f_k,), p, cfg)[0])

    return RatioReport(
        ratio=integral ** (1.0 / p) / flat,
        witness="derivative" if flat < norm else "sup",
        context={"p": p, "alpha": alpha},
    )


def kernel_ratio(
    s: BlockSpectrum, alpha: float, t_grid: Union[Sequence[float], FloatArray]
) -> KernelRange:
    """
    Extremes of ``(1 - t) ** alpha * sum(lam ** alpha * t ** lam)`` over the
    grid, restricted to ``[0.5, 1 - 1e-8]`` where the two-sided kernel bound
    is meaningful.

    :raises DomainError: alpha <= 0 or a grid point outside the range
    :raises TruncationError: ``max(lam) * (1 - t) < 10`` somewhere on the grid
    """
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    t = np.asarray(t_grid, dtype=np.float64)
    lo, hi = KERNEL_T_RANGE
    if t.size == 0 or np.any(t < lo) or np.any(t > hi):
        raise DomainError(f"t grid must lie in [{lo}, {hi}]")
    largest = s.exponents[-1]
    reach = largest * (1.0 - float(np.max(t)))
    if reach < KERNEL_MIN_REACH:
        raise TruncationError(
            math.nan, math.nan, f"spectrum too short: max(lam) * (1 - t) = {reach:.3g}"
        )

    lam = np.array(s.exponents, dtype=np.float64)
    log_terms = alpha * np.log(lam)[:, np.newaxis] + lam[:, np.newaxis] * np.log(t)
    values = np.exp(log_terms).sum(axis=0) * (1.0 - t) ** alpha
    low, high = int(np.argmin(values)), int(np.argmax(values))

    return KernelRange(
        low=float(values[low]),
        high=float(values[high]),
        low_at=float(t[low]),
        high_at=float(t[high]),
    )


def decoupling_ratio(
    blocks: BlockDecomposition,
    p: float,
    alpha: float,
    cfg: Optional[QuadratureConfig] = None,
) -> RatioReport:
    """
    ``||sum f_k||_{L^p(nu_alpha)} / (sum ||f_k||^p) ** (1 / p)``.

    :raises DegenerateInputError: every block is zero
    """
    _require_p(p)
    used = blocks.nonzero()
    if not used:
        raise DegenerateInputError("no nonzero block")
    total = blocks.total()
    integrals = lp_integrals(
        JacobiWeight(alpha), (total, *(blocks.blocks[k] for k in used)), p, cfg
    )

    return RatioReport(
        ratio=float(integrals[0] / math.fsum(integrals[1:].tolist())) ** (1.0 / p),
        witness=f"blocks={list(used)}",
        context={"p": p, "alpha": alpha, "blocks": len(used)},
    )


def dilation_norm_check(
    f: MuntzPolynomial,
    rho: float,
    p: float,
    lambda_k: float,
    cfg: Optional[QuadratureConfig] = None,
) -> RatioReport:
    """
    ``||f(rho .)|| / ||f|| * rho ** ((lambda_k + 1) / p)`` in
    ``L^p(t ** lambda_k dt)``; never above 1.
    """
    _require_nonzero(f)
    _require_p(p)
    if not lambda_k > 0.0:
        raise DomainError(f"lambda_k must be positive, got {lambda_k!r}")
    dilated = dilate(f, rho)
    integrals = lp_integrals(PowerWeight(lambda_k), (dilated, f), p, cfg)
    scale = math.exp((lambda_k + 1.0) / p * math.log(rho))

    return RatioReport(
        ratio=float(integrals[0] / integrals[1]) ** (1.0 / p) * scale,
        witness=f"rho={rho:.17g}",
        context={"p": p, "lambda_k": lambda_k, "rho": rho},
    )


def block_projection_ratio(
    f: MuntzPolynomial,
    s: BlockSpectrum,
    k: int,
    p: float,
    cfg: Optional[QuadratureConfig] = None,
) -> RatioReport:
    """
    ``||f_k|| / ||f||`` in ``L^p(t ** lam_k dt)``, ``lam_k`` being the anchor
    of block ``k``.

    :raises PreconditionError: block k of f is zero
    """
    _require_nonzero(f)
    _require_p(p)
    decomposition = block_decompose(f, s)
    if not 0 <= k < s.block_count:
        raise DomainError(f"block index must be in [0, {s.block_count}), got {k}")
    component = decomposition.blocks[k]
    if not component:
        raise PreconditionError("block nonzero", f"block {k} of f is zero")
    anchor = s.anchors[k]
    integrals = lp_integrals(PowerWeight(anchor), (component, f), p, cfg)

    return RatioReport(
        ratio=float(integrals[0] / integrals[1]) ** (1.0 / p),
        witness=f"block={k}",
        context={"p": p, "block": k, "anchor": anchor},
    )


def derivative_switch_ratio(
    f: MuntzPolynomial,
    p: float,
    alpha: float,
    cfg: Optional[QuadratureConfig] = None,
) -> RatioReport:
    """
    ``integral |f| ** p dnu_alpha / integral |f'| ** p dnu_(alpha + p)``.

    :raises PreconditionError: f does not vanish at zero
    """
    _require_vanishing(f)
    _require_p(p)
    numerator = float(lp_integrals(JacobiWeight(alpha), (f,), p, cfg)[0])
    denominator = float(lp_integrals(JacobiWeight(alpha + p), (derivative(f),), p, cfg)[0])

    return RatioReport(
        ratio=numerator / denominator,
        witness=f"terms={len(f)}",
        context={"p": p, "alpha": alpha},
    )


def _translation_kernel(f: MuntzPolynomial, p: float) -> Integrand:
    """
    ``G(t) = integral_0^1 |f'(rho t)| |f(rho t)| ** (p - 1) drho``.

    Between critical points of f the integrand is the derivative of
    ``sign(f) |f| ** p / p`` up to sign, so ``t G(t)`` is a sum of absolute
    increments of that primitive.
    """
    df = derivative(f)
    critical = np.array(sign_changes((df,)), dtype=np.float64)

    def primitive(x: FloatArray) -> FloatArray:
        values = f(x)
        return np.sign(values) * np.abs(values) ** p / p

    knots = np.concatenate(([0.0], critical))
    levels = primitive(knots)
    cumulative = np.concatenate(([0.0], np.cumsum(np.abs(np.diff(levels)))))

    def kernel(t: FloatArray) -> FloatArray:
        t = np.asarray(t, dtype=np.float64)
        last = np.searchsorted(critical, t, side="left")
        variation = cumulative[last] + np.abs(primitive(t) - levels[last])
        with np.errstate(divide="ignore", invalid="ignore"):
            values = variation / t
            at_zero = np.abs(df(np.zeros(1)))[0] * np.abs(f(np.zeros(1)))[0] ** (p - 1.0)
        return np.where(t > 0.0, values, at_zero)

    return kernel


def derivative_translation_ratio(
    f: MuntzPolynomial,
    p: float,
    mu: MeasureSpec,
    cfg: Optional[QuadratureConfig] = None,
) -> RatioReport:
    """
    ``integral |f| ** p dmu`` over
    ``integral integral_0^1 |f'(rho t)| |f(rho t)| ** (p - 1) drho dmu(t)``.

    :raises PreconditionError: f does not vanish at zero
    """
    _require_vanishing(f)
    _require_p(p)
    numerator = float(lp_integrals(mu, (f,), p, cfg)[0])
    breakpoints: Tuple[float, ...] = ()
    if isinstance(mu, (JacobiWeight, PowerWeight)):
        breakpoints = sign_changes((f, derivative(f)))
    denominator = integrate(mu, _translation_kernel(f, p), cfg, breakpoints=breakpoints)

    return RatioReport(
        ratio=numerator / denominator,
        witness=f"terms={len(f)}",
        context={"p": p},
    )


def loc_max_check(f_k: MuntzPolynomial, a: float, /) -> LocalMaximum:
    """
    Whether the argmax ``x0`` of ``|f|`` satisfies
    ``1 - a * max|f| / max|f'| <= x0 <= 1``.

    >>> loc_max_check(MuntzPolynomial.monomial(5.0), 1.0).satisfied
    True
    """
    _require_nonzero(f_k)
    if not a > 0.0:
        raise DomainError(f"A must be positive, got {a!r}")
    norm = sup_norm(f_k)
    df = derivative(f_k)
    derivative_norm = sup_norm(df).value if df else 0.0
    if derivative_norm == 0.0:
        lower = -math.inf
    else:
        lower = 1.0 - a * norm.value / derivative_norm

    return LocalMaximum(
        argmax=norm.argmax,
        lower_bound=lower,
        satisfied=lower <= norm.argmax <= 1.0,
    )


def ipp_check(
    g: Integrand,
    mu: MeasureSpec,
    beta: float,
    constant: float = 1.0,
    eps_grid: Optional[Sequence[float]] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> RatioReport:
    """
    ``integral g dmu / integral g(x) beta C (1 - x) ** (beta - 1) dx`` for a
    nonnegative nondecreasing ``g``, after checking ``tail(eps) <= C eps ** beta``
    on ``eps_grid``.

    :raises PreconditionError: the tail bound fails at a grid point
    """
    if not beta > 0.0:
        raise DomainError(f"beta must be positive, got {beta!r}")
    if not constant > 0.0:
        raise DomainError(f"constant must be positive, got {constant!r}")
    grid = np.logspace(-8.0, 0.0, 33) if eps_grid is None else eps_grid
    for eps in grid:
        bound = constant * float(eps) ** beta
        if tail(mu, float(eps)) > bound * (1.0 + IPP_SLACK):
            raise PreconditionError(
                "tail bound", f"tail at eps={float(eps):.3g} exceeds {bound:.3g}"
            )

    cfg = DEFAULT_CONFIG if cfg is None else cfg
    numerator = integrate(mu, g, cfg)
    denominator, _ = integrate_weighted_vector(g, beta - 1.0, cfg)

    return RatioReport(
        ratio=numerator / (beta * constant * float(denominator)),
        witness="integral",
        context={"beta": beta, "constant": constant},
    )


def holder_embedding_ratio(
    f: MuntzPolynomial,
    p: float,
    q: float,
    alpha: float,
    cfg: Optional[QuadratureConfig] = None,
) -> RatioReport:
    """
    ``||f||_{L^q(nu_alpha)} / ||f||_{L^p}`` in the two regimes where Hölder's
    inequality bounds it: ``alpha >= 0, p > q, alpha < p / q - 1`` and
    ``alpha <= 0, q > p, alpha > p / q - 1``.

    :raises PreconditionError: (p, q, alpha) lies in neither regime
    """
    _require_nonzero(f)
    threshold = p / q - 1.0
    upper_regime = alpha >= 0.0 and p > q and alpha < threshold
    lower_regime = alpha <= 0.0 and q > p and alpha > threshold
    if not (upper_regime or lower_regime):
        raise PreconditionError(
            "holder regime", f"(p={p}, q={q}, alpha={alpha}) is outside both regimes"
        )
    numerator = float(lp_integrals(JacobiWeight(alpha), (f,), q, cfg)[0]) ** (1.0 / q)
    denominator = float(lp_integrals(JacobiWeight(0.0), (f,), p, cfg)[0]) ** (1.0 / p)

    return RatioReport(
        ratio=numerator / denominator,
        witness=f"terms={len(f)}",
        context={"p": p, "q": q, "alpha": alpha},
    )


def trial_rng(seed: int, trial: int, /) -> np.random.Generator:
    """
    Random stream of one trial; independent of the order trials run in.
    """
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def random_block_polynomial(
    s: BlockSpectrum, rng: np.random.Generator, block: Optional[int] = None
) -> MuntzPolynomial:
    """
    Standard normal coefficients on the exponents of one block (drawn
    uniformly when ``block`` is None).
    """
    index = int(rng.integers(s.block_count)) if block is None else block
    exponents = s.blocks[index]
    coefficients = rng.standard_normal(len(exponents))
    return MuntzPolynomial.from_terms(zip(exponents, coefficients.tolist()))


def random_polynomial(s: BlockSpectrum, rng: np.random.Generator) -> MuntzPolynomial:
    """
    Standard normal coefficients on every exponent of the spectrum.
    """
    coefficients = rng.standard_normal(len(s))
    return MuntzPolynomial.from_terms(zip(s.exponents, coefficients.tolist()))


def _polish(
    statistic: Statistic, f: MuntzPolynomial, value: float, sign: float, rounds: int
) -> float:
    """
    Additive coordinate search on the coefficients, keeping moves that push
    the statistic in the direction of ``sign``.
    """
    exponents = [e for e, _ in f.terms]
    coefficients = [c for _, c in f.terms]
    step = 0.5
    for _ in range(rounds):
        improved = False
        scale = max(abs(c) for c in coefficients)
        for index in range(len(coefficients)):
            for direction in (1.0, -1.0):
                trial = list(coefficients)
                trial[index] += direction * step * scale
                candidate = MuntzPolynomial.from_terms(zip(exponents, trial))
                try:
                    candidate_value = statistic(candidate)
                except (DegenerateInputError, AccuracyError) as exc:
                    log.debug("polish move skipped: %s", exc)
                    continue
                if sign * candidate_value > sign * value:
                    coefficients, value, improved = trial, candidate_value, True
        if not improved:
            step /= 2.0

    return value


def sample_bracket(
    statistic: Statistic,
    sampler: Sampler,
    samples: int,
    seed: int,
    *,
    polish_rounds: int = 0,
) -> Bracket:
    """
    Smallest and largest value of ``statistic`` over ``samples`` seeded draws.

    Trial ``i`` draws from :func:`trial_rng` ``(seed, i)``, so a scan of ``n``
    samples is a prefix of a scan of ``2n``. Samples whose statistic is
    undefined are skipped. With ``polish_rounds`` the two extreme witnesses
    are refined by coordinate search before reporting.

    :raises DegenerateInputError: every sample was skipped
    """
    if samples < 1:
        raise DomainError(f"samples must be at least 1, got {samples!r}")
    values: List[float] = []
    witnesses: List[Tuple[int, MuntzPolynomial]] = []
    for trial in range(samples):
        f = sampler(trial_rng(seed, trial))
        try:
            value = statistic(f)
        except (DegenerateInputError, AccuracyError, PreconditionError) as exc:
            log.debug("trial %d skipped: %s", trial, exc)
            continue
        values.append(value)
        witnesses.append((trial, f))
    if not values:
        raise DegenerateInputError("every sample was degenerate")

    low_index = int(np.argmin(values))
    high_index = int(np.argmax(values))
    low, high = values[low_index], values[high_index]
    if polish_rounds:
        low = _polish(statistic, witnesses[low_index][1], low, -1.0, polish_rounds)
        high = _polish(statistic, witnesses[high_index][1], high, 1.0, polish_rounds)

    return Bracket(
        low=low,
        high=high,
        low_trial=witnesses[low_index][0],
        high_trial=witnesses[high_index][0],
        samples=samples,
        seed=seed,
    )
