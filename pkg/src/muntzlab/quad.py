"""
Integration engines.

Closed forms for Beta and log-Gamma quantities, and an adaptive
double-exponential (tanh-sinh) rule for integrals against the Jacobi
weight ``(1 - t) ** alpha`` on subintervals of [0, 1].
"""

import functools
import logging
import math
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import special

from .errors import AccuracyError, DomainError
from .typing import FloatArray, Integrand


__all__ = (
    "DEFAULT_CONFIG",
    "QuadratureConfig",
    "QuadratureResult",
    "beta_asymptotic_check",
    "beta_function",
    "integrate_log_panels",
    "integrate_weighted",
    "integrate_weighted_result",
    "integrate_weighted_vector",
    "log_beta",
    "validate_config",
)

log = logging.getLogger(__name__)

# Bernoulli terms B_2k / (2k (2k - 1)) of the Stirling series.
_STIRLING_TERMS = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_STIRLING_MIN = 10.0
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_FIRST_STEP = 0.5
_MIN_LEVELS = 2
_PANEL_NODES = 48


class QuadratureConfig(NamedTuple):
    """
    Tolerances and budgets shared by every integration routine.

    >>> QuadratureConfig(rel_tol=1e-8).max_levels
    12
    """

    rel_tol: float = 1e-10
    max_levels: int = 12
    endpoint_cut: float = 1e-15
    atom_depth: int = 20
    abs_floor: float = 1e-300


DEFAULT_CONFIG = QuadratureConfig()


class QuadratureResult(NamedTuple):
    """
    Outcome of an adaptive run: the final value, its error estimate, the
    number of levels used and the estimate produced at every level.
    """

    value: float
    error: float
    levels: int
    estimates: Tuple[float, ...]


def validate_config(cfg: QuadratureConfig, /) -> None:
    """
    :raises DomainError: a field is outside its admissible range
    """
    if not 0.0 < cfg.rel_tol <= 1e-2:
        raise DomainError(f"rel_tol must be in (0, 1e-2], got {cfg.rel_tol!r}")
    if cfg.max_levels < 3:
        raise DomainError(f"max_levels must be at least 3, got {cfg.max_levels!r}")
    if not 0.0 < cfg.endpoint_cut < 1.0:
        raise DomainError(
            f"endpoint_cut must be in (0, 1), got {cfg.endpoint_cut!r}"
        )
    if not 1 <= cfg.atom_depth <= 26:
        raise DomainError(f"atom_depth must be in [1, 26], got {cfg.atom_depth!r}")
    if cfg.abs_floor < 0.0:
        raise DomainError(f"abs_floor must be nonnegative, got {cfg.abs_floor!r}")


def _stirling_correction(x: float) -> float:
    inverse = 1.0 / x
    inverse_squared = inverse * inverse
    power = inverse
    total = 0.0
    for coefficient in _STIRLING_TERMS:
        total += coefficient * power
        power *= inverse_squared

    return total


def _log_gamma_ratio(x: float, y: float) -> float:
    """
    log(Gamma(x) / Gamma(x + y)) for x >= 10 without cancellation.
    """
    return (
        -(x - 0.5) * math.log1p(y / x)
        - y * math.log(x + y)
        + y
        + _stirling_correction(x)
        - _stirling_correction(x + y)
    )


def log_beta(a: float, b: float, /) -> float:
    """
    Natural logarithm of the Beta function.

    Large arguments go through Stirling differences written with ``log1p``,
    so the result keeps full relative accuracy up to a, b of order 1e6 and
    beyond.

    :raises DomainError: a or b is not positive
    """
    if not (a > 0.0 and b > 0.0) or math.isinf(a) or math.isinf(b):
        raise DomainError(f"Beta arguments must be positive, got ({a!r}, {b!r})")

    small, large = (a, b) if a <= b else (b, a)
    if large < _STIRLING_MIN:
        return float(math.log(special.beta(small, large)))
    if small < _STIRLING_MIN:
        return float(special.gammaln(small)) + _log_gamma_ratio(large, small)

    total = small + large
    return (
        _HALF_LOG_2PI
        - 0.5 * math.log(total)
        - (small - 0.5) * math.log1p(large / small)
        - (large - 0.5) * math.log1p(small / large)
        + _stirling_correction(small)
        + _stirling_correction(large)
        - _stirling_correction(total)
    )


def beta_function(a: float, b: float, /) -> float:
    """
    B(a, b) = integral of t**(a-1) (1-t)**(b-1) over [0, 1].

    >>> beta_function(2.0, 1.0)
    0.5

    :raises DomainError: a or b is not positive
    """
    return math.exp(log_beta(a, b))


def beta_asymptotic_check(
    beta: float, x_values: Sequence[float], /
) -> List[Tuple[float, float]]:
    """
    Normalized ratios ``B(x, beta) * x**beta / Gamma(beta)``, which tend to 1
    as x grows.

    :raises DomainError: beta or an x value is not positive
    """
    if not beta > 0.0:
        raise DomainError(f"beta must be positive, got {beta!r}")
    log_gamma_beta = float(special.gammaln(beta))
    ratios = []
    for x in x_values:
        value = math.exp(log_beta(x, beta) + beta * math.log(x) - log_gamma_beta)
        ratios.append((float(x), value))

    return ratios


class _NodeTable(NamedTuple):
    # Unit-interval nodes of one refinement level, in log form.
    log_jacobian: FloatArray
    fraction: FloatArray
    log_complement: FloatArray


def _half_width(alpha: float, endpoint_cut: float) -> float:
    # Beyond this abscissa the weight envelope has decayed past endpoint_cut**2.
    decay = min(1.0, 1.0 + alpha)
    return math.asinh(2.0 * math.log(1.0 / endpoint_cut) / (math.pi * decay))


@functools.lru_cache(maxsize=256)
def _node_table(level: int, half_width: float) -> _NodeTable:
    step = _FIRST_STEP / 2**level
    count = int(math.ceil(half_width / step))
    indices = np.arange(-count, count + 1)
    if level > 0:
        # only the abscissae new at this level
        indices = indices[indices % 2 != 0]
    s = indices.astype(np.float64) * step
    v = math.pi * np.sinh(s)
    log_fraction = special.log_expit(v)
    log_complement = special.log_expit(-v)
    log_jacobian = (
        math.log(math.pi) + np.log(np.cosh(s)) + log_fraction + log_complement
    )
    table = _NodeTable(
        log_jacobian=log_jacobian,
        fraction=special.expit(v),
        log_complement=log_complement,
    )
    for array in table:
        array.flags.writeable = False

    return table


def _level_sum(
    g: Integrand,
    alpha: float,
    lower: float,
    upper: float,
    table: _NodeTable,
) -> FloatArray:
    width = upper - lower
    t = lower + width * table.fraction
    if upper == 1.0:
        log_one_minus_t = math.log(width) + table.log_complement
    else:
        log_one_minus_t = np.log((1.0 - upper) + width * np.exp(table.log_complement))
    log_weight = math.log(width) + table.log_jacobian + alpha * log_one_minus_t
    values = np.asarray(g(t), dtype=np.float64)
    weight = np.exp(log_weight)
    contributions = np.where(weight == 0.0, 0.0, values * weight)

    return np.asarray(np.sum(contributions, axis=-1), dtype=np.float64)


def _adaptive_piece(
    g: Integrand,
    alpha: float,
    lower: float,
    upper: float,
    cfg: QuadratureConfig,
) -> Tuple[FloatArray, FloatArray, int, List[FloatArray]]:
    half_width = _half_width(alpha, cfg.endpoint_cut)
    running = _level_sum(g, alpha, lower, upper, _node_table(0, half_width))
    step = _FIRST_STEP
    estimate = running * step
    estimates = [estimate]
    error = np.full_like(estimate, np.inf)
    for level in range(1, cfg.max_levels):
        step /= 2.0
        running = running + _level_sum(
            g, alpha, lower, upper, _node_table(level, half_width)
        )
        new_estimate = running * step
        error = np.abs(new_estimate - estimate)
        estimate = new_estimate
        estimates.append(estimate)
        tolerance = np.maximum(cfg.rel_tol * np.abs(estimate), cfg.abs_floor)
        if level >= _MIN_LEVELS and bool(np.all(error <= tolerance)):
            return estimate, error, level + 1, estimates

    log.debug(
        "level budget exhausted on [%g, %g] with alpha=%g", lower, upper, alpha
    )
    worst = int(np.argmax(np.atleast_1d(error)))
    raise AccuracyError(
        float(np.atleast_1d(estimate)[worst]),
        float(np.atleast_1d(error)[worst]),
        f"tolerance {cfg.rel_tol:g} not reached in {cfg.max_levels} levels",
    )


def _pieces(
    interval: Tuple[float, float], breakpoints: Sequence[float]
) -> List[Tuple[float, float]]:
    lower, upper = interval
    if not 0.0 <= lower < upper <= 1.0:
        raise DomainError(f"interval must satisfy 0 <= a < b <= 1, got {interval!r}")
    cuts = sorted({float(c) for c in breakpoints if lower < c < upper})
    edges = [lower, *cuts, upper]

    return [(a, b) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _monomial_exponent(g: object) -> Optional[Tuple[float, float]]:
    terms = getattr(g, "terms", None)
    if terms is not None and len(terms) == 1:
        exponent, coefficient = terms[0]
        if exponent > -1.0:
            return float(exponent), float(coefficient)

    return None


def integrate_weighted_vector(
    g: Integrand,
    alpha: float = 0.0,
    cfg: Optional[QuadratureConfig] = None,
    *,
    interval: Tuple[float, float] = (0.0, 1.0),
    breakpoints: Sequence[float] = (),
) -> Tuple[FloatArray, FloatArray]:
    """
    Integrate a possibly vector valued integrand against ``(1 - t) ** alpha``.

    ``g`` receives the node array of shape (n,) and returns shape (n,) or
    (m, n); all components are converged together. Integration is split at
    ``breakpoints``, which should mark kinks of the integrand.

    :returns: (values, error estimates)
    :raises AccuracyError: the level budget ran out before the tolerance
    """
    cfg = DEFAULT_CONFIG if cfg is None else cfg
    validate_config(cfg)
    if not alpha > -1.0:
        raise DomainError(f"alpha must exceed -1, got {alpha!r}")

    value: Union[FloatArray, float] = 0.0
    error: Union[FloatArray, float] = 0.0
    for lower, upper in _pieces(interval, breakpoints):
        piece_value, piece_error, _, _ = _adaptive_piece(g, alpha, lower, upper, cfg)
        value = value + piece_value
        error = error + piece_error

    return np.asarray(value, dtype=np.float64), np.asarray(error, dtype=np.float64)


def integrate_weighted_result(
    g: Integrand,
    alpha: float = 0.0,
    cfg: Optional[QuadratureConfig] = None,
    *,
    interval: Tuple[float, float] = (0.0, 1.0),
) -> QuadratureResult:
    """
    Single-piece adaptive run with its per-level history.

    :raises AccuracyError: the level budget ran out before the tolerance
    """
    cfg = DEFAULT_CONFIG if cfg is None else cfg
    validate_config(cfg)
    if not alpha > -1.0:
        raise DomainError(f"alpha must exceed -1, got {alpha!r}")
    ((lower, upper),) = _pieces(interval, ())
    value, error, levels, estimates = _adaptive_piece(g, alpha, lower, upper, cfg)

    return QuadratureResult(
        value=float(value),
        error=float(error),
        levels=levels,
        estimates=tuple(float(e) for e in estimates),
    )


def integrate_weighted(
    g: Union[Integrand, object],
    alpha: float = 0.0,
    cfg: Optional[QuadratureConfig] = None,
    *,
    interval: Tuple[float, float] = (0.0, 1.0),
    breakpoints: Sequence[float] = (),
) -> float:
    """
    Integral of ``g(t) (1 - t) ** alpha`` over ``interval``.

    A single-term Müntz polynomial over the full interval is integrated in
    closed form through :func:`beta_function`; everything else goes through
    the double-exponential rule.

    :param g: callable mapping a node array to values, or a polynomial
    :param alpha: Jacobi exponent, must exceed -1
    :keyword interval: subinterval of [0, 1]
    :keyword breakpoints: interior points where the integrand has kinks

    :raises DomainError: alpha <= -1 or a malformed interval
    :raises AccuracyError: the tolerance was not reached
    """
    if not alpha > -1.0:
        raise DomainError(f"alpha must exceed -1, got {alpha!r}")
    monomial = _monomial_exponent(g)
    if monomial is not None and interval == (0.0, 1.0):
        exponent, coefficient = monomial
        return coefficient * beta_function(exponent + 1.0, alpha + 1.0)

    integrand: Integrand = g  # type: ignore[assignment]
    value, _ = integrate_weighted_vector(
        integrand, alpha, cfg, interval=interval, breakpoints=breakpoints
    )

    return float(value)


def integrate_log_panels(
    g: Callable[[FloatArray], FloatArray],
    deltas: Sequence[float],
    cfg: Optional[QuadratureConfig] = None,
) -> FloatArray:
    """
    Integrals of ``g`` over [0, 1 - deltas[0]] and then over each
    [1 - deltas[j-1], 1 - deltas[j]], for a decreasing grid of deltas.

    Each panel uses Gauss-Legendre nodes in ``u = log(1 - rho)``, where
    integrands blowing up at rho = 1 are smooth; the rule is doubled until
    two consecutive orders agree.

    :raises DomainError: deltas not strictly decreasing inside (0, 1)
    :raises AccuracyError: a panel does not settle
    """
    cfg = DEFAULT_CONFIG if cfg is None else cfg
    grid = [float(d) for d in deltas]
    if not grid or any(not 0.0 < d < 1.0 for d in grid):
        raise DomainError("deltas must lie in (0, 1)")
    if any(b >= a for a, b in zip(grid[:-1], grid[1:])):
        raise DomainError("deltas must be strictly decreasing")

    # never tighter than 1e-8
    tolerance = max(cfg.rel_tol, 1e-8)
    bounds = [0.0, *(math.log(d) for d in grid)]
    panels = np.empty(len(grid), dtype=np.float64)
    for index, (upper, lower) in enumerate(zip(bounds[:-1], bounds[1:])):
        previous = math.nan
        order = _PANEL_NODES
        while True:
            nodes, weights = np.polynomial.legendre.leggauss(order)
            u = lower + (upper - lower) * (nodes + 1.0) / 2.0
            gap = np.exp(u)
            values = np.asarray(g(1.0 - gap), dtype=np.float64) * gap
            current = float(np.sum(weights * values)) * (upper - lower) / 2.0
            if abs(current - previous) <= tolerance * abs(current):
                break
            if order >= 16 * _PANEL_NODES:
                raise AccuracyError(
                    current,
                    abs(current - previous),
                    f"log panel {index} did not settle",
                )
            previous = current
            order *= 2
        panels[index] = current

    return panels
