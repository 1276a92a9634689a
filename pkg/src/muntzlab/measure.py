"""
Borel measures on [0, 1]: tails, moments, integrals and L^p norms.
"""

import dataclasses
import functools
import logging
import math
import threading
from typing import Dict, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import special, stats

from .errors import (
    AccuracyError,
    DegenerateFitError,
    DomainError,
    UnsupportedMeasureError,
)
from .poly import MuntzPolynomial, powers, sign_changes
from .quad import DEFAULT_CONFIG, QuadratureConfig, beta_function, integrate_weighted_vector
from .typing import FloatArray, Integrand


__all__ = (
    "Atomic",
    "BetaClassFit",
    "CantorSelfSimilar",
    "JacobiWeight",
    "MeasureSpec",
    "MembershipVerdict",
    "PowerWeight",
    "TailEnvelope",
    "beta_class_fit",
    "cantor_atoms",
    "cantor_moment_table",
    "classify",
    "integrate",
    "integrate_vector",
    "lp_integrals",
    "lp_norm",
    "lp_norms",
    "moment",
    "moment_with_bound",
    "resolvent",
    "tail",
    "total_mass",
)

log = logging.getLogger(__name__)

_CANTOR_START_DEPTH = 8
_CANTOR_TAIL_DEPTH = 64
_ATOM_CHUNK = 1 << 12
_MOMENT_TABLE_LIMIT = 1 << 14
_RESOLVENT_DEPTH = 14
_RESOLVENT_FAR_GAP = 0.5
_SNAP = 1e-12


@dataclasses.dataclass(frozen=True)
class JacobiWeight:
    """
    ``(1 - t) ** alpha dt`` on [0, 1].
    """

    alpha: float = 0.0

    def __post_init__(self) -> None:
        if not self.alpha > -1.0 or math.isinf(self.alpha):
            raise DomainError(f"alpha must exceed -1, got {self.alpha!r}")


@dataclasses.dataclass(frozen=True)
class PowerWeight:
    """
    ``t ** exponent dt`` on [0, 1].
    """

    exponent: float = 0.0

    def __post_init__(self) -> None:
        if not self.exponent > -1.0 or math.isinf(self.exponent):
            raise DomainError(f"exponent must exceed -1, got {self.exponent!r}")


@dataclasses.dataclass(frozen=True)
class CantorSelfSimilar:
    """
    Self-similar probability measure for the maps ``x -> r x`` and
    ``x -> r x + 1 - r`` with weights 1/2; its tails decay like ``eps ** beta``
    with ``beta = log 2 / log(1 / r)``.
    """

    r: float = 1.0 / 3.0

    def __post_init__(self) -> None:
        if not 0.0 < self.r <= 0.5:
            raise DomainError(f"contraction r must lie in (0, 1/2], got {self.r!r}")

    @property
    def beta(self) -> float:
        return math.log(2.0) / math.log(1.0 / self.r)


@dataclasses.dataclass(frozen=True)
class Atomic:
    """
    Finitely many point masses.
    """

    points: Tuple[float, ...]
    weights: Tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.points or len(self.points) != len(self.weights):
            raise DomainError("atoms need matching, nonempty points and weights")
        if any(not 0.0 <= x <= 1.0 for x in self.points):
            raise DomainError("atom points must lie in [0, 1]")
        if any(b <= a for a, b in zip(self.points[:-1], self.points[1:])):
            raise DomainError("atom points must be sorted and distinct")
        if any(not w > 0.0 or math.isinf(w) for w in self.weights):
            raise DomainError("atom weights must be positive")

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[float, float]], /) -> "Atomic":
        ordered = sorted((float(x), float(w)) for x, w in pairs)
        return cls(
            points=tuple(x for x, _ in ordered), weights=tuple(w for _, w in ordered)
        )


@dataclasses.dataclass(frozen=True)
class TailEnvelope:
    """
    Synthetic worst-case tail ``C * eps ** beta``; supports tail queries only.
    """

    beta: float
    constant: float = 1.0

    def __post_init__(self) -> None:
        if not self.beta > 0.0:
            raise DomainError(f"beta must be positive, got {self.beta!r}")
        if not self.constant > 0.0:
            raise DomainError(f"constant must be positive, got {self.constant!r}")


MeasureSpec = Union[JacobiWeight, PowerWeight, CantorSelfSimilar, Atomic, TailEnvelope]


class BetaClassFit(NamedTuple):
    """
    Power-law fit ``tail(eps) ~ constant_hat * eps ** beta_hat``.

    ``sup_ratio`` is the largest ``tail(eps) / eps ** beta`` over the grid, for
    the caller's beta (``beta_hat`` if none was given).
    """

    beta_hat: float
    constant_hat: float
    grid: Tuple[float, ...]
    residuals: Tuple[float, ...]
    sup_ratio: float


class MembershipVerdict(NamedTuple):
    beta: float
    grid: Tuple[float, ...]
    ratios: Tuple[float, ...]
    sup_ratio: float
    fine_ratio: float
    coarse_ratio: float
    bounded: bool


def total_mass(mu: MeasureSpec, /) -> float:
    if isinstance(mu, JacobiWeight):
        return 1.0 / (mu.alpha + 1.0)
    if isinstance(mu, PowerWeight):
        return 1.0 / (mu.exponent + 1.0)
    if isinstance(mu, CantorSelfSimilar):
        return 1.0
    if isinstance(mu, Atomic):
        return math.fsum(mu.weights)
    return mu.constant


def _cantor_tail(r: float, eps: float) -> float:
    log_r = math.log(r)
    total = 0.0
    scale = 1.0
    for _ in range(_CANTOR_TAIL_DEPTH):
        if eps >= 1.0 - _SNAP:
            return total + scale
        levels = math.floor(math.log(eps) / log_r + 1e-9)
        if levels > 0:
            eps = math.exp(math.log(eps) - levels * log_r)
            scale *= 0.5**levels
        if eps >= 1.0 - _SNAP:
            return total + scale
        # the right copy is covered; what remains lies in the left copy
        total += 0.5 * scale
        if eps <= 1.0 - r:
            return total
        scale *= 0.5
        eps = (eps - (1.0 - r)) / r

    return total


def tail(mu: MeasureSpec, eps: float, /) -> float:
    """
    ``mu([1 - eps, 1])``.

    >>> tail(JacobiWeight(1.0), 0.1)
    0.005000000000000001

    :raises DomainError: eps outside (0, 1]
    """
    if not 0.0 < eps <= 1.0:
        raise DomainError(f"eps must lie in (0, 1], got {eps!r}")
    if isinstance(mu, JacobiWeight):
        return eps ** (mu.alpha + 1.0) / (mu.alpha + 1.0)
    if isinstance(mu, PowerWeight):
        a = mu.exponent + 1.0
        return -math.expm1(a * math.log1p(-eps)) / a if eps < 1.0 else 1.0 / a
    if isinstance(mu, CantorSelfSimilar):
        return _cantor_tail(mu.r, eps)
    if isinstance(mu, Atomic):
        cut = 1.0 - eps
        return math.fsum(w for x, w in zip(mu.points, mu.weights) if x >= cut)
    return mu.constant * eps**mu.beta


@functools.lru_cache(maxsize=8)
def cantor_atoms(r: float, depth: int, /) -> Tuple[FloatArray, float]:
    """
    Barycentres of the ``2 ** depth`` construction intervals, each carrying
    mass ``2 ** -depth``. Returned arrays are read-only.
    """
    if depth < 0:
        raise DomainError(f"depth must be nonnegative, got {depth!r}")
    left = np.zeros(1, dtype=np.float64)
    for _ in range(depth):
        left = np.concatenate((left * r, left * r + (1.0 - r)))
    points = left + 0.5 * r**depth
    points.flags.writeable = False
    return points, 0.5**depth


_moment_tables: Dict[float, FloatArray] = {}
_moment_lock = threading.Lock()


def cantor_moment_table(r: float, n: int, /) -> FloatArray:
    """
    Integer moments ``m_0 .. m_n`` of the Cantor measure with contraction r,
    from ``m_n (1 - r**n) = 1/2 sum_{k<n} C(n,k) r**k (1-r)**(n-k) m_k``.
    """
    with _moment_lock:
        table = _moment_tables.get(r)
        if table is not None and len(table) > n:
            return table[: n + 1]
        start = 1 if table is None else len(table)
        grown = np.empty(max(n + 1, 1), dtype=np.float64)
        grown[0] = 1.0
        if table is not None:
            grown[:start] = table
        for order in range(start, n + 1):
            weights = stats.binom.pmf(np.arange(order), order, r)
            grown[order] = (
                0.5 * float(np.dot(weights, grown[:order])) / -math.expm1(order * math.log(r))
            )
        grown.flags.writeable = False
        _moment_tables[r] = grown
        return grown[: n + 1]


def _atom_sum(g: Integrand, points: FloatArray, weight: float) -> FloatArray:
    total: Union[FloatArray, float] = 0.0
    for start in range(0, len(points), _ATOM_CHUNK):
        values = np.asarray(g(points[start : start + _ATOM_CHUNK]), dtype=np.float64)
        total = total + np.sum(values, axis=-1)
    return np.asarray(total, dtype=np.float64) * weight


def _cantor_integral(
    mu: CantorSelfSimilar, g: Integrand, cfg: QuadratureConfig
) -> Tuple[FloatArray, int]:
    previous: Optional[FloatArray] = None
    value = np.zeros(1)
    error = np.full(1, math.inf)
    for depth in range(min(_CANTOR_START_DEPTH, cfg.atom_depth), cfg.atom_depth + 1):
        points, weight = cantor_atoms(mu.r, depth)
        value = _atom_sum(g, points, weight)
        if previous is not None:
            error = np.abs(value - previous)
            tolerance = np.maximum(cfg.rel_tol * np.abs(value), cfg.abs_floor)
            if bool(np.all(error <= tolerance)):
                return value, depth
        previous = value
        log.debug("cantor depth %d not yet converged", depth)

    worst = int(np.argmax(np.atleast_1d(error)))
    raise AccuracyError(
        float(np.atleast_1d(value)[worst]),
        float(np.atleast_1d(error)[worst]),
        f"Cantor atoms did not converge by depth {cfg.atom_depth}",
    )


def integrate_vector(
    mu: MeasureSpec,
    g: Integrand,
    cfg: Optional[QuadratureConfig] = None,
    *,
    breakpoints: Sequence[float] = (),
) -> FloatArray:
    """
    ``integral g dmu`` for scalar or vector valued ``g``.

    :raises UnsupportedMeasureError: mu is a tail envelope
    :raises AccuracyError: the tolerance was not reached
    """
    cfg = DEFAULT_CONFIG if cfg is None else cfg
    if isinstance(mu, JacobiWeight):
        value, _ = integrate_weighted_vector(g, mu.alpha, cfg, breakpoints=breakpoints)
        return value
    if isinstance(mu, PowerWeight):
        a = mu.exponent

        def weighted(t: FloatArray) -> FloatArray:
            return np.asarray(g(t), dtype=np.float64) * powers(np.array([a]), t)[0]

        value, _ = integrate_weighted_vector(weighted, 0.0, cfg, breakpoints=breakpoints)
        return value
    if isinstance(mu, CantorSelfSimilar):
        value, _ = _cantor_integral(mu, g, cfg)
        return value
    if isinstance(mu, Atomic):
        points = np.array(mu.points, dtype=np.float64)
        values = np.asarray(g(points), dtype=np.float64)
        return np.asarray(values @ np.array(mu.weights), dtype=np.float64)
    raise UnsupportedMeasureError("a tail envelope is not a measure to integrate against")


def integrate(
    mu: MeasureSpec,
    g: Integrand,
    cfg: Optional[QuadratureConfig] = None,
    *,
    breakpoints: Sequence[float] = (),
) -> float:
    """
    ``integral g dmu`` to the tolerance of ``cfg``.

    :raises UnsupportedMeasureError: mu is a tail envelope
    :raises AccuracyError: the tolerance was not reached
    """
    return float(integrate_vector(mu, g, cfg, breakpoints=breakpoints))


def _cantor_moment(
    mu: CantorSelfSimilar, lam: float, cfg: QuadratureConfig
) -> Tuple[float, float]:
    exponent = np.array([lam])

    def g(t: FloatArray) -> FloatArray:
        return powers(exponent, t)[0]

    settled, depth = _cantor_integral(mu, g, cfg)
    value = float(settled)
    tolerance = max(cfg.rel_tol * abs(value), cfg.abs_floor)
    bound = lam * mu.r**depth
    if bound > tolerance:
        needed = math.ceil(math.log(tolerance / lam) / math.log(mu.r))
        depth = min(max(needed, depth + 1), cfg.atom_depth)
        log.debug("cantor moment %g: Lipschitz bound needs depth %d", lam, needed)
        points, weight = cantor_atoms(mu.r, depth)
        value = float(_atom_sum(g, points, weight))
        bound = lam * mu.r**depth
    if bound > tolerance:
        raise AccuracyError(
            value,
            bound,
            f"Lipschitz bound {bound:.3g} for moment {lam:g} exceeds {tolerance:.3g} "
            f"at depth {depth}",
        )

    return value, bound


def moment_with_bound(
    mu: MeasureSpec, lam: float, cfg: Optional[QuadratureConfig] = None, /
) -> Tuple[float, float]:
    """
    ``integral t ** lam dmu`` with an error bound (zero for closed forms).

    Non-integer Cantor moments come from the atom approximation; the bound
    reported is the Lipschitz bound ``lam * r ** depth`` of the depth used.
    The depth grows until that bound is within ``rel_tol`` of the value (or
    below ``abs_floor``), up to ``atom_depth``.

    :raises DomainError: lam < 0
    :raises AccuracyError: the atoms did not settle, or the Lipschitz bound
        still exceeds the tolerance at ``atom_depth``; the error carries the
        bound
    """
    if not lam >= 0.0:
        raise DomainError(f"lambda must be nonnegative, got {lam!r}")
    cfg = DEFAULT_CONFIG if cfg is None else cfg
    if isinstance(mu, JacobiWeight):
        return beta_function(lam + 1.0, mu.alpha + 1.0), 0.0
    if isinstance(mu, PowerWeight):
        return 1.0 / (lam + mu.exponent + 1.0), 0.0
    if isinstance(mu, Atomic):
        points = np.array(mu.points, dtype=np.float64)
        value = float(powers(np.array([lam]), points)[0] @ np.array(mu.weights))
        return value, 0.0
    if isinstance(mu, CantorSelfSimilar):
        if lam == int(lam) and lam <= _MOMENT_TABLE_LIMIT:
            return float(cantor_moment_table(mu.r, int(lam))[-1]), 0.0
        return _cantor_moment(mu, lam, cfg)
    raise UnsupportedMeasureError("a tail envelope has no moments")


def moment(
    mu: MeasureSpec, lam: float, cfg: Optional[QuadratureConfig] = None, /
) -> float:
    """
    ``integral t ** lam dmu``.

    >>> moment(JacobiWeight(0.0), 3.0)
    0.25
    """
    return moment_with_bound(mu, lam, cfg)[0]


def lp_integrals(
    mu: MeasureSpec,
    functions: Sequence[MuntzPolynomial],
    p: float,
    cfg: Optional[QuadratureConfig] = None,
) -> FloatArray:
    """
    ``integral |f| ** p dmu`` for several polynomials, integrated together.

    On Lebesgue-type measures the interval is split where any of the
    polynomials changes sign, where ``|f| ** p`` has kinks.

    :raises DomainError: p <= 0
    """
    if not p > 0.0:
        raise DomainError(f"p must be positive, got {p!r}")
    if not functions:
        return np.zeros(0)
    exponents = sorted({e for f in functions for e, _ in f.terms})
    if not exponents:
        return np.zeros(len(functions))
    lam = np.array(exponents, dtype=np.float64)
    index = {e: i for i, e in enumerate(exponents)}
    matrix = np.zeros((len(functions), len(exponents)))
    for row, f in enumerate(functions):
        for e, c in f.terms:
            matrix[row, index[e]] = c

    def integrand(t: FloatArray) -> FloatArray:
        return np.abs(matrix @ powers(lam, t)) ** p

    breakpoints: Tuple[float, ...] = ()
    if isinstance(mu, (JacobiWeight, PowerWeight)):
        breakpoints = sign_changes(functions)
    integrals = integrate_vector(mu, integrand, cfg, breakpoints=breakpoints)
    return np.asarray(np.maximum(np.atleast_1d(integrals), 0.0), dtype=np.float64)


def lp_norms(
    mu: MeasureSpec,
    functions: Sequence[MuntzPolynomial],
    p: float,
    cfg: Optional[QuadratureConfig] = None,
) -> FloatArray:
    """
    ``L^p(mu)`` norms of several polynomials.
    """
    return np.asarray(lp_integrals(mu, functions, p, cfg) ** (1.0 / p), dtype=np.float64)


def lp_norm(
    mu: MeasureSpec,
    f: MuntzPolynomial,
    p: float,
    cfg: Optional[QuadratureConfig] = None,
) -> float:
    """
    ``(integral |f| ** p dmu) ** (1 / p)``.
    """
    return float(lp_norms(mu, (f,), p, cfg)[0])


def _cantor_resolvent(r: float, rho: FloatArray, depth: int) -> FloatArray:
    """
    Self-similarity gives
    ``R(rho) = R(r rho) / 2 + R(rho') / (2 (1 - rho (1 - r)))`` with
    ``rho' = r rho / (1 - rho (1 - r))``, whose gap ``1 - rho'`` grows by about
    ``1 / r`` per step; arguments far from 1 are summed over atoms.
    """
    points, weight = cantor_atoms(r, depth)

    def far(values: FloatArray) -> FloatArray:
        return _atom_sum(
            lambda t: 1.0 / (1.0 - values[:, np.newaxis] * t[np.newaxis, :]),
            points,
            weight,
        )

    result = np.zeros_like(rho)
    scale = np.ones_like(rho)
    current = rho.copy()
    active = np.ones(rho.shape, dtype=bool)
    while np.any(active):
        near = active & (current > 1.0 - _RESOLVENT_FAR_GAP)
        done = active & ~near
        if np.any(done):
            result[done] += scale[done] * far(current[done])
            active &= ~done
        if np.any(near):
            shrink = 1.0 - current[near] * (1.0 - r)
            result[near] += 0.5 * scale[near] * far(r * current[near])
            scale[near] *= 0.5 / shrink
            current[near] = r * current[near] / shrink

    return result


def resolvent(
    mu: MeasureSpec, rhos: FloatArray, cfg: Optional[QuadratureConfig] = None
) -> FloatArray:
    """
    ``integral dmu(t) / (1 - rho t)`` for every rho in ``rhos`` (all in [0, 1)).

    :raises DomainError: a rho outside [0, 1)
    """
    cfg = DEFAULT_CONFIG if cfg is None else cfg
    rho = np.asarray(rhos, dtype=np.float64)
    if rho.size and not (np.all(rho >= 0.0) and np.all(rho < 1.0)):
        raise DomainError("rho values must lie in [0, 1)")
    if isinstance(mu, JacobiWeight):
        return np.asarray(
            special.hyp2f1(1.0, 1.0, mu.alpha + 2.0, rho) / (mu.alpha + 1.0),
            dtype=np.float64,
        )
    if isinstance(mu, PowerWeight):
        a = mu.exponent + 1.0
        return np.asarray(special.hyp2f1(1.0, a, a + 1.0, rho) / a, dtype=np.float64)
    if isinstance(mu, Atomic):
        points = np.array(mu.points, dtype=np.float64)
        weights = np.array(mu.weights, dtype=np.float64)
        return np.asarray(
            (weights[np.newaxis, :] / (1.0 - rho[:, np.newaxis] * points)).sum(axis=1),
            dtype=np.float64,
        )
    if isinstance(mu, CantorSelfSimilar):
        return _cantor_resolvent(mu.r, rho, min(_RESOLVENT_DEPTH, cfg.atom_depth))
    raise UnsupportedMeasureError("a tail envelope has no resolvent")


def _check_grid(eps_grid: Sequence[float]) -> Tuple[float, ...]:
    grid = tuple(float(e) for e in eps_grid)
    if len(grid) < 4:
        raise DomainError("eps grid needs at least 4 points")
    if any(not 0.0 < e <= 1.0 for e in grid):
        raise DomainError("eps grid must lie in (0, 1]")
    if max(grid) / min(grid) < 1e3:
        raise DomainError("eps grid must span at least 3 decades")
    return grid


def beta_class_fit(
    mu: MeasureSpec, eps_grid: Sequence[float], beta: Optional[float] = None
) -> BetaClassFit:
    """
    Least-squares slope of ``log tail`` against ``log eps``, ignoring zero
    tails.

    :raises DomainError: the grid is too small or outside (0, 1]
    :raises DegenerateFitError: fewer than two nonzero tails, or no decay
    """
    grid = _check_grid(eps_grid)
    tails = np.array([tail(mu, e) for e in grid])
    eps = np.array(grid)
    keep = tails > 0.0
    if int(np.count_nonzero(keep)) < 2:
        raise DegenerateFitError("tails vanish on the grid")
    x = np.log(eps[keep])
    y = np.log(tails[keep])
    slope, intercept = np.polyfit(x, y, 1)
    if not slope > 0.0:
        raise DegenerateFitError(f"tails do not decay (slope {slope:.3g})")
    exponent = float(slope) if beta is None else beta
    return BetaClassFit(
        beta_hat=float(slope),
        constant_hat=float(math.exp(intercept)),
        grid=grid,
        residuals=tuple(float(r) for r in y - (slope * x + intercept)),
        sup_ratio=float(np.max(tails / eps**exponent)),
    )


def classify(
    mu: MeasureSpec, beta: float, eps_grid: Sequence[float]
) -> MembershipVerdict:
    """
    Evidence for ``mu([1 - eps, 1]) <= C eps ** beta``: the ratio on the finest
    third of the grid must not exceed four times its value on the rest.
    """
    if not beta > 0.0:
        raise DomainError(f"beta must be positive, got {beta!r}")
    grid = sorted(_check_grid(eps_grid))
    ratios = [tail(mu, e) / e**beta for e in grid]
    split = max(1, len(grid) // 3)
    fine = max(ratios[:split])
    coarse = max(ratios[split:])
    return MembershipVerdict(
        beta=beta,
        grid=tuple(grid),
        ratios=tuple(ratios),
        sup_ratio=max(ratios),
        fine_ratio=fine,
        coarse_ratio=coarse,
        bounded=fine <= 4.0 * coarse,
    )
