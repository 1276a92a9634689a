"""
Müntz polynomials: evaluation, differentiation, dilation, sup-norm and
block decomposition.
"""

import dataclasses
import math
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np
from scipy import optimize

from .errors import DegenerateInputError, DomainError
from .spectrum import BlockSpectrum
from .typing import FloatArray


__all__ = (
    "BlockDecomposition",
    "MuntzPolynomial",
    "SupNorm",
    "block_decompose",
    "derivative",
    "dilate",
    "eval",
    "powers",
    "search_grid",
    "sign_changes",
    "sup_norm",
)

_UNIFORM_POINTS = 2048
_CLUSTER_POINTS = 512
_CLOSEST_GAP = 1e-14


@dataclasses.dataclass(frozen=True)
class MuntzPolynomial:
    """
    A finite sum ``sum(a * t ** lam for lam, a in terms)``.

    Exponents are strictly increasing and exceed -1 so that every term is
    integrable on [0, 1]. Exponent 0 is the constant term; negative exponents
    only arise from differentiating terms with exponent below 1. Zero
    coefficients are never stored.

    >>> f = MuntzPolynomial(((2.0, 1.0), (4.0, -1.0)))
    >>> f(np.array([0.5]))
    array([0.1875])
    """

    terms: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        previous = -math.inf
        for exponent, coefficient in self.terms:
            if not exponent > -1.0 or not math.isfinite(exponent):
                raise DomainError(f"exponent {exponent!r} must exceed -1")
            if exponent <= previous:
                raise DomainError("exponents must be strictly increasing")
            if coefficient == 0.0 or not math.isfinite(coefficient):
                raise DomainError(f"coefficient {coefficient!r} must be finite, nonzero")
            previous = exponent

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[float, float]], /) -> "MuntzPolynomial":
        """
        Build from unordered pairs, adding repeated exponents and dropping
        zero coefficients.
        """
        collected: Dict[float, float] = {}
        for exponent, coefficient in terms:
            key = float(exponent)
            collected[key] = collected.get(key, 0.0) + float(coefficient)
        return cls(
            tuple(
                (exponent, coefficient)
                for exponent, coefficient in sorted(collected.items())
                if coefficient != 0.0
            )
        )

    @classmethod
    def monomial(cls, exponent: float, coefficient: float = 1.0, /) -> "MuntzPolynomial":
        return cls(((float(exponent), float(coefficient)),))

    @property
    def exponents(self) -> FloatArray:
        return np.array([e for e, _ in self.terms], dtype=np.float64)

    @property
    def coefficients(self) -> FloatArray:
        return np.array([c for _, c in self.terms], dtype=np.float64)

    @property
    def has_constant_term(self) -> bool:
        return any(e == 0.0 for e, _ in self.terms)

    @property
    def vanishes_at_zero(self) -> bool:
        return all(e > 0.0 for e, _ in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __call__(self, t: FloatArray, /) -> FloatArray:
        """
        Vectorized evaluation without domain checks.
        """
        points = np.asarray(t, dtype=np.float64)
        if not self.terms:
            return np.zeros_like(points)
        return self.coefficients @ powers(self.exponents, points)

    def __neg__(self) -> "MuntzPolynomial":
        return self.scaled(-1.0)

    def __add__(self, other: "MuntzPolynomial") -> "MuntzPolynomial":
        return MuntzPolynomial.from_terms((*self.terms, *other.terms))

    def __sub__(self, other: "MuntzPolynomial") -> "MuntzPolynomial":
        return self + (-other)

    def scaled(self, factor: float, /) -> "MuntzPolynomial":
        if factor == 0.0:
            return MuntzPolynomial()
        return MuntzPolynomial(tuple((e, factor * c) for e, c in self.terms))


class SupNorm(NamedTuple):
    value: float
    argmax: float


class BlockDecomposition(NamedTuple):
    """
    Block components of a polynomial, one entry per block of the spectrum
    (the zero polynomial where a block is unused).
    """

    blocks: Tuple[MuntzPolynomial, ...]
    anchors: Tuple[float, ...]

    def total(self) -> MuntzPolynomial:
        terms: List[Tuple[float, float]] = []
        for block in self.blocks:
            terms.extend(block.terms)
        return MuntzPolynomial(tuple(terms))

    def nonzero(self) -> Tuple[int, ...]:
        return tuple(k for k, block in enumerate(self.blocks) if block)


def powers(exponents: FloatArray, t: FloatArray, /) -> FloatArray:
    """
    Matrix ``t ** exponents`` of shape (len(exponents), len(t)), computed as
    ``exp(lam * log t)`` with the limit at t = 0.
    """
    lam = exponents[:, np.newaxis]
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.exp(lam * np.log(t)[np.newaxis, :])
    at_zero = np.where(lam > 0.0, 0.0, np.where(lam == 0.0, 1.0, np.inf))
    return np.where(t[np.newaxis, :] == 0.0, at_zero, values)


def eval(f: MuntzPolynomial, t: float, /) -> float:
    """
    Value of ``f`` at a point of [0, 1].

    :raises DomainError: t outside [0, 1]
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t!r}")
    return float(f(np.array([t], dtype=np.float64))[0])


def derivative(f: MuntzPolynomial, /) -> MuntzPolynomial:
    """
    Term-wise derivative ``lam * a * t ** (lam - 1)``; constants vanish.
    """
    return MuntzPolynomial(
        tuple((e - 1.0, e * c) for e, c in f.terms if e != 0.0)
    )


def dilate(f: MuntzPolynomial, rho: float, /) -> MuntzPolynomial:
    """
    The polynomial ``t -> f(rho * t)``.

    :raises DomainError: rho outside (0, 1]
    """
    if not 0.0 < rho <= 1.0:
        raise DomainError(f"rho must lie in (0, 1], got {rho!r}")
    if rho == 1.0:
        return f
    log_rho = math.log(rho)
    return MuntzPolynomial(
        tuple(
            (e, scaled)
            for e, c in f.terms
            if (scaled := c * math.exp(e * log_rho)) != 0.0
        )
    )


def search_grid(exponents: Sequence[float], /) -> FloatArray:
    """
    Uniform grid on [0, 1] plus a log-spaced cluster next to t = 1 whose
    reach scales like ``10 / max(exponents)``.
    """
    uniform = np.linspace(0.0, 1.0, _UNIFORM_POINTS)
    largest = max(max(exponents, default=1.0), 1.0)
    reach = min(1.0, 10.0 / largest)
    gaps = np.logspace(math.log10(reach), math.log10(_CLOSEST_GAP), _CLUSTER_POINTS)
    return np.unique(np.concatenate((uniform, 1.0 - gaps)))


def sup_norm(f: MuntzPolynomial, /) -> SupNorm:
    """
    ``max |f|`` on [0, 1] and a point where it is attained.

    The composite :func:`search_grid` locates the best cell and a bounded
    scalar search refines inside it.

    :raises DegenerateInputError: f is the zero polynomial
    """
    if not f:
        raise DegenerateInputError("sup-norm of the zero polynomial")
    if any(e < 0.0 for e, _ in f.terms):
        return SupNorm(value=math.inf, argmax=0.0)

    grid = search_grid(tuple(e for e, _ in f.terms))
    values = np.abs(f(grid))
    best = int(np.argmax(values))
    best_value = float(values[best])
    best_point = float(grid[best])
    lower = float(grid[max(best - 1, 0)])
    upper = float(grid[min(best + 1, len(grid) - 1)])
    if upper > lower:
        refined = optimize.minimize_scalar(
            lambda x: -abs(float(f(np.array([x]))[0])),
            bounds=(lower, upper),
            method="bounded",
            options={"xatol": 1e-15},
        )
        if -float(refined.fun) > best_value:
            best_value = -float(refined.fun)
            best_point = float(refined.x)

    return SupNorm(value=best_value, argmax=best_point)


def block_decompose(f: MuntzPolynomial, s: BlockSpectrum, /) -> BlockDecomposition:
    """
    Split ``f`` into its components over the blocks of ``s``.

    :raises MembershipError: an exponent of f is not in the spectrum
    """
    grouped: List[List[Tuple[float, float]]] = [[] for _ in range(s.block_count)]
    for exponent, coefficient in f.terms:
        grouped[s.block_of(exponent)].append((exponent, coefficient))

    return BlockDecomposition(
        blocks=tuple(MuntzPolynomial(tuple(terms)) for terms in grouped),
        anchors=s.anchors,
    )


def sign_changes(functions: Sequence[MuntzPolynomial], /) -> Tuple[float, ...]:
    """
    Interior points of (0, 1) where one of the polynomials changes sign.

    Used as quadrature breakpoints, where ``|f| ** p`` has kinks.
    """
    nonzero = [f for f in functions if f]
    if not nonzero:
        return ()
    exponents = [e for f in nonzero for e, _ in f.terms]
    grid = search_grid(exponents)[1:-1]
    roots: List[float] = []
    for f in nonzero:
        values = f(grid)
        flips = np.nonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0.0)[0]
        for index in flips:
            root = optimize.brentq(
                lambda x, g=f: float(g(np.array([x]))[0]),
                float(grid[index]),
                float(grid[index + 1]),
                xtol=1e-15,
            )
            roots.append(float(root))

    return tuple(sorted(set(roots)))
