"""
Lacunary and quasi-lacunary exponent sequences with their block structure.
"""

import dataclasses
import math
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import (
    BlockTooLargeError,
    DomainError,
    DuplicateExponentError,
    MembershipError,
    NotIncreasingError,
    RatioCollapseError,
    SpectrumError,
)


__all__ = (
    "DEFAULT_RATIO_FLOOR",
    "BlockSpectrum",
    "generate_lacunary",
    "generate_quasi_lacunary",
    "validate",
)

DEFAULT_RATIO_FLOOR = 1.1
_EXPONENT_RTOL = 1e-12


@dataclasses.dataclass(frozen=True)
class BlockSpectrum:
    """
    A finite increasing sequence of positive exponents split into blocks.

    Blocks are the runs ``exponents[block_starts[k]:block_starts[k + 1]]``.
    Every inter-block ratio (first exponent of a block over the last
    exponent of the block before it) lies in
    ``[ratio_lower, ratio_lower ** (2 * block_cap)]`` and no block holds more
    than ``block_cap`` exponents.

    Instances are built through :meth:`from_exponents` or the generators,
    which validate before returning.
    """

    exponents: Tuple[float, ...]
    block_starts: Tuple[int, ...]
    ratio_lower: float
    block_cap: int

    @classmethod
    def from_exponents(
        cls,
        exponents: Sequence[float],
        block_starts: Optional[Sequence[int]] = None,
        /,
        *,
        block_cap: Optional[int] = None,
        ratio_floor: float = DEFAULT_RATIO_FLOOR,
    ) -> "BlockSpectrum":
        """
        Validate and wrap an exponent sequence; singleton blocks by default.

        :raises SpectrumError: the sequence fails validation
        """
        values = tuple(float(x) for x in exponents)
        starts = (
            tuple(range(len(values)))
            if block_starts is None
            else tuple(int(i) for i in block_starts)
        )
        q, cap = validate(values, starts, block_cap=block_cap, ratio_floor=ratio_floor)
        return cls(exponents=values, block_starts=starts, ratio_lower=q, block_cap=cap)

    def __len__(self) -> int:
        return len(self.exponents)

    @property
    def blocks(self) -> Tuple[Tuple[float, ...], ...]:
        ends = (*self.block_starts[1:], len(self.exponents))
        return tuple(
            self.exponents[start:end] for start, end in zip(self.block_starts, ends)
        )

    @property
    def block_count(self) -> int:
        return len(self.block_starts)

    @property
    def anchors(self) -> Tuple[float, ...]:
        """
        Smallest exponent of every block.
        """
        return tuple(self.exponents[start] for start in self.block_starts)

    @property
    def muntz_sum(self) -> float:
        """
        Partial sum of ``1 / lambda`` over the (finite) spectrum.
        """
        return math.fsum(1.0 / x for x in self.exponents)

    def index_of(self, exponent: float, /) -> int:
        """
        :raises MembershipError: the exponent is not in the spectrum
        """
        position = _search(self.exponents, exponent)
        if position is None:
            raise MembershipError(exponent, f"exponent {exponent!r} not in spectrum")
        return position

    def block_of(self, exponent: float, /) -> int:
        """
        Index of the block containing ``exponent``.

        :raises MembershipError: the exponent is not in the spectrum
        """
        position = self.index_of(exponent)
        block = 0
        for k, start in enumerate(self.block_starts):
            if start <= position:
                block = k
        return block

    def truncated(self, count: int, /) -> "BlockSpectrum":
        """
        The first ``count`` blocks as a spectrum of their own.
        """
        if not 1 <= count <= self.block_count:
            raise DomainError(f"count must be in [1, {self.block_count}], got {count}")
        starts = self.block_starts[:count]
        end = self.block_starts[count] if count < self.block_count else len(self)
        return BlockSpectrum.from_exponents(
            self.exponents[:end], starts, ratio_floor=min(self.ratio_lower, 1.1)
        )


def _search(values: Sequence[float], target: float) -> Optional[int]:
    lo, hi = 0, len(values)
    while lo < hi:
        mid = (lo + hi) // 2
        if values[mid] < target and not math.isclose(
            values[mid], target, rel_tol=_EXPONENT_RTOL
        ):
            lo = mid + 1
        else:
            hi = mid
    if lo < len(values) and math.isclose(values[lo], target, rel_tol=_EXPONENT_RTOL):
        return lo
    return None


def _split(values: Sequence[float], starts: Sequence[int]) -> List[Sequence[float]]:
    ends = (*starts[1:], len(values))
    return [values[start:end] for start, end in zip(starts, ends)]


def validate(
    exponents: Sequence[float],
    block_starts: Sequence[int],
    /,
    *,
    block_cap: Optional[int] = None,
    ratio_floor: float = DEFAULT_RATIO_FLOOR,
) -> Tuple[float, int]:
    """
    Check the block-size and inter-block ratio conditions.

    Returns the largest ``q`` and smallest ``N`` such that every block has at
    most N exponents and every inter-block ratio lies in ``[q, q ** (2N)]``.
    A spectrum with a single block has no ratio constraint and reports
    ``q = inf``.

    :param exponents: candidate sequence
    :param block_starts: index of the first exponent of every block
    :keyword block_cap: largest admissible N, if any
    :keyword ratio_floor: inter-block ratios below this count as collapsed

    :raises NotIncreasingError: an exponent is nonpositive or out of order
    :raises RatioCollapseError: an inter-block ratio is below ``ratio_floor``
    :raises BlockTooLargeError: a block is larger than ``block_cap``
    :raises SpectrumError: the subgeometric bound needs N above ``block_cap``
    """
    values = [float(x) for x in exponents]
    if not values:
        raise DomainError("spectrum must contain at least one exponent")
    for index, value in enumerate(values):
        if not value > 0.0 or math.isinf(value):
            raise NotIncreasingError(index, f"exponent {value!r} is not positive")
        if index and value <= values[index - 1]:
            raise NotIncreasingError(
                index, f"exponent {value!r} does not exceed {values[index - 1]!r}"
            )

    starts = [int(i) for i in block_starts]
    if not starts or starts[0] != 0:
        raise DomainError("block_starts must begin at index 0")
    if any(b <= a for a, b in zip(starts[:-1], starts[1:])) or starts[-1] >= len(
        values
    ):
        raise DomainError("block_starts must be increasing and inside the sequence")
    if ratio_floor <= 1.0:
        raise DomainError(f"ratio_floor must exceed 1, got {ratio_floor!r}")

    blocks = _split(values, starts)
    largest = max(len(block) for block in blocks)
    if block_cap is not None:
        for k, block in enumerate(blocks):
            if len(block) > block_cap:
                raise BlockTooLargeError(
                    k, f"block {k} holds {len(block)} exponents, cap is {block_cap}"
                )

    ratios = [nxt[0] / prev[-1] for prev, nxt in zip(blocks[:-1], blocks[1:])]
    for k, ratio in enumerate(ratios):
        if ratio < ratio_floor:
            raise RatioCollapseError(
                k + 1,
                f"ratio {ratio:.6g} between blocks {k} and {k + 1} "
                f"is below {ratio_floor:g}",
            )
    if not ratios:
        return math.inf, largest

    q = min(ratios)
    needed = math.ceil(math.log(max(ratios)) / (2.0 * math.log(q)) - 1e-9)
    cap = max(largest, needed, 1)
    if block_cap is not None and cap > block_cap:
        worst = ratios.index(max(ratios))
        raise SpectrumError(
            "not-subgeometric",
            worst + 1,
            f"ratio {max(ratios):.6g} needs N={cap}, cap is {block_cap}",
        )

    return q, cap


def generate_lacunary(lambda0: float, ratio: float, count: int, /) -> BlockSpectrum:
    """
    Geometric exponents ``lambda0 * ratio ** k`` in singleton blocks.

    >>> generate_lacunary(1.0, 2.0, 4).exponents
    (1.0, 2.0, 4.0, 8.0)

    :raises DomainError: lambda0 <= 0, ratio <= 1 or count < 1
    """
    if not lambda0 > 0.0:
        raise DomainError(f"lambda0 must be positive, got {lambda0!r}")
    if not ratio > 1.0:
        raise DomainError(f"ratio must exceed 1, got {ratio!r}")
    if count < 1:
        raise DomainError(f"count must be at least 1, got {count!r}")

    exponents = [lambda0 * ratio**k for k in range(count)]
    q, cap = validate(
        exponents,
        range(count),
        block_cap=1,
        ratio_floor=min(DEFAULT_RATIO_FLOOR, ratio * (1.0 - 1e-9)),
    )
    return BlockSpectrum(
        exponents=tuple(exponents),
        block_starts=tuple(range(count)),
        ratio_lower=ratio if math.isinf(q) else q,
        block_cap=cap,
    )


def _merge(bases: Iterable[float], ratio: float, count: int) -> List[float]:
    merged = sorted(base * ratio**k for base in bases for k in range(count))
    for index in range(1, len(merged)):
        if math.isclose(merged[index], merged[index - 1], rel_tol=_EXPONENT_RTOL):
            raise DuplicateExponentError(
                index, f"exponent {merged[index]!r} generated twice"
            )
    return merged


def generate_quasi_lacunary(
    bases: Sequence[float], ratio: float, count: int, /
) -> BlockSpectrum:
    """
    Union of the lacunary sequences ``base * ratio ** k``, grouped in blocks.

    Block ``k`` holds the ``k``-th generation ``{base * ratio ** k}``. Bases
    lie in ``[1, ratio)``, so generations never interleave and every
    inter-block ratio equals ``ratio * min(bases) / max(bases)``.

    >>> generate_quasi_lacunary([1.0, 1.5], 3.0, 2).blocks
    ((1.0, 1.5), (3.0, 4.5))

    :raises DomainError: bases empty or outside [1, ratio), count < 1
    :raises DuplicateExponentError: two bases generate the same exponent
    """
    if not bases:
        raise DomainError("bases must not be empty")
    if not ratio > 1.0:
        raise DomainError(f"ratio must exceed 1, got {ratio!r}")
    if any(not 1.0 <= base < ratio for base in bases):
        raise DomainError(f"bases must lie in [1, {ratio!r})")
    if count < 1:
        raise DomainError(f"count must be at least 1, got {count!r}")

    exponents = _merge(bases, ratio, count)
    width = len(bases)
    gap = ratio * min(bases) / max(bases)
    starts = tuple(range(0, len(exponents), width))
    q, cap = validate(
        exponents,
        starts,
        block_cap=width,
        ratio_floor=min(DEFAULT_RATIO_FLOOR, gap * (1.0 - 1e-9)),
    )
    return BlockSpectrum(
        exponents=tuple(exponents),
        block_starts=starts,
        ratio_lower=gap if math.isinf(q) else q,
        block_cap=cap,
    )
