"""
Spectrum generation and validation.
"""

import math
from typing import List

import pytest
from hypothesis import given
from hypothesis.strategies import floats, integers, lists

from muntzlab import (
    BlockSpectrum,
    BlockTooLargeError,
    DomainError,
    DuplicateExponentError,
    MembershipError,
    NotIncreasingError,
    RatioCollapseError,
    SpectrumError,
    generate_lacunary,
    generate_quasi_lacunary,
    validate,
)


def test_generate_lacunary() -> None:
    s = generate_lacunary(1.0, 2.0, 4)

    assert s.exponents == (1.0, 2.0, 4.0, 8.0)
    assert s.block_cap == 1
    assert s.ratio_lower == 2.0
    assert s.block_count == 4


def test_generate_lacunary_single_term() -> None:
    s = generate_lacunary(1.0, 2.0, 1)

    assert s.exponents == (1.0,)
    assert s.blocks == ((1.0,),)
    assert s.block_cap == 1


def test_generate_lacunary_fractional() -> None:
    s = generate_lacunary(0.5, 1.5, 3)

    assert s.exponents == (0.5, 0.75, 1.125)
    assert s.ratio_lower == pytest.approx(1.5, rel=1e-12)


@pytest.mark.parametrize(
    "lambda0,ratio,count",
    ((0.0, 2.0, 3), (1.0, 1.0, 3), (1.0, 2.0, 0)),
    ids=("lambda0", "ratio", "count"),
)
def test_generate_lacunary_domain(lambda0: float, ratio: float, count: int) -> None:
    with pytest.raises(DomainError):
        generate_lacunary(lambda0, ratio, count)


@given(
    lambda0=floats(min_value=0.1, max_value=10.0),
    ratio=floats(min_value=1.2, max_value=4.0),
    count=integers(min_value=1, max_value=30),
)
def test_generated_lacunary_always_validates(
    lambda0: float, ratio: float, count: int
) -> None:
    s = generate_lacunary(lambda0, ratio, count)
    q, cap = validate(s.exponents, s.block_starts)

    assert cap == 1
    assert s.block_cap == 1
    assert s.ratio_lower == pytest.approx(ratio, rel=1e-9)
    if count > 1:
        assert q == pytest.approx(ratio, rel=1e-9)


def test_quasi_single_base_matches_lacunary() -> None:
    quasi = generate_quasi_lacunary([1.0], 2.0, 4)
    plain = generate_lacunary(1.0, 2.0, 4)

    assert quasi.exponents == plain.exponents
    assert quasi.block_starts == plain.block_starts
    assert quasi.block_cap == 1


def test_quasi_two_bases() -> None:
    s = generate_quasi_lacunary([1.0, 1.5], 3.0, 3)

    assert s.exponents == (1.0, 1.5, 3.0, 4.5, 9.0, 13.5)
    assert s.blocks == ((1.0, 1.5), (3.0, 4.5), (9.0, 13.5))
    assert s.block_cap == 2
    assert s.ratio_lower == 2.0


@pytest.mark.parametrize(
    "bases,ratio",
    (([1.0, 1.7, 1.8], 3.0), ([1.0, 2.9], 3.0), ([1.0, 1.2, 1.9, 3.5], 4.0)),
    ids=("straddle-root", "near-ratio", "four-bases"),
)
def test_quasi_blocks_are_generations(bases: List[float], ratio: float) -> None:
    s = generate_quasi_lacunary(bases, ratio, 4)

    assert s.block_starts == tuple(range(0, 4 * len(bases), len(bases)))
    for k, block in enumerate(s.blocks):
        assert block == pytest.approx([base * ratio**k for base in bases])
    assert s.block_cap == len(bases)
    assert s.ratio_lower == pytest.approx(ratio * bases[0] / bases[-1])


def test_quasi_duplicate_exponents() -> None:
    with pytest.raises(DuplicateExponentError) as excinfo:
        generate_quasi_lacunary([1.0, 1.0], 2.0, 2)

    assert excinfo.value.constraint == "duplicate-exponent"


@pytest.mark.parametrize(
    "bases,ratio,count",
    (([], 2.0, 2), ([0.5], 2.0, 2), ([1.0, 2.5], 2.0, 2), ([1.0], 1.0, 2), ([1.0], 2.0, 0)),
    ids=("empty", "base-below", "base-above", "ratio", "count"),
)
def test_quasi_domain(bases: List[float], ratio: float, count: int) -> None:
    with pytest.raises(DomainError):
        generate_quasi_lacunary(bases, ratio, count)


def test_quasi_fixture(quasi_spectrum: BlockSpectrum) -> None:
    assert len(quasi_spectrum) == 16
    assert all(len(block) == 2 for block in quasi_spectrum.blocks)
    assert quasi_spectrum.ratio_lower == pytest.approx(8.0 / 3.0)
    assert quasi_spectrum.block_cap == 2


def test_validate_geometric() -> None:
    assert validate([1.0, 2.0, 4.0, 8.0], [0, 1, 2, 3]) == (2.0, 1)


def test_validate_paired_blocks() -> None:
    assert validate([1.0, 1.5, 3.0, 4.5, 9.0, 13.5], [0, 2, 4]) == (2.0, 2)


def test_validate_single_block() -> None:
    q, cap = validate([1.0, 2.0, 3.0], [0])

    assert math.isinf(q)
    assert cap == 3


def test_validate_ratio_collapse() -> None:
    exponents = [float(k) for k in range(1, 21)]

    with pytest.raises(RatioCollapseError) as excinfo:
        validate(exponents, range(20))

    # 12 / 11 is the first ratio below 1.1
    assert excinfo.value.constraint == "ratio-collapse"
    assert excinfo.value.index == 11


@pytest.mark.parametrize(
    "exponents,index",
    (([1.0, 3.0, 2.0], 2), ([0.0, 1.0], 0), ([-1.0, 2.0], 0), ([1.0, 1.0], 1)),
    ids=("decreasing", "zero", "negative", "repeated"),
)
def test_validate_not_increasing(exponents: List[float], index: int) -> None:
    with pytest.raises(NotIncreasingError) as excinfo:
        validate(exponents, range(len(exponents)))

    assert excinfo.value.constraint == "not-increasing"
    assert excinfo.value.index == index


def test_validate_block_cap() -> None:
    with pytest.raises(BlockTooLargeError) as excinfo:
        validate([1.0, 1.5, 3.0, 4.5], [0, 2], block_cap=1)

    assert excinfo.value.index == 0


def test_validate_subgeometric_bound() -> None:
    assert validate([1.0, 2.0, 1000.0], [0, 1, 2]) == (2.0, 5)

    with pytest.raises(SpectrumError) as excinfo:
        validate([1.0, 2.0, 1000.0], [0, 1, 2], block_cap=1)

    assert excinfo.value.constraint == "not-subgeometric"
    assert excinfo.value.index == 2


@pytest.mark.parametrize(
    "starts",
    ([], [1], [0, 0], [0, 5]),
    ids=("empty", "offset", "repeated", "outside"),
)
def test_validate_block_starts(starts: List[int]) -> None:
    with pytest.raises(DomainError):
        validate([1.0, 2.0, 4.0], starts)


def test_validate_empty() -> None:
    with pytest.raises(DomainError):
        validate([], [0])


@given(ratios=lists(floats(min_value=1.2, max_value=10.0), min_size=1, max_size=12))
def test_ratios_within_reported_bounds(ratios: List[float]) -> None:
    exponents = [1.0]
    for ratio in ratios:
        exponents.append(exponents[-1] * ratio)
    q, cap = validate(exponents, range(len(exponents)))
    actual = [b / a for a, b in zip(exponents[:-1], exponents[1:])]

    assert q > 1.0
    for ratio in actual:
        assert q <= ratio * (1.0 + 1e-12)
        assert ratio <= q ** (2 * cap) * (1.0 + 1e-8)


@given(
    ratios=lists(floats(min_value=1.2, max_value=10.0), min_size=1, max_size=8),
    scale=floats(min_value=1.0, max_value=100.0),
)
def test_scaling_keeps_block_cap(ratios: List[float], scale: float) -> None:
    exponents = [1.0]
    for ratio in ratios:
        exponents.append(exponents[-1] * ratio)
    starts = range(len(exponents))
    _, cap = validate(exponents, starts)
    _, scaled_cap = validate([scale * x for x in exponents], starts)

    assert scaled_cap == cap


def test_from_exponents_defaults_to_singletons() -> None:
    s = BlockSpectrum.from_exponents([1.0, 3.0, 9.0])

    assert s.block_starts == (0, 1, 2)
    assert s.ratio_lower == 3.0
    assert s.block_cap == 1


def test_spectrum_accessors(geometric_spectrum: BlockSpectrum) -> None:
    assert len(geometric_spectrum) == 12
    assert geometric_spectrum.anchors == geometric_spectrum.exponents
    assert geometric_spectrum.muntz_sum == pytest.approx(2.0 - 2.0**-11, rel=1e-15)
    assert geometric_spectrum.index_of(64.0) == 6
    assert geometric_spectrum.block_of(64.0) == 6


def test_block_of_in_quasi_spectrum(quasi_spectrum: BlockSpectrum) -> None:
    assert quasi_spectrum.block_of(1.5) == 0
    assert quasi_spectrum.block_of(4.0) == 1
    assert quasi_spectrum.block_of(6.0) == 1


def test_index_of_missing(geometric_spectrum: BlockSpectrum) -> None:
    with pytest.raises(MembershipError) as excinfo:
        geometric_spectrum.index_of(3.0)

    assert excinfo.value.exponent == 3.0


def test_truncated(geometric_spectrum: BlockSpectrum) -> None:
    head = geometric_spectrum.truncated(4)

    assert head.exponents == (1.0, 2.0, 4.0, 8.0)
    assert head.block_cap == 1

    with pytest.raises(DomainError):
        geometric_spectrum.truncated(0)
