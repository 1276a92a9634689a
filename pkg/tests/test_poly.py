"""
Muntz polynomial arithmetic, sup-norms and block decomposition.
"""

import math
from typing import List, Tuple

import numpy as np
import pytest
from hypothesis import given
from hypothesis.strategies import floats, lists, tuples
from numpy.testing import assert_allclose

from muntzlab import (
    BlockSpectrum,
    DegenerateInputError,
    DomainError,
    MembershipError,
    MuntzPolynomial,
    block_decompose,
    sup_norm,
)
from muntzlab.poly import derivative, dilate, eval, powers, search_grid, sign_changes


terms_strategy = lists(
    tuples(
        floats(min_value=0.0, max_value=50.0),
        floats(min_value=-10.0, max_value=10.0).filter(lambda c: abs(c) > 1e-3),
    ),
    min_size=1,
    max_size=6,
)


def test_evaluation() -> None:
    f = MuntzPolynomial(((2.0, 1.0), (4.0, -1.0)))

    assert_allclose(f(np.array([0.0, 0.5, 1.0])), [0.0, 0.1875, 0.0], atol=1e-15)
    assert eval(f, 0.5) == pytest.approx(0.1875)


def test_evaluation_domain() -> None:
    with pytest.raises(DomainError):
        eval(MuntzPolynomial.monomial(1.0), 1.5)


def test_powers_at_zero() -> None:
    table = powers(np.array([0.0, 1.0, -0.5]), np.array([0.0, 0.25]))

    assert_allclose(table[:2], [[1.0, 1.0], [0.0, 0.25]])
    assert math.isinf(table[2, 0])
    assert table[2, 1] == pytest.approx(2.0)


@pytest.mark.parametrize(
    "terms",
    (((-1.0, 1.0),), ((2.0, 1.0), (1.0, 1.0)), ((1.0, 0.0),), ((1.0, math.nan),)),
    ids=("exponent", "order", "zero-coefficient", "nan"),
)
def test_constructor_rejects(terms: Tuple[Tuple[float, float], ...]) -> None:
    with pytest.raises(DomainError):
        MuntzPolynomial(terms)


def test_from_terms_collects() -> None:
    f = MuntzPolynomial.from_terms([(2.0, 1.0), (1.0, 3.0), (2.0, -1.0), (5.0, 2.0)])

    assert f.terms == ((1.0, 3.0), (5.0, 2.0))


def test_arithmetic() -> None:
    f = MuntzPolynomial.from_terms([(1.0, 1.0), (3.0, 2.0)])
    g = MuntzPolynomial.monomial(3.0, 2.0)

    assert (f - g).terms == ((1.0, 1.0),)
    assert not (f - f)
    assert (-f).terms == ((1.0, -1.0), (3.0, -2.0))
    assert not f.scaled(0.0)
    assert len(f + g) == 2


def test_constant_term_flags() -> None:
    f = MuntzPolynomial.from_terms([(0.0, 1.0), (2.0, 1.0)])

    assert f.has_constant_term
    assert not f.vanishes_at_zero
    assert MuntzPolynomial.monomial(0.5).vanishes_at_zero


def test_derivative() -> None:
    f = MuntzPolynomial.from_terms([(0.0, 2.0), (3.0, 1.0), (0.5, 4.0)])

    assert derivative(f).terms == ((-0.5, 2.0), (2.0, 3.0))
    assert not derivative(MuntzPolynomial.monomial(0.0))


@given(terms=terms_strategy, rho=floats(min_value=0.05, max_value=1.0))
def test_dilation_matches_evaluation(
    terms: List[Tuple[float, float]], rho: float
) -> None:
    f = MuntzPolynomial.from_terms(terms)
    t = np.linspace(0.0, 1.0, 17)

    assert_allclose(dilate(f, rho)(t), f(rho * t), rtol=1e-10, atol=1e-10)


@given(
    terms=terms_strategy,
    a=floats(min_value=0.1, max_value=1.0),
    b=floats(min_value=0.1, max_value=1.0),
)
def test_dilation_composes(terms: List[Tuple[float, float]], a: float, b: float) -> None:
    f = MuntzPolynomial.from_terms(terms)
    t = np.linspace(0.0, 1.0, 9)

    assert_allclose(dilate(dilate(f, a), b)(t), dilate(f, a * b)(t), rtol=1e-9, atol=1e-12)


@pytest.mark.parametrize("rho", (0.0, -0.5, 1.5), ids=("zero", "negative", "above"))
def test_dilation_domain(rho: float) -> None:
    with pytest.raises(DomainError):
        dilate(MuntzPolynomial.monomial(1.0), rho)


def test_dilation_by_one_is_identity() -> None:
    f = MuntzPolynomial.monomial(2.0)

    assert dilate(f, 1.0) is f


@pytest.mark.parametrize("lam", (0.5, 1.0, 7.0, 1e3), ids=str)
def test_sup_norm_monomial(lam: float) -> None:
    norm = sup_norm(MuntzPolynomial.monomial(lam, -3.0))

    assert norm.value == pytest.approx(3.0)
    assert norm.argmax == 1.0


@pytest.mark.parametrize(
    "terms,value,argmax",
    (
        (((1.0, 1.0), (2.0, -1.0)), 0.25, 0.5),
        (((2.0, 1.0), (4.0, -1.0)), 0.25, math.sqrt(0.5)),
        (((1000.0, 1.0), (2000.0, -1.0)), 0.25, 0.5**0.001),
    ),
    ids=("quadratic", "quartic", "high-degree"),
)
def test_sup_norm_interior_maximum(
    terms: Tuple[Tuple[float, float], ...], value: float, argmax: float
) -> None:
    norm = sup_norm(MuntzPolynomial(terms))

    assert norm.value == pytest.approx(value, rel=1e-9)
    assert norm.argmax == pytest.approx(argmax, abs=1e-5)


def test_sup_norm_zero_polynomial() -> None:
    with pytest.raises(DegenerateInputError):
        sup_norm(MuntzPolynomial())


def test_sup_norm_unbounded() -> None:
    assert math.isinf(sup_norm(MuntzPolynomial.monomial(-0.5)).value)


@given(terms=terms_strategy)
def test_sup_norm_dominates_grid(terms: List[Tuple[float, float]]) -> None:
    f = MuntzPolynomial.from_terms(terms)
    if not f:
        return
    grid = search_grid(f.exponents.tolist())

    assert sup_norm(f).value >= float(np.max(np.abs(f(grid))))


def test_search_grid_clusters_near_one() -> None:
    grid = search_grid([1e4])

    assert grid[0] == 0.0
    assert grid[-1] == 1.0
    assert np.all(np.diff(grid) > 0.0)
    assert np.count_nonzero(grid > 1.0 - 1e-3) > 400


def test_block_decompose(geometric_spectrum: BlockSpectrum) -> None:
    f = MuntzPolynomial.from_terms([(1.0, 1.0), (4.0, -2.0)])
    parts = block_decompose(f, geometric_spectrum)

    assert len(parts.blocks) == 12
    assert parts.nonzero() == (0, 2)
    assert parts.blocks[2].terms == ((4.0, -2.0),)
    assert parts.total() == f
    assert parts.anchors == geometric_spectrum.anchors


def test_block_decompose_quasi(quasi_spectrum: BlockSpectrum) -> None:
    f = MuntzPolynomial.from_terms([(4.0, 1.0), (6.0, 1.0), (16.0, 1.0)])
    parts = block_decompose(f, quasi_spectrum)

    assert parts.nonzero() == (1, 2)
    assert parts.blocks[1].terms == ((4.0, 1.0), (6.0, 1.0))


def test_block_decompose_membership(geometric_spectrum: BlockSpectrum) -> None:
    with pytest.raises(MembershipError) as excinfo:
        block_decompose(MuntzPolynomial.monomial(3.0), geometric_spectrum)

    assert excinfo.value.exponent == 3.0


def test_sign_changes() -> None:
    f = MuntzPolynomial.from_terms([(1.0, 1.0), (2.0, -2.0)])
    g = MuntzPolynomial.from_terms([(1.0, 1.0), (3.0, -9.0)])

    roots = sign_changes([f, g, MuntzPolynomial()])

    assert_allclose(roots, [1.0 / 3.0, 0.5], atol=1e-12)


def test_sign_changes_none() -> None:
    assert sign_changes([MuntzPolynomial.monomial(2.0)]) == ()
    assert sign_changes([]) == ()
