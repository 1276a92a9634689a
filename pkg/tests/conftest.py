"""
Pytest fixtures and config.
"""

import json
import os
import pathlib
import sys
from typing import Any, Callable, Dict

import hypothesis
import pytest

from muntzlab import (
    Atomic,
    BlockSpectrum,
    CantorSelfSimilar,
    JacobiWeight,
    generate_lacunary,
    generate_quasi_lacunary,
)


IS_PYPY = hasattr(sys, "pypy_version_info")

# Quadrature-heavy properties are slow on pypy; don't fail on health checks.
if IS_PYPY:
    base_settings = hypothesis.settings(
        suppress_health_check=(hypothesis.HealthCheck.too_slow,), deadline=None
    )
else:
    base_settings = hypothesis.settings(deadline=None)
hypothesis.settings.register_profile("dev", parent=base_settings, max_examples=10)
hypothesis.settings.register_profile("ci", parent=base_settings, max_examples=100)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dev"))


@pytest.fixture(scope="session")
def geometric_spectrum() -> BlockSpectrum:
    """
    2 ** k for k = 0 .. 11.
    """
    return generate_lacunary(1.0, 2.0, 12)


@pytest.fixture(scope="session")
def short_geometric_spectrum() -> BlockSpectrum:
    return generate_lacunary(1.0, 2.0, 6)


@pytest.fixture(scope="session")
def quasi_spectrum() -> BlockSpectrum:
    return generate_quasi_lacunary([1.0, 1.5], 4.0, 8)


@pytest.fixture(scope="session")
def cantor() -> CantorSelfSimilar:
    return CantorSelfSimilar(1.0 / 3.0)


@pytest.fixture(scope="session")
def jacobi_half() -> JacobiWeight:
    """
    nu_(-1/2), the critical Jacobi weight for beta = 1/2.
    """
    return JacobiWeight(-0.5)


@pytest.fixture(scope="session")
def atom_half() -> Atomic:
    return Atomic((0.5,), (1.0,))


@pytest.fixture(scope="session")
def atom_one() -> Atomic:
    return Atomic((1.0,), (1.0,))


@pytest.fixture()
def write_json(tmp_path: pathlib.Path) -> Callable[[str, Any], pathlib.Path]:
    """
    Write a payload to ``tmp_path / name`` and return the path.
    """

    def write(name: str, payload: Any) -> pathlib.Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return write


@pytest.fixture()
def geo2_file(write_json: Callable[[str, Any], pathlib.Path]) -> pathlib.Path:
    return write_json("geo2.json", {"kind": "lacunary", "lambda0": 1, "ratio": 2, "count": 12})


@pytest.fixture()
def cantor_file(write_json: Callable[[str, Any], pathlib.Path]) -> pathlib.Path:
    return write_json("cantor.json", {"kind": "cantor", "r": 1.0 / 3.0})


@pytest.fixture()
def clean_seed_env(monkeypatch: pytest.MonkeyPatch) -> Dict[str, str]:
    monkeypatch.delenv("MUNTZLAB_SEED", raising=False)
    return {}
