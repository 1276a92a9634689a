"""
JSON input files: spectra, measures, polynomials and embedding problems.

Accepted shapes::

    {"exponents": [1, 2, 4], "block_starts": [0, 1, 2], "block_cap": 1}
    {"kind": "lacunary", "lambda0": 1, "ratio": 2, "count": 12}
    {"kind": "quasi", "bases": [1, 1.5], "ratio": 4, "count": 8}

    {"kind": "jacobi", "alpha": -0.5}
    {"kind": "power", "exponent": 2}
    {"kind": "cantor", "r": 0.3333333333333333}
    {"kind": "atomic", "atoms": [[0.5, 1]]}
    {"kind": "tail", "beta": 0.5, "C": 1}

    {"terms": [{"lambda": 2, "coeff": 1.0}, {"lambda": 4, "coeff": -1.0}]}

    {"spectrum": {...}, "measure": {...}, "p": 2, "beta": 0.5, "rhs_alpha": null}
"""

import json
import math
from typing import Any, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .embeddings import EmbeddingProblem
from .errors import DomainError, InputError, SpectrumError
from .measure import (
    Atomic,
    CantorSelfSimilar,
    JacobiWeight,
    MeasureSpec,
    PowerWeight,
    TailEnvelope,
)
from .poly import MuntzPolynomial
from .reports import digest_bytes
from .spectrum import BlockSpectrum, generate_lacunary, generate_quasi_lacunary
from .typing import PathType


__all__ = (
    "Loaded",
    "load_json",
    "load_measure",
    "load_polynomial",
    "load_problem",
    "load_spectrum",
    "parse_measure",
    "parse_polynomial",
    "parse_problem",
    "parse_spectrum",
)


class Loaded(NamedTuple):
    """
    A parsed file together with the sha256 digest of its bytes.
    """

    value: Any
    digest: str


def load_json(path: PathType, /) -> Loaded:
    """
    :raises InputError: the file cannot be read or is not JSON
    """
    try:
        with open(path, "rb") as handle:
            data = handle.read()
    except OSError as exc:
        raise InputError(str(path), f"cannot read file: {exc.strerror}") from exc
    try:
        payload = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InputError(str(path), f"invalid JSON: {exc}") from exc

    return Loaded(value=payload, digest=digest_bytes(data))


def _mapping(value: Any, field: str) -> Mapping[str, Any]:
    if not isinstance(value, dict):
        raise InputError(field, "expected an object")
    return value


def _coerce(value: Any, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(field, f"expected a number, got {value!r}")
    if not math.isfinite(value):
        raise InputError(field, "must be finite")
    return float(value)


def _number(payload: Mapping[str, Any], key: str, field: str) -> float:
    if key not in payload:
        raise InputError(f"{field}.{key}", "missing")
    return _coerce(payload[key], f"{field}.{key}")


def _optional_number(
    payload: Mapping[str, Any], key: str, field: str
) -> Optional[float]:
    if payload.get(key) is None:
        return None
    return _number(payload, key, field)


def _integer(payload: Mapping[str, Any], key: str, field: str) -> int:
    value = _number(payload, key, field)
    if value != int(value):
        raise InputError(f"{field}.{key}", f"expected an integer, got {value!r}")
    return int(value)


def _numbers(payload: Mapping[str, Any], key: str, field: str) -> List[float]:
    if key not in payload:
        raise InputError(f"{field}.{key}", "missing")
    values = payload[key]
    if not isinstance(values, list) or not values:
        raise InputError(f"{field}.{key}", "expected a nonempty list")
    return [
        _coerce(item, f"{field}.{key}[{index}]") for index, item in enumerate(values)
    ]


_SPECTRUM_KINDS = ("explicit", "lacunary", "quasi")


def parse_spectrum(payload: Any, /, *, field: str = "spectrum") -> BlockSpectrum:
    """
    :raises InputError: a field is missing or malformed
    :raises SpectrumError: the exponents fail validation
    """
    data = _mapping(payload, field)
    kind = data.get("kind", "explicit")
    if kind not in _SPECTRUM_KINDS:
        raise InputError(f"{field}.kind", f"expected one of {', '.join(_SPECTRUM_KINDS)}")
    try:
        if kind == "lacunary":
            return generate_lacunary(
                _number(data, "lambda0", field),
                _number(data, "ratio", field),
                _integer(data, "count", field),
            )
        if kind == "quasi":
            return generate_quasi_lacunary(
                _numbers(data, "bases", field),
                _number(data, "ratio", field),
                _integer(data, "count", field),
            )
        exponents = _numbers(data, "exponents", field)
        starts: Optional[Sequence[int]] = None
        if data.get("block_starts") is not None:
            starts = [int(x) for x in _numbers(data, "block_starts", field)]
        cap = None
        if data.get("block_cap") is not None:
            cap = _integer(data, "block_cap", field)
        return BlockSpectrum.from_exponents(exponents, starts, block_cap=cap)
    except SpectrumError:
        raise
    except DomainError as exc:
        raise InputError(field, exc.message) from exc


_MEASURE_KINDS = ("jacobi", "power", "cantor", "atomic", "tail", "envelope")


def _pair(value: Any, field: str) -> Tuple[float, float]:
    if not isinstance(value, list) or len(value) != 2:
        raise InputError(field, "expected a pair of numbers")
    return _coerce(value[0], f"{field}[0]"), _coerce(value[1], f"{field}[1]")


def _atoms(data: Mapping[str, Any], field: str) -> List[Tuple[float, float]]:
    if "atoms" in data:
        atoms = data["atoms"]
        if not isinstance(atoms, list) or not atoms:
            raise InputError(f"{field}.atoms", "expected a nonempty list of [t, w]")
        return [
            _pair(atom, f"{field}.atoms[{index}]") for index, atom in enumerate(atoms)
        ]
    points = _numbers(data, "points", field)
    weights = _numbers(data, "weights", field)
    if len(points) != len(weights):
        raise InputError(f"{field}.weights", "must match points in length")
    return list(zip(points, weights))


def parse_measure(payload: Any, /, *, field: str = "measure") -> MeasureSpec:
    """
    ``envelope`` is an alias of ``tail`` and ``constant`` of ``C``; atoms may
    be given as ``atoms`` pairs or as parallel ``points`` and ``weights``.

    :raises InputError: unknown kind, or a field missing or out of range
    """
    data = _mapping(payload, field)
    kind = data.get("kind")
    if kind not in _MEASURE_KINDS:
        raise InputError(f"{field}.kind", f"expected one of {', '.join(_MEASURE_KINDS)}")
    try:
        if kind == "jacobi":
            return JacobiWeight(_number(data, "alpha", field))
        if kind == "power":
            return PowerWeight(_number(data, "exponent", field))
        if kind == "cantor":
            return CantorSelfSimilar(_number(data, "r", field))
        if kind == "atomic":
            return Atomic.from_pairs(_atoms(data, field))
        constant = _optional_number(data, "C", field)
        if constant is None:
            constant = _optional_number(data, "constant", field)
        return TailEnvelope(
            _number(data, "beta", field), 1.0 if constant is None else constant
        )
    except DomainError as exc:
        raise InputError(field, exc.message) from exc


def _term(value: Any, field: str) -> Tuple[float, float]:
    if isinstance(value, dict):
        return _number(value, "lambda", field), _number(value, "coeff", field)
    if not isinstance(value, list) or len(value) != 2:
        raise InputError(field, 'expected {"lambda": ..., "coeff": ...}')
    return _coerce(value[0], f"{field}[0]"), _coerce(value[1], f"{field}[1]")


def parse_polynomial(payload: Any, /, *, field: str = "polynomial") -> MuntzPolynomial:
    """
    Terms are ``{"lambda": ..., "coeff": ...}`` objects or
    ``[exponent, coefficient]`` pairs.

    :raises InputError: terms missing or malformed
    """
    data = _mapping(payload, field)
    terms = data.get("terms")
    if not isinstance(terms, list):
        raise InputError(f"{field}.terms", "expected a list of terms")
    pairs = [_term(term, f"{field}.terms[{index}]") for index, term in enumerate(terms)]
    try:
        return MuntzPolynomial.from_terms(pairs)
    except DomainError as exc:
        raise InputError(f"{field}.terms", exc.message) from exc


def parse_problem(payload: Any, /) -> EmbeddingProblem:
    """
    :raises InputError: a field is missing or malformed
    :raises SpectrumError: the spectrum fails validation
    """
    data: Dict[str, Any] = dict(_mapping(payload, "problem"))
    spectrum = parse_spectrum(data.get("spectrum"), field="spectrum")
    mu = parse_measure(data.get("measure"), field="measure")
    try:
        return EmbeddingProblem(
            spectrum=spectrum,
            mu=mu,
            p=_number(data, "p", "problem"),
            beta=_number(data, "beta", "problem"),
            rhs_weight_alpha=_optional_number(data, "rhs_alpha", "problem"),
        )
    except DomainError as exc:
        raise InputError("problem", exc.message) from exc


def load_spectrum(path: PathType, /) -> Loaded:
    loaded = load_json(path)
    return loaded._replace(value=parse_spectrum(loaded.value))


def load_measure(path: PathType, /) -> Loaded:
    loaded = load_json(path)
    return loaded._replace(value=parse_measure(loaded.value))


def load_polynomial(path: PathType, /) -> Loaded:
    loaded = load_json(path)
    return loaded._replace(value=parse_polynomial(loaded.value))


def load_problem(path: PathType, /) -> Loaded:
    loaded = load_json(path)
    return loaded._replace(value=parse_problem(loaded.value))
