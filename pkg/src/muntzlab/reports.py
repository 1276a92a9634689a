"""
Result records shared by the checks, and their JSON / CSV serialization.
"""

import csv
import hashlib
import io
import json
import math
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import InputError
from .typing import PathType, Verdict


__all__ = (
    "CSV_COLUMNS",
    "Bracket",
    "CheckReport",
    "CsvRow",
    "RatioReport",
    "SeriesDiagnosis",
    "csv_text",
    "digest_bytes",
    "digest_file",
    "reports_to_json",
    "write_csv",
)

CSV_COLUMNS = ("check", "param1", "param2", "value", "witness")

ContextValue = Union[float, int, str, None]


def _json_safe(value: Any) -> Any:
    """
    Non-finite floats become ``None`` so reports stay strict JSON.
    """
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: _json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(item) for item in value]
    return value


def _dumps(payload: Any) -> str:
    return json.dumps(_json_safe(payload), sort_keys=True, indent=2, allow_nan=False)


class RatioReport(NamedTuple):
    """
    An empirical ratio, where it was attained and the parameters it was
    computed for.

    >>> RatioReport(1.0, "t=1", {"p": 2.0}).ratio
    1.0
    """

    ratio: float
    witness: str
    context: Dict[str, ContextValue]

    def as_dict(self) -> Dict[str, Any]:
        return {"ratio": self.ratio, "witness": self.witness, "context": self.context}


class Bracket(NamedTuple):
    """
    Extremes of a statistic over a seeded sample. ``low_trial`` and
    ``high_trial`` are the trial indices of the witnesses; the trial index
    and the scan seed reproduce the witness.
    """

    low: float
    high: float
    low_trial: int
    high_trial: int
    samples: int
    seed: int

    def drift(self, other: "Bracket", /) -> float:
        """
        Largest relative move of either endpoint between two scans.
        """
        return max(
            abs(other.low - self.low) / abs(self.low) if self.low else math.inf,
            abs(other.high - self.high) / abs(self.high) if self.high else math.inf,
        )

    def as_dict(self) -> Dict[str, Any]:
        return self._asdict()


class SeriesDiagnosis(NamedTuple):
    """
    Partial sums of a nonnegative series (or of truncated integrals) with the
    fitted tail slope and the verdict derived from it.
    """

    partial_sums: Tuple[float, ...]
    verdict: Verdict
    slope: float

    def as_dict(self) -> Dict[str, Any]:
        return {
            "partial_sums": list(self.partial_sums),
            "verdict": self.verdict.value,
            "slope": self.slope,
        }


class CsvRow(NamedTuple):
    param1: ContextValue
    param2: ContextValue
    value: float
    witness: str


class CheckReport(NamedTuple):
    """
    Everything one named check produced. The report body (all fields but
    ``wall_time``) depends only on the inputs and the seed.
    """

    check_name: str
    input_digests: Dict[str, str]
    parameters: Dict[str, Any]
    results: Dict[str, Any]
    passed: bool
    seed: Optional[int]
    tool_version: str
    wall_time: float = 0.0
    rows: Tuple[CsvRow, ...] = ()

    def body(self) -> Dict[str, Any]:
        payload = self.as_dict()
        del payload["wall_time"]
        return payload

    def as_dict(self) -> Dict[str, Any]:
        return {
            "check_name": self.check_name,
            "input_digests": self.input_digests,
            "parameters": self.parameters,
            "results": self.results,
            "passed": self.passed,
            "seed": self.seed,
            "tool_version": self.tool_version,
            "wall_time": self.wall_time,
            "rows": [list(row) for row in self.rows],
        }

    def to_json(self, *, include_wall_time: bool = True) -> str:
        """
        Strict JSON with sorted keys; infinities and NaNs are written as
        ``null``.
        """
        return _dumps(self.as_dict() if include_wall_time else self.body())

    @classmethod
    def from_json(cls, text: str, /) -> "CheckReport":
        """
        :raises InputError: the text is not a serialized report
        """
        payload = _loads(text)
        if not isinstance(payload, dict):
            raise InputError("report", "expected a JSON object")
        return cls._from_payload(payload)

    @classmethod
    def from_json_many(cls, text: str, /) -> List["CheckReport"]:
        """
        Parse the output of :func:`reports_to_json`, or a single report.

        :raises InputError: the text is not a report or a list of reports
        """
        payload = _loads(text)
        if isinstance(payload, dict):
            return [cls._from_payload(payload)]
        if not isinstance(payload, list):
            raise InputError("report", "expected a JSON object or array")
        reports: List[CheckReport] = []
        for index, entry in enumerate(payload):
            if not isinstance(entry, dict):
                raise InputError(f"report[{index}]", "expected a JSON object")
            reports.append(cls._from_payload(entry))
        return reports

    @classmethod
    def _from_payload(cls, payload: Dict[str, Any]) -> "CheckReport":
        try:
            return cls(
                check_name=str(payload["check_name"]),
                input_digests=dict(payload["input_digests"]),
                parameters=dict(payload["parameters"]),
                results=dict(payload["results"]),
                passed=bool(payload["passed"]),
                seed=payload["seed"],
                tool_version=str(payload["tool_version"]),
                wall_time=float(payload.get("wall_time", 0.0)),
                rows=tuple(CsvRow(*row) for row in payload.get("rows", ())),
            )
        except KeyError as exc:
            raise InputError(str(exc.args[0]), "missing from report") from exc
        except (TypeError, ValueError) as exc:
            raise InputError("report", str(exc)) from exc

    def csv_rows(self) -> List[List[Any]]:
        return [[self.check_name, *row] for row in self.rows]


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("report", f"invalid JSON: {exc}") from exc


def reports_to_json(reports: Sequence[CheckReport], /) -> str:
    """
    One report as an object, several as an array in the given order.
    """
    if len(reports) == 1:
        return reports[0].to_json()
    return _dumps([report.as_dict() for report in reports])


def write_csv(reports: Iterable[CheckReport], path: PathType, /) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        handle.write(csv_text(tuple(reports)))


def csv_text(reports: Sequence[CheckReport], /) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        writer.writerows(report.csv_rows())
    return buffer.getvalue()


def digest_bytes(data: bytes, /) -> str:
    return hashlib.sha256(data).hexdigest()


def digest_file(path: PathType, /) -> str:
    with open(path, "rb") as handle:
        return digest_bytes(handle.read())
