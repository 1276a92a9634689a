"""
Command line front end: exit statuses, report output and options.
"""

import csv
import pathlib
from typing import Any, Callable, Dict, List

import pytest
from click.testing import CliRunner

from muntzlab import CheckReport, __version__
from muntzlab.cli import SEED_ENVVAR, cli, main
from muntzlab.reports import CSV_COLUMNS


WriteJson = Callable[[str, Any], pathlib.Path]


def read_report(path: pathlib.Path) -> CheckReport:
    return CheckReport.from_json(path.read_text(encoding="utf-8"))


def test_spectrum_default(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["spectrum"]) == 0

    report = CheckReport.from_json(capsys.readouterr().out)
    assert report.check_name == "spectrum"
    assert report.passed
    assert report.results["q"] == 2.0
    assert report.results["N"] == 1
    assert report.seed is None


def test_spectrum_file(geo2_file: pathlib.Path, tmp_path: pathlib.Path) -> None:
    out = tmp_path / "report.json"

    assert main(["spectrum", "--spectrum", str(geo2_file), "--json", str(out)]) == 0

    report = read_report(out)
    assert report.results["block_sizes"] == [1] * 12
    assert len(report.input_digests["spectrum"]) == 64


def test_spectrum_rejected(write_json: WriteJson, capsys: pytest.CaptureFixture[str]) -> None:
    path = write_json("bad.json", {"exponents": [1, 3, 2]})

    assert main(["spectrum", "--spectrum", str(path)]) == 2

    report = CheckReport.from_json(capsys.readouterr().out)
    assert not report.passed
    assert report.results["constraint"] == "not-increasing"
    assert report.results["index"] == 2


def test_malformed_spectrum_file(
    write_json: WriteJson, capsys: pytest.CaptureFixture[str]
) -> None:
    path = write_json("broken.json", {"kind": "lacunary", "ratio": 2, "count": 3})

    assert main(["decoupling", "--spectrum", str(path)]) == 1
    assert "spectrum.lambda0" in capsys.readouterr().err


def test_missing_measure_file(tmp_path: pathlib.Path) -> None:
    assert main(["classify", "--measure", str(tmp_path / "nope.json")]) == 1


def test_classify_cantor(cantor_file: pathlib.Path, tmp_path: pathlib.Path) -> None:
    out = tmp_path / "classify.json"
    args = ["classify", "--measure", str(cantor_file), "--beta", "0.6309", "--p", "2"]

    assert main([*args, "--json", str(out)]) == 0

    report = read_report(out)
    assert report.results["membership"]["bounded"]
    assert report.results["coherent"]
    assert report.input_digests.keys() == {"measure"}


def test_decoupling_is_deterministic(
    tmp_path: pathlib.Path, clean_seed_env: Dict[str, str]
) -> None:
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    args = ["decoupling", "--trials", "4", "--seed", "3"]

    code = main([*args, "--json", str(first)])

    assert code in (0, 2)
    assert main([*args, "--json", str(second)]) == code
    assert read_report(first).passed == (code == 0)

    assert read_report(first).body() == read_report(second).body()
    assert read_report(first).seed == 3


def test_seed_from_environment(
    tmp_path: pathlib.Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    out = tmp_path / "report.json"
    monkeypatch.setenv(SEED_ENVVAR, "7")

    assert main(["decoupling", "--trials", "2", "--seed", "3", "--json", str(out)]) in (0, 2)
    assert read_report(out).seed == 7


def test_bad_seed_environment(
    monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
) -> None:
    monkeypatch.setenv(SEED_ENVVAR, "seven")

    assert main(["decoupling", "--trials", "2"]) == 1
    assert SEED_ENVVAR in capsys.readouterr().err


@pytest.mark.parametrize(
    "args",
    (
        ["kernel", "--alpha", "-0.5"],
        ["decoupling", "--trials", "0"],
        ["kernel", "--tol", "0.9"],
        ["schur", "--exponents", "2,x"],
        ["schur", "--exponents", "2,3"],
        ["nonsense"],
    ),
    ids=("kernel-alpha", "trials", "tolerance", "exponents-parse", "exponents-conjugate", "command"),
)
def test_input_errors(args: List[str], clean_seed_env: Dict[str, str]) -> None:
    assert main(args) == 1


def test_kernel_csv(tmp_path: pathlib.Path, clean_seed_env: Dict[str, str]) -> None:
    table = tmp_path / "kernel.csv"

    assert main(["kernel", "--csv", str(table), "--json", str(tmp_path / "k.json")]) == 0

    rows = list(csv.reader(table.read_text(encoding="utf-8").splitlines()))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert [row[0] for row in rows[1:]] == ["kernel", "kernel"]
    assert [row[4] for row in rows[1:]] == ["low", "high"]


def test_schur_trilinear(tmp_path: pathlib.Path) -> None:
    out = tmp_path / "schur.json"
    args = ["schur", "--exponents", "3,3,3", "--imax", "2", "--beta", "1"]

    assert main([*args, "--json", str(out)]) == 0

    report = read_report(out)
    assert len(report.results["by_position"]) == 3
    assert report.results["monotone"]
    assert report.parameters["exponents"] == [3.0, 3.0, 3.0]


@pytest.mark.slow
def test_all_checks(tmp_path: pathlib.Path, clean_seed_env: Dict[str, str]) -> None:
    out = tmp_path / "all.json"

    code = main(["all", "--trials", "2", "--json", str(out)])

    reports = CheckReport.from_json_many(out.read_text(encoding="utf-8"))
    assert [report.check_name for report in reports] == [
        "spectrum",
        "decoupling",
        "kernel",
        "bernstein",
        "embedding",
        "classify",
        "schur",
        "quadrature",
        "cantor",
        "ratios",
    ]
    sampled = {"decoupling", "bernstein", "ratios"}
    assert all(report.passed for report in reports if report.check_name not in sampled)
    assert code == (0 if all(report.passed for report in reports) else 2)


def test_single_exponent_spectrum(
    write_json: WriteJson, capsys: pytest.CaptureFixture[str]
) -> None:
    path = write_json("one.json", {"exponents": [2]})

    assert main(["spectrum", "--spectrum", str(path)]) == 0

    out = capsys.readouterr().out
    assert "Infinity" not in out
    assert CheckReport.from_json(out).results["q"] is None


def test_quasi_spectrum_file(write_json: WriteJson, capsys: pytest.CaptureFixture[str]) -> None:
    path = write_json(
        "quasi.json", {"kind": "quasi", "bases": [1, 1.7, 1.8], "ratio": 3, "count": 4}
    )

    assert main(["spectrum", "--spectrum", str(path)]) == 0

    report = CheckReport.from_json(capsys.readouterr().out)
    assert report.results["block_sizes"] == [3, 3, 3, 3]
    assert report.results["N"] == 3
    assert report.results["q"] == pytest.approx(3.0 / 1.8)


def test_classify_atoms_file(write_json: WriteJson, tmp_path: pathlib.Path) -> None:
    path = write_json("atoms.json", {"kind": "atomic", "atoms": [[0.5, 1]]})
    out = tmp_path / "classify.json"

    assert main(["classify", "--measure", str(path), "--json", str(out)]) in (0, 2)

    report = read_report(out)
    assert report.parameters["measure"]["points"] == [0.5]
    assert report.parameters["measure"]["weights"] == [1.0]


def test_help() -> None:
    result = CliRunner().invoke(cli, ["--help"])

    assert result.exit_code == 0
    for command in ("spectrum", "decoupling", "kernel", "schur", "all"):
        assert command in result.output


def test_version() -> None:
    result = CliRunner().invoke(cli, ["--version"])

    assert result.exit_code == 0
    assert __version__ in result.output
