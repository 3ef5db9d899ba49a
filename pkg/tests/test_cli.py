"""End-to-end tests of the ``kdq`` command line."""

import csv
import io
import json

import numpy as np
import pytest

from src import main as cli
from src.models import BoundReport, Instance, SuiteReport
from src.quantum import DensityOperator, PvmBasis
from src.storage import emit_instance


@pytest.fixture
def plus_instance(tmp_path):
    """|+> with the computational and sigma_x bases and sigma_z, sigma_x spectra."""
    path = tmp_path / "plus.json"
    x_basis = PvmBasis(np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    instance = Instance(
        rho=DensityOperator.pure([1, 1]),
        basis_a=PvmBasis.computational(2),
        basis_b=x_basis,
        label="plus",
        spectrum_a=[1.0, -1.0],
        spectrum_b=[1.0, -1.0],
    )
    emit_instance(instance, path)
    return path


def test_random_then_compute(tmp_path, capsys):
    instance_path = tmp_path / "r.json"
    assert cli.main(["random", "--dim", "3", "--seed", "4", "--spectra", "--out", str(instance_path)]) == 0
    table_path = tmp_path / "kd.csv"
    assert cli.main(["compute", str(instance_path), "--table", str(table_path), "--log-format", "text"]) == 0
    measures = json.loads(capsys.readouterr().out)
    assert measures["dim"] == 3
    assert measures["rs_bound"] <= 0.0
    assert measures["imag_mod"] == pytest.approx(2.0 * measures["nre"])
    assert 3 * measures["mse_sq"] >= measures["nre"] ** 2 - 1e-12
    assert len(table_path.read_text(encoding="utf-8").splitlines()) == 10


def test_random_is_seeded(capsys):
    assert cli.main(["random", "--dim", "2", "--seed", "8"]) == 0
    first = capsys.readouterr().out
    assert cli.main(["random", "--dim", "2", "--seed", "8"]) == 0
    assert capsys.readouterr().out == first


def test_compute_plus_state(plus_instance, capsys):
    assert cli.main(["compute", str(plus_instance)]) == 0
    measures = json.loads(capsys.readouterr().out)
    assert measures["label"] == "plus"
    assert measures["nre"] == pytest.approx(0.0, abs=1e-15)
    assert measures["disturbance"] == pytest.approx(2.0)
    assert measures["l1_coherence"] == pytest.approx(1.0)
    assert measures["asymmetry"] == pytest.approx(1.0)
    # sigma_z and sigma_x commute to 2i sigma_y, whose |+> expectation vanishes
    assert measures["commutator_bound"] == pytest.approx(0.0, abs=1e-15)


def test_compute_needs_second_basis(tmp_path, capsys):
    path = tmp_path / "single.json"
    assert cli.main(["random", "--dim", "2", "--single-basis", "--out", str(path)]) == 0
    assert cli.main(["compute", str(path)]) == 2
    assert "basis_b" in capsys.readouterr().err


def test_invalid_instance_exits_with_usage_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    zero = [0.0, 0.0]
    identity = [[[1.0, 0.0], zero], [zero, [1.0, 0.0]]]
    path.write_text(json.dumps({"dim": 2, "rho": [[[0.9, 0.0], zero], [zero, zero]], "basis_a": identity}))
    assert cli.main(["compute", str(path)]) == 2
    assert "trace = 0.9" in capsys.readouterr().err


def test_optimize_single_quantity(plus_instance, capsys):
    assert cli.main(["optimize", str(plus_instance), "--quantity", "q_nre", "--restarts", "4", "--seed", "2"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["seed"] == 2
    assert document["seed_source"] == "cli"
    result = document["results"]["q_nre"]
    assert result["value"] == pytest.approx(1.0, abs=1e-6)
    assert result["restarts_used"] == 4


def test_optimize_all_to_file(plus_instance, tmp_path, capsys):
    out = tmp_path / "opt.json"
    assert cli.main(["optimize", str(plus_instance), "--restarts", "2", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    results = json.loads(out.read_text(encoding="utf-8"))["results"]
    assert set(results) == set(cli.SEARCHES)
    assert results["sup_rs"]["value"] <= 1e-9
    # B* = sign(i [sigma_z, |+><+|]) = -sigma_y
    assert results["sup_robertson"]["witness_spectra"] == [[1.0, -1.0], [-1.0, 1.0]]


def test_verify_csv(capsys):
    assert cli.main(["verify", "lemma1", "--instances", "3", "--dim", "2", "--dim", "3", "--format", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["inequality_id", "lhs", "rhs", "slack", "pass", "heuristic"]
    assert len(rows) == 1 + 2 * 6


def test_verify_json_is_reproducible(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for path in (first, second):
        assert cli.main(["verify", "johansen", "--instances", "2", "--seed", "5", "--out", str(path)]) == 0
    a, b = json.loads(first.read_text()), json.loads(second.read_text())
    a.pop("wall_time")
    b.pop("wall_time")
    assert a == b
    assert a["seed"] == 5
    assert a["seed_source"] == "cli"


def test_verify_with_config_file(tmp_path, capsys):
    config = tmp_path / "suite.yaml"
    config.write_text("instances: 2\ndims: [2]\nseed: 13\n", encoding="utf-8")
    assert cli.main(["verify", "lemma2", "--config", str(config), "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("suite lemma2: PASS")
    assert "seed:      13 (config)" in text


def test_verify_reports_failures(monkeypatch, capsys):
    def failing(name, config, seed, seed_source):
        checks = [BoundReport.check("never", 0.0, 1.0)]
        return SuiteReport.assemble(name, 1, checks, seed=seed, seed_source=seed_source, wall_time=0.0)

    monkeypatch.setattr(cli, "run_suite", failing)
    assert cli.main(["verify", "lemma1", "--format", "text"]) == 1
    assert "FAILED never" in capsys.readouterr().out


def test_verify_unknown_suite(capsys):
    assert cli.main(["verify", "nope"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_scan(capsys):
    assert cli.main(["scan", "--resolution", "4"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["alpha", "phi_z", "lhs", "numeric", "closed_form"]
    assert len(rows) == 17
    for row in rows[1:]:
        assert float(row[3]) == pytest.approx(float(row[4]), abs=1e-12)


def test_suites_listing(capsys):
    assert cli.main(["suites"]) == 0
    names = [line.split("\t")[0] for line in capsys.readouterr().out.splitlines()]
    assert names[:3] == ["lemma1", "lemma2", "prop1"]
    assert "determinism" in names


def test_usage_errors():
    assert cli.main([]) == 2
    assert cli.main(["verify"]) == 2
    assert cli.main(["random"]) == 2
    assert cli.main(["--version"]) == 0
