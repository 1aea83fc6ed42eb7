"""CLI contract: flags, exit codes, JSON outputs, determinism."""
import json

import httpx
import numpy as np
import pytest
from fastapi.testclient import TestClient

from swapdist import cli
from swapdist.presets import random_state
from swapdist.service import app
from swapdist import stateio


def run_cli(*argv: str) -> int:
    return cli.main(list(argv))


class TestRunCommand:
    def test_ghz_run_passes(self, capsys):
        code = run_cli("run", "--preset", "ghz", "--n", "3", "--seed", "7", "--trials", "10")
        captured = capsys.readouterr()
        assert code == 0
        report = json.loads(captured.out)
        assert report["all_passed"] is True
        assert len(report["trials"]) == 10
        assert "10/10 trials" in captured.err

    def test_report_file(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = run_cli(
            "run", "--preset", "bell", "--n", "2", "--seed", "3", "--trials", "4",
            "--parties", "2", "--out", str(out),
        )
        assert code == 0
        report = json.loads(out.read_text())
        assert report["config"]["parties"] == 2
        assert capsys.readouterr().out == ""

    def test_state_file_input(self, tmp_path, capsys):
        path = tmp_path / "state.json"
        stateio.save_state(random_state(2, np.random.default_rng(5)), path)
        assert run_cli("run", "--state", str(path), "--seed", "2") == 0
        capsys.readouterr()

    def test_plan_file_input(self, tmp_path, capsys):
        plan = {
            "sender": "alice",
            "steps": [{"source": 1, "mu": 4, "nu": 5, "receiver": "bob"}],
        }
        path = tmp_path / "plan.json"
        path.write_text(json.dumps(plan))
        code = run_cli("run", "--preset", "ghz", "--n", "3", "--plan", str(path), "--seed", "1")
        captured = capsys.readouterr()
        assert code == 0
        report = json.loads(captured.out)
        assert len(report["trials"][0]["transcript"]) == 1

    def test_reproducible_modulo_timestamp(self, capsys):
        args = ("run", "--preset", "random-haar", "--n", "3", "--seed", "5", "--trials", "2")
        assert run_cli(*args) == 0
        first = json.loads(capsys.readouterr().out)
        assert run_cli(*args) == 0
        second = json.loads(capsys.readouterr().out)
        first.pop("generated_at")
        second.pop("generated_at")
        assert first == second


class TestUsageErrors:
    def test_zero_qubits(self, capsys):
        assert run_cli("run", "--n", "0", "--preset", "ghz") == cli.EXIT_CONFIG
        assert "error" in capsys.readouterr().err

    def test_missing_source(self, capsys):
        assert run_cli("run", "--n", "2") == cli.EXIT_CONFIG
        capsys.readouterr()

    def test_unknown_flag(self):
        with pytest.raises(SystemExit) as exc:
            run_cli("run", "--bogus")
        assert exc.value.code == 2

    def test_corrupted_state_file(self, tmp_path, capsys):
        doc = stateio.state_to_doc(random_state(2, np.random.default_rng(1)))
        doc["amplitudes"] = [[re * 3, im * 3] for re, im in doc["amplitudes"]]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        assert run_cli("run", "--state", str(path)) == cli.EXIT_CONFIG
        assert "not normalized" in capsys.readouterr().err

    def test_non_json_state_file(self, tmp_path, capsys):
        path = tmp_path / "junk.json"
        path.write_text("{not json")
        assert run_cli("run", "--state", str(path)) == cli.EXIT_CONFIG
        capsys.readouterr()

    def test_missing_state_file(self, capsys):
        assert run_cli("run", "--state", "/does/not/exist.json") == cli.EXIT_IO
        capsys.readouterr()

    def test_unwritable_output(self, capsys):
        code = run_cli(
            "run", "--preset", "ghz", "--n", "2", "--out", "/does/not/exist/report.json"
        )
        assert code == cli.EXIT_IO
        capsys.readouterr()


class TestVerifyCommand:
    def test_ghz_exhaustive(self, capsys):
        code = run_cli("verify", "--preset", "ghz", "--n", "3", "--seed", "1")
        captured = capsys.readouterr()
        assert code == 0
        report = json.loads(captured.out)
        assert report["mode"] == "exhaustive"
        assert len(report["outcome_words"]) == 64
        assert report["all_passed"] is True

    def test_product_teleportation_case(self, capsys):
        code = run_cli("verify", "--preset", "product", "--n", "2", "--seed", "1")
        captured = capsys.readouterr()
        assert code == 0
        report = json.loads(captured.out)
        assert all(t["teleportation_reduction"] for t in report["correction_tables"])
        assert report["all_passed"] is True


class TestGenCommand:
    def test_ghz_file(self, tmp_path, capsys):
        out = tmp_path / "ghz.json"
        assert run_cli("gen", "--preset", "ghz", "--n", "3", "--out", str(out)) == 0
        doc = json.loads(out.read_text())
        assert doc["labels"] == [1, 2, 3]
        assert doc["amplitudes"][0][0] == pytest.approx(1 / np.sqrt(2))
        capsys.readouterr()

    def test_seed_determinism_byte_identical(self, tmp_path, capsys):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        run_cli("gen", "--preset", "random-haar", "--n", "4", "--seed", "9", "--out", str(a))
        run_cli("gen", "--preset", "random-haar", "--n", "4", "--seed", "9", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()
        capsys.readouterr()

    def test_gen_output_feeds_run(self, tmp_path, capsys):
        path = tmp_path / "state.json"
        run_cli("gen", "--preset", "random-haar", "--n", "3", "--seed", "2", "--out", str(path))
        assert run_cli("run", "--state", str(path), "--seed", "4", "--trials", "3") == 0
        capsys.readouterr()

    def test_bad_kind(self, capsys):
        assert run_cli("gen", "--preset", "bogus", "--n", "2") == cli.EXIT_CONFIG
        capsys.readouterr()


class TestRemoteMode:
    """--server goes over HTTP; route it through the in-process app."""

    @pytest.fixture(autouse=True)
    def _route_httpx_to_app(self, monkeypatch):
        test_client = TestClient(app)

        def fake_post(url, json=None, timeout=None):
            path = url.replace("http://unit.test", "")
            return test_client.post(path, json=json)

        monkeypatch.setattr(httpx, "post", fake_post)

    def test_run_against_server(self, capsys):
        code = run_cli(
            "run", "--preset", "ghz", "--n", "2", "--seed", "1", "--server", "http://unit.test"
        )
        captured = capsys.readouterr()
        assert code == 0
        assert json.loads(captured.out)["all_passed"] is True

    def test_server_rejection_is_config_error(self, tmp_path, capsys):
        # schema-valid but semantically broken: the pair collides with the register
        plan = {"steps": [{"source": 1, "mu": 2, "nu": 5, "receiver": "bob"}]}
        path = tmp_path / "plan.json"
        path.write_text(json.dumps(plan))
        code = run_cli(
            "run", "--preset", "ghz", "--n", "2", "--plan", str(path),
            "--seed", "1", "--server", "http://unit.test",
        )
        assert code == cli.EXIT_CONFIG
        assert "422" in capsys.readouterr().err

    def test_network_failure_is_io_error(self, monkeypatch, capsys):
        def explode(url, json=None, timeout=None):
            raise httpx.ConnectError("refused")

        monkeypatch.setattr(httpx, "post", explode)
        code = run_cli(
            "run", "--preset", "ghz", "--n", "2", "--server", "http://unit.test"
        )
        assert code == cli.EXIT_IO
        capsys.readouterr()
