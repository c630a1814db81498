"""Tests for the command line front end."""

import json
import subprocess
import sys

import pytest

from bordx.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestChern:
    def test_ltilde_table_ends_with_s(self, capsys):
        code, out, _ = run_cli(
            ["chern", "--family", "Ltilde", "--n1", "2", "--n2", "3"], capsys
        )
        assert code == 0
        assert out.strip().splitlines()[-1] == "s\t5"

    def test_ntilde21_s_zero(self, capsys):
        code, out, _ = run_cli(
            ["chern", "--family", "Ntilde", "--n1", "2", "--n2", "1"], capsys
        )
        assert code == 0
        assert out.strip().splitlines()[-1] == "s\t0"

    def test_spec_json_cp3(self, tmp_path, capsys):
        spec = tmp_path / "cp3.json"
        spec.write_text(json.dumps({"base": [3], "stages": []}))
        code, out, _ = run_cli(["chern", "--spec", str(spec), "--format", "json"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["numbers"] == {"3": 4, "2,1": 24, "1,1,1": 64}
        assert data["s"] == 4

    def test_malformed_json(self, tmp_path, capsys):
        spec = tmp_path / "bad.json"
        spec.write_text("{not json")
        code, _, err = run_cli(["chern", "--spec", str(spec)], capsys)
        assert code == 2
        assert "error" in err

    def test_invalid_family_params(self, capsys):
        code, _, err = run_cli(
            ["chern", "--family", "Ltilde", "--n1", "3", "--n2", "1"], capsys
        )
        assert code == 2
        assert "error" in err

    def test_cpprod_omega(self, capsys):
        code, out, _ = run_cli(
            ["chern", "--family", "CPprod", "--omega", "1,1", "--format", "json"],
            capsys,
        )
        assert code == 0
        data = json.loads(out)
        assert data["numbers"] == {"2": 4, "1,1": 8}

    def test_output_file(self, tmp_path, capsys):
        path = tmp_path / "out.tsv"
        code, out, _ = run_cli(
            ["chern", "--family", "L", "--n1", "1", "--n2", "1",
             "--output", str(path)], capsys
        )
        assert code == 0 and out == ""
        assert path.read_text().strip().splitlines()[-1].startswith("s\t")


class TestVerify:
    def test_gcddif_count(self, capsys):
        code, out, _ = run_cli(
            ["verify", "--lemma", "gcddif", "--kmax", "30"], capsys
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "lemma\tinstance\tstatus\tdetail"
        assert len(lines) == 1 + 29
        assert all("pass" in line for line in lines[1:])

    def test_alphagcd_count(self, capsys):
        code, out, _ = run_cli(
            ["verify", "--lemma", "alphagcd", "--nmax", "12"], capsys
        )
        assert code == 0
        assert len(out.strip().splitlines()) == 1 + 10

    def test_algrel_passes(self, capsys):
        code, out, _ = run_cli(["verify", "--lemma", "algrel"], capsys)
        assert code == 0
        assert "fail" not in out

    def test_snl_json(self, capsys):
        code, out, _ = run_cli(
            ["verify", "--lemma", "snl", "--format", "json"], capsys
        )
        assert code == 0
        rows = json.loads(out)
        assert len(rows) == 25
        assert all(r["status"] == "pass" for r in rows)

    def test_unknown_lemma_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--lemma", "bogus"])
        assert exc.value.code == 2

    def test_threads_flag(self, capsys):
        code, out, _ = run_cli(
            ["verify", "--lemma", "snn", "--threads", "4"], capsys
        )
        assert code == 0
        assert len(out.strip().splitlines()) == 1 + 25

    def test_threads_env_default(self, capsys, monkeypatch):
        monkeypatch.setenv("BORDX_THREADS", "3")
        from bordx.cli import build_parser

        args = build_parser().parse_args(["verify", "--lemma", "gcddif"])
        assert args.threads == 3

    def test_parallel_output_deterministic(self, capsys):
        _, serial, _ = run_cli(["verify", "--lemma", "alphagcd", "--nmax", "10"],
                               capsys)
        _, parallel, _ = run_cli(["verify", "--lemma", "alphagcd", "--nmax", "10",
                                  "--threads", "4"], capsys)
        assert serial == parallel


class TestGens:
    def test_cy_dim8(self, capsys):
        code, out, _ = run_cli(
            ["gens", "--dim", "8", "--source", "cy", "--format", "json"], capsys
        )
        assert code == 0
        data = json.loads(out)
        assert abs(data["s_value"]) == 20
        assert all(data["su_checks"].values())

    def test_quasitoric_dim8_rejected(self, capsys):
        code, _, err = run_cli(["gens", "--dim", "8", "--source", "quasitoric"], capsys)
        assert code == 2
        assert "null-bordant" in err

    def test_quasitoric_dim10(self, capsys):
        code, out, _ = run_cli(
            ["gens", "--dim", "10", "--source", "quasitoric", "--format", "json"],
            capsys,
        )
        assert code == 0
        data = json.loads(out)
        assert abs(data["s_value"]) == 5

    def test_quasitoric_dim12(self, capsys):
        code, out, _ = run_cli(
            ["gens", "--dim", "12", "--source", "quasitoric", "--format", "json"],
            capsys,
        )
        assert code == 0
        assert abs(json.loads(out)["s_value"]) == 14

    def test_odd_dim_rejected(self, capsys):
        code, _, err = run_cli(["gens", "--dim", "7", "--source", "cy"], capsys)
        assert code == 2


class TestRanksAndCy:
    def test_ranks_row(self, capsys):
        code, out, _ = run_cli(["ranks", "--max-dim", "16", "--format", "json"], capsys)
        assert code == 0
        rows = {r["dimension"]: r for r in json.loads(out)}
        assert rows[8]["rank_omega_su"] == 2
        assert rows[8]["rank_omega_u"] == 5
        assert rows[4]["rank_w"] == 1

    def test_ranks_tsv_columns(self, capsys):
        code, out, _ = run_cli(["ranks", "--max-dim", "4"], capsys)
        assert code == 0
        header = out.splitlines()[0].split("\t")
        assert header == ["dimension", "rank_omega_u", "rank_w", "rank_omega_su",
                          "tors_rank", "hw_rank"]

    def test_cy3(self, capsys):
        code, out, _ = run_cli(
            ["cy3", "--h11", "20", "--h21", "20", "--format", "json"], capsys
        )
        assert code == 0
        assert json.loads(out)[0]["tag"] == "other"

    def test_cy4_y4(self, capsys):
        code, out, _ = run_cli(
            ["cy4", "--h11", "16", "--h21", "30", "--h31", "53", "--format", "json"],
            capsys,
        )
        assert code == 0
        assert json.loads(out)[0]["tag"] == "y4"

    def test_cy4_negative_input(self, capsys):
        code, _, err = run_cli(
            ["cy4", "--h11", "-1", "--h21", "0", "--h31", "0"], capsys
        )
        assert code == 2


class TestEntryPoint:
    def test_subprocess_smoke(self):
        proc = subprocess.run(
            [sys.executable, "-m", "bordx.cli", "chern", "--family", "L",
             "--n1", "1", "--n2", "1"],
            capture_output=True, text=True, timeout=120,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip().splitlines()[-1].startswith("s\t")
