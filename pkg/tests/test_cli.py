import json

import pytest

from spinfanout.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerifyCommand:
    def test_filtered_json(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--filter", "ieq", "--json")
        assert code == 0
        rows = [json.loads(line) for line in out.strip().splitlines()]
        assert len(rows) == 1
        assert rows[0]["check_id"] == "ieq" and rows[0]["passed"]

    def test_full_table(self, capsys):
        code, out, _ = run_cli(capsys, "verify")
        assert code == 0
        assert "PASS" in out and "NEG-OK" in out and "FAIL" not in out

    def test_n_max_skips(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n-max", "4")
        assert code == 0
        assert "SKIP(cap)" in out

    def test_json_byte_stable(self, capsys):
        _, out1, _ = run_cli(capsys, "verify", "--filter", "kn_offset", "--json")
        _, out2, _ = run_cli(capsys, "verify", "--filter", "kn_offset", "--json")
        assert out1 == out2

    def test_bad_flag_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--bogus"])
        assert exc.value.code == 2


class TestMatrixCommand:
    def test_un3_diagonal(self, capsys):
        code, out, _ = run_cli(capsys, "matrix", "--what", "un", "--n", "3")
        assert code == 0
        lines = out.strip().splitlines()
        values = [line.split()[1] for line in lines[1:]]
        # phase-normalized: entry 0 is +1, middle six entries are -1
        assert values[0].startswith("1")
        assert all(v.startswith("-1") for v in values[1:7])
        assert values[7].startswith("1")

    def test_parity_circuit_is_permutation(self, capsys):
        code, out, _ = run_cli(
            capsys, "matrix", "--what", "parity_circuit", "--n", "2", "--format", "csv"
        )
        assert code == 0
        rows = [line.split(",") for line in out.strip().splitlines()]
        assert len(rows) == 8 and all(len(r) == 8 for r in rows)
        ones = sum(1 for r in rows for z in r if z.startswith("1"))
        assert ones == 8

    def test_invalid_n(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["matrix", "--what", "un", "--n", "0"])
        assert exc.value.code == 2

    def test_cap_exceeded_exits_3(self, capsys):
        code, _, err = run_cli(capsys, "matrix", "--what", "l2", "--n", "9")
        assert code == 3
        assert "cap" in err

    def test_circuit_file(self, capsys, tmp_path):
        path = tmp_path / "circ.txt"
        path.write_text("H 0\nUN 2\nCNOT 0 1\n")
        code, out, _ = run_cli(capsys, "matrix", "--what", "circuit-file", "--file", str(path))
        assert code == 0
        assert "dense operator on 2 qubits" in out

    def test_missing_circuit_file(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "matrix", "--what", "circuit-file", "--file", str(tmp_path / "nope")
        )
        assert code == 2


class TestExploreCommand:
    def test_hn6_flags_quarter_pi(self, capsys):
        code, out, _ = run_cli(capsys, "explore", "--hamiltonian", "hn", "--n", "6")
        assert code == 0
        assert "usable at t = pi/4" in out

    def test_ring_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "explore", "--hamiltonian", "ring", "--n", "4",
            "--grid", "0.25pi,0.5pi", "--json",
        )
        assert code == 0
        rows = [json.loads(line) for line in out.strip().splitlines()]
        assert len(rows) == 2
        assert all(r["is_diagonal"] for r in rows)

    def test_l2_scan(self, capsys):
        code, out, _ = run_cli(
            capsys, "explore", "--hamiltonian", "l2", "--n", "4", "--grid", "0.25pi,1.5"
        )
        assert code == 0
        assert "best candidate" in out

    def test_l2_cap_exceeded(self, capsys):
        code, _, err = run_cli(capsys, "explore", "--hamiltonian", "l2", "--n", "9")
        assert code == 3

    def test_coupling_file(self, capsys, tmp_path):
        path = tmp_path / "J.txt"
        path.write_text("1 2 1.0\n2 3 1.0\n3 4 1.0\n4 1 1.0\n")
        code, out, _ = run_cli(
            capsys, "explore", "--hamiltonian", "kn-file", "--n", "4",
            "--coupling-file", str(path), "--grid", "0.25pi",
        )
        assert code == 0

    def test_malformed_coupling_file(self, capsys, tmp_path):
        path = tmp_path / "J.txt"
        path.write_text("1 2\n")
        code, _, err = run_cli(
            capsys, "explore", "--hamiltonian", "kn-file", "--n", "4",
            "--coupling-file", str(path),
        )
        assert code == 2
        assert "i j J_ij" in err

    def test_deterministic_json(self, capsys):
        args = ("explore", "--hamiltonian", "ring", "--n", "4", "--json",
                "--grid", "0.25pi,0.5pi,0.75pi")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2
