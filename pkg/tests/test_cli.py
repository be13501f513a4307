import json

from syzygy.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_betti_json_schema(capsys):
    code, out, _ = run(capsys, "betti", "--g", "5", "--char", "0",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"g", "char", "betti", "methods", "duality_ok",
                            "version"}
    assert payload["g"] == 5
    assert payload["betti"][1][1] == 3
    assert payload["betti"][2][2] == 3
    assert payload["duality_ok"] is True


def test_betti_table_format(capsys):
    code, out, _ = run(capsys, "betti", "--g", "3", "--char", "0")
    assert code == 0
    assert "duality_ok: True" in out


def test_betti_char2(capsys):
    code, out, _ = run(capsys, "betti", "--g", "7", "--char", "2",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    row1 = [payload["betti"][i][1] for i in range(1, 6)]
    assert row1 == [15, 40, 45, 24, 5]
    assert payload["duality_ok"] is None


def test_determinism_byte_identical(capsys):
    a = run(capsys, "chow", "--n", "4", "--char", "3", "--samples", "25",
            "--seed", "7", "--format", "json")
    b = run(capsys, "chow", "--n", "4", "--char", "3", "--samples", "25",
            "--seed", "7", "--format", "json")
    assert a == b
    assert a[0] == 0


def test_csv_layout(capsys):
    code, out, _ = run(capsys, "betti", "--g", "4", "--char", "0",
                       "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "i,j,value,method"
    assert "1,1,1,delta2" in lines


def test_weyman_report(capsys):
    code, out, _ = run(capsys, "weyman", "--a", "5", "--char", "0",
                       "--q", "0..3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    dims = {row["q"]: row["dim"] for row in payload["dims"]}
    assert dims == {0: 6, 1: 16, 2: 21, 3: 0}
    assert all(row["equal"] for row in payload["dims"])


def test_weyman_char2_exit_code(capsys):
    code, _, err = run(capsys, "weyman", "--a", "4", "--char", "2")
    assert code == 2
    assert "characteristic 2" in err


def test_weyman_a2_all_zero(capsys):
    code, out, _ = run(capsys, "weyman", "--a", "2", "--char", "7",
                       "--q", "0..2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert all(row["dim"] == 0 for row in payload["dims"])


def test_koszul_resonance_n3(capsys):
    code, out, _ = run(capsys, "koszul-resonance", "--n", "3", "--m", "3",
                       "--char", "5", "--samples", "10", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["counts"]["trivial"] == 10


def test_koszul_resonance_full_k(capsys):
    # m = dim Wedge^2 V: the module vanishes identically
    code, out, _ = run(capsys, "koszul-resonance", "--n", "4", "--m", "6",
                       "--char", "5", "--samples", "8", "--format", "json")
    assert code == 0
    assert json.loads(out)["counts"]["trivial"] == 8


def test_chow_reports_agreement(capsys):
    code, out, _ = run(capsys, "chow", "--n", "4", "--char", "2",
                       "--samples", "30", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["disagreements"] == 0


def test_hermite_pass_and_print(capsys):
    code, out, _ = run(capsys, "hermite", "--d", "4", "--i", "3", "--char", "2")
    assert code == 0
    assert "PASS" in out
    code, out, _ = run(capsys, "hermite", "--d", "0", "--i", "5", "--char", "0")
    assert code == 0
    assert "x^4 ^ x^3 ^ x^2 ^ x ^ 1" in out


def test_guard_exit_code(capsys):
    code, _, err = run(capsys, "betti", "--g", "13", "--char", "0")
    assert code == 3
    assert "guard" in err.lower()
    code, _, _ = run(capsys, "betti-oracle", "--g", "9", "--char", "2")
    assert code == 3


def test_invalid_characteristic(capsys):
    code, _, err = run(capsys, "betti", "--g", "4", "--char", "6")
    assert code == 2


def test_invalid_subcommand(capsys):
    assert main(["nonsense"]) == 2


def test_selfcheck_small(capsys):
    code, out, _ = run(capsys, "selfcheck", "--g-max", "4")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_betti_oracle_report(capsys):
    code, out, _ = run(capsys, "betti-oracle", "--g", "4", "--char", "0",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["kij"]["1,1"] == 1
    assert payload["kij"]["1,2"] == 1
    assert payload["ring_dims"]["2"] == 14
