import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from wishcone.binomials import binomial_table
from wishcone.cli import main, parse_binom_csv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_jack_eval_value(capsys):
    code, out, _ = run(capsys, "jack-eval", "--kappa", "2", "--m", "2", "--alpha", "2", "--point", "1,1")
    assert code == 0 and json.loads(out) == "8"


def test_jack_eval_coefficients(capsys):
    code, out, _ = run(capsys, "jack-eval", "--kappa", "1,1", "--m", "2", "--alpha", "2")
    data = json.loads(out)
    assert data["monomials"] == [{"mu": "1,1", "coefficient": "2"}]


def test_binom_csv_round_trip(capsys):
    code, out, _ = run(capsys, "binom", "--alpha", "2", "--max-degree", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "kappa,sigma,alpha,value"
    parsed = parse_binom_csv(out)
    table = binomial_table(4, 4, 2)
    assert parsed == {(k, s, Fraction(2)): v for (k, s), v in table.entries.items()}
    for row in csv.DictReader(io.StringIO(out)):
        Fraction(row["value"])  # "p/q" strings, never floats
        assert "." not in row["value"]


def test_binom_json(capsys):
    code, out, _ = run(capsys, "binom", "--alpha", "1/2", "--max-degree", "2")
    rows = json.loads(out)
    assert {"kappa": "1,1", "sigma": "1", "alpha": "1/2", "value": "2"} in rows


def test_positivity_scan(capsys):
    code, out, _ = run(capsys, "positivity-scan", "--max-degree", "5", "--m", "3", "--alpha", "2,1/2")
    data = json.loads(out)
    assert code == 0 and [d["violations"] for d in data] == [0, 0]


def test_zonal(capsys):
    code, out, _ = run(capsys, "zonal", "--k", "2", "--r", "2", "--d", "1")
    data = json.loads(out)
    by_kappa = {z["kappa"]: z for z in data["zonal"]}
    assert by_kappa["1,1"]["monomials"] == {"1,1": "4/3"}
    assert by_kappa["2"]["monomials"] == {"2": "1", "1,1": "2/3"}


def test_check_existence_failure(capsys):
    code, out, _ = run(capsys, "check-existence", "--cone", "real:3", "--beta", "3/4", "--omega", "1,0,0", "--certificate")
    data = json.loads(out)
    assert code == 0
    assert data["passes"] is False and data["failed_condition"] == "GindikinWallach"
    assert data["certificate"]["kappa"] == [1, 1, 1] and Fraction(data["certificate"]["value"]) < 0
    assert data["certificate_verified"] is True


def test_check_existence_expect_pass(capsys):
    code, _, _ = run(capsys, "check-existence", "--cone", "real:3", "--beta", "1/2", "--omega", "1,1,0", "--expect", "pass")
    assert code == 1
    code, out, _ = run(capsys, "check-existence", "--cone", "real:3", "--beta", "0.5", "--omega", "1,0,0", "--expect", "pass")
    assert code == 0 and json.loads(out)["passes"] is True


def test_check_existence_matrix_files(tmp_path, capsys):
    omega = tmp_path / "omega.json"
    omega.write_text(json.dumps({"m": 3, "entries": [["2", "1", "0"], ["1", "1", "0"], ["0", "0", "0"]]}))
    scale = tmp_path / "scale.json"
    scale.write_text(json.dumps({"m": 3, "entries": [["1", "0", "0"], ["0", "2", "0"], ["0", "0", "1/3"]]}))
    code, out, _ = run(
        capsys, "check-existence", "--cone", "real:3", "--beta", "1/2", "--omega-file", str(omega), "--scale-file", str(scale), "--certificate"
    )
    data = json.loads(out)
    assert data["failed_condition"] == "RankCondition" and data["certificate_verified"]
    assert "warnings" not in data


def test_float_matrix_warns(tmp_path, capsys):
    omega = tmp_path / "omega.json"
    omega.write_text(json.dumps({"m": 3, "entries": [[1.0, 0.0, 0.0], [0.0, 1e-13, 0.0], [0.0, 0.0, 0.0]]}))
    code, out, _ = run(capsys, "check-existence", "--cone", "real:3", "--beta", "1/2", "--omega-file", str(omega))
    data = json.loads(out)
    assert data["passes"] is True and data["warnings"]


def test_check_existence_csv(capsys):
    code, out, _ = run(capsys, "check-existence", "--cone", "complex:2", "--beta", "1/2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["failed_condition"] == "GindikinWallach"


def test_laplace(tmp_path, capsys):
    u = tmp_path / "u.json"
    u.write_text(json.dumps({"m": 1, "entries": [["1"]]}))
    code, out, _ = run(capsys, "laplace", "--cone", "real:1", "--beta", "1", "--u-file", str(u), "--digits", "25")
    assert code == 0 and Fraction(json.loads(out)["value"]) == Fraction(1, 2)
    u.write_text(json.dumps({"m": 1, "entries": [["-0.6"]]}))
    code, _, err = run(capsys, "laplace", "--cone", "real:1", "--beta", "1", "--scale", "1", "--u-file", str(u))
    assert code == 2 and "OutOfDomain" in err


def test_usage_errors(capsys):
    code, _, err = run(capsys, "jack-eval", "--kappa", "1,2", "--m", "2", "--alpha", "1")
    assert code == 2
    code, _, err = run(capsys, "binom", "--alpha", "abc", "--max-degree", "2")
    assert code == 2 and "--alpha" in err
    with pytest.raises(SystemExit) as exc:
        main(["jack-eval", "--m", "2"])
    assert exc.value.code == 2
    assert "--kappa" in capsys.readouterr().err


def test_mc_verify(capsys):
    code, out, _ = run(
        capsys, "mc-verify", "--m", "2", "--beta", "1", "--omega", "1,0", "--kappa-max", "2", "--n", "200000", "--seed", "42", "--threads", "2"
    )
    data = json.loads(out)
    assert code == 0 and data["passed"] and len(data["rows"]) == 3


def test_mc_verify_refuses(capsys):
    code, _, err = run(capsys, "mc-verify", "--m", "2", "--beta", "1/2", "--omega", "1,1", "--n", "10")
    assert code == 2 and "RankExceedsDegrees" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "wishcone", "jack-eval", "--kappa", "1,1", "--m", "2", "--alpha", "2", "--point", "1,1"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout) == "2"
