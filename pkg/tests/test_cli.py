import json
from fractions import Fraction

from hcn.cli import main
from hcn.qseries import QSeries


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hurwitz(capsys):
    code, out, _ = run(capsys, "hurwitz", "23")
    assert code == 0 and out.strip() == "3"
    code, out, _ = run(capsys, "hurwitz", "0")
    assert out.strip() == "-1/12"


def test_lsz_and_pw(capsys):
    code, out, _ = run(capsys, "lsz", "--n1", "5", "--n2", "1", "--d", "0")
    assert code == 0 and out.strip() == "1/3"
    code, out, _ = run(capsys, "pw", "--m", "5", "--N", "5", "--n", "3")
    assert code == 0 and out.strip() == "2/3"


def test_local_factors_json(capsys):
    code, out, _ = run(capsys, "local-factors", "--p", "5", "--n", "3")
    data = json.loads(out)
    assert code == 0
    assert data == {"p": 5, "A": "5/4", "B": "0", "C": "2", "D": "1"}


def test_orbits(capsys):
    code, out, _ = run(capsys, "orbits", "--p", "31", "--disc=-43")
    data = json.loads(out)
    assert code == 0
    assert len(data["representatives"]) == 4
    assert all(r["stabilizer"] == 2 for r in data["representatives"])
    code, _, err = run(capsys, "orbits", "--p", "31", "--disc", "43")
    assert code == 2 and "negative" in err


def test_ternary_enumerate(capsys):
    code, out, _ = run(capsys, "ternary-enumerate", "--level", "44",
                       "--disc", "1936", "--aniso", "11")
    data = json.loads(out)
    assert code == 0 and len(data) == 2
    assert sorted(d["aut"] for d in data) == [8, 12]


def test_theta_json_roundtrip(capsys):
    code, out, _ = run(capsys, "theta", "--form", "7,3,7,2,-6,2",
                       "--prec", "19")
    data = json.loads(out)
    series = QSeries.from_dict(data)
    assert code == 0
    assert series.coeff(3) == 2 and series.coeff(12) == 8
    assert data["coeffs"][0] == [0, "1"]


def test_eta(capsys):
    code, out, _ = run(capsys, "eta", "--factors", "1:2,11:2", "--prec", "6")
    series = QSeries.from_dict(json.loads(out))
    assert code == 0 and series.coeff(1) == 1 and series.coeff(2) == -2
    code, _, err = run(capsys, "eta", "--factors", "2:2,11:2", "--prec", "6")
    assert code == 2 and "24" in err


def test_series_hmn(capsys):
    code, out, _ = run(capsys, "series-hmn", "--m", "5", "--N", "5",
                       "--prec", "19")
    series = QSeries.from_dict(json.loads(out))
    assert code == 0
    assert series.coeff(3) == Fraction(2, 3)
    assert series.coeff(0) == Fraction(1, 3)


def test_verify_single(capsys):
    code, out, _ = run(capsys, "verify", "main4", "--p", "31", "--n", "43")
    data = json.loads(out)
    assert code == 0 and data["pass"] and data["lhs"] == "96"


def test_verify_failure_exit_code(capsys):
    # hypothesis violations are usage errors (2), not failures (1)
    code, _, err = run(capsys, "verify", "main4", "--p", "31", "--n", "5")
    assert code == 2 and "mod 4" in err


def test_verify_range(capsys):
    code, out, _ = run(capsys, "verify", "pw_to_lsz", "--N", "15", "--m", "3",
                       "--range", "n=0:60", "--format", "pretty")
    assert code == 0 and "61/61" in out
    code, out, _ = run(capsys, "verify", "kronecker_hurwitz",
                       "--range", "n=1:40", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("identity,n")
    assert len(lines) == 41


def test_verify_all_smoke(capsys):
    code, out, _ = run(capsys, "verify-all", "--scale", "smoke")
    assert code == 0
    assert "main4" in out and "FAIL" not in out


def test_seed_tables(tmp_path, capsys):
    code, _, _ = run(capsys, "seed-tables", str(tmp_path))
    assert code == 0
    orbits = json.loads((tmp_path / "orbits_p31_disc-43.json").read_text())
    assert len(orbits["representatives"]) == 4
    theta = json.loads((tmp_path / "theta_Q5.json").read_text())
    assert QSeries.from_dict(theta).coeff(3) == 2
    genus = json.loads((tmp_path / "genus_N35_aniso5.json").read_text())
    assert len(genus["classes"]) == 3
    f = json.loads((tmp_path / "cusp_f_p11.json").read_text())
    assert QSeries.from_dict(f).coeff(3) == 1


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "theta", "--form", "1,1,1,0,0,0",
                       "--prec", "10", "--output", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert QSeries.from_dict(data).coeff(1) == 6
