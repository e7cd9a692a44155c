import csv
import io
import json
import math

import numpy as np
import pytest

from majorunc import cli
from majorunc.figures import dominance_threshold, qubit_sweep
from majorunc.unitaries import O3, dump_matrix, load_matrix, matrix_to_json, resolve

R2 = 1 / math.sqrt(2)
H_W_O3 = 0.476664517508  # oracle: -sum w ln w with w = (2/sqrt6, 1 - 2/sqrt6)
H_W_PI3 = 0.393873007585  # oracle: same with w = (sqrt3/2, 1 - sqrt3/2)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_bound_hadamard(capsys):
    code, out, _ = run(capsys, "bound", "--unitary", "hadamard2", "--lambda", "1,0")
    assert code == 0
    rep = json.loads(out)
    expected = -(R2 * math.log(R2) + (1 - R2) * math.log(1 - R2))
    assert rep["bound"] == pytest.approx(expected, abs=1e-14)
    assert rep["bound"] == pytest.approx(0.6048, abs=1e-3)
    np.testing.assert_allclose(rep["W"], [R2, 1 - R2], atol=1e-15)
    assert rep["baselines"]["B_KLJR"] is None and rep["baselines"]["B_KPP"] is None
    assert "B_B" in rep["baseline_notes"]


def test_bound_identity_conditional(capsys):
    code, out, _ = run(capsys, "bound", "--unitary", "identity", "--lambda", "0.7,0.3",
                       "--conditional")
    assert code == 0
    assert json.loads(out)["bound"] == pytest.approx(0, abs=1e-12)


def test_bound_o3(capsys):
    _, out, _ = run(capsys, "bound", "--unitary", "o3", "--lambda", "1,0,0")
    rep = json.loads(out)
    assert rep["bound"] == pytest.approx(H_W_O3, abs=1e-11)
    np.testing.assert_allclose(rep["W"], [0.8165, 0.1835, 0], atol=1e-4)


def test_bound_bits_scaling(capsys):
    args = ("bound", "--unitary", "fourier:3", "--lambda", "0.6,0.3,0.1")
    nats = json.loads(run(capsys, *args)[1])
    bits = json.loads(run(capsys, *args, "--base", "bits")[1])
    assert bits["bound"] == nats["bound"] * (1 / math.log(2))
    for key in ("B_MU", "B_B", "B_directsum"):
        assert bits["baselines"][key] == nats["baselines"][key] * (1 / math.log(2))
    ts = json.loads(run(capsys, *args, "--entropy", "tsallis:2", "--base", "bits")[1])
    assert ts["base"] == "unitless"


def test_bound_renyi_and_errors(capsys):
    _, out, _ = run(capsys, "bound", "--unitary", "hadamard2", "--lambda", "1,0",
                    "--entropy", "renyi:0.5")
    assert json.loads(out)["bound"] == pytest.approx(0.6472, abs=1e-4)
    code, _, err = run(capsys, "bound", "--unitary", "hadamard2", "--lambda", "1,0",
                       "--entropy", "renyi:2")
    assert code == 2 and json.loads(err)["error"]
    code, _, err = run(capsys, "bound", "--unitary", "hadamard2", "--lambda", "1,x")
    assert code == 2 and "error" in json.loads(err)
    code, _, err = run(capsys, "bound", "--unitary", "hadamard2", "--lambda", "0.5,0.2")
    assert code == 2
    code, _, _ = run(capsys, "bound", "--unitary", "hadamard2", "--lambda", "1,0",
                     "--entropy", "tsallis:2", "--conditional")
    assert code == 2


def test_matrix_roundtrip_bit_exact(tmp_path, rng):
    u = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))[0]
    path = tmp_path / "u.json"
    dump_matrix(u, path)
    back = load_matrix(path)
    assert np.array_equal(back.view(np.uint64), u.view(np.uint64))
    assert matrix_to_json(back) == json.loads(path.read_text())


def test_file_unitary(tmp_path, capsys):
    path = tmp_path / "o3.json"
    dump_matrix(O3, path)
    np.testing.assert_array_equal(resolve(str(path)), O3)
    _, out, _ = run(capsys, "bound", "--unitary", str(path), "--lambda", "1,0,0")
    assert json.loads(out)["bound"] == pytest.approx(H_W_O3, abs=1e-11)

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "subcoeffs", "--unitary", str(bad))
    assert code == 2 and json.loads(err)["error"] == "invalid-input"
    nonunitary = tmp_path / "nu.json"
    nonunitary.write_text(json.dumps(matrix_to_json([[1, 1], [0, 1]])))
    code, _, err = run(capsys, "subcoeffs", "--unitary", str(nonunitary))
    assert code == 2


def test_subcoeffs(capsys):
    _, out, _ = run(capsys, "subcoeffs", "--unitary", "o3")
    rep = json.loads(out)
    np.testing.assert_allclose(rep["s"], [2 / math.sqrt(6), 1, 1], atol=1e-14)
    assert rep["H_W"] == pytest.approx(H_W_O3, abs=1e-11)


def test_sweep_rows(capsys):
    _, out, _ = run(capsys, "sweep-qubit", "--mode", "theta", "--fixed", "0.3333333333333333",
                    "--grid", "0,1.5707963267948966,9")
    rows = read_csv(out)
    assert list(rows[0]) == ["x", "B_PRKZ", "B_B", "B_MU", "B_directsum"]
    assert len(rows) == 9
    assert all(float(v) == 0 for k, v in rows[0].items())

    _, out, _ = run(capsys, "sweep-qubit", "--mode", "lambda", "--fixed", str(math.pi / 8),
                    "--grid", "0,0.5,11")
    last = read_csv(out)[-1]
    assert float(last["x"]) == 0.5 and float(last["B_PRKZ"]) == pytest.approx(0, abs=1e-12)

    _, out, _ = run(capsys, "sweep-qubit", "--mode", "lambda", "--fixed", str(math.pi / 3),
                    "--grid", "0,0.5,11")
    first = read_csv(out)[0]
    assert float(first["B_PRKZ"]) == pytest.approx(H_W_PI3, abs=1e-11)
    for row in read_csv(out):
        assert all(float(v) >= 0 for v in row.values())


def test_sweep_errors(capsys):
    code, _, err = run(capsys, "sweep-qubit", "--mode", "lambda", "--fixed", "1",
                       "--grid", "0,0.5,1")
    assert code == 2 and json.loads(err)["error"] == "invalid-arguments"
    code, _, _ = run(capsys, "sweep-qubit", "--mode", "lambda", "--fixed", "1",
                     "--grid", "0.3,0.3,5")
    assert code == 2
    code, _, _ = run(capsys, "sweep-qubit", "--mode", "theta", "--fixed", "0.7",
                     "--grid", "0,1,5")
    assert code == 2


def test_csv_deterministic_and_bits(tmp_path, capsys):
    a, b, c = (tmp_path / n for n in ("a.csv", "b.csv", "c.csv"))
    args = ["simplex-qutrit", "--unitary", "o3", "--resolution", "6"]
    run(capsys, *args, "--out", str(a))
    run(capsys, *args, "--out", str(b), "--seed", "99")
    run(capsys, *args, "--out", str(c), "--base", "bits")
    assert a.read_bytes() == b.read_bytes()
    ra, rc = read_csv(a.read_text()), read_csv(c.read_text())
    for x, y in zip(ra, rc):
        assert x["λ1"] == y["λ1"]
        assert float(y["B_PRKZ"]) == pytest.approx(float(x["B_PRKZ"]) / math.log(2), rel=1e-11)
    # 12 significant digits
    assert all(len(v.replace(".", "").replace("-", "").lstrip("0")) <= 12
               for row in ra for v in row.values() if "e" not in v)


def test_simplex_rows(capsys):
    _, out, _ = run(capsys, "simplex-qutrit", "--unitary", "o3", "--resolution", "6")
    rows = read_csv(out)
    assert list(rows[0]) == ["λ1", "λ2", "λ3", "B_PRKZ", "B_B", "B_directsum"]
    for row in rows:
        lam = [float(row[k]) for k in ("λ1", "λ2", "λ3")]
        assert lam[0] >= lam[1] >= lam[2]
        assert float(row["B_PRKZ"]) >= float(row["B_directsum"]) - 1e-9
    vertex = next(r for r in rows if float(r["λ1"]) == 1)
    assert float(vertex["B_PRKZ"]) == pytest.approx(H_W_O3, abs=1e-11)
    code, _, err = run(capsys, "simplex-qutrit", "--unitary", "hadamard2")
    assert code == 2 and json.loads(err)["error"] == "invalid-arguments"
    code, _, _ = run(capsys, "simplex-qutrit", "--resolution", "1")
    assert code == 2


def test_dominance_threshold_pi3():
    xs = np.linspace(0, 0.5, 101)
    rows = qubit_sweep("lambda", math.pi / 3, xs)
    star = dominance_threshold(rows)
    assert star is not None and 0 < star < 0.5


def test_verify_exit_codes(capsys, tmp_path, monkeypatch):
    code, out, _ = run(capsys, "verify", "--n", "3", "--trials", "500", "--seed", "7", "--suite", "all")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "verify", "--n", "2", "--trials", "1", "--seed", "0",
                       "--suite", "majorization")
    rep = json.loads(out)["reports"][0]
    assert code == 0 and rep["trials"] == 1 and rep["violations"] == 0
    code, _, err = run(capsys, "verify", "--n", "12", "--trials", "1")
    assert code == 2 and json.loads(err)["error"] == "resource-limit"

    # an absurd negative slack forces every trial to count as a violation
    monkeypatch.setenv(cli.TOL_ENV, "-10")
    code, _, _ = run(capsys, "verify", "--n", "2", "--trials", "3", "--suite", "majorization")
    assert code == 1
    monkeypatch.setenv(cli.TOL_ENV, "abc")
    code, _, _ = run(capsys, "verify", "--n", "2", "--trials", "3")
    assert code == 2
