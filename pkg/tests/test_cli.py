import csv
import io
import json
import math

import numpy as np
import pytest

from wehrlkit.cli import main, parse_grid, parse_index_range, UsageError
from wehrlkit.entropy import min_entropy, wehrl_pure_asymptotic


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_husimi_examples(capsys):
    code, out, _ = run(capsys, "husimi", "--m", "0", "--j", "0", "--lambda", "1")
    assert code == 0 and float(out) == pytest.approx(math.exp(-1), rel=1e-15)
    code, out, _ = run(capsys, "husimi", "--m", "1", "--beta", "1", "--lambda", "0")
    assert float(out) == pytest.approx(0.2325442, abs=1e-7)
    code, out, _ = run(capsys, "husimi", "--m", "1", "--j", "1", "--lambda", "1")
    assert float(out) == 0.0
    code, out, _ = run(capsys, "husimi", "--m", "1", "--j", "0", "--x", "1", "--y", "1", "--b-field", "2")
    assert float(out) == pytest.approx(2 * math.exp(-2))
    code, out, _ = run(capsys, "husimi", "--m", "1", "--temperature", "1", "--lambda", "0")
    assert float(out) == pytest.approx(0.2325442, abs=1e-7)


def test_husimi_grid(capsys):
    code, out, _ = run(capsys, "husimi", "--m", "2", "--j", "3", "--grid", "0:4:5")
    table = rows(out)
    assert code == 0 and [float(r["lambda"]) for r in table] == [0, 1, 2, 3, 4]
    code, out, _ = run(capsys, "husimi", "--m", "2", "--j", "3", "--grid", "0:4:5", "--format", "json")
    assert len(json.loads(out)) == 5


@pytest.mark.parametrize("argv", [
    ["husimi", "--m", "1", "--lambda", "1"],
    ["husimi", "--m", "1", "--j", "1", "--beta", "1", "--lambda", "1"],
    ["husimi", "--m", "1", "--j", "1", "--lambda", "1", "--x", "1"],
    ["husimi", "--m", "1", "--j", "1", "--x", "1", "--y", "1"],
    ["husimi", "--m", "1", "--beta", "1", "--temperature", "1", "--lambda", "1"],
    ["husimi", "--m", "1", "--j", "1", "--lambda", "-1"],
    ["entropy", "--m", "1"],
    ["min-entropy"],
    ["dist", "--law", "y", "--lambda", "1"],
    ["rate"],
    ["verify", "--suite", "nope"],
    ["nosuch"],
])
def test_usage_errors_exit_1(capsys, argv):
    code = None
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == 1


def test_entropy_examples(capsys):
    code, out, _ = run(capsys, "entropy", "--m", "0", "--beta", "1", "--method", "both")
    rep = json.loads(out)
    assert rep["numeric_value"] == pytest.approx(1.4586751, abs=1e-7)
    assert rep["abs_diff"] <= 1e-6 and not rep["discrepancy"]
    code, out, _ = run(capsys, "entropy", "--m", "0", "--j", "0")
    assert float(out) == pytest.approx(1.0, abs=1e-8)
    code, out, _ = run(capsys, "entropy", "--m", "1", "--beta", "10", "--method", "both")
    rep = json.loads(out)
    assert rep["numeric_value"] == pytest.approx(1.5772, abs=1e-4)
    assert rep["paper_value"] == pytest.approx(11.0000, abs=1e-3)
    assert rep["discrepancy"]
    # leading asymptotic term only; it is even below 1 at small indices
    code, out, _ = run(capsys, "entropy", "--m", "2", "--j", "5", "--method", "paper")
    assert code == 0 and float(out) == wehrl_pure_asymptotic(2, 5)[0]


def test_min_entropy(capsys):
    code, out, _ = run(capsys, "min-entropy", "--m", "1")
    (r,) = rows(out)
    assert float(r["tau"]) == pytest.approx(0.5, abs=1e-12)
    assert float(r["T_min"]) == pytest.approx(1.4426950, abs=1e-7)
    assert float(r["S_min"]) == pytest.approx(2.6362944, abs=1e-7)
    code, out, _ = run(capsys, "min-entropy", "--max-m", "50")
    table = rows(out)
    assert len(table) == 50 and all(float(r["residual"]) <= 1e-10 for r in table)


def test_fig1(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("WEHRLKIT_OUTPUT_DIR", str(tmp_path))
    code, _, _ = run(capsys, "fig1", "--m-max", "8", "--t-grid", "0.05:20:400", "--out", "fig1.csv")
    assert code == 0
    table = rows((tmp_path / "fig1.csv").read_text())
    T = np.array([float(r["T"]) for r in table])
    step = T[1] - T[0]
    s0 = np.array([float(r["S_m0"]) for r in table])
    assert np.allclose(s0, 1 - np.log(-np.expm1(-1 / T)), rtol=1e-12)
    assert np.all(np.diff(s0) > 0)
    for m in range(1, 9):
        col = np.array([float(r[f"S_m{m}"]) for r in table])
        k = int(np.argmin(col))
        assert 0 < k < len(T) - 1
        assert abs(T[k] - min_entropy(m).T_min) <= step
    assert all(float(v) >= 1 for r in table for k, v in r.items() if k != "T")


def test_fig1_csv_round_trip(capsys):
    from wehrlkit.entropy import wehrl_thermal_paper

    _, out, _ = run(capsys, "fig1", "--m-max", "3", "--t-grid", "0.3:4:7")
    for r in rows(out):
        beta = 1 / float(r["T"])
        for m in range(4):
            assert float(r[f"S_m{m}"]) == wehrl_thermal_paper(m, beta)


def test_dist(capsys):
    code, out, _ = run(capsys, "dist", "--law", "x", "--m", "0", "--lambda", "2")
    table = rows(out)
    for r in table[:8]:
        j = int(r["j"])
        assert float(r["mass"]) == pytest.approx(math.exp(-2) * 2**j / math.factorial(j), rel=1e-13)
    code, out, _ = run(capsys, "dist", "--law", "y", "--m", "0..8", "--lambda", "0", "--beta", "1")
    table = rows(out)
    a = math.exp(-1)
    assert [int(r["m"]) for r in table] == list(range(9))
    for r in table:
        assert float(r["mass"]) == pytest.approx((1 - a) * a ** int(r["m"]), rel=1e-13)
    code, out, _ = run(capsys, "dist", "--law", "y", "--lambda", "1", "--beta", "1", "--sample", "100000", "--seed", "7")
    (r,) = rows(out)
    assert r["within_band"] == "1"


def test_rate(capsys):
    code, out, _ = run(capsys, "rate", "--beta", "1")
    table = rows(out)
    one = next(r for r in table if float(r["xi"]) == 1.0)
    assert abs(float(one["rate"])) <= 1e-15 and float(one["u_star"]) == 0.0
    for beta in ("0.5", "1", "2"):
        _, out, _ = run(capsys, "rate", "--beta", beta, "--xi-grid", "0.5,1,2,5")
        assert all(r["confirmed"] == "1" for r in rows(out))
    _, out, _ = run(capsys, "rate", "--pure-limit", "--xi-grid", "2")
    (r,) = rows(out)
    assert float(r["rate"]) == pytest.approx(1 - math.log(2), abs=1e-15)


def test_csv_uses_17_digits(capsys):
    _, out, _ = run(capsys, "husimi", "--m", "0", "--j", "0", "--grid", "0.1:0.1:1")
    value = rows(out)[0]["Q"]
    assert float(value) == math.exp(-0.1)
    assert len(value.replace(".", "").lstrip("0")) == 17


def test_outputs_are_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        run(capsys, "dist", "--law", "y", "--lambda", "1", "--beta", "1", "--sample", "5000", "--seed", "3", "--out", str(path))
    assert a.read_bytes() == b.read_bytes()


def test_verify_suites(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--suite", "pure")
    recs = json.loads(out)
    assert code == 0 and all(r["verdict"] == "pass" for r in recs)
    code, out, _ = run(capsys, "verify", "--suite", "thermal")
    recs = [r for r in json.loads(out) if r["claim_id"] == "thermal.variance"]
    bad = {r["case"] for r in recs if r["verdict"] != "pass"}
    assert code == 0
    assert all(r["expected"] for r in recs if r["verdict"] != "pass")
    assert all(c.startswith(("m=0", "m=2", "m=3")) for c in bad)
    assert all(r["verdict"] == "pass" for r in recs if r["case"].startswith("m=1"))
    code, out, _ = run(capsys, "verify", "--suite", "entropy", "--out", str(tmp_path / "e.json"))
    recs = [r for r in json.loads((tmp_path / "e.json").read_text()) if r["claim_id"] == "thermal-entropy.closed-form"]
    assert all((r["verdict"] == "pass") == r["case"].startswith("m=0") for r in recs)
    code, _, _ = run(capsys, "verify", "--suite", "rate", "--strict")
    assert code == 3


def test_verify_record_shape(capsys):
    _, out, _ = run(capsys, "verify", "--suite", "dist")
    keys = {"claim_id", "case", "paper_value", "oracle_value", "abs_err", "rel_err", "tolerance", "verdict", "expected"}
    for r in json.loads(out):
        assert set(r) == keys
        assert (r["verdict"] == "pass") == (r["abs_err"] <= r["tolerance"])


def test_grid_parsers():
    assert list(parse_grid("0:1:3")) == [0.0, 0.5, 1.0]
    assert list(parse_grid("1,2.5")) == [1.0, 2.5]
    assert parse_index_range("0..3") == [0, 1, 2, 3]
    assert parse_index_range("4") == [4]
    for bad in ("1:2", "a:b:c", "0:1:0"):
        with pytest.raises(UsageError):
            parse_grid(bad)
    with pytest.raises(UsageError):
        parse_index_range("3..1")
