import csv
import io
import json
import math
import subprocess
import sys

import pytest

from parahbt import algebra
from parahbt.cli import HBT_HEADER, SweepConfig, main, read_config, run_sweep


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.mark.parametrize("argv,want", [
    (["pfact", "4", "--p", "3"], "120"),
    (["pfact", "1", "--p", "7"], "7"),
    (["pfact", "2", "--p", "3", "--parafermion"], "12"),
])
def test_pfact(capsys, argv, want):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == want


def test_pfact_domain_error(capsys):
    code, _, err = run(capsys, "pfact", "5", "--p", "3", "--parafermion")
    assert code == 2 and "error" in err


def test_transition(capsys):
    code, out, _ = run(capsys, "transition", "--n", "2", "--p", "3")
    assert code == 0 and rows_of(out)[0]["value"] == "5"
    code, out, _ = run(capsys, "transition", "--n", "1", "--p", "4", "--parafermion")
    assert rows_of(out)[0]["exact"] == "3/2"


def test_dist_vacuum(capsys):
    code, out, _ = run(capsys, "dist", "0", "--p", "3")
    assert code == 0 and rows_of(out) == [{"n": "0", "pmf": "1"}]


def test_dist_poisson_sums_to_one(capsys):
    code, out, _ = run(capsys, "dist", "4", "--p", "1", "--gaussian")
    rows = rows_of(out)
    assert math.fsum(float(r["pmf"]) for r in rows) == pytest.approx(1.0, abs=1e-15)
    assert float(rows[4]["pmf"]) == pytest.approx(math.exp(-4) * 4 ** 4 / 24, rel=1e-14)


def test_dist_correction_columns(capsys):
    code, out, _ = run(capsys, "dist", "100", "--p", "3", "--gaussian", "--correction")
    rows = rows_of(out)
    assert set(rows[0]) == {"n", "pmf", "gaussian", "corrected"}
    sigma = 10.0
    worst = max(abs(float(r["pmf"]) - float(r["gaussian"])) for r in rows
                if abs(int(r["n"]) - 99) <= 2 * sigma)
    # deviation from the plain Gaussian is a sigma^-2 effect on a sigma^-1 density
    assert worst < 3 / sigma ** 2


def test_coherent_row(capsys):
    code, out, _ = run(capsys, "coherent", "1", "--p", "3", "--format", "json")
    (row,) = json.loads(out)
    assert row["mean"] == pytest.approx(row["mean_direct"], rel=1e-12)
    assert row["p_even"] + row["p_odd"] == pytest.approx(1.0)


def test_hbt_sweep_contract(capsys, tmp_path):
    out_file = tmp_path / "sweep.csv"
    code, _, err = run(capsys, "hbt", "--p", "4", "1", "--mean", "1", "1e-6", "--order", "2", "1",
                       "--out", str(out_file))
    assert code == 0
    text = out_file.read_text()
    assert text.splitlines()[0] == ",".join(HBT_HEADER)
    rows = rows_of(text)
    keys = [(int(r["p"]), float(r["mean_n"]), int(r["order"]), r["method"]) for r in rows]
    assert keys == sorted(keys) and len(rows) == 2 * 2 * 2 * 4
    for r in rows:
        assert r["status"] == "ok"
        assert (r["lambda_p"] != "") == (r["order"] == "2")
        if r["p"] == "1" and r["order"] == "2":
            assert float(r["lambda_p"]) == 2.0
    small = [r for r in rows if r["p"] == "4" and r["order"] == "2" and float(r["mean_n"]) < 1e-3]
    assert float(small[0]["lambda_p"]) == pytest.approx(0.5, rel=1e-5)
    spread = float(err.split("spread:")[1])
    assert spread < 1e-6


def test_hbt_values_round_trip(capsys):
    code, out, _ = run(capsys, "hbt", "--p", "3", "--mean", "0.3", "--order", "3",
                       "--methods", "hypergeometric")
    (row,) = rows_of(out)
    from parahbt.hbt import ThermalState, g_hypergeometric
    assert float(row["value"]) == g_hypergeometric(3, ThermalState(0.3, 3)).value


def test_hbt_deterministic_and_parallel(tmp_path):
    cfg = dict(p_list=(2, 1, 3), mean_list=(2.0, 0.5), orders=(4, 1), c_bar=1.5)
    serial = run_sweep(SweepConfig(**cfg))
    again = run_sweep(SweepConfig(**cfg))
    parallel = run_sweep(SweepConfig(**cfg, workers=3))
    assert serial == again == parallel


def test_hbt_byte_identical_output(capsys, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        run(capsys, "hbt", "--p", "2", "5", "--mean-log", "0.01", "100", "5", "--out", str(path))
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_hbt_zero_mean_clamped(capsys):
    code, out, err = run(capsys, "hbt", "--p", "2", "--mean", "0", "--order", "1",
                         "--methods", "closed-form")
    assert code == 0 and "clamped" in err
    assert float(rows_of(out)[0]["mean_n"]) == 1e-9


def test_hbt_partial_failure_exit_code(capsys):
    # closed forms stop at order 4; the failed row is still written
    code, out, _ = run(capsys, "hbt", "--p", "2", "--mean", "1", "--order", "4", "5",
                       "--methods", "closed-form", "hypergeometric")
    rows = rows_of(out)
    assert code == 2
    bad = [r for r in rows if r["status"] != "ok"]
    assert len(bad) == 1 and bad[0]["order"] == "5" and bad[0]["method"] == "closed-form"


def test_hbt_bad_method(capsys):
    code, _, err = run(capsys, "hbt", "--p", "2", "--mean", "1", "--methods", "guess")
    assert code == 2 and "unknown method" in err


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("# sweep\np = 2 3\nmean = 0.5\norder = 1, 2\nmethods = closed-form\n")
    assert read_config(str(cfg))["order"] == "1, 2"
    code, out, _ = run(capsys, "hbt", "--config", str(cfg), "--p", "5")
    rows = rows_of(out)
    assert code == 0
    assert {r["p"] for r in rows} == {"5"} and {r["order"] for r in rows} == {"1", "2"}


def test_config_unknown_key(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    code, _, err = run(capsys, "hbt", "--config", str(cfg), "--p", "2", "--mean", "1")
    assert code == 2 and "colour" in err


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0 and "FAIL" not in out


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "hbt")
    lines = [ln for ln in out.splitlines() if ln.startswith("hbt:")]
    assert code == 0 and len(lines) == 5 and "oracle:" not in out


def test_verify_catches_wrong_ladder(capsys, monkeypatch):
    monkeypatch.setattr(algebra, "ladder_up_coeff", lambda n, p: math.sqrt(n + p))
    code, out, _ = run(capsys, "verify", "--suite", "oracle")
    assert code == 1 and "FAIL" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "parahbt", "pfact", "6", "--p", "2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip() == str(algebra.p_factorial(6, 2))
