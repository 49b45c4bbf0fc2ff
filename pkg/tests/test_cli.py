import csv
import io
import json
import math

import pytest

from lane_emden.cli import fmt, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_subcritical(capsys):
    code, out, _ = run(capsys, "check", "--n", "20", "--s", "2.5", "--p", "1.5")
    assert code == 0
    assert out.startswith("Subcritical:")


def test_check_critical(capsys):
    code, out, _ = run(capsys, "check", "--n", "20", "--s", "2.5", "--p", "1.6666666666667")
    assert code == 0 and out.startswith("Critical:")


def test_check_stable_singular_json(capsys):
    code, out, _ = run(capsys, "check", "--n", "40", "--s", "2.5", "--p", "12", "--format", "json")
    row = json.loads(out)
    assert code == 0
    assert row["regime"] == "SupercriticalStableSingular" and row["F"] <= 0


@pytest.mark.parametrize("argv", [
    ["check", "--n", "4", "--s", "2.5", "--p", "2"],
    ["check", "--n", "20", "--s", "2.5", "--p", "0.5"],
    ["check", "--n", "20", "--s", "3.5", "--p", "2"],
    ["exponents", "--s", "2.5", "--n-min", "5", "--n-max", "10"],
    ["exponents", "--s", "2.5", "--n-min", "14", "--n-max", "20", "--n-step", "0"],
    ["exponents", "--s", "2.5", "--n-min", "14", "--n-max", "20", "--columns", "p_x"],
])
def test_domain_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_outside_range_warns(capsys):
    code, _, err = run(capsys, "check", "--n", "20", "--s", "1", "--p", "2")
    assert code == 0 and "warning" in err


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["check", "--n", "20"])
    assert info.value.code == 2


def test_exponent_table_csv_round_trip(capsys):
    code, out, _ = run(capsys, "exponents", "--s", "2.5", "--n-min", "12", "--n-max", "30",
                       "--columns", "p_s,p_m,p_c,a_ns")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["n", "s", "p_s", "p_m", "p_c", "a_ns"]
    assert [float(r["n"]) for r in rows] == list(range(12, 31))
    from lane_emden import pc_exponent, pm_exponent
    for r in rows:
        n = float(r["n"])
        assert float(r["p_c"]) == pytest.approx(pc_exponent(n, 2.5), rel=1e-14)
        assert float(r["p_m"]) == pytest.approx(pm_exponent(n, 2.5), rel=1e-14)
        if n <= 13:
            assert r["p_c"] == "inf" and r["a_ns"] == ""
        else:
            assert math.isfinite(float(r["p_c"]))


def test_region_pm_infinite_below_threshold(capsys):
    code, out, _ = run(capsys, "region", "--s", "2.5", "--n-min", "14", "--n-max", "17")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert list(rows[0]) == ["n", "s", "p_s", "p_m", "p_c"]
    assert all(r["p_m"] == "inf" for r in rows)


def test_region_json_lines(capsys):
    code, out, _ = run(capsys, "region", "--s", "2.5", "--n-min", "13", "--n-max", "14", "--format", "json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows[0]["p_c"] is None and rows[0]["p_c_infinite"] is True
    assert rows[1]["p_c"] > 0 and "p_c_infinite" not in rows[1]


def test_output_is_deterministic(capsys):
    argv = ["exponents", "--s", "2.3", "--n-min", "12", "--n-max", "20", "--n-step", "0.5"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_out_file(tmp_path, capsys):
    target = tmp_path / "t.csv"
    code, out, _ = run(capsys, "region", "--s", "2.5", "--n-min", "14", "--n-max", "15", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("n,s,p_s,p_m,p_c\n")


def test_row_errors_go_to_error_column(capsys, monkeypatch):
    from lane_emden import cli
    from lane_emden.exponents import BracketError

    def boom(n, s, tol):
        if n == 15:
            raise BracketError("no sign change")
        return 2.0

    monkeypatch.setattr(cli, "pc_exponent", boom)
    code, out, _ = run(capsys, "region", "--s", "2.5", "--n-min", "14", "--n-max", "16")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 1
    assert rows[1]["error"] == "no sign change" and rows[0]["error"] == ""


def test_verify_filter(capsys):
    code, out, _ = run(capsys, "verify", "--filter", "threshold.")
    lines = out.strip().splitlines()
    assert code == 0
    assert all(line.startswith("pass  threshold.") for line in lines[:-1])
    assert lines[-1] == "5/5 checks passed"


def test_verify_unknown_filter(capsys):
    code, _, _ = run(capsys, "verify", "--filter", "nothing.")
    assert code == 2


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--filter", "jordan.", "--format", "json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and rows and all(r["status"] == "pass" for r in rows)


def test_n0(capsys):
    code, out, _ = run(capsys, "n0", "--s", "2.5", "--format", "json")
    row = json.loads(out)
    assert code == 0
    assert row["n0"] == 13 and row["bound"] == pytest.approx(13.998) and row["bound_holds"] is True
    code, out, _ = run(capsys, "n0", "--s", "1")
    assert code == 0 and out.startswith("n0(1) = 10\n")
    code, out, _ = run(capsys, "n0", "--s", "2")
    assert out.startswith("n0(2) = 12\n")


def test_fmt():
    assert fmt(math.inf) == "inf"
    assert fmt(None) == ""
    assert fmt(1 / 3) == "0.333333333333333"


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "lane_emden", "n0", "--s", "2.5", "--format", "csv"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "s,n0,boundary,bound,bound_holds"
