import csv
import io
import subprocess
import sys

import pytest

from relaycode import ChannelParams, EnergyParams, SchemeConfig, evaluate
from relaycode.cli import EXIT_NUMERICAL, EXIT_TRUNCATED, EXIT_USAGE, main
from relaycode.figures import FIGURES, figure_rows, psd_grid
from relaycode.sweep import COLUMNS, SweepSpecError, csv_text, fmt, make_row, parse_spec, parse_values

POINT = ["--psd", "0.5", "--psr", "0.8", "--prd", "0.8"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


# ------------------------------------------------------------------ eval


def test_eval_writes_one_row_in_fixed_columns(capsys):
    code, out, _ = run(capsys, "eval", "--scheme", "relay-only", "--n", "2", "--alpha", "1", *POINT)
    assert code == 0
    assert out.splitlines()[0] == ",".join(COLUMNS)
    (row,) = rows_of(out)
    assert float(row["t_per_packet"]) == 3.0
    assert row["solver_path"] == "forward-substitution"
    assert row["sim_mean_T"] == "" and row["state_count"] == "11"


def test_eval_output_is_byte_identical(capsys, tmp_path):
    args = ["eval", "--scheme", "source-only", "--n", "5", "--x", "2", "--alpha", "0.6", *POINT]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main([*args, "--out", str(a)]) == 0
    assert main([*args, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_numbers_round_trip():
    assert fmt(0.1) == "0.1" and float(fmt(2 / 3)) == 2 / 3
    assert fmt(float("inf")) == "inf" and fmt(None) == "" and fmt(3) == "3"


def test_both_coding_defaults_to_throughput_optimal_alpha(capsys):
    code, out, _ = run(capsys, "eval", "--scheme", "both", *POINT)
    (row,) = rows_of(out)
    assert code == 0 and float(row["alpha"]) == pytest.approx(2 / 3)
    assert float(row["throughput"]) == pytest.approx(0.6)


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--scheme", "relay-only", *POINT],  # alpha missing
        ["eval", "--scheme", "relay-only", "--alpha", "0.5", "--psd", "1.5", "--psr", "0.8", "--prd", "0.8"],
        ["eval", "--scheme", "sideways", "--alpha", "0.5", *POINT],
        ["eval", "--scheme", "source-only", "--n", "2", "--x", "3", "--alpha", "0.5", *POINT],
        ["eval", "--scheme", "both", "--alpha", "0", *POINT],
        ["figure", "fig99"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and err


def test_non_absorbing_exits_3(capsys):
    code, _, err = run(
        capsys, "eval", "--scheme", "relay-only", "--alpha", "1", "--psd", "0", "--psr", "0.8", "--prd", "0.8"
    )
    assert code == EXIT_NUMERICAL and "never complete" in err


def test_truncated_simulation_exits_4(capsys):
    code, _, _ = run(
        capsys, "simulate", "--scheme", "source-only", "--n", "3", "--alpha", "0.5", *POINT,
        "--trials", "20", "--max-slots", "3",
    )  # fmt: skip
    assert code == EXIT_TRUNCATED


# -------------------------------------------------------------- optimize


def test_optimize_reports_optimum_and_optional_curve(capsys):
    args = ["optimize", "--scheme", "relay-only", "--n", "1", "--psd", "0.2", "--psr", "0.8", "--prd", "0.8"]
    code, out, _ = run(capsys, *args, "--grid-points", "21")
    assert code == 0
    (best,) = rows_of(out)
    assert best["curve_label"] == "optimum (time)"
    assert float(best["alpha"]) == pytest.approx(0.65, abs=0.05)
    code, out, _ = run(capsys, *args, "--grid-points", "21", "--curve", "--kind", "energy")
    rows = rows_of(out)
    assert len(rows) == 22 and rows[-1]["curve_label"] == "optimum (energy)"
    assert rows[0]["solver_path"] == "non-absorbing" and rows[0]["t_total"] == "inf"


# ---------------------------------------------------------------- simulate


def test_simulate_fills_simulation_columns(capsys):
    code, out, _ = run(
        capsys, "simulate", "--scheme", "relay-only", "--n", "1", "--alpha", "0.5", *POINT,
        "--trials", "2000", "--seed", "3", "--mode", "chain",
    )  # fmt: skip
    (row,) = rows_of(out)
    assert code == 0 and row["curve_label"] == "sim:chain"
    assert abs(float(row["sim_mean_T"]) - float(row["t_total"])) < 4 * float(row["sim_stderr_T"])


# ----------------------------------------------------------------- sweep


SPEC = """\
# two schemes on an alpha range
scheme = relay-only, source-only
n = 2
x = 1, 2
alpha = 0.25:0.75:0.25
psd = 0.5
psr = 0.8
prd = 0.8
"""


def test_sweep_rows_and_manifest(tmp_path, capsys):
    spec = tmp_path / "spec.txt"
    spec.write_text(SPEC)
    out = tmp_path / "sweep.csv"
    assert main(["sweep", str(spec), "--out", str(out)]) == 0
    rows = rows_of(out.read_text())
    # relay-only ignores x: 3 alphas; source-only: 2 memories x 3 alphas
    assert [r["scheme"] for r in rows] == ["relay-only"] * 3 + ["source-only"] * 6
    manifest = dict(
        line.split(" = ", 1) for line in (tmp_path / "sweep.csv.manifest").read_text().splitlines()
    )
    assert manifest["rows"] == "9" and len(manifest["spec_sha256"]) == 64
    assert "9 points" in capsys.readouterr().err


def test_sweep_point_equals_eval(tmp_path, capsys):
    spec = tmp_path / "one.txt"
    spec.write_text("scheme = source-only\nn = 4\nx = 2\nalpha = 0.6\npsd = 0.3\npsr = 0.7\nprd = 0.9\nenc = 2\n")
    out = tmp_path / "one.csv"
    assert main(["sweep", str(spec), "--out", str(out)]) == 0
    code, single, _ = run(
        capsys, "eval", "--scheme", "source-only", "--n", "4", "--x", "2", "--alpha", "0.6",
        "--psd", "0.3", "--psr", "0.7", "--prd", "0.9", "--enc", "2",
    )  # fmt: skip
    assert code == 0 and out.read_text() == single


def test_sweep_is_identical_with_workers(tmp_path):
    spec = tmp_path / "spec.txt"
    spec.write_text(SPEC)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep", str(spec), "--out", str(a), "--workers", "1"]) == 0
    assert main(["sweep", str(spec), "--out", str(b), "--workers", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_optimizes_alpha_per_point(tmp_path):
    spec = tmp_path / "opt.txt"
    spec.write_text("scheme = relay-only\nalpha = opt\npsd = 0.2, 0.9\npsr = 0.8\nprd = 0.8\ngrid-points = 51\n")
    out = tmp_path / "opt.csv"
    assert main(["sweep", str(spec), "--out", str(out)]) == 0
    low, high = rows_of(out.read_text())
    assert float(low["alpha"]) < 1.0 and float(high["alpha"]) == 1.0


@pytest.mark.parametrize(
    "text, bad",
    [
        ("scheme = both\nalpha = 0.5\npsd = 0.5\npsr = 0.5\n", "prd"),
        ("scheme = both\nalpha = 0.5\npsd = 0.5\npsr = 0.5\nprd = 0.5\ncolour = red\n", "colour"),
        ("scheme = both\nalpha = 1:0:0.1\npsd = 0.5\npsr = 0.5\nprd = 0.5\n", "alpha"),
        ("scheme = both\nalpha = 0:1:0.001\npsd = 0:1:0.001\npsr = 0.5\nprd = 0.5\n", "max-points"),
    ],
)
def test_bad_specs_name_the_offending_key(text, bad):
    with pytest.raises(SweepSpecError) as info:
        parse_spec(text)
    assert bad in info.value.keys


def test_bad_spec_exits_2(tmp_path, capsys):
    spec = tmp_path / "bad.txt"
    spec.write_text("scheme = both\n")
    code, _, err = run(capsys, "sweep", str(spec), "--out", str(tmp_path / "o.csv"))
    assert code == EXIT_USAGE and "alpha" in err


def test_decimal_ranges_hit_their_endpoints():
    assert parse_values("alpha", "0:1:0.1") == [i / 10 for i in range(11)]
    assert parse_values("n", "1:5:2") == [1, 3, 5]


def test_non_absorbing_rows_in_sweeps_are_marked(tmp_path):
    spec = tmp_path / "dead.txt"
    spec.write_text("scheme = relay-only\nalpha = 0, 1\npsd = 0\npsr = 0.8\nprd = 0.8\n")
    out = tmp_path / "dead.csv"
    assert main(["sweep", str(spec), "--out", str(out)]) == 0
    assert {r["solver_path"] for r in rows_of(out.read_text())} == {"non-absorbing"}


# --------------------------------------------------------------- figures


def test_figure_ids_and_grids():
    assert set(FIGURES) >= {"fig3-relay-T", "fig4-source-T", "fig5-source-channels", "fig6-rates", "fig10-11-energy-opt"}
    assert psd_grid(0.05)[0] == 0.05 and psd_grid(0.05)[-1] == 1.0 and len(psd_grid(0.05)) == 20


def test_relay_figure_curves_rise_with_generation_size():
    rows = figure_rows("fig3-relay-T", grid_points=11)
    optima = {r["curve_label"]: float(r["t_per_packet"]) for r in rows if r["curve_label"].endswith("optimum")}
    values = [optima[f"n={n} optimum"] for n in (1, 2, 5, 10, 20)]
    assert values == sorted(values)


def test_comparison_figure_orders_schemes():
    rows = figure_rows("fig6-rates", grid_points=21, psd_step=0.25)
    by = {(r["curve_label"], float(r["p_sd"])): float(r["throughput"]) for r in rows}
    for psd in psd_grid(0.25):
        assert by[("s and r", psd)] >= by[("s, n=10, x=10", psd)] - 1e-12
        assert by[("s and r", psd)] >= by[("r, n=1", psd)] - 1e-12
        assert by[("s and r", psd)] >= psd - 1e-12


def test_figure_cli_writes_csv(tmp_path):
    out = tmp_path / "fig.csv"
    assert main(["figure", "fig5-source-channels", "--grid-points", "11", "--out", str(out)]) == 0
    rows = rows_of(out.read_text())
    assert len(rows) == 5 * 12 and all(r["scheme"] == "source-only" for r in rows)


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "relaycode", "eval", "--scheme", "both", *POINT],
        capture_output=True, text=True, check=False,
    )  # fmt: skip
    assert res.returncode == 0 and res.stdout.startswith("scheme,")


def test_make_row_matches_columns():
    ch = ChannelParams(0.5, 0.8, 0.8)
    cfg = SchemeConfig("relay-only", 2, 0.5)
    row = make_row(cfg, ch, EnergyParams(), evaluate(cfg, ch))
    assert tuple(row) == COLUMNS
    assert csv_text([row]).count("\n") == 2
