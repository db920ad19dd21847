import io
import json
import math

import pytest

from netjack.errors import ConfigError
from netjack.experiments import (
    MethodSpec,
    RatioReport,
    RatioRow,
    emit_report,
    model_from_spec,
    parse_config,
    render_ratio_svg,
    report_csv,
    run_ratio_experiment,
    run_timing_benchmark,
)
from netjack.functionals import parse_statistic
from conftest import er_graph


def make_config(**overrides):
    base = {
        "model": "sbm-paper",
        "n_list": [30],
        "reps": 8,
        "statistics": ["edge-density"],
        "methods": [
            {"kind": "jackknife"},
            {"kind": "subsample", "b_frac": 0.5, "B": 20},
        ],
        "master_seed": 7,
    }
    base.update(overrides)
    return json.dumps(base)


# -- config parsing -----------------------------------------------------------------


def test_parse_minimal_config_fills_defaults():
    cfg = parse_config(json.dumps({"model": "sbm-paper", "n_list": [100], "statistics": ["edge-density"]}))
    assert cfg.reps == 100
    assert cfg.master_seed == 0
    assert [m.kind for m in cfg.methods] == ["jackknife", "subsample", "subsample", "subsample"]
    assert [m.b_frac for m in cfg.methods[1:]] == [0.05, 0.1, 0.2]
    assert all(m.B == 1000 for m in cfg.methods[1:])


def test_parse_config_accepts_stream():
    cfg = parse_config(io.StringIO(make_config()))
    assert cfg.n_list == (30,)


def test_parse_config_rejects_unknown_field():
    with pytest.raises(ConfigError, match="unknown config field.*bogus"):
        parse_config(make_config(bogus=1))


def test_parse_config_rejects_empty_n_list():
    with pytest.raises(ConfigError, match="n_list"):
        parse_config(make_config(n_list=[]))


def test_parse_config_rejects_unsorted_n_list():
    with pytest.raises(ConfigError, match="ascending"):
        parse_config(make_config(n_list=[100, 50]))


def test_parse_config_rejects_bad_b_frac():
    with pytest.raises(ConfigError, match="b_frac"):
        parse_config(make_config(methods=[{"kind": "subsample", "b_frac": 1.5, "B": 10}]))


def test_parse_config_rejects_single_rep():
    with pytest.raises(ConfigError, match="reps"):
        parse_config(make_config(reps=1))


def test_parse_config_rejects_bad_statistic():
    with pytest.raises(ConfigError, match="statistic"):
        parse_config(make_config(statistics=["banana"]))


def test_parse_config_rejects_non_json():
    with pytest.raises(ConfigError, match="JSON"):
        parse_config("not json at all {")


def test_model_from_spec_shorthands_and_objects():
    assert model_from_spec("sbm-paper").kind == "sbm"
    gr2 = model_from_spec("gr2")
    assert gr2.kind == "absdiff"
    assert gr2.exponent == pytest.approx(-1 / 3)
    sbm = model_from_spec({"kind": "sbm", "B": [[0.5]], "pi": [1.0]})
    assert sbm.B.tolist() == [[0.5]]
    with pytest.raises(ConfigError):
        model_from_spec("mystery")
    with pytest.raises(ConfigError):
        model_from_spec({"kind": "sbm", "B": [[0.5]], "pi": [1.0], "extra": 2})
    with pytest.raises(ConfigError):
        model_from_spec({"kind": "absdiff", "exponent": 0.5})


# -- ratio experiment -----------------------------------------------------------------


def test_ratio_experiment_shape_and_determinism():
    cfg = parse_config(make_config())
    report_a = run_ratio_experiment(cfg)
    report_b = run_ratio_experiment(cfg)
    assert report_csv(report_a) == report_csv(report_b)
    assert len(report_a.rows) == 2  # one stat x two methods
    jk_row = report_a.rows[0]
    assert (jk_row.n, jk_row.stat, jk_row.method) == (30, "edge-density", "jackknife")
    assert jk_row.reps_used == 8
    assert math.isfinite(jk_row.mean_ratio) and jk_row.mean_ratio > 0
    assert math.isfinite(jk_row.se_ratio)


def test_ratio_experiment_constant_statistic_yields_nan_sentinel():
    cfg = parse_config(
        make_config(model={"kind": "sbm", "B": [[1.0]], "pi": [1.0]}, reps=5,
                    methods=[{"kind": "jackknife"}])
    )
    row = run_ratio_experiment(cfg).rows[0]
    assert math.isnan(row.mean_ratio)
    assert row.reps_used == 0


def test_ratio_experiment_thread_count_does_not_change_bytes(monkeypatch):
    cfg = parse_config(make_config(n_list=[20, 30], reps=6))
    monkeypatch.setenv("NETJACK_THREADS", "1")
    csv_serial = report_csv(run_ratio_experiment(cfg))
    monkeypatch.setenv("NETJACK_THREADS", "4")
    csv_parallel = report_csv(run_ratio_experiment(cfg))
    assert csv_serial == csv_parallel


def test_ratio_experiment_rejects_bad_thread_env(monkeypatch):
    monkeypatch.setenv("NETJACK_THREADS", "many")
    cfg = parse_config(make_config(reps=2))
    with pytest.raises(ConfigError, match="NETJACK_THREADS"):
        run_ratio_experiment(cfg)


# -- emission ----------------------------------------------------------------------


def _tiny_report():
    rows = (
        RatioRow(n=100, stat="edge-density", method="jackknife", b_frac=None,
                 mean_ratio=1.05, se_ratio=0.02, reps_used=100),
        RatioRow(n=500, stat="edge-density", method="jackknife", b_frac=None,
                 mean_ratio=0.98, se_ratio=0.01, reps_used=100),
    )
    return RatioReport(rows=rows, master_seed=0)


def test_emit_empty_report_is_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    emit_report(RatioReport(rows=(), master_seed=0), path)
    assert path.read_bytes() == b"n,stat,method,b_frac,mean_ratio,se_ratio,reps_used\n"


def test_emit_csv_deterministic_bytes(tmp_path):
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_report(_tiny_report(), p1)
    emit_report(_tiny_report(), p2)
    assert p1.read_bytes() == p2.read_bytes()
    text = p1.read_text()
    assert text.endswith("\n") and "\r" not in text
    # 17 significant digits round-trip exactly
    cells = text.splitlines()[2].split(",")
    assert float(cells[4]) == 0.98 and "0.97999999999999998" in text


def test_emit_svg_marker_and_refline_counts(tmp_path):
    svg = render_ratio_svg(_tiny_report())
    assert svg.count("<circle") == 2
    assert svg.count('class="refline"') == 1
    path = tmp_path / "plot.svg"
    emit_report(_tiny_report(), path, format="svg")
    assert path.read_text() == svg


def test_emit_unwritable_path_raises(tmp_path):
    with pytest.raises(OSError):
        emit_report(_tiny_report(), tmp_path / "no" / "such" / "dir.csv")


def test_emit_rejects_unknown_format(tmp_path):
    with pytest.raises(ValueError):
        emit_report(_tiny_report(), tmp_path / "x.bin", format="parquet")


# -- timing benchmark -----------------------------------------------------------------


def test_timing_rows_in_method_order():
    g = er_graph(40, 0.3, seed=0)
    stat = parse_statistic("triangle-density", rho=1.0)
    methods = [MethodSpec("jackknife"), MethodSpec("subsample", b_frac=0.5, B=10)]
    rows = run_timing_benchmark(g, stat, methods, seed=1)
    assert [r.method for r in rows] == ["jackknife", "subsample:b=0.5:B=10"]
    assert all(r.wall_time >= 0 for r in rows)


def test_timing_estimates_deterministic_across_runs():
    g = er_graph(40, 0.3, seed=0)
    stat = parse_statistic("triangle-density", rho=1.0)
    methods = [MethodSpec("jackknife"), MethodSpec("subsample", b_frac=0.4, B=15)]
    first = run_timing_benchmark(g, stat, methods, seed=2)
    second = run_timing_benchmark(g, stat, methods, seed=2)
    assert [r.var_hat for r in first] == [r.var_hat for r in second]


def test_timing_requires_methods():
    g = er_graph(10, 0.5, seed=0)
    with pytest.raises(ValueError):
        run_timing_benchmark(g, parse_statistic("edge-density", rho=1.0), [])


def test_ratio_experiment_handles_eigenvalue_statistic():
    cfg = parse_config(make_config(n_list=[20], reps=4, statistics=["eigenvalue:1"],
                                   methods=[{"kind": "jackknife"}]))
    row = run_ratio_experiment(cfg).rows[0]
    assert row.stat == "eigenvalue:1"
    assert row.reps_used == 4
    assert math.isfinite(row.mean_ratio) and row.mean_ratio > 0
