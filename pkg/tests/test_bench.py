import csv
import io
import math

import pytest

from grer import bench
from grer.bench import Method


@pytest.mark.parametrize("method,lo,hi", [(Method.K_GRER_SERIES, 1, 5), (Method.K_RER, 11, 11),
                                          (Method.F_RER_EXACT, 30, 50), (Method.K_GRER_PADE, 1, 1)])
def test_term_counts_at_ten(method, lo, hi):
    r = bench.count_terms(method, 10, repeats=11)
    assert lo <= r.terms <= hi
    assert r.wall_ns > 0 and math.isfinite(r.value)


def test_growth_shape():
    g10 = bench.count_terms(Method.K_GRER_SERIES, 10, repeats=3).terms
    g100 = bench.count_terms(Method.K_GRER_SERIES, 100, repeats=3).terms
    assert g100 / g10 < 10
    f10 = bench.count_terms(Method.F_RER_EXACT, 10, repeats=3).terms
    f40 = bench.count_terms(Method.F_RER_EXACT, 40, repeats=3).terms
    assert f40 / f10 > 4  # superlinear


def test_median_timer():
    assert bench.median_ns(lambda: None, repeats=101, warmup=1) >= 1.0


def _read(buf):
    return list(csv.reader(io.StringIO(buf.getvalue())))


@pytest.mark.parametrize("fig", sorted(bench.FIG_HEADERS))
def test_empty_grid_header_only(fig):
    buf = io.StringIO()
    bench.sweep(fig, buf)
    assert _read(buf) == [bench.FIG_HEADERS[fig]]


def test_fig2a_monotone():
    buf = io.StringIO()
    bench.sweep("2a", buf, alpha_grid=[10.0], theta_grid=range(0, 90, 5))
    rows = _read(buf)[1:]
    ratio = [float(r[3]) for r in rows]
    assert ratio[0] == 1.0
    assert all(b < a for a, b in zip(ratio, ratio[1:]))


def test_fig2c_columns():
    buf = io.StringIO()
    bench.sweep("2c", buf, alpha_grid=[0.5, 5.0])
    head, *rows = _read(buf)
    assert head == ["alpha", "k_series", "k_pade", "pade_over_series"]
    for a, ks, kp, ratio in rows:
        assert float(ratio) == pytest.approx(float(kp) / float(ks))


def test_fig3a_skips_fractional_rer():
    rows = bench.fig3a_rows([2.5], repeats=3)
    assert {r[1] for r in rows} == {"K_GRER_SERIES", "K_GRER_PADE"}


def test_fig3b():
    rows = bench.fig3b_rows([1, 2])
    assert rows[0][0] == 1 and rows[1][1] > rows[0][1]


def test_unknown_fig():
    with pytest.raises(ValueError):
        bench.sweep("9z", io.StringIO())


def test_speedup_record():
    rec = bench.time_normalized_patterns(30, alpha_grer=15.3, repeats=101)
    assert rec["speedup"] > 1
