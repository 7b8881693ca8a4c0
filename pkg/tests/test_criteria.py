import math

import numpy as np
import pytest

from chtriangle.classify import IsometryClass, classify
from chtriangle.criteria import (
    jorgensen_condition,
    jorgensen_value,
    nondiscreteness_report,
    order_k_locus,
    regular_elliptic_criterion,
    regular_elliptic_value,
    reproduce_table,
    scan_intervals,
    shimizu_condition,
    shimizu_value,
    word_3132_analysis,
    word_order_cos_window,
)
from chtriangle.heisenberg import shimizu_violation
from chtriangle.triangles import build_n_inf_inf, corner_cos, trace_word_3132
from helpers import make_rng

INF = math.inf


def test_regular_elliptic_criterion_inside_and_outside():
    assert regular_elliptic_criterion(8, 11, math.acos(0.931)).fires
    assert not regular_elliptic_criterion(8, 11, math.acos(0.92)).fires
    for a in np.linspace(-1, 1, 201):
        assert not regular_elliptic_criterion(8, 10, math.acos(float(a))).fires


def test_regular_elliptic_tangent_threshold():
    for n in range(3, 26):
        theta = math.acos(corner_cos(n))
        fires = regular_elliptic_criterion(INF, n, theta).fires
        assert fires == (n >= 10), n


def test_jorgensen_condition_values_and_precondition():
    assert jorgensen_condition(8, 7, math.acos(0.995))
    assert not jorgensen_condition(8, 7, math.acos(0.99))
    with pytest.raises(ValueError):
        jorgensen_condition(8, 6, 0.5)
    with pytest.raises(ValueError):
        jorgensen_value(8, INF, 0.5)


def test_jorgensen_tangent_threshold():
    for n in range(7, 31):
        theta = math.acos(corner_cos(n))
        assert jorgensen_condition(INF, n, theta) == (n >= 19), n


def test_shimizu_condition_examples():
    assert shimizu_condition(8, 4, math.acos(0.9999))
    assert not shimizu_condition(8, 4, math.acos(0.9))
    for a in np.linspace(-1, 1, 201):
        assert not shimizu_condition(8, 3, math.acos(float(a)))


def test_shimizu_tangent_threshold_with_matrix_oracle():
    # the closed inequality and the matrix-level Shimizu certificate agree;
    # at a = cos(pi/n) both first fire at n = 31
    first = None
    for n in range(3, 45):
        theta = math.acos(corner_cos(n))
        fires = shimizu_condition(INF, n, theta)
        group = build_n_inf_inf(n, theta)
        matrix_fires = shimizu_violation(group.word("23"), group.involutions[0])
        assert fires == matrix_fires, n
        if fires and first is None:
            first = n
    assert first == 31


def test_scan_rejects_bad_parameters():
    with pytest.raises(ValueError):
        scan_intervals("nope", 8, 11)
    with pytest.raises(ValueError):
        scan_intervals("re", 8, 11, grid=100)
    with pytest.raises(ValueError):
        scan_intervals("re", 8, 11, tol=1e-3)


def test_scan_regular_elliptic_regression():
    scan = scan_intervals("re", 8, 11)
    assert len(scan.intervals) == 1
    lo, hi = scan.intervals[0]
    assert lo == pytest.approx(0.9309670, abs=1e-6)
    assert hi == pytest.approx(0.9311444, abs=1e-6)
    assert scan_intervals("re", 8, 10).intervals == ()


def test_scan_jorgensen_rows():
    scan = scan_intervals("jorgensen", 8, 100)
    assert len(scan.intervals) == 1
    assert scan.intervals[0][0] == pytest.approx(0.99911, abs=1e-4)
    assert scan.intervals[0][1] == pytest.approx(1.0, abs=1e-12)
    assert scan_intervals("jorgensen", 8, 6).intervals == ()
    assert scan_intervals("jorgensen", 8, 130).intervals == ()
    assert scan_intervals("jorgensen", 8, 200).intervals == ()


def test_scan_shimizu_rows():
    scan = scan_intervals("shimizu", 8, 200)
    assert len(scan.intervals) == 1
    assert scan.intervals[0][0] == pytest.approx(0.99481, abs=1e-4)
    scan = scan_intervals("shimizu", 8, 5)
    assert scan.intervals[0][0] == pytest.approx(0.99419, abs=1e-4)


def test_scan_intervals_are_sound():
    fns = {
        "re": regular_elliptic_value,
        "jorgensen": jorgensen_value,
        "shimizu": shimizu_value,
    }
    rng = make_rng(103)
    for test, m, n in (
        ("re", 8, 12),
        ("re", INF, 9),
        ("jorgensen", 8, 8),
        ("shimizu", 8, 4),
        ("shimizu", INF, 5),
    ):
        scan = scan_intervals(test, m, n)
        assert list(scan.intervals) == sorted(scan.intervals)
        for lo, hi in scan.intervals:
            assert -1 <= lo < hi <= 1
            assert fns[test](m, n, 0.5 * (lo + hi)) < 0
            for _ in range(20):
                a = float(rng.uniform(lo + 1e-9, hi - 1e-9))
                assert fns[test](m, n, a) < 0
        for (a, b), (c, d) in zip(scan.intervals, scan.intervals[1:]):
            assert b < c


def test_scan_endpoints_bracket_sign_changes():
    scan = scan_intervals("re", 8, 12, tol=1e-10)
    (lo, hi), = scan.intervals
    eps = 1e-7
    assert regular_elliptic_value(8, 12, lo - eps) > 0
    assert regular_elliptic_value(8, 12, lo + eps) < 0
    assert regular_elliptic_value(8, 12, hi - eps) < 0
    assert regular_elliptic_value(8, 12, hi + eps) > 0


def test_reproduce_table_structure():
    table = reproduce_table(2, grid=20000, tol=1e-8)
    assert table.columns == ("jorgensen_lo", "shimizu_lo")
    byn = {row.n: row.cells for row in table.rows}
    assert byn[4]["jorgensen_lo"] is None
    assert byn[200]["jorgensen_lo"] is None
    assert byn[4]["shimizu_lo"] == pytest.approx(0.99961, abs=1e-4)
    with pytest.raises(ValueError):
        reproduce_table(4)


def test_reproduce_table_respects_thread_cap(monkeypatch):
    monkeypatch.setenv("CHG_THREADS", "1")
    table = reproduce_table(1, grid=20000, tol=1e-8)
    byn = {row.n: row.cells for row in table.rows}
    assert byn[12]["elliptic_lo"] == pytest.approx(0.93226, abs=1e-4)
    assert byn[12]["elliptic_hi"] == pytest.approx(0.93268, abs=1e-4)


def test_word_3132_analysis_boundary_values():
    for n in (4, 7, 12):
        s = corner_cos(n)
        at_tangent = word_3132_analysis(n, s)
        assert at_tangent.trace == pytest.approx(3.0, abs=1e-12)
        assert at_tangent.tag is IsometryClass.UNIPOTENT_PARABOLIC
    upper = (1 + 4 * corner_cos(3) ** 2) / (4 * corner_cos(3))
    at_upper = word_3132_analysis(3, upper)
    assert at_upper.trace == pytest.approx(-1.0, abs=1e-12)
    assert at_upper.tag is IsometryClass.BOUNDARY_ELLIPTIC


def test_word_3132_analysis_matches_matrix_classification():
    rng = make_rng(107)
    done = 0
    while done < 100:
        n = int(rng.randint(3, 20))
        a = float(rng.uniform(-0.999, 0.999))
        s = corner_cos(n)
        # stay away from the two transition points, where the closed-form
        # tag is exact but the matrix route is numerically borderline
        upper = (1 + 4 * s * s) / (4 * s)
        if min(abs(a - s), abs(a - upper)) < 1e-4:
            continue
        analysis = word_3132_analysis(n, a)
        group = build_n_inf_inf(n, math.acos(a))
        word = group.word("3132")
        assert analysis.trace == pytest.approx(trace_word_3132(n, a), abs=1e-12)
        assert classify(word).tag is analysis.tag, (n, a)
        done += 1


def test_order_k_locus_values():
    s = corner_cos(7)
    expected = (8 * s * s - math.cos(2 * math.pi / 5) + 1) / (8 * s)
    a = order_k_locus(7, 5)
    assert a == pytest.approx(expected, abs=1e-15)
    assert a == pytest.approx(0.9968355274288683, abs=1e-12)
    assert trace_word_3132(7, a) == pytest.approx(
        1 + 2 * math.cos(2 * math.pi / 5), abs=1e-12
    )
    with pytest.raises(ValueError):
        order_k_locus(7, 1)
    with pytest.raises(ValueError):
        order_k_locus(7, 3)  # no parameter in [-1, 1]


def test_word_order_window_for_seven():
    lo, hi = word_order_cos_window(7)
    assert lo == pytest.approx(0.2862083, abs=1e-6)
    assert hi == pytest.approx(0.3204880, abs=1e-6)
    assert lo < math.cos(2 * math.pi / 5) < hi


def test_nondiscreteness_report_examples():
    report = nondiscreteness_report(INF, 7, math.acos(order_k_locus(7, 5)))
    assert report.certified
    assert report.verdict == "certified non-discrete"
    assert "shimizu" in report.fired
    assert report.word_3132.tag is IsometryClass.REGULAR_ELLIPTIC

    quiet = nondiscreteness_report(INF, 4, math.pi / 4)
    assert not quiet.certified
    assert quiet.verdict == "no certificate"
    assert quiet.fired == ()
    assert quiet.jorgensen is None

    table_point = nondiscreteness_report(8, 11, math.acos(0.931))
    assert table_point.certified
    assert "re" in table_point.fired
