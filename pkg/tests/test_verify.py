import pytest

from xverse.braid import parse_braid
from xverse.verify import (CHECKS, CheckSpec, reproduce_table, run_check,
                           TABLE_ROWS)

TREFOIL = parse_braid("1 1 1")
M76 = parse_braid("1 -2 1 -2 -3 2 3 3 3")


def test_all_checks_pass_on_trefoil():
    for check in CHECKS:
        spec = CheckSpec(TREFOIL, check, samples=3, seed=1)
        report = run_check(spec)
        assert report.passed, (check, report.cases)
        assert report.cases


def test_checks_pass_on_four_strand_braid():
    for check in ("conjugation", "mirror", "doublehat_stab", "lam_override"):
        spec = CheckSpec(M76, check, samples=2, seed=4)
        assert run_check(spec).passed


def test_seed_determinism():
    a = run_check(CheckSpec(TREFOIL, "rescale", samples=4, seed=9))
    b = run_check(CheckSpec(TREFOIL, "rescale", samples=4, seed=9))
    c = run_check(CheckSpec(TREFOIL, "rescale", samples=4, seed=10))
    assert a.cases == b.cases
    assert [d for d, _, _ in a.cases] != [d for d, _, _ in c.cases]


def test_threads_match_serial():
    spec = CheckSpec(TREFOIL, "conjugation", samples=3, seed=2,
                     grid=((1, 1), (2, 1)))
    assert run_check(spec).cases == run_check(spec, threads=2).cases


def test_unknown_check_rejected():
    with pytest.raises(ValueError):
        run_check(CheckSpec(TREFOIL, "flype"))
    with pytest.raises(ValueError):
        run_check(CheckSpec(TREFOIL, "mirror", samples=0))


def test_grid_points_infinity():
    spec = CheckSpec(TREFOIL, "op_swap", grid=((2, 1, 1, 2), (1, 2)))
    report = run_check(spec)
    assert report.passed
    assert len(report.cases) == 2
    with pytest.raises(ValueError):
        run_check(CheckSpec(TREFOIL, "op_swap", grid=((1, 2, 1),)))


def test_table_subset():
    report = reproduce_table(rows=["m72", "9_44"])
    assert report.passed
    assert [r.name for r in report.rows] == ["m(7_2)", "9_44"]
    assert report.rows[0].computed == [0, 5]
    assert report.rows[1].computed == [5, 0, 0]


def test_table_row_key_tolerance():
    for spelling in ("M(7_2)", "m72", "m(7_2)"):
        report = reproduce_table(rows=[spelling])
        assert [r.name for r in report.rows] == ["m(7_2)"]


def test_table_prime_pinned():
    with pytest.raises(ValueError):
        reproduce_table(prime=5)


def test_table_budget_recorded_not_fatal():
    report = reproduce_table(rows=["m72"], budget=10)
    row = report.rows[0]
    assert not row.passed
    assert not report.passed
    assert None in row.computed
    assert row.errors


def test_table_rows_cover_reference():
    assert len(TABLE_ROWS) == 10
    assert sum(len(entries) for _, _, entries in TABLE_ROWS) == 21
