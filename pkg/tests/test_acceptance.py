"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import pytest

from staircase import acceptance
from staircase.partition import standard_coefficients

from conftest import ACCEPTANCE_LINES


@pytest.fixture(scope="module")
def results():
    out = {r.number: r for r in acceptance.run_all()}
    ACCEPTANCE_LINES.extend(out[k].line() for k in sorted(out))
    return out


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(results, number):
    res = results[number]
    print(res.line())
    assert res.ok, res.detail


def _shifted(n, k):
    c0, c1, c2 = standard_coefficients(n, k)
    return c0 + 1, c1, c2


def test_off_by_one_recurrence_is_caught_with_a_cell():
    ok, detail = acceptance.check_recurrence(6, _shifted)
    assert not ok
    assert detail.startswith("T(1,0)")


def test_off_by_one_recurrence_breaks_the_root_certificate():
    ok, detail = acceptance.check_roots(8, _shifted)
    assert not ok and detail


def test_orientation_of_indexed_statistics():
    rep = acceptance.orientation_report(4)
    total = rep["total"]
    assert rep["beta-topped columns = H"] == total
    assert rep["alpha/gamma-led rows = A'"] == total
    assert rep["beta/delta-led rows = H"] < total
    assert rep["alpha/gamma-topped columns = A'"] < total
