import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from staircase.ltlt import insert, insertion_choices, lambda_inv
from staircase.partition import (border_particles, check_delta_t, count_roots_in,
                                 delta_t_cases, delta_t_classification,
                                 differential_identity_check, gamma_free_ltlts, is_gamma_free,
                                 log_concave, p_poly, product_formula, standard_coefficients,
                                 t_table_enumerated, t_table_recurrence, verify_product,
                                 z_fugacity)
from staircase.poly import MultiPoly, UniPoly
from staircase.tableau import CapExceeded, Label, enumerate_direct, particle_count

ONE, A, B, G, D = Label.ONE, Label.ALPHA, Label.BETA, Label.GAMMA, Label.DELTA
a, b, g, d, q, y = (MultiPoly.var(v) for v in ("alpha", "beta", "gamma", "delta", "q", "y"))


# -- polynomial arithmetic -------------------------------------------------------

def test_multipoly_basics():
    p = (a + b) * (a - b)
    assert p == a * a - b * b
    assert (p - p) == 0 and not (p - p)
    assert MultiPoly.constant(0) == MultiPoly()
    assert (a + 1).total() == 2


def test_specialize():
    p = 3 * a * a * q + y
    assert p.specialize({}) == p
    assert p.specialize({"q": 0}) == y
    assert p.specialize({"alpha": Fraction(1, 2), "q": 1}) == Fraction(3, 4) + y
    with pytest.raises(KeyError):
        p.specialize({"z": 1})


def test_text_order_is_graded_lex():
    p = y + a * b * b + a * a * b + 2
    assert p.to_text() == "alpha^2*beta + alpha*beta^2 + y + 2"
    assert (-a + 1).to_text() == "-alpha + 1"
    assert MultiPoly().to_text() == "0"


_polys = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 6), st.integers(-5, 5),
                         max_size=6).map(MultiPoly)


@settings(max_examples=100, deadline=None)
@given(_polys, _polys, _polys)
def test_ring_laws(p, r, s):
    assert p * (r + s) == p * r + p * s
    assert (p * r) * s == p * (r * s)
    assert p + r == r + p
    assert MultiPoly.from_record(p.to_record()) == p


def test_unipoly_division():
    p = UniPoly([1, 3, 3, 1])
    quot, rem = p.divmod(UniPoly([1, 1]))
    assert quot == UniPoly([1, 2, 1]) and not rem
    assert p(-1) == 0 and p.derivative() == UniPoly([3, 6, 3])


# -- partition function -----------------------------------------------------------

def test_z_small_cases():
    assert z_fugacity(0) == 1
    assert z_fugacity(1) == a * y + b + g + d * y
    assert z_fugacity(1).specialize({"y": 1}) == a + b + g + d


@pytest.mark.parametrize("n", range(0, 5))
def test_z_total_count(n):
    assert z_fugacity(n).total() == 4 ** n * math.factorial(n)


def test_z_cap():
    with pytest.raises(CapExceeded):
        z_fugacity(7)


def test_product_formula_small():
    s = a + b + g + d
    assert product_formula(0) == 1
    assert product_formula(1) == s
    assert product_formula(2) == s * (s + (a + g) * (b + d))


@pytest.mark.parametrize("n", range(0, 5))
def test_verify_product(n):
    assert verify_product(n)


# -- particle table -----------------------------------------------------------------

def test_recurrence_small_rows():
    t = t_table_recurrence(10)
    assert t[0, 0] == 1 and t.rows[1] == (1, 2)
    assert all(t[n, k] == 0 for n in range(11) for k in range(n + 1, n + 4))
    assert all(x >= 0 for row in t.rows for x in row)


def test_enumerated_table_small():
    t = t_table_enumerated(3)
    assert t.rows[0] == (1,) and t.rows[1] == (1, 2)


def test_recurrence_equals_enumeration():
    assert t_table_recurrence(5).first_difference(t_table_enumerated(5)) is None


@pytest.mark.parametrize("n", range(0, 6))
def test_row_sums_count_gamma_free_tableaux(n):
    t = t_table_recurrence(n)
    count = sum(1 for _ in enumerate_direct(n, labels=(A, B, D)))
    assert sum(t.rows[n]) == count == math.prod(3 + 2 * j for j in range(n))


@pytest.mark.parametrize("n", range(0, 5))
def test_specialization_matches_table(n):
    z = z_fugacity(n).specialize({"alpha": 1, "beta": 1, "gamma": 0, "delta": 1, "q": 1})
    assert list(z.univariate("y").coeffs) == list(t_table_recurrence(n).rows[n])


def test_off_by_one_recurrence_names_a_cell():
    def broken(n, k):
        c0, c1, c2 = standard_coefficients(n, k)
        return c0, c1, c2 + 1

    assert t_table_recurrence(4, broken).first_difference(t_table_enumerated(4)) == (2, 2)


def test_p_poly():
    t = t_table_recurrence(3)
    assert p_poly(0, t) == UniPoly([1])
    assert p_poly(1, t) == UniPoly([1, 2])
    with pytest.raises(IndexError):
        p_poly(4, t)


def test_table_csv():
    assert t_table_recurrence(2).to_csv().splitlines()[:2] == ["1", "1,2"]


# -- roots and log-concavity ------------------------------------------------------------

def test_differential_identity():
    assert differential_identity_check(1)
    table = t_table_recurrence(30)
    assert all(differential_identity_check(n, table) for n in range(1, 31))


def test_count_roots_examples():
    assert count_roots_in(UniPoly([1, 2]), -1, 0) == 1
    assert count_roots_in(UniPoly([1, 0, 1]), -1, 0) == 0
    with pytest.raises(ValueError):
        count_roots_in(UniPoly([]), -1, 0)


def test_endpoint_roots_are_excluded():
    # (y + 1) * y * (2y + 1): roots -1, 0 on the boundary, -1/2 inside
    p = UniPoly([1, 1]) * UniPoly([0, 1]) * UniPoly([1, 2])
    assert count_roots_in(p, -1, 0) == 1


@pytest.mark.parametrize("roots", [[Fraction(-1, 3), Fraction(-2, 3)], [Fraction(-1, 7)] * 2,
                                   [Fraction(1, 2), Fraction(-1, 2), Fraction(-9, 10)]])
def test_count_roots_distinct(roots):
    p = UniPoly([1])
    for r in roots:
        p = p * UniPoly([-r, 1])
    assert count_roots_in(p, -1, 0) == len({r for r in roots if -1 < r < 0})


def test_p_polys_roots_and_log_concavity():
    table = t_table_recurrence(30)
    for n in range(1, 31):
        p = p_poly(n, table)
        assert count_roots_in(p, -1, 0) == n
        assert log_concave(p)


def test_log_concave_examples():
    assert log_concave(UniPoly([1, 2]))
    assert not log_concave(UniPoly([1, 1, 3]))
    with pytest.raises(ValueError):
        log_concave(UniPoly([1, -1]))


# -- particle change under insertion -------------------------------------------------------

def test_case_table_examples():
    assert delta_t_classification(A, (A, B)) == 0
    assert delta_t_classification(D, (A, D)) == 1
    assert delta_t_classification(D, (A, B)) == 0
    assert delta_t_classification(ONE, (ONE, B)) == 0
    assert delta_t_classification(B, (A, D)) == 2
    with pytest.raises(ValueError):
        delta_t_classification(G, (A, B))


def test_case_table_values_in_range():
    assert {c.delta for c in delta_t_cases()} == {0, 1, 2}


def test_gamma_free_ltlts_count():
    for n in range(1, 6):
        ts = list(gamma_free_ltlts(n))
        assert all(is_gamma_free(t) for t in ts)
        assert len(ts) == math.prod(3 + 2 * j for j in range(n - 1))


def test_measured_change_matches_case_table():
    rep = check_delta_t(5)
    assert rep.mismatch is None and rep.multiplicity_mismatch is None
    assert rep.checked == sum((2 * n + 1) * sum(1 for _ in gamma_free_ltlts(n)) for n in range(1, 6))


def test_border_particles_is_particle_count():
    for t in gamma_free_ltlts(4):
        assert border_particles(t) == particle_count(lambda_inv(t))
        for e, bl in insertion_choices(t):
            if G not in bl:
                assert is_gamma_free(insert(t, e, bl))
