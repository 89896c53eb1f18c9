import math
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from staircase.ltlt import Ltlt, TreeNode
from staircase.paths import (BnTree, Factor, PathClass, PathStats, all_trees, almost_dyck,
                             classify, enumerate_bn, enumerate_dyck, enumerate_lazy, factors,
                             from_bn_tree, in_class, initial_excursion_run, internal_nodes,
                             is_lazy, is_odd_frobenius, mirror, path_key, path_size, peaks, phi,
                             phi_inv, phi_inv_tree, phi_of_tree, phi_trace, pi, pi_inverse,
                             pi_prime, pi_prime_inverse, stats, to_bn_tree)
from staircase.tableau import (CapExceeded, Label, StaircaseTableau, enumerate_direct,
                               particle_count, weight)

A, B, G, D = Label.ALPHA, Label.BETA, Label.GAMMA, Label.DELTA
DELTA_FREE = (A, B, G)


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def family(n):
    return list(enumerate_direct(n, labels=DELTA_FREE, q_free=True, cap=None))


# -- classes and factors --------------------------------------------------------

@pytest.mark.parametrize("p,cls", [("UD", PathClass.DYCK), ("H", PathClass.POSITIVE_LAZY),
                                   ("DU", PathClass.ALMOST_DYCK), ("HDU", PathClass.LAZY),
                                   ("DDUU", PathClass.LAZY), ("UHD", PathClass.NONE),
                                   ("UU", PathClass.NONE), ("", PathClass.DYCK)])
def test_classify(p, cls):
    assert classify(p) is cls


def test_class_inclusions():
    assert in_class("H", PathClass.LAZY) and in_class("H", PathClass.POSITIVE_LAZY)
    assert in_class("DU", PathClass.LAZY) and not in_class("DU", PathClass.POSITIVE_LAZY)
    assert in_class("UD", PathClass.ALMOST_DYCK)


def test_factor_examples():
    assert factors("UD") == [Factor(0, 2, "positive")]
    assert factors("UDDUH") == [Factor(0, 2, "positive"), Factor(2, 4, "negative"),
                                Factor(4, 5, "flat")]
    with pytest.raises(ValueError):
        factors("UHD")


@pytest.mark.parametrize("n", range(0, 6))
def test_factors_partition_the_path(n):
    for p in enumerate_lazy(n):
        fs = factors(p)
        assert "".join(p[f.start:f.end] for f in fs) == p
        c = Counter(f.sign for f in fs)
        s = stats(p)
        assert s.F == s.N + c["positive"] + c["flat"]


def test_mirror_is_an_involution():
    for p in enumerate_lazy(5):
        assert mirror(mirror(p)) == p


# -- statistics -------------------------------------------------------------------

def test_stats_examples():
    assert stats("H") == PathStats(0, 0, 0, 1, 1, 0)
    assert stats("UDDU") == PathStats(2, 2, 1, 0, 2, 1)


def test_stats_invariants():
    for p in enumerate_lazy(6):
        s = stats(p)
        assert s.M == s.D and s.N <= s.F and s.A <= s.M


def test_initial_excursion_run():
    assert initial_excursion_run("UUDD") == 2 == initial_excursion_run("DDUU")
    assert initial_excursion_run("HUD") == 0
    assert initial_excursion_run("UDUD") == stats("UDUD").A


# -- lazy enumeration ----------------------------------------------------------------

def test_lazy_size_one():
    assert list(enumerate_lazy(1)) == ["UD", "DU", "H"]


def test_lazy_order_and_validity():
    paths = list(enumerate_lazy(5))
    assert paths == sorted(paths, key=path_key) and len(set(paths)) == len(paths)
    assert all(is_lazy(p) for p in paths)


def test_lazy_size_two_matches_partition_function_count():
    assert sum(1 for _ in enumerate_lazy(2)) == len(family(2)) == 11


def test_lazy_cap():
    with pytest.raises(CapExceeded):
        next(enumerate_lazy(10))


# -- contour codings -------------------------------------------------------------------

def test_pi_examples():
    assert pi((None, None)) == "UD"
    assert pi(((None, None), None)) == "UUDD"
    assert pi((None, (None, None))) == "UDUD"


@pytest.mark.parametrize("n", range(0, 9))
def test_pi_is_a_bijection_onto_dyck_paths(n):
    images = [pi(t) for t in all_trees(n)]
    assert len(images) == catalan(n)
    assert set(images) == set(enumerate_dyck(n))
    assert all(pi_inverse(pi(t)) == t for t in all_trees(n))


def test_pi_prime_single_node():
    assert pi_prime((None, None)) == ""


@pytest.mark.parametrize("n", range(1, 9))
def test_pi_prime_is_a_bijection_onto_positive_lazy_paths(n):
    images = [pi_prime(t) for t in all_trees(n)]
    positive = list(enumerate_lazy(n - 1, positive=True))
    assert sorted(images, key=path_key) == positive
    for t in all_trees(n):
        assert classify(almost_dyck(t)) in (PathClass.DYCK, PathClass.ALMOST_DYCK)
        assert pi_prime_inverse(pi_prime(t)) == t


# -- labeled trees -----------------------------------------------------------------------

def test_size_one_tableaux_give_the_three_labeled_trees():
    trees = {to_bn_tree(s) for s in family(1)}
    assert trees == set(enumerate_bn(2))
    assert len(trees) == 3


@pytest.mark.parametrize("n", range(0, 8))
def test_family_count_equals_bn_count(n):
    assert len(family(n)) == sum(1 for _ in enumerate_bn(n + 1))


@pytest.mark.parametrize("n", range(0, 7))
def test_bn_round_trip(n):
    for s in family(n):
        b = to_bn_tree(s)
        assert b.size == n + 1
        assert from_bn_tree(b) == s


def test_bn_domain_errors():
    with pytest.raises(ValueError):
        to_bn_tree(StaircaseTableau(((D,),)))
    with pytest.raises(ValueError):
        to_bn_tree(StaircaseTableau.from_text(".a\nb"))
    with pytest.raises(ValueError):
        BnTree((None, None), (A,))


# -- the bijection to lazy paths ------------------------------------------------------------

def test_phi_size_one():
    assert {s.to_text(): phi(s) for s in family(1)} == {"a": "UD", "b": "H", "g": "DU"}


@pytest.mark.parametrize("n", range(0, 8))
def test_phi_bijective(n):
    images = [phi(s) for s in family(n)]
    assert len(set(images)) == len(images)
    assert sorted(images, key=path_key) == list(enumerate_lazy(n))


@pytest.mark.parametrize("n", range(0, 6))
def test_phi_inverse(n):
    for s in family(n):
        assert phi_inv(phi(s)) == s
    for p in enumerate_lazy(n):
        assert phi(phi_inv(p)) == p


def test_phi_trace_has_six_stages():
    s = family(4)[37]
    trace = phi_trace(s)
    assert len(trace) == 6
    assert isinstance(trace[1], Ltlt) and isinstance(trace[2].root, TreeNode)
    assert classify(trace[4]) in (PathClass.DYCK, PathClass.POSITIVE_LAZY)
    assert trace[5] == phi(s)


@pytest.mark.parametrize("n", range(1, 7))
def test_statistics_dictionary(n):
    for s in family(n):
        p = phi(s)
        st_ = stats(p)
        a2 = initial_excursion_run(p)
        w = weight(s)
        assert w.gamma == st_.N
        assert w.alpha == st_.M - st_.N
        assert w.beta == st_.D + st_.H - a2


def test_literal_initial_up_run_cannot_give_beta_count():
    # any bijection at size 1 fails: alpha and gamma both need D + H - A = 0
    need_zero = [p for p in enumerate_lazy(1) if stats(p).D + stats(p).H - stats(p).A == 0]
    assert need_zero == ["UD"]


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 7).flatmap(lambda n: st.sampled_from(list(enumerate_lazy(n)))))
def test_phi_inverse_property(p):
    b = phi_inv_tree(p)
    assert phi_of_tree(b) == p
    assert internal_nodes(b.shape) == path_size(p) + 1


# -- special families -------------------------------------------------------------------------

def test_odd_frobenius_examples():
    assert is_odd_frobenius("DU")
    assert not is_odd_frobenius("UD")
    assert not is_odd_frobenius("UUDD")
    assert is_odd_frobenius("UDDU")
    assert not is_odd_frobenius("UDH")


def test_odd_frobenius_recurrence():
    s = [sum(1 for p in enumerate_lazy(n) if is_odd_frobenius(p)) for n in range(10)]
    assert all(s[n] == 3 * s[n - 1] - s[n - 2] for n in range(3, 10))


@pytest.mark.parametrize("n", range(0, 7))
def test_t0_family_maps_onto_odd_frobenius_paths(n):
    zero = [phi(s) for s in family(n) if particle_count(s) == 0]
    assert sorted(zero, key=path_key) == [p for p in enumerate_lazy(n) if is_odd_frobenius(p)]


def test_peaks_examples():
    assert peaks("UD") == 1 and peaks("UUDD") == 1 and peaks("UDUD") == 2
    with pytest.raises(ValueError):
        peaks("DU")


@pytest.mark.parametrize("n", range(0, 8))
def test_catalan_family_and_narayana_refinement(n):
    tabs = list(enumerate_direct(n, labels=(A, B), q_free=True, cap=None))
    assert len(tabs) == catalan(n + 1)
    for s in tabs:
        assert peaks(pi(to_bn_tree(s).shape)) == s.diagonal().count(B) + 1
    refined = Counter(s.diagonal().count(B) for s in tabs)
    brute = Counter(peaks(p) - 1 for p in enumerate_dyck(n + 1))
    assert refined == brute
