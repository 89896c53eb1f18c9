"""
The acceptance suite.  Each criterion is a function returning a
:class:`CriterionResult`; :func:`run_all` times them and adds the overall
wall-time criterion.  Used by ``staircase selftest`` and the test suite.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from . import ltlt as L
from . import partition as P
from . import paths as Pa
from .tableau import (Label, enumerate_direct, indexed_stats, leftmost_labels,
                      staircase_count, topmost_labels, weight)

SELF_TEST_BUDGET = 600.0
DELTA_FREE = (Label.ALPHA, Label.BETA, Label.GAMMA)


@dataclass
class CriterionResult:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        return f"[{mark}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(number: int, name: str, budget: float | None = None):
    def wrap(fn: Callable[[], tuple[bool, str]]) -> Callable[[], CriterionResult]:
        def run() -> CriterionResult:
            t0 = time.perf_counter()
            ok, detail = fn()
            dt = time.perf_counter() - t0
            if budget is not None and dt >= budget:
                ok = False
                detail += f"; over the {budget:.0f}s budget"
            return CriterionResult(number, name, ok, detail, dt)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


@_timed(1, "total count via insertion", budget=60)
def criterion_total_count() -> tuple[bool, str]:
    counts = []
    for n in range(1, 7):
        got = sum(1 for _ in L.enumerate_ltlt(n + 1, cap=None))
        counts.append(got)
        if got != staircase_count(n):
            return False, f"n={n}: {got} LTLTs, expected {staircase_count(n)}"
        if n <= 4:
            via = {L.lambda_inv(t) for t in L.enumerate_ltlt(n + 1, cap=None)}
            direct = set(enumerate_direct(n))
            if via != direct:
                extra = sorted(via ^ direct)[0]
                return False, f"n={n}: oracle sets differ, e.g. {extra.to_json()}"
    return True, "counts " + ", ".join(map(str, counts)) + "; oracle sets equal n<=4"


@_timed(2, "product formula", budget=120)
def criterion_product() -> tuple[bool, str]:
    for n in range(6):
        z = P.z_fugacity(n).specialize({"y": 1, "q": 1})
        prod = P.product_formula(n)
        if z != prod:
            diff = (z - prod).sorted_terms()[0]
            return False, f"n={n}: first differing term {diff}"
    return True, "coefficient-exact for n=0..5"


@_timed(3, "bijection round-trips")
def criterion_round_trips() -> tuple[bool, str]:
    checked = 0
    for n in range(6):
        for st in enumerate_direct(n):
            lt = L.lambda_map(st)
            checked += 1
            if L.lambda_inv(lt) != st or L.lambda_map(L.lambda_inv(lt)) != lt:
                return False, f"lambda round-trip fails on {st.to_json()}"
    triples = 0
    for n in range(1, 5):
        for t in L.enumerate_ltlt(n, cap=None):
            for e, b in L.insertion_choices(t):
                triples += 1
                if L.uninsert(L.insert(t, e, b)) != (t, e, b):
                    return False, f"uninsert(insert) fails on {t.to_json()} e={e} b={b}"
    forward = 0
    for n in range(2, 6):
        for t in L.enumerate_ltlt(n, cap=None):
            forward += 1
            if L.insert(*L.uninsert(t)) != t:
                return False, f"insert(uninsert) fails on {t.to_json()}"
    return True, f"{checked} lambda, {triples} insert/uninsert, {forward} reverse checks"


def check_recurrence(N: int = 6,
                     coefficients: P.Coefficients = P.standard_coefficients) -> tuple[bool, str]:
    rec = P.t_table_recurrence(N, coefficients)
    enum = P.t_table_enumerated(N)
    bad = rec.first_difference(enum)
    if bad:
        n, k = bad
        return False, f"T({n},{k}): recurrence {rec[n, k]}, enumeration {enum[n, k]}"
    return True, f"equal entry-wise for n<={N}"


@_timed(4, "recurrence table")
def criterion_recurrence() -> tuple[bool, str]:
    return check_recurrence()


def check_roots(N: int = P.DEFAULT_POLY_CAP,
                coefficients: P.Coefficients = P.standard_coefficients) -> tuple[bool, str]:
    table = P.t_table_recurrence(N, coefficients)
    for n in range(1, N + 1):
        p = P.p_poly(n, table)
        roots = P.count_roots_in(p, -1, 0)
        if roots != n:
            return False, f"P_{n}: {roots} roots in (-1,0)"
        if not P.log_concave(p):
            return False, f"P_{n} not log-concave"
        if not P.differential_identity_check(n, table):
            return False, f"differential identity fails at n={n}"
    return True, f"n roots in (-1,0), log-concave, identity exact for n<={N}"


@_timed(5, "real roots and log-concavity", budget=60)
def criterion_roots() -> tuple[bool, str]:
    return check_roots()


def _delta_free_qfree(n: int) -> list:
    return list(enumerate_direct(n, labels=DELTA_FREE, q_free=True, cap=None))


def dictionary_failure(st, p: str) -> str | None:
    """First failing identity of the tableau/path statistics dictionary."""
    s = Pa.stats(p)
    a2 = Pa.initial_excursion_run(p)
    w = weight(st)
    beta_cols = sum(1 for x in topmost_labels(st) if x == Label.BETA)
    ag_rows = sum(1 for x in leftmost_labels(st) if x in (Label.ALPHA, Label.GAMMA))
    checks = [("gamma = N", w.gamma, s.N), ("alpha = M - N", w.alpha, s.M - s.N),
              ("beta = D + H - A'", w.beta, s.D + s.H - a2),
              ("beta-topped columns = H", beta_cols, s.H),
              ("alpha/gamma-led rows = A'", ag_rows, a2)]
    for name, lhs, rhs in checks:
        if lhs != rhs:
            return f"{name}: {lhs} != {rhs}"
    return None


def orientation_report(max_n: int = 6) -> dict[str, int]:
    """How often each pairing of the two indexed statistics with ``H`` and
    ``A'`` holds, over all delta-free q-free tableaux of size ``<= max_n``."""
    tally: Counter = Counter()
    for n in range(1, max_n + 1):
        for st in _delta_free_qfree(n):
            p = Pa.phi(st)
            h, a2 = p.count("H"), Pa.initial_excursion_run(p)
            rows_bd, cols_ag = indexed_stats(st)
            beta_cols = sum(1 for x in topmost_labels(st) if x == Label.BETA)
            ag_rows = sum(1 for x in leftmost_labels(st) if x in (Label.ALPHA, Label.GAMMA))
            tally["total"] += 1
            tally["beta-topped columns = H"] += beta_cols == h
            tally["alpha/gamma-led rows = A'"] += ag_rows == a2
            tally["beta/delta-led rows = H"] += rows_bd == h
            tally["alpha/gamma-topped columns = A'"] += cols_ag == a2
    return dict(tally)


@_timed(6, "lazy-path bijection and statistics")
def criterion_phi() -> tuple[bool, str]:
    for n in range(8):
        images = []
        for st in _delta_free_qfree(n):
            p = Pa.phi(st)
            images.append(p)
            if n <= 6:
                bad = dictionary_failure(st, p)
                if bad:
                    return False, f"n={n} {st.to_json()} -> {p}: {bad}"
        lazy = list(Pa.enumerate_lazy(n, cap=None))
        if len(set(images)) != len(images):
            return False, f"n={n}: not injective"
        if sorted(images, key=Pa.path_key) != lazy:
            return False, f"n={n}: image has {len(images)} paths, {len(lazy)} lazy paths"
    rep = orientation_report(6)
    tot = rep["total"]
    orient = ("columns topped by beta <-> H, rows led by alpha/gamma <-> A'"
              if rep["beta-topped columns = H"] == rep["alpha/gamma-led rows = A'"] == tot
              else "unresolved")
    return orient != "unresolved", f"bijective n<=7, dictionary holds n<=6; orientation: {orient}"


@_timed(7, "odd-Frobenius family")
def criterion_frobenius() -> tuple[bool, str]:
    seq = []
    for n in range(10):
        paths = [p for p in Pa.enumerate_lazy(n, cap=None) if Pa.is_odd_frobenius(p)]
        seq.append(len(paths))
        if n <= 8:
            tabs = list(enumerate_direct(n, labels=DELTA_FREE, q_free=True, cap=None,
                                         diagonal=(Label.BETA, Label.GAMMA)))
            if len(tabs) != len(paths):
                return False, f"n={n}: {len(tabs)} tableaux, {len(paths)} paths"
            if n <= 7 and sorted((Pa.phi(t) for t in tabs), key=Pa.path_key) != paths:
                return False, f"n={n}: image of the t=0 family is not the odd-Frobenius set"
    for n in range(3, 10):
        if seq[n] != 3 * seq[n - 1] - seq[n - 2]:
            return False, f"S({n})={seq[n]} breaks the recurrence"
    return True, "S = " + ", ".join(map(str, seq))


def narayana(n: int, k: int) -> int:
    return math.comb(n, k) * math.comb(n, k - 1) // n if n else int(k == 0)


@_timed(8, "Catalan and Narayana refinement")
def criterion_catalan() -> tuple[bool, str]:
    for n in range(8):
        tabs = list(enumerate_direct(n, labels=(Label.ALPHA, Label.BETA), q_free=True, cap=None))
        cat = math.comb(2 * n + 2, n + 1) // (n + 2)
        if len(tabs) != cat:
            return False, f"n={n}: {len(tabs)} tableaux, Catalan {cat}"
        refined = Counter(t.diagonal().count(Label.BETA) for t in tabs)
        brute = Counter(Pa.peaks(p) - 1 for p in Pa.enumerate_dyck(n + 1))
        if refined != brute:
            return False, f"n={n}: refinement {sorted(refined.items())} vs {sorted(brute.items())}"
        if any(v != narayana(n + 1, k + 1) for k, v in brute.items()):
            return False, f"n={n}: brute-force peaks disagree with the closed form"
    return True, "counts C(n+1), beta border edges ~ N(n+1, k+1), n<=7"


@_timed(9, "particle change case table")
def criterion_delta_t() -> tuple[bool, str]:
    rep = P.check_delta_t(6)
    if rep.mismatch:
        t, e, b, got, want = rep.mismatch
        return False, f"{t.to_json()} e={e} b={b}: measured {got}, table {want}"
    if rep.multiplicity_mismatch:
        t, k, mult = rep.multiplicity_mismatch
        return False, f"{t.to_json()} k={k}: multiplicities {mult}"
    return True, f"{rep.checked} insertions match; multiplicities k+1, n+1, n-1-k"


CRITERIA = (criterion_total_count, criterion_product, criterion_round_trips,
            criterion_recurrence, criterion_roots, criterion_phi, criterion_frobenius,
            criterion_catalan, criterion_delta_t)


def run_all(report: Callable[[CriterionResult], None] | None = None) -> list[CriterionResult]:
    results = []
    t0 = time.perf_counter()
    for crit in CRITERIA:
        try:
            res = crit()
        except Exception as exc:  # failures are reported, not raised
            res = CriterionResult(len(results) + 1, crit.__name__, False, f"error: {exc!r}")
        results.append(res)
        if report:
            report(res)
    total = time.perf_counter() - t0
    last = CriterionResult(10, "self-test wall time", total < SELF_TEST_BUDGET,
                           f"{total:.1f}s of {SELF_TEST_BUDGET:.0f}s", total)
    results.append(last)
    if report:
        report(last)
    return results
