"""
Partition functions, the product formula, the particle-count recurrence and
its real-rootedness certificate, and the particle-count change of a single
insertion step.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, NamedTuple

from .ltlt import BASE, Ltlt, insert, insertion_choices
from .poly import MultiPoly, Number, UniPoly
from .tableau import (DEFAULT_ENUM_CAP, Label, check_cap, enumerate_weighted)

DEFAULT_POLY_CAP = 30
GAMMA_FREE = (Label.ALPHA, Label.BETA, Label.DELTA)
_PARTICLE = frozenset({Label.ALPHA, Label.DELTA})


# -- partition function ------------------------------------------------------

def z_fugacity(n: int, cap: int | None = DEFAULT_ENUM_CAP, labels=None) -> MultiPoly:
    """Sum of ``weight(t) * y**particle_count(t)`` over size-``n`` tableaux."""
    if n < 0:
        raise ValueError("n must be non-negative")
    check_cap(n, cap, "z_fugacity")
    acc: Counter = Counter()
    kwargs = {} if labels is None else {"labels": labels}
    for _, w, t in enumerate_weighted(n, cap=None, **kwargs):
        acc[(*w, t)] += 1
    return MultiPoly(acc)


def product_formula(n: int) -> MultiPoly:
    """Expanded product over j < n of ``a+b+g+d + j(a+g)(b+d)``."""
    a, b, g, d = (MultiPoly.var(v) for v in ("alpha", "beta", "gamma", "delta"))
    s = a + b + g + d
    cross = (a + g) * (b + d)
    out = MultiPoly.constant(1)
    for j in range(n):
        out = out * (s + cross * j)
    return out


def verify_product(n: int, cap: int | None = DEFAULT_ENUM_CAP) -> bool:
    return z_fugacity(n, cap).specialize({"y": 1, "q": 1}) == product_formula(n)


# -- particle-count table ----------------------------------------------------

@dataclass(frozen=True)
class TTable:
    """``rows[n][k]`` for ``0 <= k <= n``; entries outside that range read 0."""

    rows: tuple[tuple[int, ...], ...]

    def __getitem__(self, nk: tuple[int, int]) -> int:
        n, k = nk
        if 0 <= n < len(self.rows) and 0 <= k < len(self.rows[n]):
            return self.rows[n][k]
        return 0

    @property
    def extent(self) -> int:
        return len(self.rows) - 1

    def first_difference(self, other: TTable) -> tuple[int, int] | None:
        for n in range(max(len(self.rows), len(other.rows))):
            for k in range(n + 1):
                if self[n, k] != other[n, k]:
                    return n, k
        return None

    def to_csv(self) -> str:
        return "\n".join(",".join(map(str, row)) for row in self.rows) + "\n"


Coefficients = Callable[[int, int], tuple[int, int, int]]


def standard_coefficients(n: int, k: int) -> tuple[int, int, int]:
    return k + 1, n + 1, n - k + 1


def t_table_recurrence(N: int, coefficients: Coefficients = standard_coefficients) -> TTable:
    """Fill ``T(n, k)`` from ``T(0, 0) = 1``; ``coefficients(n, k)`` gives the
    multipliers of ``T(n-1, k)``, ``T(n-1, k-1)`` and ``T(n-1, k-2)``."""
    if N < 0:
        raise ValueError("N must be non-negative")
    rows = [(1,)]
    for n in range(1, N + 1):
        prev = rows[-1]

        def p(k: int) -> int:
            return prev[k] if 0 <= k < len(prev) else 0

        row = []
        for k in range(n + 1):
            c0, c1, c2 = coefficients(n, k)
            row.append(c0 * p(k) + c1 * p(k - 1) + c2 * p(k - 2))
        rows.append(tuple(row))
    return TTable(tuple(rows))


def t_table_enumerated(N: int, cap: int | None = DEFAULT_ENUM_CAP) -> TTable:
    """Gamma-free tableaux counted by particle number, by direct enumeration."""
    check_cap(N, cap, "t_table_enumerated")
    rows = []
    for n in range(N + 1):
        row = [0] * (n + 1)
        for _, _, t in enumerate_weighted(n, GAMMA_FREE, cap=None):
            row[t] += 1
        rows.append(tuple(row))
    return TTable(tuple(rows))


def p_poly(n: int, table: TTable) -> UniPoly:
    if not 0 <= n <= table.extent:
        raise IndexError(f"n={n} outside table extent 0..{table.extent}")
    return UniPoly(table.rows[n])


def differential_identity_check(n: int, table: TTable | None = None) -> bool:
    """Check ``P_n = (1 + (n+1)y + (n-1)y^2) P_{n-1} + (y - y^3) P'_{n-1}``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    table = table if table is not None and table.extent >= n else t_table_recurrence(n)
    prev = p_poly(n - 1, table)
    rhs = UniPoly((1, n + 1, n - 1)) * prev + UniPoly((0, 1, 0, -1)) * prev.derivative()
    return rhs == p_poly(n, table) and rhs.degree == n


# -- real roots --------------------------------------------------------------

def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        _, r = seq[-2].divmod(seq[-1])
        if not r:
            break
        seq.append(-r)
    return seq


def _sign_changes(seq: list[UniPoly], x: Number) -> int:
    changes = 0
    last = 0
    for q in seq:
        v = q(x)
        if v:
            s = 1 if v > 0 else -1
            if last and s != last:
                changes += 1
            last = s
    return changes


def _deflate(p: UniPoly, root: Fraction) -> UniPoly:
    while p.degree > 0 and p(root) == 0:
        p, _ = p.divmod(UniPoly((-root, 1)))
    return p


def count_roots_in(p: UniPoly, a: Number, b: Number) -> int:
    """Number of distinct real roots in the open interval ``(a, b)``.

    Roots at the endpoints are divided out first, so they are never counted.
    """
    if not p:
        raise ValueError("zero polynomial")
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    p = _deflate(_deflate(p, a), b)
    if p.degree <= 0:
        return 0
    seq = sturm_sequence(p)
    return _sign_changes(seq, a) - _sign_changes(seq, b)


def log_concave(p: UniPoly) -> bool:
    c = p.coeffs
    if any(x < 0 for x in c):
        raise ValueError("negative coefficient")
    return all(c[k] * c[k] >= c[k - 1] * c[k + 1] for k in range(1, len(c) - 1))


# -- particle change under insertion ----------------------------------------

class DeltaCase(NamedTuple):
    z: int
    x: int
    y: int
    delta: int


def _is_particle(label: int) -> int:
    return 1 if label in _PARTICLE else 0


def delta_t_classification(z: int, b: tuple[int, int]) -> int:
    """Change in the border particle count when the edge labeled ``z`` is
    replaced by the new edges labeled ``b = (x, y)``."""
    x, y = b
    if Label.GAMMA in (z, x, y):
        raise ValueError("gamma label in a gamma-free insertion datum")
    return _is_particle(x) + _is_particle(y) - _is_particle(z)


def delta_t_cases() -> list[DeltaCase]:
    """The full gamma-free case table, grouped by edge class."""
    one, a, bb, d = Label.ONE, Label.ALPHA, Label.BETA, Label.DELTA
    data = [(one, (one, bb)), (one, (one, d)), (one, (a, one))]
    data += [(z, (a, y)) for z in (a, bb, d) for y in (bb, d)]
    return [DeltaCase(z, x, y, delta_t_classification(z, (x, y))) for z, (x, y) in data]


def border_particles(t: Ltlt) -> int:
    return sum(_is_particle(x) for _, x in t.edge_labels())


def is_gamma_free(t: Ltlt) -> bool:
    return Label.GAMMA not in (x for _, x in t.edge_labels()) and all(Label.GAMMA not in r for r in t.rows)


def gamma_free_ltlts(n: int, cap: int | None = None) -> Iterator[Ltlt]:
    """Gamma-free LTLTs of size ``n`` (insertion restricted to gamma-free bi-labels)."""
    check_cap(n, cap, "gamma_free_ltlts")

    def rec(t: Ltlt) -> Iterator[Ltlt]:
        if t.size == n:
            yield t
            return
        for e, b in insertion_choices(t):
            if Label.GAMMA not in b:
                yield from rec(insert(t, e, b))

    yield from rec(BASE)


class DeltaReport(NamedTuple):
    checked: int
    mismatch: tuple | None
    multiplicity_mismatch: tuple | None


def check_delta_t(max_size: int) -> DeltaReport:
    """Measure the particle change of every gamma-free insertion on gamma-free
    LTLTs of size ``<= max_size`` and compare with the case table and the
    multiplicities ``k+1``, ``n+1``, ``n-1-k`` (size ``n``, ``k`` particles)."""
    checked = 0
    for n in range(1, max_size + 1):
        for t in gamma_free_ltlts(n):
            k = border_particles(t)
            edges = [x for _, x in t.edge_labels()]
            mult = [0, 0, 0]
            for e, b in insertion_choices(t):
                if Label.GAMMA in b:
                    continue
                measured = border_particles(insert(t, e, b)) - k
                predicted = delta_t_classification(edges[e], b)
                checked += 1
                if measured != predicted:
                    return DeltaReport(checked, (t, e, b, measured, predicted), None)
                mult[measured] += 1
            if mult != [k + 1, n + 1, n - 1 - k]:
                return DeltaReport(checked, None, (t, k, tuple(mult)))
    return DeltaReport(checked, None, None)


__all__ = [
    "Coefficients", "DeltaCase", "DeltaReport", "MultiPoly", "TTable", "UniPoly",
    "border_particles", "check_delta_t", "count_roots_in", "delta_t_cases",
    "delta_t_classification", "differential_identity_check", "gamma_free_ltlts",
    "is_gamma_free", "log_concave", "p_poly", "product_formula", "standard_coefficients",
    "sturm_sequence", "t_table_enumerated", "t_table_recurrence", "verify_product",
    "z_fugacity",
]
