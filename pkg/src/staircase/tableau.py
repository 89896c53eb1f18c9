"""
Staircase tableaux: representation, validation, q-filling, weight and a
direct backtracking enumerator.

Coordinates reported to callers are 1-based ``(row, column)`` with row 1 on
top; row ``i`` of a size-``n`` tableau holds ``n + 1 - i`` boxes and its
diagonal box is ``(i, n + 1 - i)``.  Internally rows are 0-based tuples of
small integers (``0`` for an empty box, otherwise a :class:`Label`).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterable, Iterator, NamedTuple, Sequence


class Label(IntEnum):
    """Box and edge labels.  ``ONE`` only occurs in tree-like tableaux."""

    ONE = 1
    ALPHA = 2
    BETA = 3
    GAMMA = 4
    DELTA = 5


EMPTY = 0
ALPHA_GAMMA = frozenset({Label.ALPHA, Label.GAMMA})
BETA_DELTA = frozenset({Label.BETA, Label.DELTA})
STAIRCASE_LABELS = (Label.ALPHA, Label.BETA, Label.GAMMA, Label.DELTA)

SYMBOL = {EMPTY: ".", Label.ONE: "1", Label.ALPHA: "a", Label.BETA: "b",
          Label.GAMMA: "g", Label.DELTA: "d"}
FROM_SYMBOL = {v: k for k, v in SYMBOL.items()}

DEFAULT_ENUM_CAP = 6


class ShapeError(ValueError):
    """Raised when an object does not have the shape its type requires."""


class CapExceeded(ValueError):
    """Raised when a size exceeds the configured enumeration cap."""


def check_cap(n: int, cap: int | None, what: str) -> None:
    if cap is not None and n > cap:
        raise CapExceeded(f"{what}: n={n} exceeds cap {cap}")


class Mark(Enum):
    ONE = "1"
    Q = "q"


class Monomial(NamedTuple):
    """Exponents of alpha, beta, gamma, delta and q."""

    alpha: int = 0
    beta: int = 0
    gamma: int = 0
    delta: int = 0
    q: int = 0

    def __mul__(self, other):  # type: ignore[override]
        return Monomial(*(a + b for a, b in zip(self, other)))


@dataclass(frozen=True)
class Violation:
    rule: str
    cell: tuple[int, ...]
    message: str = ""


@dataclass(frozen=True)
class ValidityReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, order=True)
class StaircaseTableau:
    """A staircase-shaped filling; ``rows[i]`` has ``n - i`` entries (0-based)."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(tuple(int(x) for x in r) for r in self.rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, cell: tuple[int, int]) -> int:
        """Label at the 1-based cell ``(i, j)``."""
        i, j = cell
        return self.rows[i - 1][j - 1]

    def diagonal(self) -> tuple[int, ...]:
        return tuple(row[-1] for row in self.rows)

    def cells(self) -> Iterator[tuple[int, int]]:
        n = self.n
        for i in range(1, n + 1):
            for j in range(1, n + 2 - i):
                yield (i, j)

    def count(self, label: int) -> int:
        return sum(row.count(label) for row in self.rows)

    # -- text / record formats ------------------------------------------

    def to_text(self) -> str:
        return "\n".join("".join(SYMBOL[x] for x in row) for row in self.rows)

    @classmethod
    def from_text(cls, text: str) -> StaircaseTableau:
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        try:
            rows = [[FROM_SYMBOL[ch] for ch in ln] for ln in lines]
        except KeyError as exc:
            raise ShapeError(f"unknown symbol {exc.args[0]!r}") from None
        t = cls(rows)
        _check_shape(t)
        return t

    def to_record(self) -> dict:
        return {"n": self.n,
                "rows": [[SYMBOL[x] if x else None for x in row] for row in self.rows]}

    @classmethod
    def from_record(cls, record: dict) -> StaircaseTableau:
        try:
            rows = [[FROM_SYMBOL[s] if s is not None else EMPTY for s in row]
                    for row in record["rows"]]
        except KeyError as exc:
            raise ShapeError(f"malformed record: {exc}") from None
        t = cls(rows)
        if record.get("n", t.n) != t.n:
            raise ShapeError("record n does not match number of rows")
        _check_shape(t)
        return t

    def to_json(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))


EMPTY_TABLEAU = StaircaseTableau(())


def _check_shape(t: StaircaseTableau) -> None:
    n = t.n
    for i, row in enumerate(t.rows):
        if len(row) != n - i:
            raise ShapeError(f"row {i + 1} has length {len(row)}, expected {n - i}")
        for x in row:
            if x not in (EMPTY, *STAIRCASE_LABELS):
                raise ShapeError(f"row {i + 1} holds invalid entry {x!r}")


def validate_staircase(t: StaircaseTableau) -> ValidityReport:
    """Check the three labelling rules; raise :class:`ShapeError` on bad shape."""
    _check_shape(t)
    n = t.n
    out: list[Violation] = []
    for i, row in enumerate(t.rows):
        if row[-1] == EMPTY:
            out.append(Violation("diagonal", (i + 1, n - i), "diagonal box is empty"))
        for j, x in enumerate(row):
            if x in BETA_DELTA and any(row[:j]):
                out.append(Violation("beta-delta", (i + 1, j + 1),
                                     "box left of beta/delta not empty"))
            elif x in ALPHA_GAMMA and any(t.rows[k][j] for k in range(i)):
                out.append(Violation("alpha-gamma", (i + 1, j + 1),
                                     "box above alpha/gamma not empty"))
    return ValidityReport(tuple(out))


def _mark(right: int, below: int) -> Mark:
    if right == Label.BETA:
        return Mark.ONE
    if right == Label.DELTA:
        return Mark.Q
    return Mark.ONE if below in (Label.ALPHA, Label.DELTA) else Mark.Q


@dataclass(frozen=True)
class FilledTableau:
    base: StaircaseTableau
    fill: dict[tuple[int, int], Mark]

    @property
    def q_count(self) -> int:
        return sum(1 for m in self.fill.values() if m is Mark.Q)


def fill_q(t: StaircaseTableau) -> FilledTableau:
    """Mark every blank box ``ONE`` or ``Q`` from its nearest right and lower labels."""
    rows = t.rows
    n = t.n
    fill: dict[tuple[int, int], Mark] = {}
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x:
                continue
            right = next((y for y in row[j + 1:] if y), None)
            below = next((rows[k][j] for k in range(i + 1, n - j) if rows[k][j]), None)
            assert right is not None and below is not None, "blank box without labels"
            fill[(i + 1, j + 1)] = _mark(right, below)
    return FilledTableau(t, fill)


def weight(t: StaircaseTableau) -> Monomial:
    return Monomial(t.count(Label.ALPHA), t.count(Label.BETA), t.count(Label.GAMMA),
                    t.count(Label.DELTA), fill_q(t).q_count)


def particle_count(t: StaircaseTableau) -> int:
    """Number of alpha or delta labels on the diagonal."""
    return sum(1 for x in t.diagonal() if x in (Label.ALPHA, Label.DELTA))


def diagonal_word(t: StaircaseTableau) -> tuple[Label, ...]:
    return tuple(Label(x) for x in t.diagonal())


def leftmost_labels(t: StaircaseTableau) -> list[int]:
    return [next(x for x in row if x) for row in t.rows]


def topmost_labels(t: StaircaseTableau) -> list[int]:
    n = t.n
    return [next(t.rows[i][j] for i in range(n - j) if t.rows[i][j]) for j in range(n)]


def indexed_stats(t: StaircaseTableau) -> tuple[int, int]:
    """(rows whose left-most label is beta/delta, columns whose top-most label is alpha/gamma)."""
    rows = sum(1 for x in leftmost_labels(t) if x in BETA_DELTA)
    cols = sum(1 for x in topmost_labels(t) if x in ALPHA_GAMMA)
    return rows, cols


def staircase_count(n: int) -> int:
    return 4 ** n * math.factorial(n)


def _backtrack(n: int, alphabet: Sequence[int], max_q: int | None,
               diagonal: Iterable[int] | None = None) -> Iterator[tuple[tuple[tuple[int, ...], ...], int]]:
    """Yield ``(rows, q_count)`` in row-major lexicographic order.

    Blank boxes are resolved as soon as the label below them is placed, which
    lets ``max_q`` prune early.
    """
    if n == 0:
        yield (), 0
        return
    alphabet = sorted(set(alphabet))
    diag_ok = frozenset(alphabet if diagonal is None else diagonal)
    cells = [(i, j) for i in range(n) for j in range(n - i)]
    grid = [[EMPTY] * (n - i) for i in range(n)]
    right_label: list[list[int]] = [[EMPTY] * (n - i) for i in range(n)]
    col_labeled = [False] * n
    pending: list[list[int]] = [[] for _ in range(n)]
    row_labeled = [False] * n
    state = {"q": 0}
    total = len(cells)
    budget = max_q

    def close_row(i: int) -> None:
        last = EMPTY
        row = grid[i]
        rl = right_label[i]
        for j in range(len(row) - 1, -1, -1):
            rl[j] = last
            if row[j]:
                last = row[j]

    def rec(k: int) -> Iterator[tuple[tuple[tuple[int, ...], ...], int]]:
        if k == total:
            yield tuple(tuple(r) for r in grid), state["q"]
            return
        i, j = cells[k]
        diag = j == n - 1 - i
        if not diag:
            grid[i][j] = EMPTY
            pending[j].append(i)
            yield from rec(k + 1)
            pending[j].pop()
        for lab in alphabet:
            if diag and lab not in diag_ok:
                continue
            if lab in BETA_DELTA and row_labeled[i]:
                continue
            if lab in ALPHA_GAMMA and col_labeled[j]:
                continue
            added = 0
            for i2 in pending[j]:
                if _mark(right_label[i2][j], lab) is Mark.Q:
                    added += 1
            if budget is not None and state["q"] + added > budget:
                continue
            saved_pending = pending[j]
            pending[j] = []
            prev_row, prev_col = row_labeled[i], col_labeled[j]
            grid[i][j] = lab
            row_labeled[i] = True
            col_labeled[j] = True
            state["q"] += added
            if diag:
                close_row(i)
            yield from rec(k + 1)
            state["q"] -= added
            grid[i][j] = EMPTY
            row_labeled[i], col_labeled[j] = prev_row, prev_col
            pending[j] = saved_pending

    yield from rec(0)


def enumerate_direct(n: int, labels: Iterable[int] = STAIRCASE_LABELS,
                     q_free: bool = False, cap: int | None = DEFAULT_ENUM_CAP,
                     diagonal: Iterable[int] | None = None) -> Iterator[StaircaseTableau]:
    """All valid size-``n`` staircase tableaux over ``labels``, canonical order.

    Canonical order is lexicographic on row-major contents with
    empty < alpha < beta < gamma < delta.  ``q_free`` restricts to weight
    with no ``q``; ``diagonal`` restricts the labels allowed on the diagonal.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    check_cap(n, cap, "enumerate_direct")
    for rows, _ in _backtrack(n, tuple(labels), 0 if q_free else None, diagonal):
        yield StaircaseTableau(rows)


def enumerate_weighted(n: int, labels: Iterable[int] = STAIRCASE_LABELS,
                       cap: int | None = DEFAULT_ENUM_CAP) -> Iterator[tuple[tuple[tuple[int, ...], ...], Monomial, int]]:
    """Yield ``(rows, weight, particle_count)`` without building tableau objects."""
    check_cap(n, cap, "enumerate_weighted")
    for rows, q in _backtrack(n, tuple(labels), None):
        counts = [0] * 6
        for row in rows:
            for x in row:
                counts[x] += 1
        t = sum(1 for row in rows if row[-1] in (Label.ALPHA, Label.DELTA))
        yield rows, Monomial(counts[2], counts[3], counts[4], counts[5], q), t
