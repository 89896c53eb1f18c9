"""
Labeled tree-like tableaux (LTLTs).

An LTLT is stored row by row: ``rows[r]`` is the tuple of box labels of row
``r`` (0 for an empty box, row 0 on top, root box at ``(0, 0)``),
``row_edges[r]`` labels the vertical border edge closing row ``r`` and
``col_edges[c]`` labels the horizontal border edge under column ``c``.
Border edges keep their row / column identity when cells are added, so
shifting an edge never moves its label to another row or column.

Border edges are indexed along the south-east boundary from the north-east
corner to the south-west corner: the edge of row 0 first, the edge under
column 0 last.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from .tableau import (ALPHA_GAMMA, BETA_DELTA, EMPTY, FROM_SYMBOL, SYMBOL, CapExceeded,
                      Label, ShapeError, StaircaseTableau, ValidityReport, Violation,
                      check_cap, leftmost_labels, topmost_labels, validate_staircase)

ONE, ALPHA, BETA, GAMMA, DELTA = (Label.ONE, Label.ALPHA, Label.BETA, Label.GAMMA,
                                  Label.DELTA)
DEFAULT_LTLT_CAP = 7

BiLabel = tuple[int, int]

_FIRST_ROW_BILABELS: tuple[BiLabel, ...] = ((ONE, BETA), (ONE, DELTA))
_FIRST_COL_BILABELS: tuple[BiLabel, ...] = ((ALPHA, ONE), (GAMMA, ONE))
_INNER_BILABELS: tuple[BiLabel, ...] = ((ALPHA, BETA), (ALPHA, DELTA),
                                        (GAMMA, BETA), (GAMMA, DELTA))


@dataclass(frozen=True, order=True)
class Ltlt:
    rows: tuple[tuple[int, ...], ...]
    row_edges: tuple[int, ...]
    col_edges: tuple[int, ...]

    def __post_init__(self) -> None:
        if type(self.rows) is not tuple or any(type(r) is not tuple for r in self.rows):
            object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        object.__setattr__(self, "row_edges", tuple(self.row_edges))
        object.__setattr__(self, "col_edges", tuple(self.col_edges))

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return len(self.rows) + len(self.col_edges) - 1

    def height(self, c: int) -> int:
        return sum(1 for r in self.rows if len(r) > c)

    def edges(self) -> tuple[tuple[str, int], ...]:
        """Border edges NE to SW as ``("V", row)`` / ``("H", column)``."""
        return self._edges

    @cached_property
    def _edges(self) -> tuple[tuple[str, int], ...]:
        out: list[tuple[str, int]] = []
        rows = self.rows
        nrows = len(rows)
        for r in range(nrows):
            out.append(("V", r))
            lo = len(rows[r + 1]) if r + 1 < nrows else 0
            out.extend(("H", c) for c in range(len(rows[r]) - 1, lo - 1, -1))
        return tuple(out)

    def edge_labels(self) -> list[tuple[str, int]]:
        """``(orientation, label)`` pairs in border order."""
        return [(o, self.row_edges[i] if o == "V" else self.col_edges[i])
                for o, i in self.edges()]

    def boxes(self) -> Iterator[tuple[int, int, int]]:
        for r, row in enumerate(self.rows):
            for c, x in enumerate(row):
                if x:
                    yield r, c, x

    # -- formats ------------------------------------------------------------

    def to_record(self) -> dict:
        return {"shape": list(self.shape),
                "boxes": [[r, c, SYMBOL[x]] for r, c, x in self.boxes()],
                "edges": [[o, SYMBOL[x]] for o, x in self.edge_labels()]}

    @classmethod
    def from_record(cls, record: dict) -> Ltlt:
        try:
            shape = [int(x) for x in record["shape"]]
            _check_partition(shape)
            grid = [[EMPTY] * k for k in shape]
            for r, c, s in record["boxes"]:
                grid[r][c] = FROM_SYMBOL[s]
            ncols = shape[0]
            probe = cls(grid, [EMPTY] * len(shape), [EMPTY] * ncols)
            order = probe.edges()
            if len(record["edges"]) != len(order):
                raise ShapeError("edge list length does not match half-perimeter")
            row_edges = [EMPTY] * len(shape)
            col_edges = [EMPTY] * ncols
            for (o, i), (o2, s) in zip(order, record["edges"]):
                if o != o2:
                    raise ShapeError(f"edge orientation mismatch: expected {o}, got {o2}")
                (row_edges if o == "V" else col_edges)[i] = FROM_SYMBOL[s]
        except (KeyError, IndexError, TypeError) as exc:
            raise ShapeError(f"malformed LTLT record: {exc!r}") from None
        return cls(grid, row_edges, col_edges)

    def to_json(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))

    def to_text(self) -> str:
        """Grid of box symbols; ``|x`` closes each row, the last line lists
        the labels under columns 0, 1, ... ."""
        lines = ["".join(SYMBOL[x] for x in row) + "|" + SYMBOL[e]
                 for row, e in zip(self.rows, self.row_edges)]
        lines.append("".join(SYMBOL[e] for e in self.col_edges))
        return "\n".join(lines)


BASE = Ltlt(((ONE,),), (ONE,), (ONE,))


def _check_partition(shape) -> None:
    if not shape or any(k < 1 for k in shape) or any(a < b for a, b in zip(shape, shape[1:])):
        raise ShapeError(f"not a Ferrers shape: {list(shape)}")


def check_shape(t: Ltlt) -> None:
    shape = t.shape
    _check_partition(shape)
    if len(t.row_edges) != len(shape) or len(t.col_edges) != shape[0]:
        raise ShapeError("border-edge arrays do not match the shape")
    allowed = (EMPTY, ONE, ALPHA, BETA, GAMMA, DELTA)
    if any(x not in allowed for row in t.rows for x in row):
        raise ShapeError("unknown box label")


def validate_ltlt(t: Ltlt) -> ValidityReport:
    """Check the LTLT rules, with labels of the first row and column
    restricted to ``ONE``/empty and the border-edge label classes of the
    image of the staircase correspondence."""
    check_shape(t)
    rows = t.rows
    out: list[Violation] = []
    if rows[0][0] != ONE:
        out.append(Violation("root", (0, 0), "root box is not labeled 1"))
    for r, row in enumerate(rows):
        if not any(row):
            out.append(Violation("row-label", (r,), "row without a labeled box"))
        for c, x in enumerate(row):
            if not x or (r, c) == (0, 0):
                continue
            if r == 0 or c == 0:
                if x != ONE:
                    out.append(Violation("hook-label", (r, c), "first row/column box not 1"))
                continue
            if x == ONE:
                out.append(Violation("one-placement", (r, c), "label 1 outside first row/column"))
            elif x in ALPHA_GAMMA:
                if any(rows[k][c] for k in range(r)):
                    out.append(Violation("alpha-gamma", (r, c), "box above alpha/gamma labeled"))
                if not any(row[:c]):
                    out.append(Violation("alpha-gamma", (r, c), "no label left of alpha/gamma"))
            else:
                if any(row[:c]):
                    out.append(Violation("beta-delta", (r, c), "box left of beta/delta labeled"))
                if not any(rows[k][c] for k in range(r)):
                    out.append(Violation("beta-delta", (r, c), "no label above beta/delta"))
    for c in range(len(rows[0])):
        if not any(rows[k][c] for k in range(t.height(c))):
            out.append(Violation("column-label", (c,), "column without a labeled box"))
    for r, e in enumerate(t.row_edges):
        want = (ONE,) if r == 0 else (ALPHA, GAMMA)
        if e not in want:
            out.append(Violation("edge-label", ("V", r), f"vertical edge label {SYMBOL.get(e, e)}"))
    for c, e in enumerate(t.col_edges):
        want = (ONE,) if c == 0 else (BETA, DELTA)
        if e not in want:
            out.append(Violation("edge-label", ("H", c), f"horizontal edge label {SYMBOL.get(e, e)}"))
    return ValidityReport(tuple(out))


# -- the correspondence with staircase tableaux ------------------------------

def lambda_map(st: StaircaseTableau) -> Ltlt:
    """Staircase tableau of size m -> LTLT of size m + 1."""
    if not validate_staircase(st):
        raise ValueError("invalid staircase tableau")
    m = st.n
    diag = st.diagonal()
    left = leftmost_labels(st)
    top = topmost_labels(st)
    kept_rows = [i for i in range(m) if diag[i] in ALPHA_GAMMA]
    # staircase column j is the column of the diagonal box of row m-1-j
    kept_cols = [j for j in range(m) if diag[m - 1 - j] in BETA_DELTA]
    rows = [tuple([ONE] + [ONE if top[j] in BETA_DELTA else EMPTY for j in kept_cols])]
    for i in range(m):
        if diag[i] not in ALPHA_GAMMA:
            continue
        hook = ONE if left[i] in ALPHA_GAMMA else EMPTY
        rows.append(tuple([hook] + [st.rows[i][j] for j in kept_cols if j < m - 1 - i]))
    row_edges = [ONE] + [diag[i] for i in kept_rows]
    col_edges = [ONE] + [diag[m - 1 - j] for j in kept_cols]
    return Ltlt(rows, row_edges, col_edges)


def lambda_inv(t: Ltlt) -> StaircaseTableau:
    """Inverse of :func:`lambda_map`."""
    order = t.edges()
    inner = order[1:-1]
    m = len(inner)
    row_of: dict[int, int] = {}
    col_of: dict[int, int] = {}
    diag = [EMPTY] * m
    for k, (o, idx) in enumerate(inner):
        if o == "V":
            row_of[k] = idx
            diag[k] = t.row_edges[idx]
        else:
            col_of[m - 1 - k] = idx
            diag[k] = t.col_edges[idx]
    grid = []
    for i in range(m):
        row = []
        for j in range(m - i - 1):
            if i in row_of and j in col_of:
                r, c = row_of[i], col_of[j]
                assert c < len(t.rows[r]), "LTLT outside the image of lambda_map"
                row.append(t.rows[r][c])
            else:
                row.append(EMPTY)
        row.append(diag[i])
        grid.append(tuple(row))
    return StaircaseTableau(grid)


# -- insertion ---------------------------------------------------------------

def special_box(t: Ltlt) -> tuple[int, int]:
    """North-east-most labeled box among the bottom boxes of the columns."""
    rows = t.rows
    r = 0
    for c in range(len(rows[0]) - 1, -1, -1):
        while r + 1 < len(rows) and len(rows[r + 1]) > c:
            r += 1
        if rows[r][c]:
            return r, c
    raise ValueError("no labeled bottom box")


def compatible_bilabels(t: Ltlt, e: int) -> tuple[BiLabel, ...]:
    order = t.edges()
    if not 0 <= e < len(order):
        raise IndexError(f"edge index {e} out of range 0..{len(order) - 1}")
    o, idx = order[e]
    if o == "V" and idx == 0:
        return _FIRST_ROW_BILABELS
    if o == "H" and idx == 0:
        return _FIRST_COL_BILABELS
    return _INNER_BILABELS


def _add_ribbon(lengths: list[int], top: int, bottom: int, s_col: int) -> list[int]:
    """Row lengths after adding the ribbon that runs from under the box at
    ``(top, s_col)`` down to the row ``bottom``."""
    new = lengths[:]
    new[top + 1] = s_col + 1
    for j in range(top + 2, bottom + 1):
        new[j] = lengths[j - 1] + 1
    return new


def _reshape(rows: list[tuple[int, ...]], lengths: list[int]) -> list[tuple[int, ...]]:
    return [row + (EMPTY,) * (k - len(row)) if k > len(row) else row
            for row, k in zip(rows, lengths)]


def column_addition(t: Ltlt, r: int, b: BiLabel) -> tuple[Ltlt, tuple[int, int]]:
    """Add a column at the vertical edge of row ``r``; returns the new box too."""
    x, y = b
    k = len(t.rows[r])
    label = t.row_edges[r]
    rows = [row[:k] + (label if i == r else EMPTY,) + row[k:] if i <= r else row
            for i, row in enumerate(t.rows)]
    row_edges = t.row_edges[:r] + (x,) + t.row_edges[r + 1:]
    col_edges = t.col_edges[:k] + (y,) + t.col_edges[k:]
    return Ltlt(rows, row_edges, col_edges), (r, k)


def row_addition(t: Ltlt, c: int, b: BiLabel) -> tuple[Ltlt, tuple[int, int]]:
    """Add a row at the horizontal edge under column ``c``."""
    x, y = b
    h = t.height(c)
    rows = list(t.rows)
    rows.insert(h, (EMPTY,) * c + (t.col_edges[c],))
    row_edges = t.row_edges[:h] + (x,) + t.row_edges[h:]
    col_edges = t.col_edges[:c] + (y,) + t.col_edges[c + 1:]
    return Ltlt(rows, row_edges, col_edges), (h, c)


def ribbon_addition(t: Ltlt, r1: int, s_box: tuple[int, int]) -> Ltlt:
    """Add the ribbon between the vertical edge of row ``r1`` and the
    horizontal edge under ``s_box`` (a bottom box of its column).

    When row ``r1`` is not below ``s_box`` the edges are in the other order
    and nothing is added.
    """
    rs, cs = s_box
    lengths = [len(r) for r in t.rows]
    if r1 <= rs:
        return t
    if r1 >= len(lengths) or t.height(cs) != rs + 1 or lengths[r1] > cs:
        raise ValueError("ribbon not addable between the given edges")
    return Ltlt(_reshape(list(t.rows), _add_ribbon(lengths, rs, r1, cs)),
                t.row_edges, t.col_edges)


def _check_bilabel(t: Ltlt, e: int, b: BiLabel) -> tuple[str, int]:
    if tuple(b) not in compatible_bilabels(t, e):
        raise ValueError(f"bi-label {b} not compatible with edge {e}")
    return t.edges()[e]


def insert(t: Ltlt, e: int, b: BiLabel) -> Ltlt:
    return insert_traced(t, e, b)[0][-1]


def insert_traced(t: Ltlt, e: int, b: BiLabel) -> tuple[list[Ltlt], tuple[int, int]]:
    """Insertion keeping the stages ``[t, after row/column addition, final]``
    and the position of the added labeled box."""
    o, idx = _check_bilabel(t, e, b)
    rs, cs = special_box(t)
    if o == "V":
        mid, (pr, pc) = column_addition(t, idx, b)
        needs_ribbon = idx > rs
        if pc <= cs:
            cs += 1
    else:
        mid, (pr, pc) = row_addition(t, idx, b)
        needs_ribbon = idx < cs
    if not needs_ribbon:
        return [t, mid, mid], (pr, pc)
    lengths = [len(r) for r in mid.rows]
    out = Ltlt(_reshape(list(mid.rows), _add_ribbon(lengths, rs, pr, cs)),
               mid.row_edges, mid.col_edges)
    return [t, mid, out], (pr, pc)


def uninsert(t: Ltlt) -> tuple[Ltlt, int, BiLabel]:
    """Inverse of :func:`insert`."""
    if t.size < 2:
        raise ValueError("the size-1 LTLT has no predecessor")
    pr, pc = special_box(t)
    label = t.rows[pr][pc]
    x = t.row_edges[pr]
    y = t.col_edges[pc]
    rows = list(t.rows)
    lengths = [len(r) for r in rows]
    if lengths[pr] > pc + 1:
        rs = pr - 1
        while rs >= 0 and not rows[rs][lengths[rs + 1] - 1]:
            rs -= 1
        if rs < 0:
            raise ValueError("not an insertion image: ribbon has no upper end")
        new = lengths[:]
        for j in range(rs + 1, pr):
            new[j] = lengths[j + 1] - 1
        new[pr] = pc + 1
        for j in range(rs + 1, pr + 1):
            if any(rows[j][new[j]:]):
                raise ValueError("not an insertion image: labeled ribbon cell")
            rows[j] = rows[j][:new[j]]
    column_type = label in ALPHA_GAMMA or (label == ONE and pr == 0 and pc > 0)
    if column_type:
        rows = [row[:pc] + row[pc + 1:] if i <= pr else row for i, row in enumerate(rows)]
        row_edges = t.row_edges[:pr] + (label,) + t.row_edges[pr + 1:]
        col_edges = t.col_edges[:pc] + t.col_edges[pc + 1:]
        prev = Ltlt(rows, row_edges, col_edges)
        e = prev.edges().index(("V", pr))
    else:
        del rows[pr]
        row_edges = t.row_edges[:pr] + t.row_edges[pr + 1:]
        col_edges = t.col_edges[:pc] + (label,) + t.col_edges[pc + 1:]
        prev = Ltlt(rows, row_edges, col_edges)
        e = prev.edges().index(("H", pc))
    return prev, e, (x, y)


def insertion_choices(t: Ltlt) -> Iterator[tuple[int, BiLabel]]:
    for e in range(t.size + 1):
        for b in compatible_bilabels(t, e):
            yield e, b


def children(t: Ltlt) -> Iterator[Ltlt]:
    for e, b in insertion_choices(t):
        yield insert(t, e, b)


def ltlt_count(n: int) -> int:
    return 4 ** (n - 1) * math.factorial(n - 1)


def enumerate_ltlt(n: int, cap: int | None = DEFAULT_LTLT_CAP) -> Iterator[Ltlt]:
    """All LTLTs of size ``n`` by recursive insertion, in rank order."""
    if n < 1:
        raise ValueError("LTLT size must be at least 1")
    check_cap(n, cap, "enumerate_ltlt")

    def rec(t: Ltlt) -> Iterator[Ltlt]:
        if t.size == n:
            yield t
            return
        for child in children(t):
            yield from rec(child)

    yield from rec(BASE)


# -- histories and ranks -----------------------------------------------------

def insertion_history(t: Ltlt) -> list[tuple[int, BiLabel]]:
    steps = []
    while t.size > 1:
        t, e, b = uninsert(t)
        steps.append((e, b))
    steps.reverse()
    return steps


def _choice_index(t: Ltlt, e: int, b: BiLabel) -> int:
    offset = 0
    for e2 in range(e):
        offset += len(compatible_bilabels(t, e2))
    return offset + compatible_bilabels(t, e).index(tuple(b))


def rank(t: Ltlt) -> int:
    """Mixed-radix rank: step k (from size k) has 4k choices, first step most significant."""
    value = 0
    cur = BASE
    for e, b in insertion_history(t):
        value = value * (4 * cur.size) + _choice_index(cur, e, b)
        cur = insert(cur, e, b)
    return value


def unrank(n: int, value: int) -> Ltlt:
    total = ltlt_count(n)
    if not 0 <= value < total:
        raise ValueError(f"rank {value} out of range [0, {total})")
    digits = []
    for k in range(n - 1, 0, -1):
        value, d = divmod(value, 4 * k)
        digits.append(d)
    t = BASE
    for d in reversed(digits):
        e, b = list(insertion_choices(t))[d]
        t = insert(t, e, b)
    return t


def history_to_text(history: list[tuple[int, BiLabel]]) -> list[tuple[int, str]]:
    return [(e, f"{SYMBOL[x]},{SYMBOL[y]}") for e, (x, y) in history]


# -- tree structure ----------------------------------------------------------

def crossings(t: Ltlt) -> set[tuple[int, int]]:
    """Empty boxes crossed by a horizontal and a vertical tree edge.

    Border-edge labels count as labels to the right / below.
    """
    rows = t.rows
    out = set()
    for r, row in enumerate(rows):
        for c, x in enumerate(row):
            if x:
                continue
            if any(row[:c]) and any(rows[k][c] for k in range(r)):
                out.add((r, c))
    return out


@dataclass(frozen=True)
class TreeNode:
    """Node of the underlying tree.  ``left`` is the child below (same
    column), ``right`` the child to the right (same row); leaves are border
    edges and carry ``position`` ``("V", r)`` or ``("H", c)``."""

    label: int
    position: tuple
    left: TreeNode | None = None
    right: TreeNode | None = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def shape(self):
        """Unlabeled binary tree as nested ``(left, right)`` tuples, leaves ``None``."""
        if self.is_leaf:
            return None
        return (self.left.shape(), self.right.shape())

    def internal_count(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + self.left.internal_count() + self.right.internal_count()


@dataclass(frozen=True)
class LtltTree:
    root: TreeNode
    crossings: frozenset = field(default_factory=frozenset)


def underlying_tree(t: Ltlt) -> LtltTree:
    rows = t.rows
    heights = [t.height(c) for c in range(len(rows[0]))]

    def node(r: int, c: int) -> TreeNode:
        row = rows[r]
        nc = next((k for k in range(c + 1, len(row)) if row[k]), None)
        right = node(r, nc) if nc is not None else TreeNode(t.row_edges[r], ("V", r))
        nr = next((k for k in range(r + 1, heights[c]) if rows[k][c]), None)
        left = node(nr, c) if nr is not None else TreeNode(t.col_edges[c], ("H", c))
        return TreeNode(rows[r][c], ("box", r, c), left, right)

    return LtltTree(node(0, 0), frozenset(crossings(t)))


def layout_tree(root: TreeNode) -> Ltlt:
    """Crossing-free LTLT whose underlying tree is ``root`` (inverse of
    :func:`underlying_tree` on crossing-free tableaux)."""

    def rec(v: TreeNode):
        a, b = v.left, v.right
        if a.is_leaf:
            a_rows, a_re, a_ce = [], [], [a.label]
        else:
            a_rows, a_re, a_ce = rec(a)
        if b.is_leaf:
            b_rows, b_re, b_ce = [()], [b.label], []
        else:
            b_rows, b_re, b_ce = rec(b)
        width = len(a_ce)
        top = [((v.label if i == 0 else EMPTY),) + (EMPTY,) * (width - 1) + tuple(br)
               for i, br in enumerate(b_rows)]
        return top + a_rows, b_re + a_re, a_ce + b_ce

    rows, re_, ce = rec(root)
    return Ltlt(rows, re_, ce)


__all__ = [
    "BASE", "BiLabel", "CapExceeded", "Ltlt", "LtltTree", "ShapeError", "TreeNode",
    "check_shape", "children", "column_addition", "compatible_bilabels", "crossings",
    "enumerate_ltlt", "history_to_text", "insert", "insert_traced", "insertion_choices",
    "insertion_history", "lambda_inv", "lambda_map", "layout_tree", "ltlt_count", "rank",
    "ribbon_addition", "row_addition", "special_box", "underlying_tree", "uninsert",
    "unrank", "validate_ltlt",
]
