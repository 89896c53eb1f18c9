"""
Lattice paths over U=(1,1), D=(1,-1), H=(2,0), binary-tree contour codings
and the bijection from delta-free, q-free staircase tableaux to lazy paths.

Paths are plain strings over ``"UDH"``; the size of a path is half its
horizontal length.  Binary trees are nested ``(left, right)`` tuples with
``None`` for an external node.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, NamedTuple

from .ltlt import TreeNode, crossings, lambda_inv, lambda_map, layout_tree, underlying_tree
from .tableau import (ALPHA_GAMMA, CapExceeded, Label, StaircaseTableau, check_cap,
                      validate_staircase, weight)

DEFAULT_LAZY_CAP = 9

Tree = tuple | None


class PathClass(Enum):
    DYCK = "dyck"
    ALMOST_DYCK = "almost-dyck"
    POSITIVE_LAZY = "positive-lazy"
    LAZY = "lazy"
    NONE = "none"


def path_size(p: str) -> int:
    return (len(p) + p.count("H")) // 2


def heights(p: str) -> list[int]:
    """Height before each step, plus the final height."""
    h = 0
    out = [0]
    for s in p:
        if s == "U":
            h += 1
        elif s == "D":
            h -= 1
        elif s != "H":
            raise ValueError(f"unknown step {s!r}")
        out.append(h)
    return out


_ORDER = str.maketrans("UDH", "012")


def path_key(p: str) -> str:
    """Sort key for the canonical order U < D < H."""
    return p.translate(_ORDER)


def is_lazy(p: str) -> bool:
    hs = heights(p)
    return hs[-1] == 0 and all(hs[i] == 0 for i, s in enumerate(p) if s == "H")


def classify(p: str) -> PathClass:
    """Most restrictive class of ``p``."""
    hs = heights(p)
    if hs[-1] != 0:
        return PathClass.NONE
    flat = "H" in p
    low = min(hs)
    if not flat and low >= 0:
        return PathClass.DYCK
    if not flat and low >= -1:
        return PathClass.ALMOST_DYCK
    if not is_lazy(p):
        return PathClass.NONE
    return PathClass.POSITIVE_LAZY if low >= 0 else PathClass.LAZY


def in_class(p: str, cls: PathClass) -> bool:
    """Membership, taking the inclusions Dyck < positive lazy < lazy and
    Dyck < almost-Dyck < lazy into account."""
    c = classify(p)
    if c is PathClass.NONE:
        return False
    wider = {
        PathClass.DYCK: {PathClass.DYCK, PathClass.ALMOST_DYCK, PathClass.POSITIVE_LAZY, PathClass.LAZY},
        PathClass.ALMOST_DYCK: {PathClass.ALMOST_DYCK, PathClass.LAZY},
        PathClass.POSITIVE_LAZY: {PathClass.POSITIVE_LAZY, PathClass.LAZY},
        PathClass.LAZY: {PathClass.LAZY},
    }
    return cls in wider[c]


class Factor(NamedTuple):
    start: int
    end: int
    sign: str  # "positive" | "negative" | "flat"


def factors(p: str) -> list[Factor]:
    """Split a lazy path into minimal axis-to-axis pieces (``end`` exclusive)."""
    if not is_lazy(p):
        raise ValueError(f"not a lazy path: {p!r}")
    out = []
    h = 0
    start = 0
    for i, s in enumerate(p):
        if s == "H":
            out.append(Factor(i, i + 1, "flat"))
            start = i + 1
            continue
        if h == 0:
            sign = "positive" if s == "U" else "negative"
        h += 1 if s == "U" else -1
        if h == 0:
            out.append(Factor(start, i + 1, sign))
            start = i + 1
    return out


def mirror(p: str) -> str:
    return p.translate(str.maketrans("UD", "DU"))


class PathStats(NamedTuple):
    D: int
    M: int
    A: int
    H: int
    F: int
    N: int


def stats(p: str) -> PathStats:
    """Down steps, up steps, initial run of up steps, flat steps, factors,
    negative factors."""
    fs = factors(p)
    a = len(p) - len(p.lstrip("U"))
    return PathStats(p.count("D"), p.count("U"), a, p.count("H"), len(fs),
                     sum(1 for f in fs if f.sign == "negative"))


def initial_excursion_run(p: str) -> int:
    """Length of the initial run of steps leaving the axis in one direction.

    Equals ``stats(p).A`` unless the path starts with a negative factor,
    and is invariant under mirroring factors.
    """
    if not p or p[0] == "H":
        return 0
    return len(p) - len(p.lstrip(p[0]))


def enumerate_lazy(n: int, positive: bool = False, cap: int | None = DEFAULT_LAZY_CAP) -> Iterator[str]:
    """All lazy paths of size ``n`` in lexicographic order with U < D < H."""
    check_cap(n, cap, "enumerate_lazy")
    length = 2 * n
    buf: list[str] = []

    def rec(x: int, h: int) -> Iterator[str]:
        if x == length:
            if h == 0:
                yield "".join(buf)
            return
        left = length - x
        for s, dx, dh in (("U", 1, 1), ("D", 1, -1), ("H", 2, 0)):
            nh = h + dh
            if s == "H" and h != 0:
                continue
            if positive and nh < 0:
                continue
            if dx > left or abs(nh) > left - dx:
                continue
            buf.append(s)
            yield from rec(x + dx, nh)
            buf.pop()

    yield from rec(0, 0)


def enumerate_dyck(n: int) -> Iterator[str]:
    for p in enumerate_lazy(n, positive=True, cap=None):
        if "H" not in p:
            yield p


def peaks(p: str) -> int:
    if classify(p) is not PathClass.DYCK:
        raise ValueError(f"not a Dyck path: {p!r}")
    return p.count("UD")


def is_odd_frobenius(p: str) -> bool:
    """Heights within [-1, 1] and every non-flat factor that is followed by a
    flat step or ends the path is negative."""
    if not is_lazy(p) or any(abs(h) > 1 for h in heights(p)):
        return False
    fs = factors(p)
    for k, f in enumerate(fs):
        if f.sign == "positive":
            nxt = fs[k + 1] if k + 1 < len(fs) else None
            if nxt is None or nxt.sign == "flat":
                return False
    return True


# -- binary trees and contour codings ----------------------------------------

def internal_nodes(t: Tree) -> int:
    return 0 if t is None else 1 + internal_nodes(t[0]) + internal_nodes(t[1])


def all_trees(n: int) -> Iterator[Tree]:
    if n == 0:
        yield None
        return
    for k in range(n):
        for left in all_trees(k):
            for right in all_trees(n - 1 - k):
                yield (left, right)


def _preorder_code(t: Tree) -> str:
    out = []
    stack = [t]
    while stack:
        v = stack.pop()
        if v is None:
            out.append("D")
        else:
            out.append("U")
            stack.append(v[1])
            stack.append(v[0])
    return "".join(out)


def pi(t: Tree) -> str:
    """Preorder contour: U at each internal node, D at each external node
    except the last one."""
    return _preorder_code(t)[:-1]


def pi_inverse(p: str) -> Tree:
    tokens = iter(p + "D")

    def parse() -> Tree:
        if next(tokens) == "U":
            left = parse()
            return (left, parse())
        return None

    t = parse()
    if next(tokens, None) is not None:
        raise ValueError("not a Dyck path")
    return t


def almost_dyck(t: Tree) -> str:
    if t is None:
        raise ValueError("tree needs an internal node")
    return pi(t)[1:-1]


def _flatten_negative(p: str) -> str:
    out = []
    h = 0
    i = 0
    while i < len(p):
        s = p[i]
        if h == 0 and s == "D":
            assert p[i + 1] == "U", "not an almost-Dyck path"
            out.append("H")
            i += 2
            continue
        h += 1 if s == "U" else -1
        out.append(s)
        i += 1
    return "".join(out)


def pi_prime(t: Tree) -> str:
    """Tree with n internal nodes -> positive lazy path of size n - 1."""
    return _flatten_negative(almost_dyck(t))


def pi_prime_inverse(p: str) -> Tree:
    return pi_inverse("U" + p.replace("H", "DU") + "D")


def left_depth_one_nodes(t: Tree) -> list[Tree]:
    """Internal nodes of left depth 1 in preorder (as subtree objects with
    their preorder index)."""
    out = []
    idx = 0

    def rec(v: Tree, ld: int) -> None:
        nonlocal idx
        if v is None:
            return
        if ld == 1:
            out.append(idx)
        idx += 1
        rec(v[0], ld + 1)
        rec(v[1], ld)

    rec(t, 0)
    return out


# -- the B_n labeled trees ---------------------------------------------------

@dataclass(frozen=True, order=True)
class BnTree:
    """Binary tree with its internal nodes of left depth 1 labeled
    ``ALPHA``/``GAMMA`` (``labels`` in preorder)."""

    shape: Tree
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != len(left_depth_one_nodes(self.shape)):
            raise ValueError("one label per internal node of left depth 1 expected")
        if any(x not in ALPHA_GAMMA for x in self.labels):
            raise ValueError("labels must be alpha or gamma")

    @property
    def size(self) -> int:
        return internal_nodes(self.shape)


def enumerate_bn(n_internal: int) -> Iterator[BnTree]:
    from itertools import product
    for shape in all_trees(n_internal):
        k = len(left_depth_one_nodes(shape))
        for labels in product((Label.ALPHA, Label.GAMMA), repeat=k):
            yield BnTree(shape, labels)


def _check_phi_domain(st: StaircaseTableau) -> None:
    if not validate_staircase(st):
        raise ValueError("invalid staircase tableau")
    if st.count(Label.DELTA):
        raise ValueError("tableau contains a delta label")
    if weight(st).q:
        raise ValueError("tableau has positive q-exponent")


def to_bn_tree(st: StaircaseTableau) -> BnTree:
    """Delta-free, q-free tableau of size n -> tree with n + 1 internal nodes."""
    _check_phi_domain(st)
    lt = lambda_map(st)
    assert not crossings(lt), "q-free tableau with a crossing"
    root = underlying_tree(lt).root
    labels = []

    def rec(v: TreeNode, ld: int, left_spine: bool, is_left: bool) -> None:
        if v.label == Label.GAMMA:
            assert ld == 1 and not is_left, "gamma outside a left-depth-1 right son"
        if v.is_leaf:
            return
        if ld == 1:
            labels.append(v.right.label)
        rec(v.left, ld + 1, left_spine, True)
        rec(v.right, ld, False, False)

    rec(root, 0, True, False)
    return BnTree(root.shape(), tuple(labels))


def _labeled_tree(b: BnTree) -> TreeNode:
    """Attach LTLT labels to every node of ``b.shape``."""
    labels = iter(b.labels)

    def rec(v: Tree, ld: int, left_spine: bool, is_left: bool, inherited: int | None) -> TreeNode:
        if ld == 0 or left_spine:
            lab = Label.ONE
        elif is_left:
            lab = Label.BETA
        elif ld == 1:
            lab = inherited
        else:
            lab = Label.ALPHA
        if v is None:
            return TreeNode(lab, ("leaf",))
        own = next(labels) if ld == 1 else None
        left = rec(v[0], ld + 1, left_spine, True, None)
        right = rec(v[1], ld, False, False, own)
        return TreeNode(lab, ("box",), left, right)

    return rec(b.shape, 0, True, False, None)


def from_bn_tree(b: BnTree) -> StaircaseTableau:
    return lambda_inv(layout_tree(_labeled_tree(b)))


def phi(st: StaircaseTableau) -> str:
    """Delta-free, q-free staircase tableau of size n -> lazy path of size n."""
    return phi_of_tree(to_bn_tree(st))


def phi_of_tree(b: BnTree) -> str:
    base = pi_prime(b.shape)
    labels = iter(b.labels)
    out = []
    for f in factors(base):
        piece = base[f.start:f.end]
        if f.sign == "positive" and next(labels) == Label.GAMMA:
            piece = mirror(piece)
        out.append(piece)
    return "".join(out)


def phi_inv_tree(p: str) -> BnTree:
    if not is_lazy(p):
        raise ValueError(f"not a lazy path: {p!r}")
    pieces = []
    labels = []
    for f in factors(p):
        piece = p[f.start:f.end]
        if f.sign == "negative":
            pieces.append(mirror(piece))
            labels.append(Label.GAMMA)
        else:
            if f.sign == "positive":
                labels.append(Label.ALPHA)
            pieces.append(piece)
    return BnTree(pi_prime_inverse("".join(pieces)), tuple(labels))


def phi_inv(p: str) -> StaircaseTableau:
    return from_bn_tree(phi_inv_tree(p))


def phi_trace(st: StaircaseTableau) -> list:
    """Stages of the bijection: tableau, LTLT, labeled tree, B_n tree,
    positive lazy path, lazy path."""
    lt = lambda_map(st)
    b = to_bn_tree(st)
    return [st, lt, underlying_tree(lt), b, pi_prime(b.shape), phi_of_tree(b)]


__all__ = [
    "BnTree", "CapExceeded", "Factor", "PathClass", "PathStats", "all_trees", "almost_dyck",
    "classify", "enumerate_bn", "enumerate_dyck", "enumerate_lazy", "factors", "from_bn_tree",
    "heights", "in_class", "initial_excursion_run", "internal_nodes", "is_lazy",
    "is_odd_frobenius", "left_depth_one_nodes", "mirror", "path_key", "path_size", "peaks", "phi",
    "phi_inv", "phi_inv_tree", "phi_of_tree", "phi_trace", "pi", "pi_inverse", "pi_prime",
    "pi_prime_inverse", "stats", "to_bn_tree",
]
