"""
Exact polynomial arithmetic.

:class:`MultiPoly` is a sparse polynomial in the six variables
``alpha, beta, gamma, delta, q, y`` with integer or rational coefficients.
:class:`UniPoly` is a dense univariate polynomial used for root counting.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]

VARIABLES = ("alpha", "beta", "gamma", "delta", "q", "y")
ALIASES = {"a": "alpha", "b": "beta", "g": "gamma", "d": "delta",
           "α": "alpha", "β": "beta", "γ": "gamma", "δ": "delta"}
Exponents = tuple[int, int, int, int, int, int]
ZERO_EXP: Exponents = (0, 0, 0, 0, 0, 0)


def variable_index(name: str) -> int:
    name = ALIASES.get(name, name)
    try:
        return VARIABLES.index(name)
    except ValueError:
        raise KeyError(f"unknown variable {name!r}") from None


def _normalize(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class MultiPoly:
    """Sparse polynomial; ``terms`` maps exponent 6-tuples to nonzero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponents, Number] | None = None):
        clean: dict[Exponents, Number] = {}
        for e, c in (terms or {}).items():
            if len(e) != len(VARIABLES) or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e!r}")
            if c:
                clean[tuple(e)] = _normalize(c)
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, c: Number) -> MultiPoly:
        return cls({ZERO_EXP: c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> MultiPoly:
        e = [0] * len(VARIABLES)
        e[variable_index(name)] = power
        return cls({tuple(e): 1})

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: MultiPoly | Number) -> MultiPoly:
        other = _lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MultiPoly | Number) -> MultiPoly:
        return self + (-_lift(other))

    def __mul__(self, other: MultiPoly | Number) -> MultiPoly:
        other = _lift(other)
        out: dict[Exponents, Number] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()!r})"

    # -- evaluation ----------------------------------------------------------

    def specialize(self, assignment: Mapping[str, Number]) -> MultiPoly:
        """Substitute values for some variables; the rest stay symbolic."""
        idx = {variable_index(k): Fraction(v) for k, v in assignment.items()}
        out: dict[Exponents, Number] = {}
        for e, c in self.terms.items():
            coef: Number = c
            ne = list(e)
            for i, v in idx.items():
                if e[i]:
                    coef = coef * v ** e[i]
                    ne[i] = 0
                if not coef:
                    break
            if coef:
                k = tuple(ne)
                out[k] = out.get(k, 0) + coef
        return MultiPoly(out)

    def total(self) -> Number:
        """Value with every variable set to 1."""
        return _normalize(sum(self.terms.values(), 0))

    def coefficient(self, exps: Iterable[int]) -> Number:
        return self.terms.get(tuple(exps), 0)

    def degree(self, name: str) -> int:
        i = variable_index(name)
        return max((e[i] for e in self.terms), default=0)

    def univariate(self, name: str) -> UniPoly:
        """Coefficient list in ``name``; all other variables must be absent."""
        i = variable_index(name)
        coeffs = [0] * (self.degree(name) + 1)
        for e, c in self.terms.items():
            if any(x for j, x in enumerate(e) if j != i):
                raise ValueError("polynomial involves other variables")
            coeffs[e[i]] = c
        return UniPoly(coeffs)

    # -- formats -------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponents, Number]]:
        """Graded lexicographic order: higher total degree first, then
        lexicographically larger exponent vectors first."""
        return sorted(self.terms.items(), key=lambda ec: (-sum(ec[0]), tuple(-x for x in ec[0])))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [v if k == 1 else f"{v}^{k}" for v, k in zip(VARIABLES, e) if k]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            parts.append(("-" if c < 0 else "+", body))
        text = " ".join(f"{s} {b}" for s, b in parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_record(self) -> dict:
        return {"variables": list(VARIABLES),
                "terms": {",".join(map(str, e)): str(c) for e, c in self.sorted_terms()}}

    @classmethod
    def from_record(cls, record: dict) -> MultiPoly:
        return cls({tuple(int(x) for x in k.split(",")): _normalize(Fraction(v))
                    for k, v in record["terms"].items()})

    def to_json(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))


def _lift(x: MultiPoly | Number) -> MultiPoly:
    return x if isinstance(x, MultiPoly) else MultiPoly.constant(x)


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies ``y**k``."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable[Number]):
        c = [_normalize(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, x: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: UniPoly) -> UniPoly:
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __neg__(self) -> UniPoly:
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other: UniPoly) -> UniPoly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UniPoly(out)

    def derivative(self) -> UniPoly:
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        d = other.coeffs
        lead = Fraction(d[-1])
        quot = [Fraction(0)] * max(len(rem) - len(d) + 1, 0)
        for k in range(len(rem) - len(d), -1, -1):
            f = rem[k + len(d) - 1] / lead
            quot[k] = f
            if f:
                for j, c in enumerate(d):
                    rem[k + j] -= f * c
        return UniPoly(quot), UniPoly(rem[:len(d) - 1])

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"


__all__ = ["ALIASES", "MultiPoly", "UniPoly", "VARIABLES", "variable_index"]
