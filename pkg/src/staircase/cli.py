"""
Command-line front end.

Exit status: 0 success, 1 verification failure, 2 usage or input error,
3 size cap exceeded.  Caps can be raised with ``--cap`` together with
``--unsafe``, or through the environment variables ``STAIRCASE_CAP`` and
``STAIRCASE_UNSAFE=1``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Iterator, Sequence

from . import acceptance
from . import ltlt as L
from . import partition as P
from . import paths as Pa
from .poly import MultiPoly
from .tableau import (CapExceeded, Label, ShapeError, StaircaseTableau, diagonal_word,
                      enumerate_direct, indexed_stats, particle_count, validate_staircase,
                      weight, SYMBOL)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

DEFAULT_CAPS = {"enum": 6, "lazy": Pa.DEFAULT_LAZY_CAP, "poly": P.DEFAULT_POLY_CAP,
                "ltlt": L.DEFAULT_LTLT_CAP}

A, B, G, D = Label.ALPHA, Label.BETA, Label.GAMMA, Label.DELTA


class UsageError(Exception):
    """Bad arguments or malformed input; reported with exit status 2."""


class Verdict(Exception):
    """Raised by verifiers on the first counterexample."""


# -- caps ---------------------------------------------------------------------

class Caps:
    def __init__(self, override: int | None, unsafe: bool):
        self.override = override
        self.unsafe = unsafe

    def limit(self, kind: str) -> int | None:
        if self.override is None:
            return DEFAULT_CAPS[kind]
        if self.override > DEFAULT_CAPS[kind] and not self.unsafe:
            raise UsageError(f"--cap {self.override} exceeds the default {kind} cap "
                             f"{DEFAULT_CAPS[kind]}; add --unsafe to confirm")
        return self.override

    def check(self, n: int, kind: str, what: str) -> None:
        cap = self.limit(kind)
        if cap is not None and n > cap:
            raise CapExceeded(f"{what}: n={n} exceeds the {kind} cap {cap} "
                              f"(raise with --cap N --unsafe)")


def _caps_from(args: argparse.Namespace) -> Caps:
    override = args.cap
    if override is None and os.environ.get("STAIRCASE_CAP"):
        try:
            override = int(os.environ["STAIRCASE_CAP"])
        except ValueError:
            raise UsageError("STAIRCASE_CAP must be an integer") from None
    unsafe = args.unsafe or os.environ.get("STAIRCASE_UNSAFE") == "1"
    return Caps(override, unsafe)


# -- families -----------------------------------------------------------------

FAMILIES: dict[str, dict] = {
    "all": {},
    "gamma-free": {"labels": (A, B, D)},
    "delta-free-qfree": {"labels": (A, B, G), "q_free": True},
    "t0": {"labels": (A, B, G), "q_free": True, "diagonal": (B, G)},
    "no-gamma-delta-qfree": {"labels": (A, B), "q_free": True},
}


def family_tableaux(family: str, n: int) -> Iterator[StaircaseTableau]:
    return enumerate_direct(n, cap=None, **FAMILIES[family])


def count_family(family: str, n: int) -> int:
    if family == "all":
        return 1 if n == 0 else sum(1 for _ in L.enumerate_ltlt(n + 1, cap=None))
    return sum(1 for _ in family_tableaux(family, n))


# -- input parsing ------------------------------------------------------------

def read_object(path: str):
    """Parse a tableau, LTLT or path from a file (``-`` for stdin)."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    stripped = text.strip()
    try:
        if stripped.startswith("{"):
            rec = json.loads(stripped)
            if "shape" in rec:
                return L.Ltlt.from_record(rec)
            if "steps" in rec:
                return _path(rec["steps"])
            return StaircaseTableau.from_record(rec)
        if stripped == "" or set(stripped) <= set("UDH"):
            return _path(stripped)
        return StaircaseTableau.from_text(stripped)
    except (ShapeError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed input in {path}: {exc}") from None


def _path(steps: str) -> str:
    if not set(steps) <= set("UDH"):
        raise UsageError(f"path contains letters other than U, D, H: {steps!r}")
    return steps


def _require(obj, kind: type, what: str):
    if not isinstance(obj, kind):
        raise UsageError(f"{what} expects a {kind.__name__ if kind is not str else 'path'}")
    return obj


def _valid_tableau(st: StaircaseTableau) -> StaircaseTableau:
    rep = validate_staircase(st)
    if not rep:
        v = rep.violations[0]
        raise UsageError(f"invalid tableau: rule {v.rule} at {v.cell}")
    return st


def _path_record(p: str) -> dict:
    return {"n": Pa.path_size(p), "steps": p}


def _tree_record(v: L.TreeNode) -> dict:
    out = {"label": SYMBOL[v.label], "position": list(v.position)}
    if not v.is_leaf:
        out["left"] = _tree_record(v.left)
        out["right"] = _tree_record(v.right)
    return out


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=False)


# -- verifiers ----------------------------------------------------------------

def _verify_product(n: int, caps: Caps) -> str:
    caps.check(n, "enum", "verify product")
    for m in range(n + 1):
        z = P.z_fugacity(m, cap=None).specialize({"y": 1, "q": 1})
        if z != P.product_formula(m):
            raise Verdict(f"n={m}: difference {(z - P.product_formula(m)).to_text()}")
    return f"product formula holds for n=0..{n}"


def _verify_recurrence(n: int, caps: Caps) -> str:
    caps.check(n, "enum", "verify recurrence")
    rec, enum = P.t_table_recurrence(n), P.t_table_enumerated(n, cap=None)
    bad = rec.first_difference(enum)
    if bad:
        raise Verdict(f"T{bad}: recurrence {rec[bad]}, enumeration {enum[bad]}")
    return f"recurrence equals enumeration for n<={n}"


def _verify_roots(n: int, caps: Caps) -> str:
    caps.check(n, "poly", "verify roots")
    table = P.t_table_recurrence(n)
    for m in range(1, n + 1):
        p = P.p_poly(m, table)
        got = P.count_roots_in(p, -1, 0)
        if got != m:
            raise Verdict(f"P_{m} = {list(p.coeffs)} has {got} roots in (-1,0)")
        if not P.log_concave(p):
            raise Verdict(f"P_{m} = {list(p.coeffs)} is not log-concave")
    return f"P_n has n roots in (-1,0) and is log-concave for n<={n}"


def _verify_diffid(n: int, caps: Caps) -> str:
    caps.check(n, "poly", "verify diffid")
    table = P.t_table_recurrence(n)
    for m in range(1, n + 1):
        if not P.differential_identity_check(m, table):
            raise Verdict(f"identity fails at n={m}: P_{m} = {list(table.rows[m])}")
    return f"differential identity holds for n=1..{n}"


def _verify_phi(n: int, caps: Caps) -> str:
    caps.check(n, "lazy", "verify phi")
    for m in range(n + 1):
        images = []
        for st in family_tableaux("delta-free-qfree", m):
            p = Pa.phi(st)
            if Pa.phi_inv(p) != st:
                raise Verdict(f"phi_inv(phi) fails on {st.to_json()}")
            bad = acceptance.dictionary_failure(st, p)
            if bad:
                raise Verdict(f"{st.to_json()} -> {p}: {bad}")
            images.append(p)
        lazy = list(Pa.enumerate_lazy(m, cap=None))
        if sorted(images, key=Pa.path_key) != lazy:
            missing = sorted(set(lazy) - set(images), key=Pa.path_key)
            raise Verdict(f"n={m}: image is not the lazy paths, e.g. missing "
                          f"{_dump(_path_record(missing[0])) if missing else 'a duplicate'}")
    return f"phi is a bijection onto lazy paths with the statistics dictionary, n<={n}"


def _verify_lambda(n: int, caps: Caps) -> str:
    caps.check(n, "enum", "verify lambda")
    for m in range(n + 1):
        for st in enumerate_direct(m, cap=None):
            lt = L.lambda_map(st)
            if not L.validate_ltlt(lt) or L.lambda_inv(lt) != st:
                raise Verdict(f"lambda round-trip fails on {st.to_json()}")
    return f"lambda and its inverse round-trip on all tableaux of size <={n}"


def _verify_insertion(n: int, caps: Caps) -> str:
    caps.check(n, "ltlt", "verify insertion")
    for m in range(1, n + 1):
        for t in L.enumerate_ltlt(m, cap=None):
            for e, b in L.insertion_choices(t):
                if L.uninsert(L.insert(t, e, b)) != (t, e, b):
                    raise Verdict(f"{t.to_json()} e={e} b={b}: uninsert(insert) differs")
            if m > 1 and L.insert(*L.uninsert(t)) != t:
                raise Verdict(f"{t.to_json()}: insert(uninsert) differs")
    return f"insert and uninsert are inverse on LTLTs of size <={n}"


def _verify_frobenius(n: int, caps: Caps) -> str:
    caps.check(n, "lazy", "verify frobenius")
    seq = []
    for m in range(n + 1):
        paths = sum(1 for p in Pa.enumerate_lazy(m, cap=None) if Pa.is_odd_frobenius(p))
        tabs = count_family("t0", m)
        if paths != tabs:
            raise Verdict(f"n={m}: {tabs} t=0 tableaux, {paths} odd-Frobenius paths")
        seq.append(paths)
        if m >= 3 and seq[m] != 3 * seq[m - 1] - seq[m - 2]:
            raise Verdict(f"S({m})={seq[m]} breaks S(n)=3S(n-1)-S(n-2)")
    return f"t=0 counts equal odd-Frobenius counts {seq}"


def _verify_narayana(n: int, caps: Caps) -> str:
    caps.check(n, "lazy", "verify narayana")
    for m in range(n + 1):
        refined = Counter(t.diagonal().count(B) for t in family_tableaux("no-gamma-delta-qfree", m))
        brute = Counter(Pa.peaks(p) - 1 for p in Pa.enumerate_dyck(m + 1))
        if refined != brute:
            raise Verdict(f"n={m}: {sorted(refined.items())} vs {sorted(brute.items())}")
    return f"beta border-edge refinement matches Dyck paths by peaks for n<={n}"


VERIFIERS: dict[str, Callable[[int, Caps], str]] = {
    "product": _verify_product, "recurrence": _verify_recurrence, "roots": _verify_roots,
    "diffid": _verify_diffid, "phi": _verify_phi, "lambda": _verify_lambda,
    "insertion": _verify_insertion, "frobenius": _verify_frobenius,
    "narayana": _verify_narayana,
}


# -- reference sequences ------------------------------------------------------

def _lazy_count(n: int) -> int:
    return sum(1 for _ in Pa.enumerate_lazy(n, cap=None))


def _frobenius_count(n: int) -> int:
    return sum(1 for p in Pa.enumerate_lazy(n, cap=None) if Pa.is_odd_frobenius(p))


def _catalan_family_count(n: int) -> int:
    return count_family("no-gamma-delta-qfree", n)


GENERATORS: dict[str, tuple[Callable[[int], int], str]] = {
    "lazy-paths": (_lazy_count, "lazy"),
    "odd-frobenius": (_frobenius_count, "lazy"),
    "no-gamma-delta-qfree": (_catalan_family_count, "lazy"),
}


def reference_files() -> list[Path]:
    return sorted(Path(str(resources.files("staircase") / "data")).glob("*.json"))


def load_reference(path: str) -> dict:
    p = Path(path)
    if not p.exists():
        bundled = Path(str(resources.files("staircase") / "data")) / path
        p = bundled if bundled.exists() else bundled.with_suffix(".json")
    try:
        ref = json.loads(p.read_text())
        ref["terms"] = [int(x) for x in ref["terms"]]
        if ref["generator"] not in GENERATORS:
            raise KeyError(f"unknown generator {ref['generator']!r}")
        return ref
    except OSError:
        raise UsageError(f"cannot read reference file {path}") from None
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed reference file {path}: {exc}") from None


# -- subcommands --------------------------------------------------------------

def cmd_count(args, caps: Caps, out) -> int:
    caps.check(args.n, "enum", "count")
    out.write(f"{count_family(args.family, args.n)}\n")
    return EXIT_OK


def cmd_enumerate(args, caps: Caps, out) -> int:
    caps.check(args.n, "enum", "enumerate")
    first = True
    for st in family_tableaux(args.family, args.n):
        if args.format == "record":
            out.write(st.to_json() + "\n")
        else:
            out.write(("" if first else "\n") + st.to_text() + "\n")
        first = False
    return EXIT_OK


def _parse_assignment(items: Sequence[str]) -> dict[str, Fraction]:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--set expects var=value, got {item!r}")
        try:
            MultiPoly.var(name)
            out[name] = Fraction(value)
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad assignment {item!r}: {exc}") from None
    return out


def cmd_zfun(args, caps: Caps, out) -> int:
    caps.check(args.n, "enum", "zfun")
    assignment = _parse_assignment(args.set or [])
    z = P.z_fugacity(args.n, cap=None).specialize(assignment)
    out.write((z.to_json() if args.format == "record" else z.to_text()) + "\n")
    return EXIT_OK


def cmd_verify(args, caps: Caps, out) -> int:
    try:
        msg = VERIFIERS[args.what](args.n, caps)
    except Verdict as v:
        out.write(f"fail: {args.what}: {v}\n")
        return EXIT_FAIL
    out.write(f"pass: {msg}\n")
    return EXIT_OK


def cmd_map(args, caps: Caps, out) -> int:
    obj = read_object(args.input)
    try:
        if args.how == "lambda":
            res = L.lambda_map(_valid_tableau(_require(obj, StaircaseTableau, "lambda"))).to_record()
        elif args.how == "lambda-inv":
            t = _require(obj, L.Ltlt, "lambda-inv")
            rep = L.validate_ltlt(t)
            if not rep:
                raise UsageError(f"invalid LTLT: rule {rep.violations[0].rule}")
            res = L.lambda_inv(t).to_record()
        elif args.how == "phi":
            res = _path_record(Pa.phi(_valid_tableau(_require(obj, StaircaseTableau, "phi"))))
        elif args.how == "phi-inv":
            p = _require(obj, str, "phi-inv")
            if not Pa.is_lazy(p):
                raise UsageError(f"not a lazy path: {p!r}")
            res = Pa.phi_inv(p).to_record()
        else:
            if isinstance(obj, StaircaseTableau):
                obj = L.lambda_map(_valid_tableau(obj))
            tree = L.underlying_tree(_require(obj, L.Ltlt, "tree"))
            res = {"root": _tree_record(tree.root), "crossings": sorted(map(list, tree.crossings))}
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(_dump(res) + "\n")
    return EXIT_OK


def cmd_stats(args, caps: Caps, out) -> int:
    obj = read_object(args.input)
    if isinstance(obj, StaircaseTableau):
        st = _valid_tableau(obj)
        rows_bd, cols_ag = indexed_stats(st)
        rec = {"kind": "tableau", "n": st.n, "weight": weight(st)._asdict(),
               "particles": particle_count(st),
               "diagonal": "".join(SYMBOL[x] for x in diagonal_word(st)),
               "rows_indexed_beta_delta": rows_bd, "cols_indexed_alpha_gamma": cols_ag}
    elif isinstance(obj, str):
        cls = Pa.classify(obj)
        rec = {"kind": "path", "n": Pa.path_size(obj), "class": cls.value}
        if Pa.is_lazy(obj):
            rec.update(Pa.stats(obj)._asdict())
            rec["odd_frobenius"] = Pa.is_odd_frobenius(obj)
    else:
        rec = {"kind": "ltlt", "size": obj.size, "shape": list(obj.shape),
               "special_box": list(L.special_box(obj)), "rank": L.rank(obj),
               "crossings": len(L.crossings(obj))}
    out.write(_dump(rec) + "\n")
    return EXIT_OK


def cmd_oeis(args, caps: Caps, out) -> int:
    if args.freeze:
        fn, kind = GENERATORS[args.freeze]
        caps.check(args.n, kind, "oeis --freeze")
        ref = {"id": args.id or "", "generator": args.freeze, "index": "n = 0, 1, ...",
               "oeis_offset": args.offset,
               "command": f"staircase oeis --freeze {args.freeze} --n {args.n}"
                          + (f" --id {args.id}" if args.id else "")
                          + (f" --offset {args.offset}" if args.offset else ""),
               "note": "terms produced by this package's brute-force oracle; "
                       "the id is a tag only",
               "terms": [str(fn(n)) for n in range(args.n + 1)]}
        out.write(json.dumps(ref, indent=2) + "\n")
        return EXIT_OK
    if not args.check:
        raise UsageError("oeis needs --check FILE or --freeze GENERATOR")
    ref = load_reference(args.check)
    fn, kind = GENERATORS[ref["generator"]]
    n = len(ref["terms"]) - 1 if args.n is None else args.n
    if n >= len(ref["terms"]):
        raise UsageError(f"reference file holds terms up to n={len(ref['terms']) - 1}")
    caps.check(n, kind, "oeis --check")
    for k in range(n + 1):
        got = fn(k)
        if got != ref["terms"][k]:
            out.write(f"fail: {ref['id']} n={k}: computed {got}, reference {ref['terms'][k]}\n")
            return EXIT_FAIL
    out.write(f"pass: {ref['id']} ({ref['generator']}) matches for n=0..{n}\n")
    return EXIT_OK


def cmd_selftest(args, caps: Caps, out) -> int:
    results = acceptance.run_all(lambda r: (out.write(r.line() + "\n"), out.flush()))
    failed = [r for r in results if not r.ok]
    out.write(f"{len(results) - len(failed)}/{len(results)} criteria pass\n")
    return EXIT_FAIL if failed else EXIT_OK


# -- argument parsing ---------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, help="override the size cap (needs --unsafe to raise it)")
    common.add_argument("--unsafe", action="store_true", help="allow caps above the defaults")

    p = _Parser(prog="staircase", description="Staircase tableaux, LTLTs and lazy paths.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    sp = add("count", cmd_count, "count the tableaux of a family")
    sp.add_argument("--family", choices=sorted(FAMILIES), default="all")
    sp.add_argument("--n", type=int, required=True)

    sp = add("enumerate", cmd_enumerate, "list tableaux in canonical order")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--family", choices=sorted(FAMILIES), default="all")
    sp.add_argument("--format", choices=("text", "record"), default="text")

    sp = add("zfun", cmd_zfun, "fugacity partition function")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--set", action="append", metavar="VAR=VALUE")
    sp.add_argument("--format", choices=("text", "record"), default="text")

    sp = add("verify", cmd_verify, "check an identity over a size range")
    sp.add_argument("what", choices=sorted(VERIFIERS))
    sp.add_argument("--n", type=int, required=True)

    sp = add("map", cmd_map, "apply a bijection to an object read from a file")
    sp.add_argument("how", choices=("lambda", "lambda-inv", "phi", "phi-inv", "tree"))
    sp.add_argument("--in", dest="input", required=True)

    sp = add("stats", cmd_stats, "statistics of a tableau, LTLT or path")
    sp.add_argument("--in", dest="input", required=True)

    sp = add("oeis", cmd_oeis, "compare against or produce a reference sequence file")
    sp.add_argument("--check", metavar="FILE", help="reference file path or bundled id")
    sp.add_argument("--n", type=int,
                    help="largest index to generate or compare (default: all stored terms)")
    sp.add_argument("--freeze", choices=sorted(GENERATORS), help="write a new reference file")
    sp.add_argument("--id", help="sequence tag recorded in a frozen file")
    sp.add_argument("--offset", type=int, default=0, help="index of the first term")

    add("selftest", cmd_selftest, "run the acceptance suite")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "n", None) is not None and args.n < 0:
            raise UsageError("--n must be non-negative")
        return args.func(args, _caps_from(args), out)
    except UsageError as exc:
        sys.stderr.write(f"staircase: error: {exc}\n")
        return EXIT_USAGE
    except CapExceeded as exc:
        sys.stderr.write(f"staircase: cap exceeded: {exc}\n")
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
