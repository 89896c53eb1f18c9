import io
import json

import pytest

from staircase.cli import EXIT_CAP, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, reference_files
from staircase.ltlt import Ltlt, lambda_map
from staircase.tableau import StaircaseTableau, enumerate_direct


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("n,count", [(0, 1), (1, 4), (3, 384)])
def test_count_all(n, count):
    assert run("count", "--family", "all", "--n", str(n)) == (EXIT_OK, f"{count}\n")


@pytest.mark.parametrize("family,counts", [
    ("gamma-free", [1, 3, 15, 105]),
    ("delta-free-qfree", [1, 3, 11, 43]),
    ("t0", [1, 2, 5, 13]),
    ("no-gamma-delta-qfree", [1, 2, 5, 14]),
])
def test_count_families(family, counts):
    for n, c in enumerate(counts):
        assert run("count", "--family", family, "--n", str(n)) == (EXIT_OK, f"{c}\n")


def test_usage_errors():
    assert run("count", "--family", "nope", "--n", "2")[0] == EXIT_USAGE
    assert run("count", "--n", "-1")[0] == EXIT_USAGE
    assert run()[0] == EXIT_USAGE
    assert run("zfun", "--n", "1", "--set", "z=1")[0] == EXIT_USAGE
    assert run("zfun", "--n", "1", "--set", "y")[0] == EXIT_USAGE


def test_caps(monkeypatch):
    assert run("count", "--n", "7")[0] == EXIT_CAP
    assert run("count", "--n", "7", "--cap", "7")[0] == EXIT_USAGE
    assert run("verify", "roots", "--n", "31")[0] == EXIT_CAP
    assert run("count", "--family", "t0", "--n", "7", "--cap", "7", "--unsafe") == (EXIT_OK, "610\n")
    monkeypatch.setenv("STAIRCASE_CAP", "8")
    monkeypatch.setenv("STAIRCASE_UNSAFE", "1")
    assert run("count", "--family", "t0", "--n", "8") == (EXIT_OK, "1597\n")
    monkeypatch.setenv("STAIRCASE_UNSAFE", "0")
    assert run("count", "--family", "t0", "--n", "8")[0] == EXIT_USAGE


def test_enumerate_formats():
    code, text = run("enumerate", "--n", "2")
    blocks = text.strip().split("\n\n")
    assert code == EXIT_OK and len(blocks) == 32
    assert [StaircaseTableau.from_text(b) for b in blocks] == list(enumerate_direct(2))
    code, recs = run("enumerate", "--n", "2", "--format", "record")
    lines = recs.splitlines()
    assert [StaircaseTableau.from_record(json.loads(x)) for x in lines] == list(enumerate_direct(2))


def test_output_is_deterministic():
    assert run("enumerate", "--n", "3", "--format", "record") == run("enumerate", "--n", "3",
                                                                     "--format", "record")
    assert run("zfun", "--n", "3") == run("zfun", "--n", "3")


def test_zfun():
    assert run("zfun", "--n", "1") == (EXIT_OK, "alpha*y + delta*y + beta + gamma\n")
    assert run("zfun", "--n", "1", "--set", "y=1") == (EXIT_OK, "alpha + beta + gamma + delta\n")
    code, rec = run("zfun", "--n", "2", "--format", "record")
    assert code == EXIT_OK and json.loads(rec)["variables"][-1] == "y"
    code, text = run("zfun", "--n", "2", "--set", "alpha=1", "--set", "beta=1", "--set", "gamma=0",
                     "--set", "delta=1", "--set", "q=1")
    assert text == "7*y^2 + 7*y + 1\n"


@pytest.mark.parametrize("what,n", [("product", 4), ("recurrence", 4), ("roots", 12),
                                    ("diffid", 12), ("phi", 5), ("lambda", 3),
                                    ("insertion", 4), ("frobenius", 6), ("narayana", 5)])
def test_verify_passes(what, n):
    code, text = run("verify", what, "--n", str(n))
    assert code == EXIT_OK and text.startswith("pass: ")


def test_verify_reports_counterexample(monkeypatch):
    import staircase.partition as P

    def broken(N, coefficients=P.standard_coefficients):
        return original(N, lambda n, k: (k + 2, n + 1, n - k + 1))

    original = P.t_table_recurrence
    monkeypatch.setattr(P, "t_table_recurrence", broken)
    code, text = run("verify", "recurrence", "--n", "3")
    assert code == EXIT_FAIL and text.startswith("fail: recurrence: T(1, 0)")


def _write(tmp_path, name, content):
    p = tmp_path / name
    p.write_text(content)
    return str(p)


def test_map_and_stats(tmp_path):
    tab = _write(tmp_path, "t.txt", ".d\nb\n")
    code, out = run("map", "lambda", "--in", tab)
    lt = Ltlt.from_record(json.loads(out))
    assert code == EXIT_OK and lt == lambda_map(StaircaseTableau.from_text(".d\nb"))
    rec = _write(tmp_path, "l.json", out)
    assert json.loads(run("map", "lambda-inv", "--in", rec)[1]) == {"n": 2, "rows": [[None, "d"], ["b"]]}
    code, tree = run("map", "tree", "--in", rec)
    assert code == EXIT_OK and json.loads(tree)["crossings"] == []
    stats = json.loads(run("stats", "--in", tab)[1])
    assert stats["weight"] == {"alpha": 0, "beta": 1, "gamma": 0, "delta": 1, "q": 1}
    assert stats["particles"] == 1 and stats["diagonal"] == "db"
    assert json.loads(run("stats", "--in", rec)[1])["kind"] == "ltlt"


def test_map_phi(tmp_path):
    tab = _write(tmp_path, "t.txt", "g\n")
    assert json.loads(run("map", "phi", "--in", tab)[1]) == {"n": 1, "steps": "DU"}
    path = _write(tmp_path, "p.txt", "UDDUH\n")
    code, out = run("map", "phi-inv", "--in", path)
    back = _write(tmp_path, "back.json", out)
    assert json.loads(run("map", "phi", "--in", back)[1])["steps"] == "UDDUH"
    stats = json.loads(run("stats", "--in", path)[1])
    assert (stats["D"], stats["M"], stats["A"], stats["H"], stats["F"], stats["N"]) == (2, 2, 1, 1, 3, 1)


def test_map_errors(tmp_path):
    bad = _write(tmp_path, "bad.txt", "ab\nbb\n")
    assert run("map", "lambda", "--in", bad)[0] == EXIT_USAGE
    invalid = _write(tmp_path, "inv.txt", "a.\nb\n")
    assert run("map", "lambda", "--in", invalid)[0] == EXIT_USAGE
    delta = _write(tmp_path, "d.txt", "d\n")
    assert run("map", "phi", "--in", delta)[0] == EXIT_USAGE
    assert run("map", "phi-inv", "--in", _write(tmp_path, "u.txt", "UHD"))[0] == EXIT_USAGE
    assert run("map", "lambda", "--in", str(tmp_path / "missing"))[0] == EXIT_USAGE
    assert run("map", "lambda", "--in", _write(tmp_path, "j.json", "{oops"))[0] == EXIT_USAGE


def test_reference_files_are_bundled():
    names = {p.stem for p in reference_files()}
    assert names == {"A026671", "A001519", "A000108"}
    for p in reference_files():
        ref = json.loads(p.read_text())
        assert ref["command"].startswith("staircase oeis --freeze")


@pytest.mark.parametrize("ref,n", [("A026671", 7), ("A001519", 7), ("A000108", 5)])
def test_oeis_check(ref, n):
    code, text = run("oeis", "--check", ref, "--n", str(n))
    assert code == EXIT_OK and text.startswith(f"pass: {ref}")


def test_oeis_check_detects_tampering(tmp_path):
    ref = json.loads(next(p for p in reference_files() if p.stem == "A026671").read_text())
    ref["terms"][3] = "44"
    path = _write(tmp_path, "ref.json", json.dumps(ref))
    code, text = run("oeis", "--check", path, "--n", "5")
    assert code == EXIT_FAIL and "n=3" in text
    assert run("oeis", "--check", _write(tmp_path, "x.json", "{}"))[0] == EXIT_USAGE


def test_oeis_freeze_round_trip(tmp_path):
    code, text = run("oeis", "--freeze", "odd-frobenius", "--n", "6", "--id", "A001519")
    path = _write(tmp_path, "f.json", text)
    assert run("oeis", "--check", path)[0] == EXIT_OK
