import io
import json
from fractions import Fraction

import pytest

from kfock.cli import run
from kfock.point import PointTheory
from kfock.serialize import (
    document,
    dumps,
    fraction_str,
    loads_series,
    parse_fraction,
    validate_document,
)
from kfock.series import MultiSeries, TruncationPolicy, exp_series, nu, tv


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    text = out.getvalue()
    doc = json.loads(text) if text else None
    if doc is not None:
        validate_document(doc)
    return code, doc, text, err.getvalue()


def test_fraction_strings():
    assert fraction_str(Fraction(-3, 6)) == "-1/2"
    assert fraction_str(4) == "4"
    assert parse_fraction("2/4") == Fraction(1, 2)
    for bad in ("0.5", "1e3", "x", "1/0"):
        with pytest.raises(ValueError):
            parse_fraction(bad)


def test_roundtrip():
    pol = TruncationPolicy(R=2, D=3, K_t=1, T=2)
    s = exp_series(MultiSeries.var(nu(1), pol) + MultiSeries.var(tv(1), pol).scale(Fraction(1, 3)))
    doc = document(s, meta={"x": 1})
    validate_document(doc)
    assert loads_series(dumps(doc)) == s


def test_qseries_needs_order():
    P = PointTheory(TruncationPolicy(R=1, D=1, K_t=0, T=0))
    with pytest.raises(ValueError):
        document(P.J)


def test_corr_example():
    code, doc, _, _ = call("corr", "--q", "1/2", "--weight", "0")
    assert code == 0
    assert doc["terms"] == [{"monomial": {}, "coeff": "2"}]


def test_corr_guard_exit_2():
    code, doc, _, err = call("corr", "--q", "1")
    assert code == 2 and doc is None and "q = 1" in err
    assert call("corr", "--q", "0.5")[0] == 2
    assert call("corr", "--q", "-1", "--weight", "3")[0] == 2
    assert call("nope")[0] == 2
    assert call("corr-poly", "--exps", "1,-2")[0] == 2


def test_corr_poly():
    code, doc, _, _ = call("corr-poly", "--exps", "2,3", "--weight", "2")
    assert code == 0
    assert doc["terms"][0] == {"monomial": {}, "coeff": "6"}


def test_jfun_and_smatrix():
    code, doc, _, _ = call("jfun", "--weight", "2", "--qorder", "2")
    assert code == 0
    terms = {json.dumps(t["monomial"], sort_keys=True): t["coeff"] for t in doc["terms"]}
    assert terms['{}'] == "1" and terms['{"q": 1}'] == "-1"
    assert terms['{"nu_2": 1, "q": 1}'] == "-1/2"
    code, doc, _, _ = call("smatrix", "--weight", "1", "--qorder", "1", "--exact")
    assert code == 0
    assert doc["meta"]["exact"][1] == {"monomial": {"nu_1": 1}, "coeff": {"num": ["1"], "den": ["-1", "1"]}}


def test_hierarchy_check():
    code, doc, _, _ = call("hierarchy", "--flows", "2", "--tdeg", "2", "--weight", "3", "--check")
    assert code == 0 and doc["meta"]["pass"] is True
    assert call("hierarchy", "--weight", "-1")[0] == 2


def test_verify_suites():
    code, doc, _, _ = call("verify", "--suite", "string-chain", "--weight", "4")
    assert code == 0 and doc["meta"]["pass"] is True and doc["terms"] == []
    code, doc, _, _ = call("verify", "--suite", "all", "--max-n", "5")
    assert code == 0 and doc["meta"]["pass"] is True


def test_verify_failure_exit_1(monkeypatch):
    import kfock.cli as cli

    monkeypatch.setattr(cli, "run_suite", lambda P, name, max_n: {"pass": False, "instances": []})
    assert call("verify", "--suite", "string")[0] == 1


def test_char_and_cosets():
    code, doc, _, _ = call("char", "--n", "3", "--table")
    assert code == 0
    assert doc["meta"]["table"]["2-1"] == [-1, 0, 2]
    code, doc, _, _ = call("cosets", "--lambda", "2,1", "--mu", "2,1")
    assert code == 0
    assert sorted(c["size"] for c in doc["meta"]["cosets"]) == [2, 4]
    assert call("cosets", "--lambda", "2", "--mu", "1")[0] == 2


def test_fock_demo():
    code, doc, _, _ = call("fock", "--demo")
    assert code == 0
    assert doc["meta"]["checked"] == 36 and doc["meta"]["failures"] == []


def test_deterministic_output():
    a = call("corr", "--q", "1/2", "--q", "1/3", "--weight", "4")[2]
    assert a == call("corr", "--q", "1/2", "--q", "1/3", "--weight", "4", "--json")[2]
    # permuting the q's changes only the echoed meta, not the series
    b = call("corr", "--q", "1/3", "--q", "1/2", "--weight", "4")[1]
    assert json.loads(a)["terms"] == b["terms"]
