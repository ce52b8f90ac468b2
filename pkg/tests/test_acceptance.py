"""Acceptance criteria 1-10, each at exact equality with a wall-clock budget.

Every test prints one line ``criterion N: PASS|FAIL (seconds, budget)``.
"""

import time
from fractions import Fraction
from math import factorial

import pytest

from kfock.fock import KRingData, heisenberg_report
from kfock.oracles import double_coset_brute, string_chain
from kfock.point import PointTheory, corr_two_ones
from kfock.point.hierarchy import check_compatibility, check_flows, check_topological
from kfock.point.identities import check_identity
from kfock.series import MultiSeries, TruncationPolicy, derive, nu
from kfock.suites import induced_characters_agree, suite_j_oracle
from kfock.symgroup import (
    ClassFunction,
    compositions,
    cyclic_trace,
    decompose,
    double_coset_total,
    double_cosets,
    frobenius_ch,
    p_n_classfn,
    partitions_of,
)


def _run(capsys, number, budget, body):
    start = time.perf_counter()
    details = body()
    elapsed = time.perf_counter() - start
    ok = all(details.values()) and elapsed < budget
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"\ncriterion {number}: {status} ({elapsed:.1f}s, budget {budget}s)")
    failed = [k for k, v in details.items() if not v]
    assert not failed, f"criterion {number} failed: {failed}"
    assert elapsed < budget, f"criterion {number} took {elapsed:.1f}s > {budget}s"


def test_criterion_01_heisenberg(capsys):
    def body():
        pol = TruncationPolicy(R=6, D=6, K_t=0, T=0)
        out = {}
        for name, ring in (("point", KRingData.point()), ("rank2", KRingData(2, ((1, 1), (1, 2))))):
            checked, failures = heisenberg_report(ring, pol)
            out[name] = not failures and checked == 36 * ring.N ** 2
        return out

    _run(capsys, 1, 10, body)


def test_criterion_02_cyclic_trace(capsys):
    def body():
        out = {}
        for n in range(1, 8):
            pol = TruncationPolicy(R=n, D=n, K_t=0, T=0)
            for lam in partitions_of(n):
                chi = ClassFunction.irreducible(lam)
                ch = frobenius_ch(chi, pol)
                for r in range(1, n + 1):
                    out[(lam, r)] = derive(ch, nu(r)).scale(r) == frobenius_ch(cyclic_trace(chi, r), pol)
        return out

    _run(capsys, 2, 30, body)


def test_criterion_03_p_n(capsys):
    def body():
        out = {}
        for n in range(1, 9):
            pol = TruncationPolicy(R=n, D=n, K_t=0, T=0)
            out[("ch", n)] = frobenius_ch(p_n_classfn(n), pol) == MultiSeries.var(nu(n), pol)
            out[("int", n)] = all(Fraction(c).denominator == 1
                                  for c in decompose(p_n_classfn(n)).values())
        return out

    _run(capsys, 3, 10, body)


def test_criterion_04_double_cosets(capsys):
    def body():
        out = {}
        for n in range(1, 7):
            comps = list(compositions(n))
            for lam in comps:
                for mu in comps:
                    dc = double_cosets(lam, mu)
                    count, sizes = double_coset_brute(lam, mu)
                    rows_ok = all(tuple(sum(r) for r in g) == lam
                                  and tuple(sum(col) for col in zip(*g)) == mu for g, _ in dc)
                    out[(lam, mu)] = (rows_ok and count == len(dc)
                                      and sizes == sorted(s for _, s in dc)
                                      and sum(sizes) == factorial(n))
        for n in range(1, 11):
            parts = partitions_of(n)
            out[("total", n)] = all(double_coset_total(a, b) == factorial(n) for a in parts for b in parts)
        return out

    _run(capsys, 4, 60, body)


def test_criterion_05_induced_characters(capsys):
    _run(capsys, 5, 60, lambda: {n: induced_characters_agree(n) for n in range(1, 7)})


def test_criterion_06_j_oracle(capsys):
    def body():
        P = PointTheory(TruncationPolicy(R=6, D=6, K_t=0, T=0))
        return {"j-oracle": suite_j_oracle(P, max_n=6, qorder=8)["pass"]}

    _run(capsys, 6, 60, body)


def test_criterion_07_smatrix(capsys):
    def body():
        P = PointTheory(TruncationPolicy(R=6, D=6, K_t=4, T=3))
        return {w: check_identity(P, w)["pass"] for w in ("smatrix_a", "smatrix_b", "smatrix_c")}

    _run(capsys, 7, 30, body)


def test_criterion_08_correlator_chain(capsys):
    def body():
        P = PointTheory(TruncationPolicy(R=6, D=6, K_t=4, T=3))
        thm = check_identity(P, "thm13")
        inst = thm["instances"]
        out = {
            "symmetry": all(i["pass"] for i in inst if i["name"].startswith("symmetry")),
            "n=1": all(i["pass"] for i in inst if i["name"].startswith("n=1")),
            "a+b+1": all(i["pass"] for i in inst if i["name"].startswith("<L^")),
        }
        string = check_identity(P, "string", max_n=3)
        out["padding"] = all(i["pass"] for i in string["instances"] if i["name"].startswith("pad"))
        out["string_chain"] = all(
            string_chain(P, x, m) == corr_two_ones(P, [x] + [Fraction(0)] * (m - 3))
            for x in (Fraction(1, 2), Fraction(1, 3)) for m in range(3, 7))
        return out

    _run(capsys, 8, 120, body)


def test_criterion_09_topological_solution(capsys):
    def body():
        P = PointTheory(TruncationPolicy(R=6, D=6, K_t=4, T=3))
        out = {f"flow {n}": ok for n, ok in check_flows(P, 3).items()}
        out.update({f"compat {k}": ok for k, ok in check_compatibility(P, 3).items()})
        out.update(check_topological(P))
        return out

    _run(capsys, 9, 120, body)


def test_criterion_10_identities(capsys):
    def body():
        P = PointTheory(TruncationPolicy(R=6, D=6, K_t=4, T=3))
        return {w: check_identity(P, w)["pass"] for w in ("string", "dilaton", "unstable_qf", "reconstr")}

    _run(capsys, 10, 120, body)
