"""Named verification suites shared by the CLI and the acceptance tests.

Every suite returns ``{"suite": name, "instances": [{"name", "pass"}], "pass": bool}``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from kfock.fock import KRingData, heisenberg_report
from kfock.oracles import (
    double_coset_brute,
    induced_char_brute,
    j_oracle,
    monomials_fixed,
    permutation_of_type,
    string_chain,
    trivial_rep_genfun,
)
from kfock.point.correlators import corr_two_ones, zero_point
from kfock.point.identities import check_identity
from kfock.qfield import taylor_coeffs
from kfock.series import MultiSeries, TruncationPolicy, derive, nu
from kfock.symgroup import (
    ClassFunction,
    compositions,
    cyclic_trace,
    decompose,
    double_cosets,
    frobenius_ch,
    induce_product,
    p_n_classfn,
    partitions_of,
    sym_power_char,
)

RANK2_PAIRING = ((1, 1), (1, 2))


def _report(name, instances):
    return {"suite": name, "instances": instances,
            "pass": all(i["pass"] for i in instances)}


def _inst(name, ok):
    return {"name": name, "pass": bool(ok)}


# ---------------------------------------------------------------- Fock space and S_n


def suite_heisenberg(P, max_n=6):
    """Commutators for m, l <= max_n on the point ring and a rank-2 ring."""
    pol = TruncationPolicy(R=max_n, D=max_n, K_t=0, T=0)
    out = []
    for label, ring in (("point", KRingData.point()), ("rank2", KRingData(2, RANK2_PAIRING))):
        checked, failures = heisenberg_report(ring, pol)
        out.append(_inst(f"{label}: {checked} index tuples", not failures))
    return _report("heisenberg", out)


def suite_sym_trace(P, max_n=6):
    """Monomial fixed-point counts, the cyclic-trace derivative rule, and p_n."""
    out = []
    for n in range(1, max_n + 1):
        ok = all(monomials_fixed(n, k, lam) == sym_power_char(n, k)(lam)
                 for k in range(max_n + 1) for lam in partitions_of(n))
        out.append(_inst(f"monomials fixed, n={n}", ok))
    for n in range(1, max_n + 1):
        pol = TruncationPolicy(R=n, D=n, K_t=0, T=0)
        ok = True
        for lam in partitions_of(n):
            chi = ClassFunction.irreducible(lam)
            ch = frobenius_ch(chi, pol)
            for r in range(1, n + 1):
                lhs = derive(ch, nu(r)).scale(r)
                rhs = frobenius_ch(cyclic_trace(chi, r), pol)
                ok = ok and lhs == rhs
        out.append(_inst(f"r d/dnu_r ch = ch cyclic trace, n={n}", ok))
    for n in range(1, max_n + 1):
        ch = frobenius_ch(p_n_classfn(n))
        dec = decompose(p_n_classfn(n))
        ok = ch == MultiSeries.var(nu(n), ch.policy) and all(
            Fraction(c).denominator == 1 for c in dec.values())
        out.append(_inst(f"ch(p_n) = nu_n, n={n}", ok))
    return _report("sym-trace", out)


def suite_cosets(P, max_n=6):
    """Double cosets against S_n enumeration, and induced characters against coset sums."""
    out = []
    for n in range(1, max_n + 1):
        ok = True
        for lam in compositions(n):
            for mu in compositions(n):
                count, sizes = double_coset_brute(lam, mu)
                dc = double_cosets(lam, mu)
                ok = ok and count == len(dc) and sizes == sorted(s for _, s in dc)
        out.append(_inst(f"double cosets, n={n}", ok))
    for n in range(1, max_n + 1):
        out.append(_inst(f"induced characters, n={n}", induced_characters_agree(n)))
    return _report("cosets", out)


def induced_characters_agree(n):
    """Coset-sum traces match iterated induce_product on every Young subgroup of S_n."""
    classes = partitions_of(n)
    for young in compositions(n):
        irreps = [[ClassFunction.irreducible(l) for l in partitions_of(b)] for b in young]
        for factors in product(*irreps):
            induced = factors[0]
            for f in factors[1:]:
                induced = induce_product(induced, f)
            for lam in classes:
                if induced_char_brute(young, list(factors), permutation_of_type(lam)) != induced(lam):
                    return False
    return True


# ---------------------------------------------------------------- the point


def suite_j_oracle(P, max_n=None, qorder=8):
    """J against the Sym^k(V_n) series at q-order <= qorder and weight <= max_n."""
    max_n = P.policy.D if max_n is None else max_n
    jo = j_oracle(P, nmax=max_n, kmax=qorder)
    J = P.J.truncate_weight(max_n)
    bad = 0
    monos = set(J.terms) | set(jo.terms)
    for m in monos:
        if taylor_coeffs(J.coeff(m), qorder) != taylor_coeffs(jo.coeff(m), qorder):
            bad += 1
    return _report("j-oracle", [_inst(f"{len(monos)} monomials to q^{qorder}", bad == 0)])


def suite_string_chain(P, max_points=6, samples=(Fraction(1, 2), Fraction(1, 3))):
    """string_chain against corr_two_ones with zero padding."""
    out = []
    for q in samples:
        for m in range(3, max_points + 1):
            lhs = string_chain(P, q, m)
            rhs = corr_two_ones(P, [q] + [Fraction(0)] * (m - 3))
            out.append(_inst(f"m={m}, q={q}", lhs == rhs))
    out.append(_inst("sum_{k>=3} h_k = zero-point", trivial_rep_genfun(P, 3) == zero_point(P)))
    return _report("string-chain", out)


def _identity_suite(name, families):
    def run(P, max_n=None):
        out = []
        for fam in families:
            rep = check_identity(P, fam)
            out.extend(_inst(f"{fam}: {i['name']}", i["pass"]) for i in rep["instances"])
        return _report(name, out)

    return run


SUITES = {
    "string": _identity_suite("string", ("string", "unstable_qf")),
    "dilaton": _identity_suite("dilaton", ("dilaton", "wdvv")),
    "smatrix": _identity_suite("smatrix", ("smatrix_a", "smatrix_b", "smatrix_c", "jfun")),
    "thm13": _identity_suite("thm13", ("thm13",)),
    "hierarchy": _identity_suite("hierarchy", ("hierarchy", "reconstr")),
    "j-oracle": suite_j_oracle,
    "cosets": suite_cosets,
    "heisenberg": suite_heisenberg,
    "sym-trace": suite_sym_trace,
    "string-chain": suite_string_chain,
}


def run_suite(P, name, max_n=6):
    """Run one suite, or every suite for ``name == "all"``."""
    if name == "all":
        reports = [run_suite(P, n, max_n) for n in SUITES]
        return {"suite": "all", "instances": [
            _inst(f"{r['suite']}: {i['name']}", i["pass"]) for r in reports for i in r["instances"]],
            "pass": all(r["pass"] for r in reports)}
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    if name == "j-oracle":
        return fn(P, max_n=min(max_n, P.policy.D, P.policy.R))
    if name == "string-chain":
        return fn(P)
    return fn(P, max_n=max_n)
