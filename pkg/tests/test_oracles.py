from fractions import Fraction

import pytest

from kfock.oracles import (
    OracleBudgetError,
    cycle_type,
    double_coset_brute,
    induced_char_brute,
    j_oracle,
    monomials_fixed,
    permutation_of_type,
    string_chain,
    sym_vn_classfn,
    trivial_rep_genfun,
)
from kfock.point import corr_two_ones, zero_point
from kfock.qfield import QRat, taylor_coeffs
from kfock.series import MultiSeries, nu
from kfock.suites import induced_characters_agree
from kfock.symgroup import (
    ClassFunction,
    compositions,
    double_cosets,
    induce_product,
    partitions_of,
    sym_power_char,
)

F = Fraction
q = QRat.q()


def test_permutation_of_type():
    assert permutation_of_type((3, 1)) == (1, 2, 0, 3)
    for lam in partitions_of(5):
        assert cycle_type(permutation_of_type(lam)) == lam


def test_monomials_fixed_examples():
    assert monomials_fixed(2, 2, (2,)) == 1
    assert monomials_fixed(2, 3, (2,)) == 0
    assert monomials_fixed(3, 2, (2, 1)) == 2
    with pytest.raises(ValueError):
        monomials_fixed(3, 2, (2,))
    with pytest.raises(OracleBudgetError):
        monomials_fixed(20, 20, (1,) * 20)


@pytest.mark.parametrize("n", range(1, 7))
def test_monomials_fixed_is_sym_power(n):
    for k in range(7):
        for lam in partitions_of(n):
            assert monomials_fixed(n, k, lam) == sym_power_char(n, k)(lam)


def test_sym_vn_examples():
    assert sym_vn_classfn(3, 0) == ClassFunction.trivial(3)
    v3 = sym_vn_classfn(3, 1)
    assert (v3((1, 1, 1)), v3((2, 1)), v3((3,))) == (2, 0, -1)
    for k in range(6):
        assert sym_vn_classfn(3, k)((1, 1, 1)) == k + 1


def test_j_oracle_examples(P):
    jo = j_oracle(P, kmax=8)
    assert jo.coeff({nu(1): 1}) == 1
    assert taylor_coeffs(jo.coeff({nu(2): 1}), 8) == taylor_coeffs(1 / (2 * (1 + q)), 8)


def test_j_oracle_matches_closed_form(P):
    jo = j_oracle(P, kmax=8)
    monos = set(jo.terms) | set(P.J.terms)
    assert len(monos) == 30
    for m in monos:
        assert taylor_coeffs(jo.coeff(m), 8) == taylor_coeffs(P.J.coeff(m), 8)


def test_j_oracle_budget(P):
    with pytest.raises(OracleBudgetError):
        j_oracle(P, nmax=P.policy.D + 1)


def test_double_coset_brute_examples():
    assert double_coset_brute((2, 1), (2, 1)) == (2, [2, 4])
    assert double_coset_brute((3,), (1, 1, 1)) == (1, [6])
    with pytest.raises(OracleBudgetError):
        double_coset_brute((8,), (8,))


@pytest.mark.parametrize("n", range(1, 7))
def test_double_coset_brute_agrees(n):
    comps = list(compositions(n))
    for lam in comps:
        for mu in comps:
            count, sizes = double_coset_brute(lam, mu)
            dc = double_cosets(lam, mu)
            assert count == len(dc)
            assert sizes == sorted(s for _, s in dc)


def test_induced_brute_examples():
    t = ClassFunction.trivial(1)
    assert induced_char_brute((1, 1), [t, t], (0, 1)) == 2
    assert induced_char_brute((1, 1), [t, t], (1, 0)) == 0
    assert induced_char_brute((1, 1), [t, t], [2, 1]) == 0
    ind = induce_product(t, t)
    assert (ind((1, 1)), ind((2,))) == (2, 0)


@pytest.mark.parametrize("n", range(1, 7))
def test_induced_brute_agrees(n):
    assert induced_characters_agree(n)


def test_string_chain_examples(P):
    from kfock.point import PointTheory
    from kfock.series import TruncationPolicy

    P0 = PointTheory(TruncationPolicy(R=1, D=0, K_t=0, T=0))
    assert string_chain(P0, F(1, 2), 3) == 2
    x = F(1, 3)
    assert string_chain(P, x, 4) == P.j_at(x).scale(1 / (1 - x) ** 3)


@pytest.mark.parametrize("x", [F(1, 2), F(1, 3)])
def test_string_chain_agrees(P, x):
    for m in range(3, 7):
        assert string_chain(P, x, m) == corr_two_ones(P, [x] + [F(0)] * (m - 3))


def test_trivial_rep_genfun(P):
    s = trivial_rep_genfun(P, 1)
    assert s.coeff({nu(2): 1}) == F(1, 2)
    assert s + 1 == P.G
    assert trivial_rep_genfun(P, 3) == zero_point(P)
