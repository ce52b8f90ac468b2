from fractions import Fraction

import pytest

from kfock.point import (
    GuardError,
    Insertion,
    PointTheory,
    UnstableError,
    corr_poly_insertions,
    corr_strip_ones,
    corr_two_ones,
    correlator,
    j_function,
    metric_g,
    quantum_product_constant,
    s_dress_at_one,
    s_matrix,
    two_point_from_s,
    zero_point,
)
from kfock.point.correlators import corr_lm1_insertions, corr_one_symbolic
from kfock.point.theory import guard_q
from kfock.qfield import QRat, taylor_coeffs
from kfock.series import QQ, MultiSeries, TruncationPolicy, derive, exp_series, nu

F = Fraction
q = QRat.q()


def exp_nu(P, skip_nu1=False):
    expo = {((nu(r), 1),): F(1, r) for r in P.nu_indices() if not (skip_nu1 and r == 1)}
    return exp_series(MultiSeries(expo, P.policy))


# ---------------------------------------------------------------- closed forms


def test_j_function_examples(P):
    J = j_function(P)
    assert J.constant_term() == 1 - q
    assert J.coeff({nu(1): 1}) == 1
    assert J.coeff({nu(2): 1}) == 1 / (2 * (1 + q))


def test_s_matrix_examples(P):
    S = s_matrix(P)
    assert S.constant_term() == 1
    assert S.coeff({nu(1): 1}) == 1 / (q - 1)
    assert S.inverse().scale(1 - q) == j_function(P)


def test_metric_examples(P):
    G = metric_g(P)
    assert G.constant_term() == 1
    assert G.coeff({nu(2): 1}) == F(1, 2)
    assert derive(G, nu(1)).truncate_weight(P.policy.D - 1) == G.truncate_weight(P.policy.D - 1)
    assert G == exp_nu(P)


def test_j_invariants(P):
    J0 = P.j_taylor(0)[0]
    D1 = P.policy.D - 1
    assert derive(J0, nu(1)).truncate_weight(D1) == P.G.truncate_weight(D1)


def test_e_recurrence_matches_exponential(P):
    x = F(1, 3)
    coeffs = P.e_coeffs(12)
    # Taylor coefficients from the recurrence agree with those read off the S-matrix
    assert coeffs == P.s_e_coeffs(12)
    assert P.e_at(x) == P.s_at_reciprocal(x)


# ---------------------------------------------------------------- multi-point formula


def test_corr_n1_at_zero_nu(P):
    assert corr_two_ones(PointTheory(TruncationPolicy(R=1, D=0, K_t=0, T=0)), [F(1, 2)]) == 2
    assert corr_two_ones(P, [F(1, 2)]).constant_term() == 2


def test_corr_n1_symbolic(P):
    assert corr_one_symbolic(P) == j_function(P).scale(1 / (1 - q) ** 2)


def test_corr_all_q_zero(P):
    for n in range(1, 5):
        assert corr_two_ones(P, [F(0)] * n) == exp_nu(P)


def test_corr_guard(P):
    for bad in (F(1), F(-1)):
        with pytest.raises(GuardError):
            corr_two_ones(P, [bad])
    with pytest.raises(GuardError):
        guard_q(F(-1), 2)
    assert guard_q(F(-1), 1) == -1
    with pytest.raises(TypeError):
        guard_q(0.5, 3)


def test_corr_symmetric(P):
    qs = [F(1, 2), F(1, 3), F(2, 5)]
    base = corr_two_ones(P, qs)
    assert corr_two_ones(P, qs[::-1]) == base
    assert corr_two_ones(P, [qs[1], qs[0], qs[2]]) == base


def test_corr_poly_examples(P):
    for a in range(4):
        for b in range(4):
            assert corr_poly_insertions(P, [a, b]).constant_term() == a + b + 1
    assert corr_poly_insertions(P, [0]) == exp_nu(P)
    assert corr_lm1_insertions(P, [1]).constant_term() == 0


def test_corr_poly_matches_taylor_of_closed_form(P):
    # <L^j,1,1> is the q^j Taylor coefficient of J/(1-q)^2
    sym = corr_one_symbolic(P)
    for j in range(4):
        coeffs = {m: taylor_coeffs(c, j)[j] for m, c in sym.terms.items()}
        assert corr_poly_insertions(P, [j]) == MultiSeries(coeffs, P.policy)


def test_corr_poly_rejects_negative(P):
    with pytest.raises(ValueError):
        corr_poly_insertions(P, [-1])
    with pytest.raises(ValueError):
        Insertion.pow_l(-2)


# ---------------------------------------------------------------- stripping and low points


def test_strip_one_from_two_ones(P):
    x = F(1, 3)
    two = corr_strip_ones(P, [x], 1)
    one = corr_strip_ones(P, [x], 0)
    nu1 = MultiSeries.var(nu(1), P.policy)
    assert two == one.scale(1 / (1 - x)) + nu1.scale(1 / (1 - x))


def test_strip_chain_matches_j(P):
    for x in (F(1, 2), F(1, 3)):
        for m in range(1, 6):
            val = corr_strip_ones(P, [x], m - 1)
            if m >= 3:
                assert val == P.j_at(x).scale(1 / (1 - x) ** (m - 1))
        assert corr_strip_ones(P, [x], 0) == P.j_at(x) - (1 - x) - MultiSeries.var(nu(1), P.policy)


def test_three_ones(P):
    assert corr_strip_ones(P, [F(0)] * 3, 0) == exp_nu(P)
    assert corr_strip_ones(P, [], 3) == exp_nu(P)


def test_string_and_base_low_points_agree(P):
    for qs, ones in (([F(1, 2)], 0), ([F(1, 2)], 1), ([F(1, 2), F(1, 3)], 0), ([], 0), ([], 2)):
        assert corr_strip_ones(P, qs, ones, low="string") == corr_strip_ones(P, qs, ones, low="base")


def test_two_point_examples(P):
    small = PointTheory(TruncationPolicy(R=3, D=0, K_t=0, T=0))
    assert two_point_from_s(small, F(1, 2), F(1, 3)) == 0
    for pair in ((F(1, 2), F(1, 3)), (F(1, 2), F(2, 5))):
        assert two_point_from_s(P, *pair) == corr_strip_ones(P, list(pair), 0)
    # q2 = 0 reduces to G S(1/q1) = 1 + <1/(1-q1 L), 1>
    x = F(1, 3)
    assert two_point_from_s(P, x, 0) == P.G * P.s_at_reciprocal(x) - 1
    with pytest.raises(UnstableError):
        two_point_from_s(P, F(2), F(1, 2))


def test_zero_point(P):
    z = zero_point(P)
    assert z.coeff({nu(3): 1}) == F(1, 3)
    assert z.coeff({nu(1): 3}) == F(1, 6)
    assert all(sum(r * e for (_, r, _), e in m) >= 3 for m in z.terms)
    # the weight-4 coefficient of nu_1^2 nu_2 comes from h_4 = ... + nu_1^2 nu_2 / 4
    assert z.coeff({nu(1): 2, nu(2): 1}) == F(1, 4)
    h = MultiSeries.zero(P.policy)
    for k, term in enumerate(_h(P)):
        if k >= 3:
            h = h + term
    assert z == h


def _h(P):
    e = exp_nu(P)
    return [e.filter(lambda m, k=k: sum(r * x for (_, r, _), x in m) == k)
            for k in range(P.policy.D + 1)]


def test_quantum_product_constant(P):
    assert quantum_product_constant(P) == 1


def test_s_dress_examples(P):
    assert s_dress_at_one(P, {}) == 0
    assert s_dress_at_one(P, {0: F(3)}) == 3
    nu1 = MultiSeries.var(nu(1), P.policy)
    assert s_dress_at_one(P, {1: F(1)}) == nu1


def test_insertion_algebra():
    a = Insertion.pow_lm1(2)
    assert a.terms == {("powl", 2): 1, ("powl", 1): -2, ("one",): 1}
    b = Insertion.geom_q(0)
    assert b.terms == {("one",): 1}
    assert (a - a).terms == {}
    assert (a + b.scale(3)).terms[("one",)] == 4


def test_multilinearity(P):
    x = Insertion.geom_q(F(1, 2))
    y = Insertion.pow_l(2)
    one = Insertion.one()
    lhs = correlator(P, [x + y.scale(2), one, one])
    rhs = correlator(P, [x, one, one]) + correlator(P, [y, one, one]).scale(2)
    assert lhs == rhs
