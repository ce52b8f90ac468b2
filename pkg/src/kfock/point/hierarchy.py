"""The fixed point tau, the topological solution, and the principal hierarchy.

Series here live in the theory's full policy: t-variables t_0..t_{K_t} and the
parameters nu_2..nu_R.  Whenever a nu-series is evaluated at nu_1 = tau, it is
first computed at weight D + T, because nu_1**p is replaced by a series of
weight zero and t-degree at least p.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from collections import Counter
from math import factorial

from kfock.point.correlators import (
    ONE_SYM,
    basis_correlator,
    corr_lm1_insertions,
    correlator,
    dress_coefficient,
    q0_adams_term,
)
from kfock.point.theory import Insertion
from kfock.qfield import QRat, residue_at_infinity
from kfock.series import (
    QQ,
    MultiSeries,
    collect,
    derive,
    exp_series,
    fixed_point,
    horner,
    nu,
    tv,
)


class PoleAtZeroError(ArithmeticError):
    """A residue integrand unexpectedly has a pole at q = 0."""


def generic_t(P, kmax=None):
    """t = sum_k t_k (L-1)^k with formal t_k for k <= kmax (default K_t)."""
    kmax = P.policy.K_t if kmax is None else kmax
    return {k: MultiSeries.var(tv(k), P.policy) for k in range(kmax + 1)}


def _check_t(P, t):
    for k, c in t.items():
        if k < 0 or k > P.policy.K_t:
            raise ValueError(f"t-index {k} outside 0..{P.policy.K_t}")
        if not isinstance(c, MultiSeries) or c.policy != P.policy:
            raise ValueError("t coefficients must be series in the theory's policy")


def _wide(P):
    return P.widened(D=P.policy.D + P.policy.T)


def at_tau(P, series_wide, tau):
    """Evaluate a nu-series computed at widened weight at nu_1 = tau."""
    return horner(collect(series_wide, nu(1)), tau, P.policy)


def set_nu1_zero(a):
    return a.filter(lambda m: all(v != nu(1) for v, _ in m))


# ---------------------------------------------------------------- fixed point and w


def tau_fixed_point(P, t=None):
    """tau with [S t]_+(tau, nu_2, ..., 1) = tau, by iteration from tau = 0."""
    t = generic_t(P) if t is None else t
    _check_t(P, t)
    W = _wide(P)
    pieces = {k: collect(dress_coefficient(W, k), nu(1)) for k in t}

    def F(x):
        total = MultiSeries.zero(P.policy)
        for k in sorted(t):
            total = total + t[k] * horner(pieces[k], x, P.policy)
        return total

    return fixed_point(F, MultiSeries.zero(P.policy))


def _multisets(keys, n):
    return combinations_with_replacement(sorted(keys), n)


def _multiset_weight(t, ms):
    """prod_k t_k^{m_k} / m_k! for a multiset of t-indices."""
    counts = Counter(ms)
    coeff = None
    for k, mult in counts.items():
        c = t[k] ** mult
        coeff = c if coeff is None else coeff * c
        coeff = coeff.scale(Fraction(1, factorial(mult)))
    return coeff


def topological_w(P, t=None):
    """w = sum_n (1/n!) <1, 1, t, ..., t>_{0,2+n} at nu_1 = 0."""
    t = generic_t(P) if t is None else t
    _check_t(P, t)
    pol = P.policy
    w = set_nu1_zero(basis_correlator(P, (ONE_SYM, ONE_SYM)))
    for n in range(1, pol.T + 1):
        for ms in _multisets(t, n):
            weight = _multiset_weight(t, ms)
            if not weight:
                continue
            w = w + weight * set_nu1_zero(corr_lm1_insertions(P, list(ms)))
    return w


def j_at_zero_of_tau(P, tau):
    """J(tau, nu_2, ..., q = 0)."""
    W = _wide(P)
    return at_tau(P, W.j_taylor(0)[0], tau)


# ---------------------------------------------------------------- hierarchy


def hierarchy_coefficients(P, n):
    """r_{n,p}: nu_{>=2}-series with R_n(v) = sum_p v^p r_{n,p}.

    r_{n,p} = -Res_{q=inf} (q-1)^{n-1} C_p(q) dq where S = sum_p nu_1^p C_p(q).
    The integrands are checked to be regular at q = 0.
    """

    def build():
        W = _wide(P)
        q = QRat.q()
        weight = (q - 1) ** (n - 1)
        out = {}
        for p, ser in collect(W.S, nu(1)).items():
            def res(c):
                f = weight * c
                if f.has_pole_at(0):
                    raise PoleAtZeroError(f"integrand {f} has a pole at q = 0")
                return -residue_at_infinity(f)

            r = ser.map_coeffs(res, QQ)
            if r:
                out[p] = r
        return out

    return P.memo(("hier_coeffs", n), build)


def flow_function(P, n, v):
    """R_n(v) = -Res_{q=inf} (q-1)^{n-1} S(v, nu_2, ..., q) dq."""
    return horner(hierarchy_coefficients(P, n), v, P.policy)


def hierarchy_rhs(P, n, v):
    """Right-hand side d_x v * (bullet constant) * R_n(v) of the n-th flow."""
    if v.policy != P.policy:
        raise ValueError("v must live in the theory's policy")
    return derive(v, tv(0)) * flow_function(P, n, v)


def check_flows(P, nmax=3):
    """For tau at t-degree T+1, compare d_{t_n} tau with the flow at t-degree <= T."""
    T = P.policy.T
    if nmax > P.policy.K_t:
        raise ValueError("flow index exceeds K_t")
    big = P.widened(T=T + 1)
    tau = tau_fixed_point(big)
    results = {}
    for n in range(nmax + 1):
        lhs = derive(tau, tv(n)).truncate_tdeg(T)
        rhs = hierarchy_rhs(big, n, tau).truncate_tdeg(T)
        results[n] = lhs == rhs
    return results


def check_compatibility(P, nmax=3):
    """d_{t_m} RHS_n(tau) = d_{t_n} RHS_m(tau) at t-degree <= T, for m < n <= nmax."""
    T = P.policy.T
    big = P.widened(T=T + 2)
    tau = tau_fixed_point(big)
    rhs = {n: hierarchy_rhs(big, n, tau) for n in range(nmax + 1)}
    results = {}
    for m in range(nmax + 1):
        for n in range(m + 1, nmax + 1):
            a = derive(rhs[n], tv(m)).truncate_tdeg(T)
            b = derive(rhs[m], tv(n)).truncate_tdeg(T)
            results[(m, n)] = a == b
    return results


# ---------------------------------------------------------------- potential and its derivatives


def potential_from_correlators(P, t=None):
    """(1/2) nu_2 + sum_n (1/n!) <t, ..., t>_{0,n}(0, nu_2, ...) up to t-degree T."""
    t = generic_t(P) if t is None else t
    _check_t(P, t)
    total = q0_adams_term(P) + set_nu1_zero(basis_correlator(P, ()))
    for n in range(1, P.policy.T + 1):
        for ms in _multisets(t, n):
            weight = _multiset_weight(t, ms)
            if not weight:
                continue
            value = correlator(P, [Insertion.pow_lm1(k) for k in ms])
            total = total + weight * set_nu1_zero(value)
    return total


def _two_point_lm1_wide(P, a, b):
    W = _wide(P)
    return W.memo(("tp_lm1", a, b),
                  lambda: correlator(W, [Insertion.pow_lm1(a), Insertion.pow_lm1(b)]))


def potential_from_tau(P, t=None, tau=None, half_derivatives=False):
    """The three two-point expressions evaluated at nu_1 = tau.

    Returns ``(F, dF, d2F)`` with dF[m] and d2F[(m, n)].  The derivative
    formulas carry no factor 1/2 unless ``half_derivatives`` is set.
    """
    t = generic_t(P) if t is None else t
    tau = tau_fixed_point(P, t) if tau is None else tau
    pol = P.policy
    keys = range(pol.K_t + 1)
    coeff = {k: t.get(k, MultiSeries.zero(pol)) for k in keys}
    coeff[1] = coeff[1] - 1
    tp = {(a, b): at_tau(P, _two_point_lm1_wide(P, min(a, b), max(a, b)), tau)
          for a in keys for b in keys}
    F = MultiSeries.zero(pol)
    for a in keys:
        for b in keys:
            if coeff[a] and coeff[b]:
                F = F + coeff[a] * coeff[b] * tp[(a, b)]
    F = F.scale(Fraction(1, 2))
    factor = Fraction(1, 2) if half_derivatives else Fraction(1)
    dF = {}
    for m in keys:
        acc = MultiSeries.zero(pol)
        for b in keys:
            if coeff[b]:
                acc = acc + coeff[b] * tp[(m, b)]
        dF[m] = acc.scale(factor)
    d2F = {(m, n): tp[(m, n)].scale(factor) for m in keys for n in keys}
    return F, dF, d2F


def check_reconstruction(P, half_derivatives=False):
    """Compare the potential with its tau-expressions at t-degrees T, T-1, T-2."""
    T = P.policy.T
    lhs = potential_from_correlators(P)
    F, dF, d2F = potential_from_tau(P, half_derivatives=half_derivatives)
    keys = range(P.policy.K_t + 1)
    out = {"F": lhs.truncate_tdeg(T) == F.truncate_tdeg(T)}
    out["dF"] = all(derive(lhs, tv(m)).truncate_tdeg(T - 1) == dF[m].truncate_tdeg(T - 1)
                    for m in keys)
    out["d2F"] = all(derive(derive(lhs, tv(m)), tv(n)).truncate_tdeg(T - 2)
                     == d2F[(m, n)].truncate_tdeg(T - 2) for m in keys for n in keys)
    return out


def check_topological(P):
    """Consequences of the fixed point: J(tau, 0) = 1 + w, v(t_0) = t_0, closed form of w(t_0)."""
    pol = P.policy
    out = {}
    tau = tau_fixed_point(P)
    w = topological_w(P)
    out["J(tau,0)=1+w"] = j_at_zero_of_tau(P, tau) == w + 1
    t0 = {0: MultiSeries.var(tv(0), pol)}
    out["v(t0)=t0"] = tau_fixed_point(P, t0) == t0[0]
    expo = t0[0] + MultiSeries({((nu(k), 1),): Fraction(1, k) for k in range(2, pol.R + 1)}, pol)
    out["w(t0)"] = topological_w(P, t0) == exp_series(expo) - 1
    return out
