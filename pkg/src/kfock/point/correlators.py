"""Genus-0 correlators of the point.

Two independent routes are kept apart on purpose:

* the multi-point closed formula with two extra insertions of 1 uses the
  exponential form of E(x) and its Taylor recurrence;
* the low-point data (one point from J, two points from the S-matrix, zero
  points from the quadratic identity) read coefficients of J and S.

Correlators with fewer than two insertions of 1 are obtained from ones with
more by running the string equation backwards.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb, factorial

from kfock.point.theory import (
    ONE_SYM,
    Insertion,
    PointTheory,
    as_rational,
    guard_q,
    powl,
    sym_sort_key,
    symbol_at_one,
    symbol_string_shift,
)
from kfock.qfield import QRat
from kfock.series import QQ_Q, MultiSeries, exp_series, nu


class UnstableError(ValueError):
    """The string relation cannot be solved for the requested correlator."""


class BudgetError(ValueError):
    pass


MAX_Q_ORDER = 24


# ---------------------------------------------------------------- multi-point closed formula


def corr_two_ones(P, qs):
    """<1/(1-q_1 L), ..., 1/(1-q_n L), 1, 1>_{0,n+2} at rational q_i.

    Evaluates prod 1/(1-q_i) * (1 + sum q_i/(1-q_i))^{n-1} * exp(sum_r nu_r/r (1 + sum q_i^r/(1-q_i^r))).
    """
    qs = [guard_q(q, P.R) for q in qs]
    n = len(qs)
    if n < 1:
        raise ValueError("at least one q is required")
    pref = Fraction(1)
    y = Fraction(1)
    for q in qs:
        pref /= 1 - q
        y += q / (1 - q)
    pref *= y ** (n - 1)
    expo = {((nu(r), 1),): Fraction(1, r) * (1 + sum(q ** r / (1 - q ** r) for q in qs))
            for r in P.nu_indices()}
    return MultiSeries(expo, P.policy).exp().scale(pref)


def corr_one_symbolic(P):
    """<1/(1-qL), 1, 1>_{0,3} with q kept symbolic: exp(sum_r nu_r/(r(1-q^r))) / (1-q)."""
    q = QRat.q()
    expo = {((nu(r), 1),): 1 / (r * (1 - q ** r)) for r in P.nu_indices()}
    return exp_series(MultiSeries(expo, P.policy, QQ_Q)).scale(1 / (1 - q))


def _phi(P, s, amax):
    """phi_s(a) for a = 0..amax: the contribution of one insertion to the closed formula."""
    key = ("phi", s, amax)

    def build():
        zero = MultiSeries.zero(P.policy)
        if s == ONE_SYM:
            return [MultiSeries.const(1, P.policy)] + [zero] * amax
        if s[0] == "powl":
            j = s[1]
            if j > MAX_Q_ORDER:
                raise BudgetError(f"L-power {j} exceeds the q-order budget {MAX_Q_ORDER}")
            e = P.e_coeffs(j)
            out = []
            for a in range(amax + 1):
                acc = zero
                for l in range(0, j - a + 1):
                    acc = acc + e[l].scale(comb(j - l, a))
                out.append(acc)
            return out
        if s[0] == "lm1":
            m = s[1]
            out = [zero] * (amax + 1)
            for j in range(m + 1):
                sign = (-1) ** (m - j) * comb(m, j)
                out = [o + f.scale(sign) for o, f in zip(out, _phi(P, powl(j), amax))]
            return out
        q0 = s[1]
        base = P.e_at(q0).scale(1 / (1 - q0))
        y = q0 / (1 - q0)
        return [base.scale(y ** a) for a in range(amax + 1)]

    return P.memo(key, build)


def thm13_symbols(P, syms):
    """<X_1, ..., X_n, 1, 1> for basis symbols X_i (n >= 1).

    Expands (1 + sum y_i)^{n-1} multinomially, which is
    (n-1)! [z^{n-1}] e^z prod_i Phi_i(z) with Phi_i(z) = sum_a phi_i(a) z^a / a!.
    """
    n = len(syms)
    if n < 1:
        raise ValueError("need at least one insertion besides the two 1's")
    deg = n - 1
    pol = P.policy
    poly = [MultiSeries.const(Fraction(1, factorial(a)), pol) for a in range(deg + 1)]
    for s in syms:
        phi = _phi(P, s, deg)
        factor = [phi[a].scale(Fraction(1, factorial(a))) for a in range(deg + 1)]
        new = []
        for k in range(deg + 1):
            acc = MultiSeries.zero(pol)
            for a in range(k + 1):
                if poly[k - a] and factor[a]:
                    acc = acc + poly[k - a] * factor[a]
            new.append(acc)
        poly = new
    return (P.G * poly[deg]).scale(factorial(deg))


def corr_poly_insertions(P, exps, max_order=MAX_Q_ORDER):
    """<L^{j_1}, ..., L^{j_n}, 1, 1>_{0,n+2} as a rational nu-series."""
    exps = [int(j) for j in exps]
    if not exps:
        raise ValueError("need at least one exponent")
    if any(j < 0 for j in exps):
        raise ValueError("negative powers of L are not supported")
    if max(exps) > max_order:
        raise BudgetError(f"exponent {max(exps)} exceeds the q-order budget {max_order}")
    return thm13_symbols(P, [powl(j) for j in exps])


def corr_lm1_insertions(P, ms):
    """<(L-1)^{m_1}, ..., (L-1)^{m_n}, 1, 1>_{0,n+2} via the binomial transform."""
    ms = [int(m) for m in ms]
    if not ms or any(m < 0 for m in ms):
        raise ValueError("need non-negative exponents")
    return P.memo(("lm1", tuple(sorted(ms))),
                  lambda: thm13_symbols(P, [("lm1", m) if m else ONE_SYM for m in ms]))


# ---------------------------------------------------------------- low-point data from J and S


def _one_point(P, s):
    if s[0] == "geom":
        q0 = s[1]
        return P.j_at(q0) - (1 - q0) - MultiSeries.var(nu(1), P.policy)
    j = 0 if s == ONE_SYM else s[1]
    coeff = P.j_taylor(j)[j]
    if j == 0:
        return coeff - 1 - MultiSeries.var(nu(1), P.policy)
    if j == 1:
        return coeff + 1
    return coeff


def _alpha_beta(P, s, m):
    """(A[x^m E(x)], A[x^m]) for the functional A attached to a finite symbol."""
    j = 0 if s == ONE_SYM else s[1]
    if m > j:
        return None, 0
    return P.s_e_coeffs(j)[j - m], int(m == j)


def _two_point(P, s1, s2):
    inf1 = s1[0] == "geom"
    inf2 = s2[0] == "geom"
    if inf1 and inf2:
        return two_point_from_s(P, s1[1], s2[1])
    if inf1 or inf2:
        g, f = (s1, s2) if inf1 else (s2, s1)
        x = g[1]
        ex = P.s_at_reciprocal(x)
        j = 0 if f == ONE_SYM else f[1]
        acc = MultiSeries.zero(P.policy)
        for m in range(j + 1):
            a_f, b_f = _alpha_beta(P, f, m)
            term = P.G * ex * a_f
            if b_f:
                term = term - 1
            acc = acc + term.scale(x ** m)
        return acc
    j1 = 0 if s1 == ONE_SYM else s1[1]
    j2 = 0 if s2 == ONE_SYM else s2[1]
    acc = MultiSeries.zero(P.policy)
    for m in range(min(j1, j2) + 1):
        a1, b1 = _alpha_beta(P, s1, m)
        a2, b2 = _alpha_beta(P, s2, m)
        acc = acc + P.G * a1 * a2 - b1 * b2
    return acc


def two_point_from_s(P, q1, q2):
    """<1/(1-q1 L), 1/(1-q2 L)>_{0,2} from G S(1/q1) S(1/q2) = 1 + (1 - q1 q2) <...>."""
    q1 = guard_q(q1, P.R)
    q2 = guard_q(q2, P.R)
    if q1 * q2 == 1:
        raise UnstableError("q1 * q2 = 1 makes the prefactor vanish")
    lhs = P.G * P.s_at_reciprocal(q1) * P.s_at_reciprocal(q2)
    return (lhs - 1).scale(1 / (1 - q1 * q2))


def zero_point(P):
    """<>_{0,0} solved from the quadratic identity at t = 0.

    <> + (1/2) nu_2 = (1/2) <1 - L + nu_1, 1 - L + nu_1>_{0,2}.
    """

    def build():
        nu1 = MultiSeries.var(nu(1), P.policy)
        x = Insertion.one(nu1 + 1) - Insertion.pow_l(1)
        half = correlator(P, [x, x]).scale(Fraction(1, 2))
        return half - q0_adams_term(P)

    return P.memo("zero_point", build)


def q0_adams_term(P):
    """(1/2)(psi^2(nu_2), 1), which is nu_2 / 2 at the point."""
    if P.R < 2:
        return MultiSeries.zero(P.policy)
    return MultiSeries.var(nu(2), P.policy, coeff=Fraction(1, 2))


def string_correction(P, syms_or_values):
    """Q_n for n insertions whose values at L = 1 are given (or computed from symbols)."""
    vals = [v if isinstance(v, Fraction) else symbol_at_one(v) for v in syms_or_values]
    n = len(vals)
    pol = P.policy
    if n == 2:
        return MultiSeries.const(vals[0] * vals[1], pol)
    if n == 1:
        return MultiSeries.var(nu(1), pol, coeff=vals[0])
    if n == 0:
        nu1 = MultiSeries.var(nu(1), pol)
        return (nu1 * nu1).scale(Fraction(1, 2)) + q0_adams_term(P)
    return MultiSeries.zero(pol)


# ---------------------------------------------------------------- engine


def basis_correlator(P, syms, low="base"):
    """<X_1, ..., X_k>_{0,k} for basis symbols.

    ``low="base"`` takes k <= 2 from J, S and the zero-point identity;
    ``low="string"`` strips all the way down from the closed formula.
    """
    syms = tuple(sorted(syms, key=sym_sort_key))
    if low not in ("base", "string"):
        raise ValueError(f"unknown low-point mode {low!r}")
    return P.memo(("corr", low, syms), lambda: _basis_correlator(P, syms, low))


def _basis_correlator(P, syms, low):
    total = len(syms)
    ones = sum(1 for s in syms if s == ONE_SYM)
    if total >= 3 and ones >= 2:
        rest = list(syms)
        rest.remove(ONE_SYM)
        rest.remove(ONE_SYM)
        return thm13_symbols(P, rest)
    if low == "base" and total <= 2:
        if total == 0:
            return zero_point(P)
        if total == 1:
            return _one_point(P, syms[0])
        return _two_point(P, syms[0], syms[1])
    return strip_one(P, syms, low)


def strip_one(P, syms, low="base"):
    """Solve <X, 1> = B <X> + sum_i <.., D X_i, ..> + Q_n for <X>.

    B = 1 + sum over geometric insertions of q_i/(1-q_i); the L-power
    insertions contribute lower-degree correlators.
    """
    up = basis_correlator(P, syms + (ONE_SYM,), low)
    rhs = up - string_correction(P, syms)
    B = Fraction(1)
    for i, s in enumerate(syms):
        shift = symbol_string_shift(s)
        if s[0] == "geom":
            B += shift.terms[s]
            continue
        for s2, c in shift.terms.items():
            rhs = rhs - basis_correlator(P, syms[:i] + (s2,) + syms[i + 1:], low).scale(c)
    if B == 0:
        raise UnstableError(f"string relation is degenerate for {syms}")
    return rhs.scale(1 / B)


def correlator(P, insertions, low="base"):
    """Multilinear extension of :func:`basis_correlator` to Insertion objects."""
    insertions = [ins.validate(P.R) for ins in insertions]
    total = MultiSeries.zero(P.policy)
    for combo in product(*(ins.items() for ins in insertions)):
        coeff = Fraction(1)
        syms = []
        for s, c in combo:
            syms.append(s)
            coeff = c * coeff if isinstance(c, MultiSeries) else coeff * c
        value = basis_correlator(P, syms, low)
        total = total + (coeff * value if isinstance(coeff, MultiSeries) else value.scale(coeff))
    return total


def corr_strip_ones(P, qs, ones, low="string"):
    """<1/(1-q_1 L), ..., 1/(1-q_n L), 1^ones>_{0,n+ones} from the closed formula.

    With ``low="string"`` every case, including totals below three, is reached by
    solving string relations downward; ``low="base"`` uses the closed low-point data.
    """
    if ones < 0:
        raise ValueError("ones must be non-negative")
    syms = []
    for q in qs:
        q = guard_q(q, P.R)
        syms.append(("geom", q) if q else ONE_SYM)
    return basis_correlator(P, syms + [ONE_SYM] * ones, low)


def one_point(P, ins):
    return correlator(P, [ins])


def two_point(P, a, b, low="base"):
    return correlator(P, [a, b], low)


# ---------------------------------------------------------------- quantum product and dressing


def quantum_product_constant(P):
    """<1,1,1>_{0,3} / G, the single structure constant at rank 1."""
    return basis_correlator(P, (ONE_SYM,) * 3) * P.G_inverse


def dress_coefficient(P, k):
    """A_k = <(L-1)^k, 1, 1>_{0,3} / G, so that [S t]_+(nu, 1) = sum_k t_k A_k."""
    return P.memo(("dress", k), lambda: corr_lm1_insertions(P, [k]) * P.G_inverse)


def s_dress_at_one(P, t):
    """[S t]_+(nu, 1) for t = sum_k t[k] (L-1)^k.

    ``t`` maps k to a coefficient (rational or MultiSeries in P's policy).
    """
    if any(k < 0 or k > P.policy.K_t for k in t):
        raise ValueError(f"t-index outside 0..{P.policy.K_t}")
    total = MultiSeries.zero(P.policy)
    for k in sorted(t):
        c = t[k]
        A = dress_coefficient(P, k)
        total = total + (c * A if isinstance(c, MultiSeries) else A.scale(c))
    return total


def as_theory(P):
    return P if isinstance(P, PointTheory) else PointTheory(P)


def parse_q(text):
    return as_rational(Fraction(text))
