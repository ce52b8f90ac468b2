"""Closed forms J, S, G for the genus-0 theory of the point, and insertions.

Everything is a :class:`~kfock.series.MultiSeries` in nu_1..nu_R.  J and S have
coefficients in Q(q); G has rational coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import comb

from kfock.qfield import QRat, taylor_coeffs
from kfock.series import QQ, QQ_Q, MultiSeries, TruncationPolicy, exp_series, nu


class GuardError(ValueError):
    """A q-value that is 1 or an r-th root of unity for some r <= R."""


def as_rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def guard_q(q0, R):
    """Reject q0 = 1 and q0 with q0**r = 1 for some r <= R."""
    q0 = as_rational(q0)
    if q0 == 1:
        raise GuardError("q = 1 is a pole of the correlator formula")
    for r in range(2, max(R, 1) + 1):
        if q0 ** r == 1:
            raise GuardError(f"q = {q0} satisfies q^{r} = 1 with r <= R = {R}")
    return q0


class PointTheory:
    """Truncation policy plus cached closed forms for the point."""

    def __init__(self, policy=None):
        self.policy = policy or TruncationPolicy()
        self._cache = {}

    def __repr__(self):
        return f"PointTheory({self.policy})"

    @property
    def R(self):
        return self.policy.R

    def nu_indices(self):
        return range(1, self.policy.R + 1)

    def widened(self, D=None, T=None):
        """Theory with a larger weight (and/or t-degree) bound, cached."""
        D = self.policy.D if D is None else D
        T = self.policy.T if T is None else T
        key = ("widened", D, T)
        if key not in self._cache:
            if (D, T) == (self.policy.D, self.policy.T):
                self._cache[key] = self
            else:
                self._cache[key] = PointTheory(self.policy.widen(D=D, T=T))
        return self._cache[key]

    def memo(self, key, fn):
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = fn()
            return value

    # -- closed forms

    @cached_property
    def J(self):
        q = QRat.q()
        expo = {((nu(k), 1),): 1 / (k * (1 - q ** k)) for k in self.nu_indices()}
        return exp_series(MultiSeries(expo, self.policy, QQ_Q)) * (1 - q)

    @cached_property
    def S(self):
        q = QRat.q()
        expo = {((nu(k), 1),): 1 / (k * (q ** k - 1)) for k in self.nu_indices()}
        return exp_series(MultiSeries(expo, self.policy, QQ_Q))

    @cached_property
    def G(self):
        expo = {((nu(k), 1),): Fraction(1, k) for k in self.nu_indices()}
        return exp_series(MultiSeries(expo, self.policy, QQ))

    @cached_property
    def G_inverse(self):
        expo = {((nu(k), 1),): Fraction(-1, k) for k in self.nu_indices()}
        return exp_series(MultiSeries(expo, self.policy, QQ))

    # -- the function E(x) = exp(sum_r nu_r/r * x^r/(1-x^r)) = S(nu, 1/x)

    def e_coeffs(self, order):
        """Taylor coefficients e_0..e_order of E(x), via l e_l = sum_i i f_i e_{l-i}.

        Here f_l = sum over r | l (r <= R) of nu_r / r is the x^l coefficient of log E.
        """
        cached = self._cache.get("e_coeffs")
        if cached is not None and len(cached) > order:
            return cached[:order + 1]
        pol = self.policy
        f = [MultiSeries.zero(pol)]
        for l in range(1, order + 1):
            f.append(MultiSeries({((nu(r), 1),): Fraction(1, r)
                                  for r in self.nu_indices() if l % r == 0}, pol))
        e = [MultiSeries.const(1, pol)]
        for l in range(1, order + 1):
            acc = MultiSeries.zero(pol)
            for i in range(1, l + 1):
                if f[i]:
                    acc = acc + (f[i] * e[l - i]).scale(i)
            e.append(acc.scale(Fraction(1, l)))
        self._cache["e_coeffs"] = e
        return e

    def e_at(self, x):
        """E(x) as a rational nu-series, from its exponential form."""
        x = guard_q(x, self.R)

        def build():
            expo = {((nu(r), 1),): Fraction(1, r) * x ** r / (1 - x ** r) for r in self.nu_indices()}
            return exp_series(MultiSeries(expo, self.policy, QQ))

        return self.memo(("e_at", x), build)

    def s_at_reciprocal(self, x):
        """S(nu, 1/x) by evaluating each Q(q) coefficient of S; x = 0 gives S at infinity."""
        x = guard_q(x, self.R)
        return self.memo(("s_recip", x),
                         lambda: self.S.map_coeffs(lambda c: c.eval_at_reciprocal(x), QQ))

    def s_e_coeffs(self, order):
        """Taylor coefficients of x -> S(nu, 1/x), read off the S-matrix coefficients."""

        def build():
            cols = {m: taylor_coeffs(c.reciprocal_arg(), order) for m, c in self.S.terms.items()}
            return [MultiSeries({m: cs[l] for m, cs in cols.items()}, self.policy)
                    for l in range(order + 1)]

        return self.memo(("s_e_coeffs", order), build)

    def j_at(self, q0):
        """J(nu, q0) with the rational value q0 substituted."""
        q0 = as_rational(q0)
        return self.memo(("j_at", q0), lambda: self.J.map_coeffs(lambda c: c.eval(q0), QQ))

    def j_taylor(self, order):
        """Coefficients of q^0..q^order of J as rational nu-series."""

        def build():
            cols = {m: taylor_coeffs(c, order) for m, c in self.J.terms.items()}
            return [MultiSeries({m: cs[l] for m, cs in cols.items()}, self.policy)
                    for l in range(order + 1)]

        return self.memo(("j_taylor", order), build)


def j_function(P):
    return P.J


def s_matrix(P):
    return P.S


def metric_g(P):
    return P.G


# ---------------------------------------------------------------- insertions

ONE_SYM = ("one",)


def geom(q0):
    q0 = as_rational(q0)
    return ONE_SYM if q0 == 0 else ("geom", q0)


def powl(j):
    if j < 0:
        raise ValueError("negative powers of L are not supported")
    return ONE_SYM if j == 0 else ("powl", int(j))


def sym_sort_key(s):
    kind = s[0]
    if kind == "one":
        return (0, 0)
    if kind == "powl":
        return (1, s[1])
    return (2, s[1])


class Insertion:
    """Finite linear combination of the symbols 1/(1-q0 L), L^j, (L-1)^m and 1.

    Coefficients may be rationals or MultiSeries.  Internally every term is
    stored in the (geom, powl, one) basis; (L-1)^m is expanded binomially.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for s, c in (terms or {}).items():
            self._add(s, c)

    def _add(self, s, c):
        if not c:
            return
        old = self.terms.get(s)
        new = c if old is None else old + c
        if not new:
            self.terms.pop(s, None)
        else:
            self.terms[s] = new

    @classmethod
    def one(cls, c=1):
        return cls({ONE_SYM: c})

    @classmethod
    def geom_q(cls, q0, c=1):
        return cls({geom(q0): c})

    @classmethod
    def pow_l(cls, j, c=1):
        return cls({powl(j): c})

    @classmethod
    def pow_lm1(cls, m, c=1):
        if m < 0:
            raise ValueError("negative powers of (L-1) are not supported")
        out = cls()
        for j in range(m + 1):
            out._add(powl(j), c * ((-1) ** (m - j) * comb(m, j)))
        return out

    def __add__(self, other):
        out = Insertion(self.terms)
        for s, c in other.terms.items():
            out._add(s, c)
        return out

    def __neg__(self):
        return Insertion({s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Insertion({s: v * c for s, v in self.terms.items()})

    def validate(self, R):
        for s in self.terms:
            if s[0] == "geom":
                guard_q(s[1], R)
        return self

    def items(self):
        return sorted(self.terms.items(), key=lambda sc: sym_sort_key(sc[0]))


def symbol_at_one(s):
    """Value of the basis symbol at L = 1."""
    if s[0] == "geom":
        return 1 / (1 - s[1])
    return Fraction(1)


def symbol_string_shift(s):
    """(X(L) - X(1))/(L - 1) for a basis symbol, as an Insertion."""
    if s[0] == "geom":
        q0 = s[1]
        return Insertion({s: q0 / (1 - q0)})
    if s[0] == "powl":
        out = Insertion()
        for i in range(s[1]):
            out._add(powl(i), 1)
        return out
    return Insertion()
