"""Exact truncated multivariate power series in the variables nu_{r,a} and t_k.

A monomial is a tuple of ``(var, exponent)`` pairs sorted by variable, where a
variable is ``(0, r, a)`` for nu_{r,a} or ``(1, k, 0)`` for t_k.  Tuple order
therefore puts every nu before every t, and orders nu by (r, a), t by k.

Coefficients are :class:`fractions.Fraction` (field ``"Q"``) or
:class:`kfock.qfield.QRat` (field ``"Q(q)"``).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import factorial

NU = 0
T = 1

QQ = "Q"
QQ_Q = "Q(q)"


class SeriesError(ValueError):
    pass


def nu(r, a=1):
    """Variable id of nu_{r,a}."""
    if r < 1 or a < 1:
        raise SeriesError(f"bad nu index ({r}, {a})")
    return (NU, r, a)


def tv(k):
    """Variable id of t_k."""
    if k < 0:
        raise SeriesError(f"bad t index {k}")
    return (T, k, 0)


def var_name(v):
    kind, i, a = v
    if kind == NU:
        return f"nu_{i}" if a == 1 else f"nu_{i}_{a}"
    return f"t_{i}"


def parse_var(name):
    parts = name.split("_")
    if parts[0] == "nu" and len(parts) in (2, 3):
        return nu(int(parts[1]), int(parts[2]) if len(parts) == 3 else 1)
    if parts[0] == "t" and len(parts) == 2:
        return tv(int(parts[1]))
    raise SeriesError(f"unknown variable name {name!r}")


@dataclass(frozen=True)
class TruncationPolicy:
    """Bounds kept by every series operation.

    R: largest nu index; D: largest weighted nu-degree (wt nu_r = r);
    K_t: largest t index; T: largest total t-degree.
    """

    R: int = 6
    D: int = 6
    K_t: int = 4
    T: int = 3

    def __post_init__(self):
        if min(self.R, self.D, self.K_t, self.T) < 0:
            raise SeriesError(f"negative truncation bound in {self}")

    def admits_var(self, v):
        kind, i, _ = v
        return i <= self.R if kind == NU else i <= self.K_t

    def admits(self, mono):
        w, d = mono_degrees(mono)
        return w <= self.D and d <= self.T

    def widen(self, **changes):
        return replace(self, **changes)

    def as_dict(self):
        return {"R": self.R, "D": self.D, "K_t": self.K_t, "T": self.T}


# ---------------------------------------------------------------- monomials

ONE = ()

_deg_cache = {}


def mono_degrees(m):
    """(weighted nu-degree, t-degree) of a monomial."""
    try:
        return _deg_cache[m]
    except KeyError:
        w = d = 0
        for (kind, i, _), e in m:
            if kind == NU:
                w += i * e
            else:
                d += e
        _deg_cache[m] = (w, d)
        return w, d


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_from_dict(exps):
    items = []
    for v, e in exps.items():
        if e < 0:
            raise SeriesError("negative exponent")
        if e:
            items.append((v, e))
    return tuple(sorted(items))


def mono_sort_key(m):
    w, d = mono_degrees(m)
    return (w, d, m)


def mono_str(m):
    if not m:
        return "1"
    return "*".join(var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in m)


# ---------------------------------------------------------------- series


def _coerce_scalar(c, field):
    if field == QQ:
        if isinstance(c, (int, Fraction)):
            return Fraction(c)
        raise SeriesError(f"coefficient {c!r} is not rational")
    from kfock.qfield import QRat

    if isinstance(c, QRat):
        return c
    if isinstance(c, (int, Fraction)):
        return QRat.const(c)
    raise SeriesError(f"coefficient {c!r} is not in Q(q)")


class MultiSeries:
    """Immutable truncated series ``{monomial: coefficient}``."""

    __slots__ = ("terms", "policy", "field", "_hash")

    def __init__(self, terms, policy, field=QQ, _trusted=False):
        if field not in (QQ, QQ_Q):
            raise SeriesError(f"unknown coefficient field {field!r}")
        self.policy = policy
        self.field = field
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        clean = {}
        for m, c in terms.items():
            for v, _ in m:
                if not policy.admits_var(v):
                    raise SeriesError(f"variable {var_name(v)} outside policy {policy}")
            if not policy.admits(m):
                continue
            c = _coerce_scalar(c, field)
            if c:
                clean[m] = c
        self.terms = clean

    # -- constructors

    @classmethod
    def zero(cls, policy, field=QQ):
        return cls({}, policy, field, _trusted=True)

    @classmethod
    def const(cls, c, policy, field=QQ):
        return cls({ONE: c}, policy, field)

    @classmethod
    def var(cls, v, policy, field=QQ, coeff=1):
        return cls({((v, 1),): coeff}, policy, field)

    @classmethod
    def from_dict(cls, exps_to_coeff, policy, field=QQ):
        """Build from ``{ {var: exp}: coeff }`` style input given as pairs."""
        terms = {}
        for exps, c in exps_to_coeff:
            m = mono_from_dict(exps)
            terms[m] = terms.get(m, 0) + c
        return cls(terms, policy, field)

    # -- basic protocol

    def __repr__(self):
        return f"MultiSeries({self}, field={self.field})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=mono_sort_key):
            c = self.terms[m]
            parts.append(f"({c})*{mono_str(m)}" if m else f"({c})")
        return " + ".join(parts)

    def __eq__(self, other):
        if isinstance(other, MultiSeries):
            return self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return len(self.terms) == 1 and self.terms.get(ONE) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda mc: mono_sort_key(mc[0]))

    def coeff(self, mono):
        """Stored coefficient of ``mono`` (a monomial tuple or ``{var: exp}``), else 0."""
        if isinstance(mono, dict):
            mono = mono_from_dict(mono)
        c = self.terms.get(mono)
        if c is not None:
            return c
        return Fraction(0) if self.field == QQ else _coerce_scalar(0, QQ_Q)

    def constant_term(self):
        return self.coeff(ONE)

    def variables(self):
        return sorted({v for m in self.terms for v, _ in m})

    def min_tdeg(self):
        """Smallest t-degree among stored monomials (None for the zero series)."""
        if not self.terms:
            return None
        return min(mono_degrees(m)[1] for m in self.terms)

    # -- coercions

    def _check(self, other):
        if not isinstance(other, MultiSeries):
            raise SeriesError(f"cannot combine series with {type(other).__name__}")
        if other.policy != self.policy:
            raise SeriesError(f"policy mismatch: {self.policy} vs {other.policy}")
        if other.field != self.field:
            raise SeriesError(f"coefficient field mismatch: {self.field} vs {other.field}")

    def to_qrat(self):
        if self.field == QQ_Q:
            return self
        from kfock.qfield import QRat

        return MultiSeries({m: QRat.const(c) for m, c in self.terms.items()},
                           self.policy, QQ_Q, _trusted=True)

    def with_policy(self, policy):
        """Re-truncate into ``policy`` (variables must remain admissible)."""
        return MultiSeries(self.terms, policy, self.field)

    def map_coeffs(self, fn, field=None):
        field = field or self.field
        return MultiSeries({m: fn(c) for m, c in self.terms.items()}, self.policy, field)

    def filter(self, pred):
        return MultiSeries({m: c for m, c in self.terms.items() if pred(m)},
                           self.policy, self.field, _trusted=True)

    def truncate_tdeg(self, tdeg):
        return self.filter(lambda m: mono_degrees(m)[1] <= tdeg)

    def truncate_weight(self, weight):
        return self.filter(lambda m: mono_degrees(m)[0] <= weight)

    # -- arithmetic

    def _lift(self, other):
        if isinstance(other, MultiSeries):
            self._check(other)
            return other
        return MultiSeries.const(other, self.policy, self.field)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiSeries(out, self.policy, self.field, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries({m: -c for m, c in self.terms.items()},
                           self.policy, self.field, _trusted=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c):
        c = _coerce_scalar(c, self.field)
        if not c:
            return MultiSeries.zero(self.policy, self.field)
        return MultiSeries({m: a * c for m, a in self.terms.items()},
                           self.policy, self.field, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            return self.scale(other)
        self._check(other)
        return MultiSeries(_mul_terms(self.terms, other.terms, self.policy),
                           self.policy, self.field, _trusted=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        if isinstance(c, MultiSeries):
            return self * c.inverse()
        return self.scale(1 / _coerce_scalar(c, self.field))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = MultiSeries.const(1, self.policy, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exp(self):
        return exp_series(self)

    def inverse(self):
        """Multiplicative inverse; the constant term must be a unit."""
        c = self.constant_term()
        if not c:
            raise SeriesError("series with zero constant term is not invertible")
        x = self.scale(1 / c) - 1
        total = MultiSeries.const(1, self.policy, self.field)
        power = total
        neg = -x
        while True:
            power = power * neg
            if not power:
                break
            total = total + power
        return total.scale(1 / c)

    def derive(self, v):
        return derive(self, v)

    def substitute(self, assignment, policy=None):
        return substitute(self, assignment, policy)


def _mul_terms(a, b, policy):
    if len(a) < len(b):
        a, b = b, a
    D, T_ = policy.D, policy.T
    bl = []
    for m, c in b.items():
        w, d = mono_degrees(m)
        bl.append((w, d, m, c))
    bl.sort(key=lambda x: x[0])
    out = {}
    for ma, ca in a.items():
        wa, da = mono_degrees(ma)
        wmax = D - wa
        tmax = T_ - da
        for wb, db, mb, cb in bl:
            if wb > wmax:
                break
            if db > tmax:
                continue
            m = mono_mul(ma, mb)
            p = ca * cb
            s = out.get(m)
            out[m] = p if s is None else s + p
    return {m: c for m, c in out.items() if c}


# ---------------------------------------------------------------- operations


def arith(a, b, op):
    """Ring operation ``op`` in {"add", "sub", "mul"} followed by truncation."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise SeriesError(f"unknown operation {op!r}")


def _is_linear(a):
    return all(len(m) == 1 and m[0][1] == 1 for m in a.terms)


def exp_series(a):
    """exp(a) for a series with zero constant term, exact at truncation order."""
    if a.constant_term():
        raise SeriesError("exp_series needs a zero constant term")
    one = MultiSeries.const(1, a.policy, a.field)
    if not a.terms:
        return one
    if _is_linear(a):
        return _exp_linear(a)
    total = one
    term = one
    m = 0
    while True:
        m += 1
        term = (term * a).scale(Fraction(1, m))
        if not term:
            return total
        total = total + term


def _exp_linear(a):
    # exp(sum c_v v) = prod_v sum_k c_v^k v^k / k!, expanded under the policy
    policy = a.policy
    result = {ONE: _coerce_scalar(1, a.field)}
    for m, c in sorted(a.terms.items()):
        (v, _), = m
        powers = [(ONE, None)]
        k = 0
        ck = None
        while True:
            k += 1
            mono = ((v, k),)
            if not policy.admits(mono):
                break
            ck = c if ck is None else ck * c
            powers.append((mono, ck * Fraction(1, factorial(k))))
        new = {}
        for mr, cr in result.items():
            wr, dr = mono_degrees(mr)
            for mp, cp in powers:
                if cp is None:
                    new[mr] = cr
                    continue
                wp, dp = mono_degrees(mp)
                if wr + wp > policy.D or dr + dp > policy.T:
                    break
                new[mono_mul(mr, mp)] = cr * cp
        result = new
    return MultiSeries({m: c for m, c in result.items() if c}, policy, a.field, _trusted=True)


def derive(a, v):
    """Formal partial derivative with respect to variable ``v``."""
    out = {}
    for m, c in a.terms.items():
        for i, (w, e) in enumerate(m):
            if w == v:
                nm = m[:i] + ((w, e - 1),) + m[i + 1:] if e > 1 else m[:i] + m[i + 1:]
                out[nm] = c * e
                break
    return MultiSeries(out, a.policy, a.field, _trusted=True)


def substitute(a, assignment, policy=None):
    """Evaluate ``a`` at ``{var: series}`` and truncate into ``policy``.

    Unassigned variables are kept.  Substituted series must share the target
    policy and field; when they have zero constant term (or the caller knows the
    dependence is polynomial under truncation) the result is exact.
    """
    policy = policy or a.policy
    for v, s in assignment.items():
        if not isinstance(s, MultiSeries):
            raise SeriesError("substitution values must be MultiSeries")
        if s.policy != policy or s.field != a.field:
            raise SeriesError("substitution value does not match target policy/field")
        if not a.policy.admits_var(v):
            raise SeriesError(f"assignment targets {var_name(v)} outside the policy")
    powers = {}

    def power(v, e):
        key = (v, e)
        if key not in powers:
            if v in assignment:
                base = assignment[v]
            else:
                base = MultiSeries.var(v, policy, a.field)
            powers[key] = base if e == 1 else power(v, e - 1) * base
        return powers[key]

    total = MultiSeries.zero(policy, a.field)
    for m, c in a.terms.items():
        if all(v not in assignment for v, _ in m):
            term = MultiSeries({m: c}, policy, a.field)
        else:
            term = MultiSeries.const(c, policy, a.field)
            for v, e in m:
                term = term * power(v, e)
                if not term:
                    break
        total = total + term
    return total


class ContractionError(SeriesError):
    pass


def fixed_point(F, seed, max_rounds=None):
    """Solve ``x = F(x)`` by iteration, assuming F is a t-adic contraction.

    Stops when two successive iterates agree.  Raises ContractionError if the
    lowest t-degree of the discrepancy fails to grow.
    """
    T_ = seed.policy.T
    rounds = max_rounds if max_rounds is not None else T_ + 2
    x = seed
    last = -1
    for _ in range(rounds + 1):
        y = F(x)
        diff = y - x
        if not diff:
            return x
        d = diff.min_tdeg()
        if d <= last:
            raise ContractionError(f"iteration is not contracting (discrepancy t-degree {d})")
        last = d
        x = y
    raise ContractionError(f"no fixed point within {rounds} rounds")


def collect(a, v):
    """Split ``a`` by powers of ``v``: returns ``{p: series free of v}``."""
    groups = {}
    for m, c in a.terms.items():
        p = 0
        rest = m
        for i, (w, e) in enumerate(m):
            if w == v:
                p = e
                rest = m[:i] + m[i + 1:]
                break
        groups.setdefault(p, {})[rest] = c
    return {p: MultiSeries(t, a.policy, a.field, _trusted=True) for p, t in groups.items()}


def horner(groups, x, policy):
    """sum_p x**p * groups[p] in ``policy`` (groups are re-truncated into it)."""
    total = MultiSeries.zero(policy, x.field)
    for p in range(max(groups, default=0), -1, -1):
        total = total * x
        g = groups.get(p)
        if g is not None:
            total = total + g.with_policy(policy)
    return total
