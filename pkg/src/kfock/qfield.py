"""Exact univariate rational functions in q over the rationals.

Polynomials are tuples of Fractions, lowest degree first, without trailing
zeros.  :class:`QRat` keeps ``num/den`` reduced with a monic denominator, so
equality is structural.
"""

from __future__ import annotations

from fractions import Fraction


class PoleError(ZeroDivisionError):
    """Evaluation at a pole, or division by the zero function."""


# ---------------------------------------------------------------- polynomials

def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def padd(a, b):
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def pneg(a):
    return tuple(-c for c in a)


def psub(a, b):
    return padd(a, pneg(b))


def pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def pscale(a, c):
    return _trim(x * c for x in a)


def pdivmod(a, b):
    if not b:
        raise PoleError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return (), _trim(a)
    quot = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lead
        quot[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] -= c * b[j]
    return _trim(quot), _trim(a[:db])


def pmonic(a):
    if not a:
        return a
    lead = a[-1]
    return a if lead == 1 else tuple(c / lead for c in a)


def _content(a):
    # rational content: gcd of numerators / lcm of denominators
    from math import gcd

    num = 0
    den = 1
    for c in a:
        num = gcd(num, c.numerator)
        den = den * c.denominator // gcd(den, c.denominator)
    return Fraction(num, den)


def _primitive(a):
    c = _content(a)
    return tuple(x / c for x in a) if c != 1 else a


def pgcd(a, b):
    """Monic gcd, computed with primitive remainders to limit coefficient growth."""
    a = _primitive(_trim(a)) if a else ()
    b = _primitive(_trim(b)) if b else ()
    while b:
        _, r = pdivmod(a, b)
        a, b = b, (_primitive(r) if r else ())
    return pmonic(a)


def peval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pderiv(a):
    return _trim(c * i for i, c in enumerate(a) if i)


def _as_poly(p):
    return _trim(Fraction(c) for c in p)


# ---------------------------------------------------------------- QRat


class QRat:
    """Element of Q(q) in lowest terms with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=(1,), _reduced=False):
        num = _as_poly(num) if not _reduced else num
        den = _as_poly(den) if not _reduced else den
        if not den:
            raise PoleError("zero denominator")
        if not _reduced:
            if not num:
                den = (Fraction(1),)
            else:
                g = pgcd(num, den)
                if len(g) > 1:
                    num, _ = pdivmod(num, g)
                    den, _ = pdivmod(den, g)
                lead = den[-1]
                if lead != 1:
                    num = pscale(num, 1 / lead)
                    den = pscale(den, 1 / lead)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls((c,) if c else (), (Fraction(1),), _reduced=True)

    @classmethod
    def q(cls):
        return cls((Fraction(0), Fraction(1)), (Fraction(1),), _reduced=True)

    @classmethod
    def poly(cls, coeffs):
        return cls(_as_poly(coeffs), (Fraction(1),), _reduced=True)

    # -- protocol

    def __repr__(self):
        return f"QRat({self})"

    def __str__(self):
        def fmt(p):
            if not p:
                return "0"
            terms = []
            for i, c in enumerate(p):
                if not c:
                    continue
                if i == 0:
                    terms.append(str(c))
                elif i == 1:
                    terms.append(f"{c}*q")
                else:
                    terms.append(f"{c}*q^{i}")
            return " + ".join(terms)

        if self.den == (1,):
            return fmt(self.num)
        return f"({fmt(self.num)})/({fmt(self.den)})"

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, QRat):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den == (1,) and self.num == _as_poly((other,))
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def is_poly(self):
        return self.den == (1,)

    # -- arithmetic

    @staticmethod
    def _lift(x):
        if isinstance(x, QRat):
            return x
        if isinstance(x, (int, Fraction)):
            return QRat.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return QRat(padd(self.num, other.num), self.den)
        g = pgcd(self.den, other.den)
        if len(g) == 1:
            return QRat(padd(pmul(self.num, other.den), pmul(other.num, self.den)),
                        pmul(self.den, other.den))
        d1, _ = pdivmod(self.den, g)
        d2, _ = pdivmod(other.den, g)
        return QRat(padd(pmul(self.num, d2), pmul(other.num, d1)), pmul(pmul(d1, d2), g))

    __radd__ = __add__

    def __neg__(self):
        return QRat(pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return QRat.const(0)
            return QRat(pscale(self.num, Fraction(other)), self.den, _reduced=True)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return QRat.const(0)
        # cross-cancel before multiplying
        g1 = pgcd(self.num, other.den) if len(other.den) > 1 else (1,)
        g2 = pgcd(other.num, self.den) if len(self.den) > 1 else (1,)
        n1, d2 = self.num, other.den
        if len(g1) > 1:
            n1, _ = pdivmod(n1, g1)
            d2, _ = pdivmod(d2, g1)
        n2, d1 = other.num, self.den
        if len(g2) > 1:
            n2, _ = pdivmod(n2, g2)
            d1, _ = pdivmod(d1, g2)
        num = pmul(n1, n2)
        den = pmul(d1, d2)
        lead = den[-1]
        if lead != 1:
            num = pscale(num, 1 / lead)
            den = pscale(den, 1 / lead)
        return QRat(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise PoleError("division by the zero rational function")
        return QRat(self.den, self.num)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = QRat.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- evaluation and substitution

    def __call__(self, q0):
        return self.eval(q0)

    def eval(self, q0):
        q0 = Fraction(q0)
        d = peval(self.den, q0)
        if not d:
            raise PoleError(f"q = {q0} is a pole")
        return peval(self.num, q0) / d

    def has_pole_at(self, q0):
        return not peval(self.den, Fraction(q0))

    def reciprocal_arg(self):
        """The function q -> f(1/q)."""
        dn = len(self.num) - 1
        dd = len(self.den) - 1
        if not self.num:
            return self
        num = tuple(reversed(self.num))
        den = tuple(reversed(self.den))
        shift = dd - dn
        if shift > 0:
            num = (Fraction(0),) * shift + num
        elif shift < 0:
            den = (Fraction(0),) * (-shift) + den
        return QRat(num, den)

    def eval_at_reciprocal(self, x):
        """f(1/x); x = 0 gives the value at infinity."""
        return self.reciprocal_arg().eval(x)

    def valuation_at_zero(self):
        """Order of vanishing at q = 0 (negative for a pole); None for zero."""
        if not self.num:
            return None
        return _low(self.num) - _low(self.den)


def _low(p):
    for i, c in enumerate(p):
        if c:
            return i
    raise ValueError("zero polynomial")


def qr_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------- expansions


def laurent_at_zero(f, order):
    """Laurent coefficients of f at q = 0 for exponents low..order.

    Returns ``(low, coeffs)`` with ``coeffs[i]`` the coefficient of
    ``q**(low + i)`` and ``low = min(0, valuation)``.
    """
    if not f.num:
        return 0, [Fraction(0)] * (order + 1)
    a = _low(f.den)
    den = f.den[a:]
    low = min(0, -a + _low(f.num))
    n_needed = order + a + 1
    if n_needed <= 0:
        return low, []
    series = _series_div(f.num, den, n_needed)
    # series[k] is the coefficient of q^(k - a)
    coeffs = []
    for e in range(low, order + 1):
        k = e + a
        coeffs.append(series[k] if 0 <= k < len(series) else Fraction(0))
    return low, coeffs


def _series_div(num, den, n):
    d0 = den[0]
    out = []
    for k in range(n):
        s = num[k] if k < len(num) else Fraction(0)
        for i in range(1, min(k, len(den) - 1) + 1):
            s -= den[i] * out[k - i]
        out.append(s / d0)
    return out


def taylor_coeffs(f, order):
    """Coefficients of q^0..q^order at q = 0; f must be regular there."""
    v = f.valuation_at_zero()
    if v is not None and v < 0:
        raise PoleError("taylor expansion of a function with a pole at 0")
    low, coeffs = laurent_at_zero(f, order)
    return coeffs[-low:] if low else coeffs


def polynomial_part(f):
    """Quotient of num by den: the part of f that grows at infinity."""
    q, _ = pdivmod(f.num, f.den)
    return q


def principal_part_at_zero(f):
    """Terms c_k q^{-k} (k >= 1) of the Laurent expansion at 0, as {-k: c}."""
    v = f.valuation_at_zero()
    if v is None or v >= 0:
        return {}
    low, coeffs = laurent_at_zero(f, -1)
    return {low + i: c for i, c in enumerate(coeffs) if c}


def plus_part(f):
    """Keep the elementary fractions of f with poles at 0 and infinity.

    The result is a Laurent polynomial returned as a QRat with denominator q^a.
    """
    poly = polynomial_part(f)
    pp = principal_part_at_zero(f)
    if not pp:
        return QRat.poly(poly)
    a = -min(pp)
    num = [Fraction(0)] * (a + max(len(poly), 1))
    for e, c in pp.items():
        num[e + a] += c
    for i, c in enumerate(poly):
        num[i + a] += c
    den = [Fraction(0)] * a + [Fraction(1)]
    return QRat(num, den)


def residue_at_zero(f):
    low, coeffs = laurent_at_zero(f, -1)
    if low > -1:
        return Fraction(0)
    return coeffs[-1 - low]


def residue_at_infinity(f):
    """Res_{q=inf} f(q) dq, i.e. Res_{u=0} of -f(1/u)/u^2 du."""
    g = f.reciprocal_arg()
    # -g(u)/u^2: the residue is minus the coefficient of u^1 in g
    low, coeffs = laurent_at_zero(g, 1)
    return -coeffs[1 - low]


def residue_at(f, root):
    """Residue of f dq at a rational point."""
    root = Fraction(root)
    shifted = _shift(f, root)
    return residue_at_zero(shifted)


def _shift(f, c):
    # q -> q + c
    def comp(p):
        out = ()
        lin = (c, Fraction(1))
        for coef in reversed(p):
            out = padd(pmul(out, lin), (coef,))
        return out

    return QRat(comp(f.num), comp(f.den))


def eval_q(f, q0):
    return f.eval(q0)
