from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from kfock.qfield import (
    PoleError,
    QRat,
    laurent_at_zero,
    plus_part,
    qr_arith,
    residue_at,
    residue_at_infinity,
    residue_at_zero,
    taylor_coeffs,
)

q = QRat.q()
F = Fraction


def test_arith_examples():
    assert qr_arith(1 / (1 - q), 1 / (1 + q), "add") == 2 / (1 - q ** 2)
    assert qr_arith(q, 1 / q, "mul") == 1
    assert qr_arith(1 / (q - 1), 1 / q, "sub") == 1 / (q * (q - 1))
    assert qr_arith(q, 1 + q, "div") == q / (1 + q)
    with pytest.raises(ZeroDivisionError):
        qr_arith(q, QRat.const(0), "div")


def test_canonical_form():
    f = (2 * q + 2) / (4 * q ** 2 - 4)
    assert f.den[-1] == 1
    assert f == 1 / (2 * (q - 1))


def test_plus_part_examples():
    assert plus_part(1 / (1 - q)) == 0
    assert plus_part(q ** 2 / (q - 1)) == q + 1
    assert plus_part(1 / (q * (1 - q))) == 1 / q


def test_residue_at_infinity_examples():
    assert residue_at_infinity(1 / (q - 1)) == -1
    assert residue_at_infinity(QRat.const(1)) == 0
    assert residue_at_infinity(1 / q) == -1
    assert residue_at_infinity(q) == 0
    assert residue_at_infinity(1 / q ** 2) == 0


def test_laurent_examples():
    assert laurent_at_zero(1 / (1 - q), 3) == (0, [1, 1, 1, 1])
    low, coeffs = laurent_at_zero(1 / q, 1)
    assert low == -1 and coeffs == [1, 0, 0]
    assert laurent_at_zero(1 / (2 * (1 + q)), 2) == (0, [F(1, 2), F(-1, 2), F(1, 2)])


def test_eval_examples():
    assert (1 / (1 - q)).eval(F(1, 2)) == 2
    assert (1 / (1 - q ** 2)).eval(F(1, 2)) == F(4, 3)
    with pytest.raises(PoleError):
        (1 / (1 - q)).eval(1)


def test_reciprocal_argument():
    f = 1 / (q - 1)
    assert f.reciprocal_arg() == q / (1 - q)
    assert f.eval_at_reciprocal(F(1, 2)) == 1
    assert f.eval_at_reciprocal(0) == 0


def test_taylor_rejects_pole():
    with pytest.raises(PoleError):
        taylor_coeffs(1 / q, 2)


# ---------------------------------------------------------------- properties

coef = st.fractions(min_value=-3, max_value=3, max_denominator=3)
roots = st.sampled_from([F(1), F(-1), F(2), F(1, 2), F(-2), F(3)])


@st.composite
def qrats(draw):
    num = [draw(coef) for _ in range(draw(st.integers(0, 4)))]
    den = QRat.const(1)
    for r in draw(st.lists(roots, max_size=3)):
        den = den * (q - r)
    den = den * q ** draw(st.integers(0, 2))
    return QRat(num) / den


@settings(max_examples=80, deadline=None)
@given(qrats(), qrats(), st.fractions(min_value=-2, max_value=2, max_denominator=3))
def test_plus_part_linear_idempotent(f, g, c):
    assert plus_part(f + g) == plus_part(f) + plus_part(g)
    assert plus_part(f * c) == plus_part(f) * c
    assert plus_part(plus_part(f)) == plus_part(f)


@settings(max_examples=80, deadline=None)
@given(qrats())
def test_plus_part_decomposition(f):
    p = plus_part(f)
    rest = f - p
    # rest has no principal part at 0 and vanishes at infinity
    assert rest.valuation_at_zero() is None or rest.valuation_at_zero() >= 0
    assert len(rest.num) < len(rest.den) or not rest.num


def _rational_roots(den):
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(den)], x)
    return {F(int(r.p), int(r.q)) for r in sympy.roots(poly, filter="Q")}


@settings(max_examples=80, deadline=None)
@given(qrats())
def test_residues_sum_to_zero(f):
    poles = _rational_roots(f.den)
    total = residue_at_infinity(f) + sum(residue_at(f, r) for r in poles)
    assert total == 0


@settings(max_examples=40, deadline=None)
@given(qrats())
def test_residue_at_zero_matches_shifted(f):
    assert residue_at(f, 0) == residue_at_zero(f)
