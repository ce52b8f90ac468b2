from fractions import Fraction

import pytest

from kfock.fock import (
    FockElement,
    FockError,
    KRingData,
    annihilate,
    commutator_check,
    create,
    heisenberg_report,
    point_embed,
)
from kfock.series import MultiSeries, TruncationPolicy, nu
from kfock.symgroup import ClassFunction, induce_product, p_n_classfn

POL = TruncationPolicy(R=4, D=4, K_t=0, T=0)
PT = KRingData.point()
RANK2 = KRingData(2, ((1, 1), (1, 2)))


def elem(series, ring=PT):
    return FockElement(series, ring)


def var(r, a=1):
    return MultiSeries.var(nu(r, a), POL)


def test_create_examples():
    one = FockElement.one(PT, POL)
    assert create(one, 1, 1).series == var(1)
    assert create(elem(var(2)), 2, 1).series == var(2) ** 2
    assert create(create(one, 1, 1), 2, 1) == create(create(one, 2, 1), 1, 1)


def test_annihilate_examples():
    assert annihilate(elem(var(2)), 2, (1,)).series == 2
    assert annihilate(elem(var(1) ** 2), 1, (1,)).series == var(1).scale(2)
    assert annihilate(elem(var(1)), 2, (1,)).series == 0


def test_commutator_examples():
    assert commutator_check(PT, 2, 2, 1, 1, POL)
    assert commutator_check(PT, 1, 2, 1, 1, POL)
    assert commutator_check(RANK2, 2, 2, 1, 2, POL)


def test_commutator_detects_wrong_pairing():
    # annihilating with the dual vector must give m * delta; the basis vector does not
    ring = RANK2
    m = 2
    E = FockElement(MultiSeries.var(nu(m, 1), POL), ring)
    out = annihilate(E, m, ring.dual_vector(1))
    assert out.series == MultiSeries.const(m * ring.chi(ring.dual_vector(1), ring.dual_vector(1)), POL)


def test_dual_basis():
    for a in (1, 2):
        for b in (1, 2):
            assert RANK2.chi(RANK2.basis_vector(a), RANK2.dual_vector(b)) == (1 if a == b else 0)


def test_ring_validation():
    with pytest.raises(FockError):
        KRingData(2, ((1, 0),))
    with pytest.raises(Exception):
        KRingData(1, ((0,),))
    with pytest.raises(FockError):
        KRingData(1, ((1,),), adams={1: ((2,),)})
    with pytest.raises(FockError):
        KRingData(1, ((1,),), adams={2: ((2,),), 4: ((3,),)})


def test_point_ring_heisenberg():
    checked, failures = heisenberg_report(PT, TruncationPolicy(R=6, D=6, K_t=0, T=0))
    assert checked == 36 and failures == []


def test_rank2_heisenberg():
    checked, failures = heisenberg_report(RANK2, TruncationPolicy(R=6, D=6, K_t=0, T=0))
    assert checked == 144 and failures == []


def test_leibniz():
    a = var(1) + var(2) * var(1)
    b = var(2) + var(1, 1) ** 2
    W = (1,)
    lhs = annihilate(elem(a * b), 1, W).series
    rhs = annihilate(elem(a), 1, W).series * b + a * annihilate(elem(b), 1, W).series
    assert lhs.truncate_weight(3) == rhs.truncate_weight(3)


def test_point_embed():
    for n in range(1, 5):
        assert point_embed(p_n_classfn(n), policy=POL).series == var(n)
    t2 = point_embed(ClassFunction.trivial(2), policy=POL).series
    assert t2 == (var(1) ** 2 + var(2)).scale(Fraction(1, 2))
    f, g = ClassFunction.irreducible((2,)), ClassFunction.irreducible((1, 1))
    prod = point_embed(induce_product(f, g), policy=POL)
    assert prod == point_embed(f, policy=POL) * point_embed(g, policy=POL)
    with pytest.raises(FockError):
        point_embed(f, ring=RANK2, policy=POL)


@pytest.mark.parametrize("n", range(1, 6))
def test_point_derivative_is_cyclic_trace(n):
    from kfock.symgroup import cyclic_trace, partitions_of

    pol = TruncationPolicy(R=n, D=n, K_t=0, T=0)
    for lam in partitions_of(n):
        f = ClassFunction.irreducible(lam)
        for r in range(1, n + 1):
            lhs = annihilate(point_embed(f, policy=pol), r, (1,))
            assert lhs == point_embed(cyclic_trace(f, r), policy=pol)
