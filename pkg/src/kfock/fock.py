"""Colored Fock space over finite-rank K-ring data.

Elements are polynomials in ``nu_{r,a}`` (``1 <= a <= N``).  Creation is
multiplication by ``nu_{r,a}``; annihilation by ``W = sum_b c^b Phi_b`` is the
derivation ``m * sum_b c^b d/dnu_{m,b}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from kfock.series import MultiSeries, TruncationPolicy, derive, mono_from_dict, nu
from kfock.symgroup import frobenius_ch


class FockError(ValueError):
    pass


# ---------------------------------------------------------------- small exact linear algebra


def _mat(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def mat_mul(a, b):
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
                       for j in range(len(b[0]))) for i in range(len(a)))


def mat_identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_inverse(m):
    n = len(m)
    aug = [list(row) + list(e) for row, e in zip(m, mat_identity(n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise FockError("pairing matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


# ---------------------------------------------------------------- K-ring data


@dataclass(frozen=True)
class KRingData:
    """Basis Phi_1..Phi_N with Euler pairing and Adams matrices.

    ``adams[m]`` acts on coordinate column vectors; missing entries default to
    the identity.  ``unit_index`` is 1-based, like the colors.
    """

    N: int
    pairing: tuple
    adams: dict = field(default_factory=dict, compare=False, hash=False)
    unit_index: int = 1

    def __post_init__(self):
        p = _mat(self.pairing)
        if len(p) != self.N or any(len(row) != self.N for row in p):
            raise FockError(f"pairing must be {self.N}x{self.N}")
        object.__setattr__(self, "pairing", p)
        object.__setattr__(self, "dual", mat_inverse(p))
        adams = {int(m): _mat(a) for m, a in self.adams.items()}
        if 1 in adams and adams[1] != mat_identity(self.N):
            raise FockError("psi^1 must be the identity")
        for m in adams:
            for l in adams:
                if m * l in adams and mat_mul(adams[m], adams[l]) != adams[m * l]:
                    raise FockError(f"psi^{m} psi^{l} != psi^{m * l}")
        object.__setattr__(self, "adams", adams)
        if not 1 <= self.unit_index <= self.N:
            raise FockError("unit index out of range")

    @classmethod
    def point(cls):
        return cls(1, ((1,),))

    def psi(self, m, vec):
        a = self.adams.get(m)
        vec = tuple(Fraction(x) for x in vec)
        if a is None:
            return vec
        return tuple(sum((a[i][j] * vec[j] for j in range(self.N)), Fraction(0))
                     for i in range(self.N))

    def chi(self, u, v):
        """Euler characteristic chi(U (x) V) for coordinate vectors in the Phi basis."""
        return sum((Fraction(u[i]) * self.pairing[i][j] * v[j]
                    for i in range(self.N) for j in range(self.N)), Fraction(0))

    def dual_vector(self, a):
        """Coordinates of Phi^a (1-based), i.e. row a of the inverse pairing."""
        return self.dual[a - 1]

    def basis_vector(self, a):
        return tuple(Fraction(int(i == a - 1)) for i in range(self.N))


# ---------------------------------------------------------------- Fock elements


class FockElement:
    __slots__ = ("series", "ring")

    def __init__(self, series, ring):
        for v in series.variables():
            kind, _, a = v
            if kind != 0 or a > ring.N:
                raise FockError(f"variable {v} is not a nu-variable of a rank {ring.N} ring")
        self.series = series
        self.ring = ring

    @classmethod
    def one(cls, ring, policy):
        return cls(MultiSeries.const(1, policy), ring)

    def __eq__(self, other):
        if isinstance(other, FockElement):
            return self.ring == other.ring and self.series == other.series
        return self.series == other

    def __hash__(self):
        return hash(self.series)

    def __repr__(self):
        return f"FockElement({self.series})"

    def __add__(self, other):
        return FockElement(self.series + other.series, self.ring)

    def __sub__(self, other):
        return FockElement(self.series - other.series, self.ring)

    def __mul__(self, other):
        if isinstance(other, FockElement):
            return FockElement(self.series * other.series, self.ring)
        return FockElement(self.series * other, self.ring)


def create(E, r, a):
    """Multiply by nu_{r,a}; terms beyond the policy are dropped."""
    if not 1 <= a <= E.ring.N:
        raise FockError(f"color {a} out of range")
    if r > E.series.policy.R:
        raise FockError(f"index {r} exceeds R = {E.series.policy.R}")
    v = MultiSeries.var(nu(r, a), E.series.policy)
    return FockElement(E.series * v, E.ring)


def annihilate(E, m, W):
    """Apply iota_{-m}(W) = m * sum_b W[b] d/dnu_{m,b}."""
    if len(W) != E.ring.N:
        raise FockError("coordinate vector has the wrong length")
    pol = E.series.policy
    out = MultiSeries.zero(pol)
    if m > pol.R:
        return FockElement(out, E.ring)
    for b, c in enumerate(W, start=1):
        if c:
            out = out + derive(E.series, nu(m, b)).scale(Fraction(c) * m)
    return FockElement(out, E.ring)


def spanning_monomials(N, policy, max_weight):
    """Monomials in nu_{r,a} (r <= R, a <= N) of weighted degree <= max_weight."""
    vars_ = [(r, a) for r in range(1, policy.R + 1) for a in range(1, N + 1)]
    out = []

    def rec(i, weight, exps):
        if i == len(vars_):
            out.append(mono_from_dict({nu(r, a): e for (r, a), e in exps.items()}))
            return
        r, a = vars_[i]
        e = 0
        while weight + r * e <= max_weight:
            if e:
                exps[(r, a)] = e
            rec(i + 1, weight + r * e, exps)
            e += 1
        exps.pop((r, a), None)

    rec(0, 0, {})
    return out


def expected_commutator(ring, m, l, a, W):
    """Scalar m * delta_{m,l} * chi(W (x) Phi^a), through the inverse pairing."""
    if m != l:
        return Fraction(0)
    return m * ring.chi(W, ring.dual_vector(a))


def commutator_check(ring, m, l, a, b, policy=None, W=None):
    """Check [iota_{-m}(W), nu_{l,a}] = m delta_{m,l} chi(W (x) Phi^a) on a spanning set.

    ``W`` defaults to Phi_b.  The spanning set is every monomial whose product
    with nu_{l,a} still fits the policy.
    """
    policy = policy or TruncationPolicy(R=6, D=6, K_t=0, T=0)
    W = tuple(Fraction(x) for x in (W if W is not None else ring.basis_vector(b)))
    expected = expected_commutator(ring, m, l, a, W)
    if l > policy.R or policy.D < l:
        return True
    for mono in spanning_monomials(ring.N, policy, policy.D - l):
        E = FockElement(MultiSeries({mono: 1}, policy), ring)
        lhs = annihilate(create(E, l, a), m, W) - create(annihilate(E, m, W), l, a)
        if lhs.series != E.series.scale(expected):
            return False
    return True


def heisenberg_report(ring, policy):
    """Commutator checks over all (m, l, a, b) up to R; returns (checked, failures)."""
    failures = []
    checked = 0
    rng = range(1, ring.N + 1)
    for m, l in product(range(1, policy.R + 1), repeat=2):
        for a, b in product(rng, rng):
            checked += 1
            if not commutator_check(ring, m, l, a, b, policy):
                failures.append({"m": m, "l": l, "alpha": a, "beta": b})
    return checked, failures


def point_embed(f, ring=None, policy=None):
    """Frobenius characteristic of a class function as a point Fock element."""
    ring = ring or KRingData.point()
    if ring.N != 1:
        raise FockError("point_embed needs a rank-1 ring")
    return FockElement(frobenius_ch(f, policy), ring)
