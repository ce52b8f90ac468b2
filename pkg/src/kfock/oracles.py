"""Brute-force computations used to validate the closed forms.

These routines enumerate monomials, permutations and cosets directly.  They
never call the closed-form J, S or correlator code they are meant to check.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb

from kfock.qfield import QRat
from kfock.series import QQ_Q, MultiSeries, exp_series, nu
from kfock.symgroup import (
    ClassFunction,
    as_partition,
    frobenius_ch,
    sym_power_char,
)


class OracleBudgetError(ValueError):
    pass


MAX_MONOMIALS = 10 ** 6
MAX_GROUP_N = 7


# ---------------------------------------------------------------- permutations


def permutation_of_type(cycle_type):
    """sigma(lam): consecutive cycles (1 2 .. l1)(l1+1 ..) as a 0-based image tuple."""
    images = []
    start = 0
    for part in as_partition(cycle_type):
        images.extend(start + (i + 1) % part for i in range(part))
        start += part
    return tuple(images)


def compose(a, b):
    """(a o b)[i] = a[b[i]]."""
    return tuple(a[i] for i in b)


def inverse(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def cycle_type(perm, subset=None):
    subset = range(len(perm)) if subset is None else subset
    seen = set()
    parts = []
    for i in subset:
        if i in seen:
            continue
        length = 0
        j = i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        parts.append(length)
    return as_partition(parts)


# ---------------------------------------------------------------- monomial traces


def _monomials(n, k):
    if n == 0:
        if k == 0:
            yield ()
        return
    if n == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in _monomials(n - 1, k - first):
            yield (first,) + rest


def monomials_fixed(n, k, lam):
    """Number of degree-k monomials in n variables fixed by a permutation of type lam."""
    lam = as_partition(lam)
    if sum(lam) != n:
        raise ValueError(f"cycle type {lam} is not a partition of {n}")
    if comb(n + k - 1, k) > MAX_MONOMIALS:
        raise OracleBudgetError("too many monomials to enumerate")
    sigma = permutation_of_type(lam)
    count = 0
    for e in _monomials(n, k):
        if all(e[sigma[i]] == e[i] for i in range(n)):
            count += 1
    return count


def sym_vn_classfn(n, k):
    """Character of Sym^k(V_n), V_n the standard (n-1)-dimensional representation."""
    if k == 0:
        return ClassFunction.trivial(n)
    return sym_power_char(n, k) - sym_power_char(n, k - 1)


def j_oracle(P, nmax=None, kmax=8):
    """1 - q + nu_1 + sum_{n=2}^{nmax} sum_{k<=kmax} ch(Sym^k V_n) q^k, coefficients in Q[q]."""
    pol = P.policy
    nmax = pol.D if nmax is None else nmax
    if nmax > min(pol.D, pol.R):
        raise OracleBudgetError("nmax must not exceed the policy's D and R")
    q = QRat.q()
    total = MultiSeries({(): 1 - q, ((nu(1), 1),): 1}, pol, QQ_Q)
    for n in range(2, nmax + 1):
        for k in range(kmax + 1):
            ch = frobenius_ch(sym_vn_classfn(n, k), pol)
            total = total + ch.to_qrat().scale(q ** k)
    return total


# ---------------------------------------------------------------- double cosets


def _young_generators(comp):
    gens = []
    start = 0
    for part in comp:
        for i in range(start, start + part - 1):
            gens.append((i, i + 1))
        start += part
    return gens


def double_coset_brute(lam, mu):
    """Orbits of S_mu x S_lam on S_n acting by g -> a o g o b; returns (count, sorted sizes)."""
    lam = tuple(int(x) for x in lam)
    mu = tuple(int(x) for x in mu)
    n = sum(lam)
    if n != sum(mu):
        raise ValueError("compositions of different sizes")
    if n > MAX_GROUP_N:
        raise OracleBudgetError(f"n = {n} exceeds the enumeration cap {MAX_GROUP_N}")
    left = _young_generators(mu)
    right = _young_generators(lam)
    seen = set()
    sizes = []
    for g in permutations(range(n)):
        if g in seen:
            continue
        orbit = {g}
        queue = deque([g])
        while queue:
            x = queue.popleft()
            for i, j in left:
                # swap the values i and j: (i j) o x
                y = tuple(j if v == i else i if v == j else v for v in x)
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
            for i, j in right:
                # x o (i j)
                y = list(x)
                y[i], y[j] = y[j], y[i]
                y = tuple(y)
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        seen |= orbit
        sizes.append(len(orbit))
    return len(sizes), sorted(sizes)


# ---------------------------------------------------------------- induced characters


def _blocks(young):
    out = []
    start = 0
    for part in young:
        out.append(tuple(range(start, start + part)))
        start += part
    return out


def induced_char_brute(young, factors, g):
    """Trace of g on the induced representation from S_young of the outer product of factors.

    Sums factor values over right-coset representatives r with r g r^{-1} in the
    Young subgroup.  ``g`` is a 0-based image tuple or a 1-based list of images.
    """
    young = tuple(int(x) for x in young)
    n = sum(young)
    if n > MAX_GROUP_N:
        raise OracleBudgetError(f"n = {n} exceeds the enumeration cap {MAX_GROUP_N}")
    if len(factors) != len(young) or any(f.n != b for f, b in zip(factors, young)):
        raise ValueError("one class function per block is required")
    g = tuple(g)
    if g and min(g) == 1:
        g = tuple(x - 1 for x in g)
    total = Fraction(0)
    for types in _coset_conjugate_types(young, g):
        value = Fraction(1)
        for f, lam in zip(factors, types):
            value *= f(lam)
        total += value
    return total


@lru_cache(maxsize=None)
def _coset_conjugate_types(young, g):
    """Per-block cycle types of r g r^{-1} over right-coset representatives r landing in S_young."""
    n = len(g)
    blocks = _blocks(young)
    block_of = {i: b for b, blk in enumerate(blocks) for i in blk}
    reps = {}
    for x in permutations(range(n)):
        key = tuple(block_of[x[i]] for i in range(n))
        reps.setdefault(key, x)
    out = []
    for r in reps.values():
        c = compose(compose(r, g), inverse(r))
        if all(block_of[c[i]] == block_of[i] for i in range(n)):
            out.append(tuple(cycle_type(c, blk) for blk in blocks))
    return tuple(out)


# ---------------------------------------------------------------- string chain and h_k


def _j_direct(P, q0):
    """J(nu, q0) evaluated from its exponential form with rational arithmetic only."""
    q0 = Fraction(q0)
    expo = MultiSeries({((nu(r), 1),): Fraction(1, r) / (1 - q0 ** r) for r in P.nu_indices()},
                       P.policy)
    return exp_series(expo).scale(1 - q0)


def string_chain(P, q0, m):
    """<1/(1-qL), 1, ..., 1>_{0,m} built upward from the one-point function."""
    q0 = Fraction(q0)
    if m < 1:
        raise ValueError("need at least one point")
    if q0 == 1 or any(q0 ** r == 1 for r in range(2, P.R + 1)):
        raise ValueError(f"q = {q0} is excluded")
    pol = P.policy
    nu1 = MultiSeries.var(nu(1), pol)
    value = _j_direct(P, q0) - (1 - q0) - nu1
    B = 1 / (1 - q0)
    for k in range(1, m):
        # adding a 1 to a list of k insertions (one geometric, k-1 ones)
        corr = value.scale(B)
        if k == 1:
            corr = corr + nu1.scale(B)
        elif k == 2:
            corr = corr + B
        value = corr
    return value


def trivial_rep_genfun(P, kmin=1):
    """sum_{k>=kmin} ch(triv_{S_k}) up to the policy's weight."""
    total = MultiSeries.zero(P.policy)
    for k in range(kmin, P.policy.D + 1):
        total = total + frobenius_ch(ClassFunction.trivial(k), P.policy)
    return total
