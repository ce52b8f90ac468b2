"""Class functions on symmetric groups and the Frobenius characteristic map.

Partitions are weakly decreasing tuples of positive integers.  A
:class:`ClassFunction` stores one rational value per partition of ``n``.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, prod

from kfock.series import MultiSeries, SeriesError, TruncationPolicy, mono_from_dict, nu


class SymGroupError(ValueError):
    pass


# ---------------------------------------------------------------- partitions


@lru_cache(maxsize=None)
def partitions_of(n):
    """All partitions of n in reverse-lexicographic order, e.g. (3,), (2, 1), (1, 1, 1)."""
    if n < 0:
        raise SymGroupError("negative n")

    def gen(rest, largest):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, largest), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(gen(n, n))


def as_partition(parts):
    parts = tuple(sorted((int(p) for p in parts if p), reverse=True))
    if any(p < 0 for p in parts):
        raise SymGroupError(f"negative part in {parts}")
    return parts


def z_of(lam):
    """Centralizer order prod_k k^{m_k} m_k!."""
    return prod(k ** m * factorial(m) for k, m in Counter(lam).items())


def union(alpha, beta):
    return as_partition(alpha + beta)


# ---------------------------------------------------------------- characters


def _beta_set(lam, length):
    # beta-numbers (first-column hook lengths) padded to a fixed length
    lam = list(lam) + [0] * (length - len(lam))
    return tuple(lam[i] + length - 1 - i for i in range(length))


@lru_cache(maxsize=None)
def _mn(beta, mu):
    # Murnaghan-Nakayama on beta-sets: remove a rim hook of size mu[0] by
    # moving a bead from b to b - r, with sign (-1)^{beads strictly between}
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    beads = set(beta)
    total = 0
    for b in beta:
        if b - r >= 0 and (b - r) not in beads:
            between = sum(1 for c in beta if b - r < c < b)
            new = tuple(sorted((beads - {b}) | {b - r}, reverse=True))
            total += (-1) ** between * _mn(new, rest)
    return total


def irreducible_character(lam, mu):
    """chi^lam evaluated on the class of cycle type mu."""
    lam, mu = as_partition(lam), as_partition(mu)
    if sum(lam) != sum(mu):
        raise SymGroupError(f"size mismatch {lam} vs {mu}")
    length = max(len(lam), 1)
    return _mn(_beta_set(lam, length), mu)


@lru_cache(maxsize=None)
def character_table(n):
    """Rows indexed by irreducible labels, columns by classes, both partitions_of(n)."""
    parts = partitions_of(n)
    return tuple(tuple(irreducible_character(l, m) for m in parts) for l in parts)


class ClassFunction:
    """A rational-valued class function on S_n."""

    __slots__ = ("n", "values")

    def __init__(self, n, values):
        self.n = n
        vals = {}
        for lam in partitions_of(n):
            vals[lam] = Fraction(values.get(lam, 0))
        extra = set(values) - set(vals)
        if extra:
            raise SymGroupError(f"values on non-partitions of {n}: {sorted(extra)}")
        self.values = vals

    @classmethod
    def from_fn(cls, n, fn):
        return cls(n, {lam: fn(lam) for lam in partitions_of(n)})

    @classmethod
    def irreducible(cls, lam):
        lam = as_partition(lam)
        return cls.from_fn(sum(lam), lambda mu: irreducible_character(lam, mu))

    @classmethod
    def trivial(cls, n):
        return cls.from_fn(n, lambda mu: 1)

    @classmethod
    def sign(cls, n):
        return cls.from_fn(n, lambda mu: (-1) ** (n - len(mu)))

    @classmethod
    def scalar(cls, c):
        return cls(0, {(): c})

    def __call__(self, lam):
        return self.values[as_partition(lam)]

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    def __hash__(self):
        return hash((self.n, tuple(self.values.items())))

    def __repr__(self):
        return f"ClassFunction({self.n}, {dict(self.values)})"

    def _same(self, other):
        if other.n != self.n:
            raise SymGroupError(f"class functions on S_{self.n} and S_{other.n}")

    def __add__(self, other):
        self._same(other)
        return ClassFunction(self.n, {k: v + other.values[k] for k, v in self.values.items()})

    def __sub__(self, other):
        self._same(other)
        return ClassFunction(self.n, {k: v - other.values[k] for k, v in self.values.items()})

    def __neg__(self):
        return ClassFunction(self.n, {k: -v for k, v in self.values.items()})

    def scale(self, c):
        return ClassFunction(self.n, {k: v * c for k, v in self.values.items()})

    def __mul__(self, other):
        """Induction product (see :func:`induce_product`)."""
        return induce_product(self, other)

    def as_list(self):
        return [self.values[lam] for lam in partitions_of(self.n)]


def p_n_classfn(n):
    """The virtual character equal to n on n-cycles and 0 elsewhere."""
    if n < 1:
        raise SymGroupError("p_n needs n >= 1")
    return ClassFunction(n, {(n,): n})


def inner_product(f, g):
    f._same(g)
    return sum((Fraction(f.values[l]) * g.values[l] / z_of(l) for l in partitions_of(f.n)),
               Fraction(0))


def decompose(f):
    """Multiplicities of the irreducibles in f, keyed by label."""
    return {lam: inner_product(f, ClassFunction.irreducible(lam)) for lam in partitions_of(f.n)}


# ---------------------------------------------------------------- induction and traces


def _splits(mu, a):
    """Distinct ways of writing mu = alpha u beta with |alpha| = a."""
    counts = Counter(mu)
    keys = sorted(counts, reverse=True)
    seen = []
    for choice in product(*(range(counts[k] + 1) for k in keys)):
        if sum(k * c for k, c in zip(keys, choice)) != a:
            continue
        alpha = as_partition([k for k, c in zip(keys, choice) for _ in range(c)])
        beta = as_partition([k for k, c in zip(keys, choice) for _ in range(counts[k] - c)])
        seen.append((alpha, beta))
    return seen


def induce_product(f, g):
    """Character of Ind from S_a x S_b to S_{a+b} of f (x) g.

    The value at mu is z_mu * sum over mu = alpha u beta of
    f(alpha) g(beta) / (z_alpha z_beta).
    """
    n = f.n + g.n

    def value(mu):
        s = Fraction(0)
        for alpha, beta in _splits(mu, f.n):
            s += f.values[alpha] * g.values[beta] / (z_of(alpha) * z_of(beta))
        return s * z_of(mu)

    return ClassFunction.from_fn(n, value)


def restrict(f, split):
    """Values of f on S_a x S_b, keyed by pairs of cycle types."""
    a, b = split
    if a < 0 or b < 0 or a + b != f.n:
        raise SymGroupError(f"split {split} does not match n = {f.n}")
    return {(alpha, beta): f.values[union(alpha, beta)]
            for alpha in partitions_of(a) for beta in partitions_of(b)}


def cyclic_trace(f, r):
    """Class function mu -> f((r) u mu) on S_{n-r}."""
    if r < 1 or r > f.n:
        raise SymGroupError(f"cannot trace an {r}-cycle out of S_{f.n}")
    return ClassFunction.from_fn(f.n - r, lambda mu: f.values[union((r,), mu)])


def frobenius_ch(f, policy=None):
    """sum_lam f(lam) nu_lam / z_lam as a MultiSeries (homogeneous of weight n)."""
    policy = policy or TruncationPolicy(R=max(f.n, 1), D=f.n, K_t=0, T=0)
    if f.n > policy.D:
        raise SeriesError(f"weight {f.n} does not fit in {policy}")
    terms = {}
    for lam in partitions_of(f.n):
        c = f.values[lam]
        if c:
            m = mono_from_dict(Counter(nu(part) for part in lam))
            terms[m] = c / z_of(lam)
    return MultiSeries(terms, policy)


def complete_homogeneous(n, policy=None):
    return frobenius_ch(ClassFunction.trivial(n), policy)


def sym_power_char(n, k):
    """Character of Sym^k(C^n): coefficient of x^k in prod_i 1/(1 - x^{lam_i})."""

    def value(lam):
        coeffs = [1] + [0] * k
        for part in lam:
            for d in range(part, k + 1):
                coeffs[d] += coeffs[d - part]
        return coeffs[k]

    return ClassFunction.from_fn(n, value)


# ---------------------------------------------------------------- double cosets


def _multinomial_factorial(c):
    return prod(factorial(x) for x in c)


def double_cosets(lam, mu):
    """Nonnegative integer matrices with row sums lam and column sums mu.

    Returns a list of ``(gamma, size)`` where ``size = lam! mu! / gamma!``.
    Compositions (any order, zero parts allowed) are accepted.
    """
    lam = tuple(int(x) for x in lam)
    mu = tuple(int(x) for x in mu)
    if any(x < 0 for x in lam + mu):
        raise SymGroupError("negative part")
    if sum(lam) != sum(mu):
        raise SymGroupError(f"sum mismatch: {lam} vs {mu}")
    out = []

    def rows(i, colleft, acc):
        if i == len(lam):
            if not any(colleft):
                out.append(tuple(acc))
            return
        for row in _compositions_bounded(lam[i], colleft):
            rows(i + 1, tuple(c - x for c, x in zip(colleft, row)), acc + [row])

    rows(0, mu, [])
    lm = _multinomial_factorial(lam) * _multinomial_factorial(mu)
    return [(g, lm // prod(_multinomial_factorial(row) for row in g)) for g in out]


def double_coset_total(lam, mu):
    """Sum of lam! mu! / gamma! over all gamma, by a row-by-row recursion.

    The memoized state is the vector of remaining column sums, so the count
    stays small even when the number of matrices is of order n!.
    """
    lam = tuple(int(x) for x in lam)
    mu = tuple(int(x) for x in mu)
    if sum(lam) != sum(mu):
        raise SymGroupError(f"sum mismatch: {lam} vs {mu}")
    # transposing gamma swaps the roles; recurse over the side with fewer column states
    if prod(x + 1 for x in mu) > prod(x + 1 for x in lam):
        lam, mu = mu, lam

    @lru_cache(maxsize=None)
    def rest(i, colleft):
        # sum over the remaining rows of prod_i lam_i! / prod_j gamma_ij!  (multinomials)
        if i == len(lam):
            return int(not any(colleft))
        top = factorial(lam[i])
        total = 0
        for row in _compositions_bounded(lam[i], colleft):
            total += top // _multinomial_factorial(row) * rest(i + 1, tuple(c - x for c, x in zip(colleft, row)))
        return total

    return rest(0, mu) * _multinomial_factorial(mu)


def _compositions_bounded(total, bounds):
    if not bounds:
        if total == 0:
            yield ()
        return
    first_max = min(total, bounds[0])
    rest_cap = sum(bounds[1:])
    for x in range(first_max, -1, -1):
        if total - x > rest_cap:
            break
        for tail in _compositions_bounded(total - x, bounds[1:]):
            yield (x,) + tail


def compositions(n, max_parts=None):
    """Compositions of n into positive parts."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for tail in compositions(n - first):
            if max_parts is None or len(tail) + 1 <= max_parts:
                yield (first,) + tail
