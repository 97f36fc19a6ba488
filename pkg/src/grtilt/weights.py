"""Exact combinatorics of GL(n) highest weights.

A dominant weight is a non-increasing tuple of integers, one entry per row of
the rank.  Negative entries are allowed and label rational (mixed) Schur
functors; tensor products of those are reduced to the classical
Littlewood-Richardson rule by twisting both factors with a power of the
determinant character and untwisting the result.

Everything here is pure and exact: weights are plain tuples, multiplicities
and dimensions are arbitrary-precision integers, and the expensive kernels
(`lr_tensor`) are memoised on their immutable arguments.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

Weight = tuple[int, ...]
WeightMultiset = dict[Weight, int]


class WeightError(ValueError):
    """Raised when a sequence fails to be a valid dominant weight."""


def as_weight(entries, n: int | None = None) -> Weight:
    """Validate and canonicalise a dominant weight (non-increasing ints).

    The empty weight is allowed only when the rank is explicitly zero, which
    happens for degenerate slots of relative flag setups.
    """
    w = tuple(int(a) for a in entries)
    if not w and n != 0:
        raise WeightError("empty weight")
    if n is not None and len(w) != n:
        raise WeightError(f"weight {w} has length {len(w)}, expected {n}")
    if any(a < b for a, b in zip(w, w[1:])):
        raise WeightError(f"weight {w} is not non-increasing")
    return w


def pad(w, n: int) -> Weight:
    """Extend a partition-like weight with trailing zeros to length n."""
    w = tuple(int(a) for a in w)
    if len(w) > n:
        if any(w[n:]):
            raise WeightError(f"cannot pad {w} to shorter length {n}")
        return w[:n]
    return w + (0,) * (n - len(w))


def conjugate(lam, length: int | None = None) -> Weight:
    """Transpose of a Young diagram (non-negative entries only).

    The result has ``lam[0]`` parts by default; ``length`` pads with zeros.
    """
    lam = as_weight(lam)
    if lam[-1] < 0:
        raise WeightError(f"conjugate needs a partition, got {lam}")
    width = lam[0]
    if length is None:
        length = width
    if length < width:
        raise WeightError(f"length {length} too short to conjugate {lam}")
    return tuple(sum(1 for a in lam if a > i) for i in range(length))


def dualize(lam, n: int | None = None) -> Weight:
    """Highest weight of the dual representation: reverse and negate."""
    lam = as_weight(lam, n)
    return tuple(-a for a in reversed(lam))


def weyl_dim(gamma, n: int) -> int:
    """Dimension of the irreducible GL(n) module with highest weight gamma,
    by the Weyl product formula prod_{i<j} (g_i - g_j + j - i) / (j - i)."""
    gamma = as_weight(gamma, n)
    num = 1
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= gamma[i] - gamma[j] + j - i
            den *= j - i
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"Weyl formula not integral on {gamma}")
    return q


def gl2_tensor(lam, mu) -> WeightMultiset:
    """Clebsch-Gordan decomposition for GL(2), valid for mixed signs.

    S^lam (x) S^mu = sum of S^(lam1+mu1-t, lam2+mu2+t) over
    0 <= t <= min(lam1-lam2, mu1-mu2), each with multiplicity one.
    """
    lam = as_weight(lam, 2)
    mu = as_weight(mu, 2)
    return {
        (lam[0] + mu[0] - t, lam[1] + mu[1] + t): 1
        for t in range(min(lam[0] - lam[1], mu[0] - mu[1]) + 1)
    }


def lr_tensor(lam, mu, n: int) -> WeightMultiset:
    """Decompose S^lam (x) S^mu for GL(n) by the Littlewood-Richardson rule.

    Mixed-sign weights are shifted by a determinant power to partitions,
    expanded classically, and unshifted.  The total dimension of the output
    is checked against the Weyl dimension formula on every fresh expansion.
    """
    lam = as_weight(lam, n)
    mu = as_weight(mu, n)
    return dict(_lr_cached(lam, mu, n))


@lru_cache(maxsize=None)
def _lr_cached(lam: Weight, mu: Weight, n: int):
    shift = max(0, -lam[-1], -mu[-1])
    a = tuple(x + shift for x in lam)
    b = tuple(x + shift for x in mu)
    if sum(b) > sum(a):
        a, b = b, a  # fewer strip boxes -> smaller search tree
    acc: WeightMultiset = {}
    for nu, m in _lr_partitions(a, b, n).items():
        key = tuple(x - 2 * shift for x in nu)
        acc[key] = acc.get(key, 0) + m
    lhs = weyl_dim(lam, n) * weyl_dim(mu, n)
    rhs = sum(m * weyl_dim(nu, n) for nu, m in acc.items())
    if lhs != rhs:
        raise ArithmeticError(f"LR dimension mismatch for {lam} (x) {mu}")
    return tuple(sorted(acc.items()))


def _lr_partitions(lam: Weight, mu: Weight, n: int) -> WeightMultiset:
    """Classical LR rule on partitions, truncated to at most n rows.

    Rows of mu are added to lam as horizontal strips; the lattice-word
    condition is enforced through the cumulative row counts of the strip
    placed one stage earlier (a strip may use row r only as far as the
    previous strip reached row r-1).
    """
    strips = [x for x in mu if x > 0]
    big = 1 << 60
    out: WeightMultiset = {}

    def place(shape: tuple[int, ...], prev_cum: tuple[int, ...], si: int) -> None:
        if si == len(strips):
            out[shape] = out.get(shape, 0) + 1
            return
        size = strips[si]
        new_shape = list(shape)
        cums = [0] * n

        def rows(r: int, rem: int, cum_before: int) -> None:
            if r == n:
                if rem == 0:
                    place(tuple(new_shape), tuple(cums), si + 1)
                return
            hs_cap = rem if r == 0 else shape[r - 1] - shape[r]
            lat_cap = (prev_cum[r - 1] if r > 0 else (big if si == 0 else 0)) - cum_before
            for a in range(min(rem, hs_cap, lat_cap), -1, -1):
                new_shape[r] = shape[r] + a
                cums[r] = cum_before + a
                rows(r + 1, rem - a, cum_before + a)

        rows(0, size, 0)

    place(pad(lam, n), (big,) * n, 0)
    return out


def pieri_wedge(lam, d: int, n: int) -> WeightMultiset:
    """Tensor S^lam with the d-th exterior power of the standard GL(n) module:
    add a vertical strip of d boxes (at most one per row), multiplicity free."""
    lam = as_weight(lam, n)
    if d < 0:
        raise WeightError(f"negative exterior power {d}")
    out: WeightMultiset = {}
    if d > n:
        return out
    for rows in itertools.combinations(range(n), d):
        nu = list(lam)
        for r in rows:
            nu[r] += 1
        if all(nu[i] >= nu[i + 1] for i in range(n - 1)):
            out[tuple(nu)] = 1
    return out


def cauchy_layers(cutoff: int) -> list[Weight]:
    """Two-row diagrams (m1, m2), 0 <= m2 <= m1 <= cutoff, in lex order.

    These index the graded pieces of Sym of a tensor product of a rank-two
    bundle with another bundle, as in the Cauchy identity.
    """
    if cutoff < 0:
        raise WeightError(f"negative cutoff {cutoff}")
    return [(m1, m2) for m1 in range(cutoff + 1) for m2 in range(m1 + 1)]


def zero_weight(n: int) -> Weight:
    return (0,) * n
