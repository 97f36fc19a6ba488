"""Borel-Weil-Bott pushforwards for Grassmannian bundles.

The solver works in the standard polarity throughout: a formal summand
S^alpha(sub) (x) S^beta(quot) on Gr(k, E) pushes forward to
S^{w . (beta, alpha)} E placed in degree ell(w), where the dot action is
w . x = w(x + rho) - rho with rho = (n-1, ..., 1, 0).  Dual-polarity input is
converted by dualising the slot weights, and dual-polarity output by
dualising the resulting weights; both directions are involutions, so a single
concatenation convention is maintained.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .weights import (
    Weight,
    WeightError,
    as_weight,
    dualize,
    gl2_tensor,
    lr_tensor,
    weyl_dim,
    zero_weight,
)


def dot_normalize(w, n: int | None = None):
    """Normalise an integer sequence under the rho-shifted Weyl action.

    Returns None when w + rho has a repeated entry (the cohomology vanishes),
    otherwise ``(dominant, length)`` where ``length`` counts the inversions
    used to sort w + rho into strictly decreasing order.
    """
    w = tuple(int(a) for a in w)
    if n is not None and len(w) != n:
        raise WeightError(f"sequence {w} has length {len(w)}, expected {n}")
    return _dot_cached(w)


@lru_cache(maxsize=None)
def _dot_cached(w: Weight):
    n = len(w)
    shifted = [a + (n - 1 - i) for i, a in enumerate(w)]
    if len(set(shifted)) != n:
        return None
    inversions = 0
    for i in range(n):
        si = shifted[i]
        for j in range(i + 1, n):
            if si < shifted[j]:
                inversions += 1
    shifted.sort(reverse=True)
    dominant = tuple(v - (n - 1 - i) for i, v in enumerate(shifted))
    return dominant, inversions


@lru_cache(maxsize=None)
def push_term(alpha: Weight, beta: Weight):
    """Direct image of S^alpha(sub) (x) S^beta(quot) along a Grassmannian
    bundle whose total bundle E has rank len(alpha) + len(beta).

    Standard polarity: the concatenation is (beta, alpha).  Returns
    ``(weight on E, cohomological degree)`` or None.
    """
    return dot_normalize(beta + alpha)


def relative_pushforward(alpha, beta, fiber_ranks: tuple[int, int]):
    """Fiberwise Borel-Weil-Bott for Gr(a, E) with rank(E) = a + b."""
    a, b = fiber_ranks
    alpha = as_weight(alpha, a)
    beta = as_weight(beta, b)
    return push_term(alpha, beta)


def _slot_tensor(u: Weight, v: Weight, rank: int):
    """Tensor decomposition of two weights living on a slot of given rank."""
    if rank == 0:
        return {(): 1}
    if rank == 1:
        return {(u[0] + v[0],): 1}
    if rank == 2:
        return gl2_tensor(u, v)
    return lr_tensor(u, v, rank)


@dataclass(frozen=True)
class GrBundle:
    """Formal integer combination of irreducible summands on Gr(sub_rank, N).

    Each term is ``(alpha, beta, coeff)`` with alpha on the tautological
    subbundle and beta on the quotient; the pair (sub_rank, ambient) acts as
    the side marker distinguishing the rank-2 and corank-2 presentations.
    """

    sub_rank: int
    ambient: int
    terms: tuple[tuple[Weight, Weight, int], ...]

    @property
    def quot_rank(self) -> int:
        return self.ambient - self.sub_rank

    @staticmethod
    def make(sub_rank: int, ambient: int, terms) -> "GrBundle":
        if not 1 <= sub_rank < ambient:
            raise WeightError(f"bad ranks Gr({sub_rank},{ambient})")
        acc: dict[tuple[Weight, Weight], int] = {}
        for alpha, beta, coeff in terms:
            alpha = as_weight(alpha, sub_rank)
            beta = as_weight(beta, ambient - sub_rank)
            if coeff:
                key = (alpha, beta)
                acc[key] = acc.get(key, 0) + int(coeff)
        clean = tuple(
            (a, b, c) for (a, b), c in sorted(acc.items()) if c != 0
        )
        return GrBundle(sub_rank, ambient, clean)

    @staticmethod
    def term(sub_rank: int, ambient: int, alpha, beta, coeff: int = 1) -> "GrBundle":
        return GrBundle.make(sub_rank, ambient, [(alpha, beta, coeff)])

    @staticmethod
    def structure_sheaf(sub_rank: int, ambient: int) -> "GrBundle":
        return GrBundle.term(
            sub_rank, ambient, zero_weight(sub_rank), zero_weight(ambient - sub_rank)
        )

    def is_zero(self) -> bool:
        return not self.terms

    def same_side(self, other: "GrBundle") -> bool:
        return (self.sub_rank, self.ambient) == (other.sub_rank, other.ambient)

    def __add__(self, other: "GrBundle") -> "GrBundle":
        if not self.same_side(other):
            raise WeightError("cannot add bundles on different Grassmannians")
        return GrBundle.make(self.sub_rank, self.ambient, self.terms + other.terms)

    def scaled(self, c: int) -> "GrBundle":
        return GrBundle.make(
            self.sub_rank, self.ambient, [(a, b, c * m) for a, b, m in self.terms]
        )

    def dual(self) -> "GrBundle":
        return GrBundle.make(
            self.sub_rank,
            self.ambient,
            [(dualize(a), dualize(b), c) for a, b, c in self.terms],
        )

    def tensor(self, other: "GrBundle") -> "GrBundle":
        if not self.same_side(other):
            raise WeightError("cannot tensor bundles on different Grassmannians")
        out: list[tuple[Weight, Weight, int]] = []
        for a1, b1, c1 in self.terms:
            for a2, b2, c2 in other.terms:
                subs = _slot_tensor(a1, a2, self.sub_rank)
                quots = _slot_tensor(b1, b2, self.quot_rank)
                c = c1 * c2
                for sa, ma in subs.items():
                    for qb, mb in quots.items():
                        out.append((sa, qb, c * ma * mb))
        return GrBundle.make(self.sub_rank, self.ambient, out)

    def rank(self) -> int:
        return sum(
            c * weyl_dim(a, self.sub_rank) * weyl_dim(b, self.quot_rank)
            for a, b, c in self.terms
        )


def wedge_weight(d: int, rank: int) -> Weight:
    """Highest weight of the d-th exterior power, (1,...,1,0,...,0)."""
    if not 0 <= d <= rank:
        raise WeightError(f"exterior power {d} out of range for rank {rank}")
    return (1,) * d + (0,) * (rank - d)


def det_weight(power: int, rank: int) -> Weight:
    return (power,) * rank


@dataclass
class GradedGModule:
    """Value of a graded cohomology or Ext computation.

    ``parts`` maps cohomological degree to a multiset of length-``rank``
    dominant weights.  Weights are always stored for the standard module
    (Schur functors of the ambient space); ``dual`` records that the object
    being described is the dual, whose weights are recovered by dualising.
    """

    rank: int
    parts: dict[int, dict[Weight, int]] = field(default_factory=dict)
    dual: bool = False

    @staticmethod
    def normalised(rank: int, parts, dual: bool = False) -> "GradedGModule":
        clean: dict[int, dict[Weight, int]] = {}
        for deg in sorted(parts):
            entries = {w: m for w, m in sorted(parts[deg].items()) if m != 0}
            if entries:
                clean[deg] = entries
        return GradedGModule(rank, clean, dual)

    def dualized(self) -> "GradedGModule":
        return GradedGModule.normalised(
            self.rank,
            {
                deg: {dualize(w): m for w, m in ws.items()}
                for deg, ws in self.parts.items()
            },
            not self.dual,
        )

    def is_zero(self) -> bool:
        return not self.parts

    def degrees(self) -> list[int]:
        return sorted(self.parts)

    def piece(self, deg: int) -> dict[Weight, int]:
        return self.parts.get(deg, {})

    def total_dims(self) -> dict[int, int]:
        return {
            deg: sum(m * weyl_dim(w, self.rank) for w, m in ws.items())
            for deg, ws in self.parts.items()
        }

    def invariant_dims(self) -> dict[int, int]:
        zero = zero_weight(self.rank)
        out = {}
        for deg, ws in self.parts.items():
            if zero in ws:
                out[deg] = ws[zero]
        return out

    def positive_part(self) -> "GradedGModule":
        return GradedGModule.normalised(
            self.rank,
            {d: ws for d, ws in self.parts.items() if d > 0},
            self.dual,
        )

    def shifted(self, s: int) -> "GradedGModule":
        return GradedGModule.normalised(
            self.rank, {d + s: dict(ws) for d, ws in self.parts.items()}, self.dual
        )


def accumulate(parts: dict[int, dict[Weight, int]], deg: int, w: Weight, m: int) -> None:
    bucket = parts.setdefault(deg, {})
    total = bucket.get(w, 0) + m
    if total:
        bucket[w] = total
    else:
        del bucket[w]
        if not bucket:
            del parts[deg]


def cohomology_gr(bundle: GrBundle) -> GradedGModule:
    """Sheaf cohomology of a GrBundle on the absolute Grassmannian, term by
    term through the dot-action normalisation."""
    parts: dict[int, dict[Weight, int]] = {}
    for alpha, beta, coeff in bundle.terms:
        res = push_term(alpha, beta)
        if res is not None:
            w, deg = res
            accumulate(parts, deg, w, coeff)
    return GradedGModule.normalised(bundle.ambient, parts)


def canonical_bundle(N: int) -> GrBundle:
    """omega of Gr(2,N): det(V2)^N (x) det(C^N)^(-2), written on the slots."""
    return GrBundle.term(2, N, det_weight(N - 2, 2), det_weight(-2, N - 2))
