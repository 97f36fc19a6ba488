"""The tilting collection on T*Gr(2,N) and its flop-side counterpart.

The collection has C(N,2) members: Schur functors of the tautological
subbundle with highest weight in the shifted box -1 <= l2 <= l1 <= N-4, and
for each -1 <= k <= N-3 the convolution of a two-sided complex whose terms
are determinant twists of exterior powers of the quotient,

    V(k,i) = det(V2)^(k+i) (x) Wedge^(N-3-k-2i) C^N/V2,

placed in degree i - n_plus(k) for i = -n_minus(k), ..., n_plus(k).  On the
flop side the same term pattern appears with the degrees reversed: the primed
term V'(k,i) sits in degree -n_minus(k) - i.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .bott import GrBundle, det_weight, wedge_weight
from .weights import Weight, WeightError, as_weight

BundleComplex = dict[int, GrBundle]


def n_plus(N: int, k: int) -> int:
    return (N - 3 - k) // 2


def n_minus(k: int) -> int:
    return (k + 1) // 2


def wedge_index(N: int, k: int, i: int) -> int:
    return N - 3 - k - 2 * i


def conv_range(N: int, k: int) -> range:
    return range(-n_minus(k), n_plus(N, k) + 1)


def schur_weights(N: int) -> list[Weight]:
    """Schur member weights, sorted by (l1, l2) descending."""
    return [
        (l1, l2)
        for l1 in range(N - 4, -2, -1)
        for l2 in range(l1, -2, -1)
    ]


def schur_bundle(N: int, lam, primed: bool = False) -> GrBundle:
    lam = as_weight(lam, 2)
    if primed:
        return GrBundle.term(N - 2, N, (0,) * (N - 2), lam)
    return GrBundle.term(2, N, lam, (0,) * (N - 2))


def term_bundle(N: int, k: int, i: int, primed: bool = False) -> GrBundle:
    m = wedge_index(N, k, i)
    if not 0 <= m <= N - 2:
        raise WeightError(f"term (k={k}, i={i}) has no valid exterior power for N={N}")
    if primed:
        return GrBundle.term(N - 2, N, wedge_weight(m, N - 2), det_weight(k + i, 2))
    return GrBundle.term(2, N, det_weight(k + i, 2), wedge_weight(m, N - 2))


@dataclass(frozen=True)
class CollectionMember:
    """One member: a Schur bundle or the complex underlying a convolution."""

    ident: str
    kind: str  # 'schur' | 'conv'
    primed: bool
    N: int
    lam: Weight | None = None
    k: int | None = None
    terms: tuple[tuple[int, int | None, GrBundle], ...] = ()

    def complex(self) -> BundleComplex:
        return {deg: bundle for deg, _, bundle in self.terms}

    def bundle(self) -> GrBundle:
        if self.kind != "schur":
            raise WeightError(f"{self.ident} is a complex, not a single bundle")
        return self.terms[0][2]


def _schur_member(N: int, lam: Weight, primed: bool) -> CollectionMember:
    suffix = "'" if primed else ""
    return CollectionMember(
        ident=f"E:{lam[0]},{lam[1]}{suffix}",
        kind="schur",
        primed=primed,
        N=N,
        lam=lam,
        terms=((0, None, schur_bundle(N, lam, primed)),),
    )


def _conv_member(N: int, k: int, primed: bool) -> CollectionMember:
    suffix = "'" if primed else ""
    np_, nm = n_plus(N, k), n_minus(k)
    terms = []
    for i in conv_range(N, k):
        deg = (-nm - i) if primed else (i - np_)
        terms.append((deg, i, term_bundle(N, k, i, primed)))
    terms.sort(key=lambda t: t[0])
    return CollectionMember(
        ident=f"K:{k}{suffix}",
        kind="conv",
        primed=primed,
        N=N,
        k=k,
        terms=tuple(terms),
    )


def collection(N: int, primed: bool = False) -> list[CollectionMember]:
    """All C(N,2) members, Schur part first (weights descending), then the
    convolutions by k ascending."""
    if N < 4:
        raise WeightError(f"collection needs N >= 4, got N={N}")
    members = [_schur_member(N, lam, primed) for lam in schur_weights(N)]
    members.extend(_conv_member(N, k, primed) for k in range(-1, N - 2))
    if len(members) != comb(N, 2):
        raise AssertionError(f"expected {comb(N, 2)} members, got {len(members)}")
    return members


def primed_collection(N: int) -> list[CollectionMember]:
    return collection(N, primed=True)


def parse_ident(token: str, N: int):
    """Resolve a member identifier to (label, complex).

    ``E:l1,l2`` is a Schur member, ``K:k`` a convolution, ``V:k,i`` one
    individual term; a trailing apostrophe selects the flop-side variant.
    """
    token = token.strip()
    primed = token.endswith("'")
    body = token[:-1] if primed else token
    try:
        head, rest = body.split(":", 1)
        nums = [int(x) for x in rest.split(",")]
    except ValueError as exc:
        raise WeightError(f"malformed member identifier {token!r}") from exc
    if head == "E" and len(nums) == 2:
        lam = as_weight(nums, 2)
        if not -1 <= lam[1] <= lam[0] <= N - 4:
            raise WeightError(f"Schur weight {lam} out of range for N={N}")
        return token, {0: schur_bundle(N, lam, primed)}
    if head == "K" and len(nums) == 1:
        k = nums[0]
        if not -1 <= k <= N - 3:
            raise WeightError(f"convolution index {k} out of range for N={N}")
        return token, _conv_member(N, k, primed).complex()
    if head == "V" and len(nums) == 2:
        k, i = nums
        return token, {0: term_bundle(N, k, i, primed)}
    raise WeightError(f"unknown member identifier {token!r}")
