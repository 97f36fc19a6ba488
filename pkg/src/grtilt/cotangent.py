"""Ext groups between equivariant bundles on the cotangent bundle.

Pushing forward along T*Gr -> Gr turns Ext on the total space into sheaf
cohomology on the Grassmannian against Sym of the tangent bundle, which the
Cauchy identity splits into layers indexed by two-row diagrams mu:

    Ext^*(A, B) = (+)_mu  H^*( A^v (x) B (x) S^mu(sub)^v (x) S^mu(quot) ).

The sum is truncated at mu_1 <= cutoff; contributions only accumulate as the
cutoff grows, so every layer that is computed is computed exactly.

K-theory coordinates are taken in the basis of Schur functors of the
tautological subbundle with highest weights inside the 2 x (N-2) box, via the
Euler pairing on the zero section and an exact unimodular solve.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .bott import (
    GradedGModule,
    GrBundle,
    accumulate,
    cohomology_gr,
)
from .weights import (
    Weight,
    WeightError,
    as_weight,
    cauchy_layers,
    dualize,
    pad,
    weyl_dim,
    zero_weight,
)

BundleComplex = dict[int, GrBundle]


def default_cutoff(N: int) -> int:
    return 2 * N


def cauchy_layer_bundle(mu, sub_rank: int, ambient: int) -> GrBundle:
    """The mu-layer S^mu(sub)^v (x) S^mu(quot) of functions on T*Gr."""
    mu = as_weight(mu, 2)
    if mu[-1] < 0:
        raise WeightError(f"Cauchy layer must be a partition, got {mu}")
    alpha = dualize(pad(mu, sub_rank))
    beta = pad(mu, ambient - sub_rank)
    return GrBundle.term(sub_rank, ambient, alpha, beta)


def as_complex(x) -> BundleComplex:
    if isinstance(x, GrBundle):
        return {0: x}
    return {int(d): b for d, b in x.items()}


@dataclass
class ExtReport:
    """Graded Ext between two (complexes of) bundles, per Cauchy layer.

    ``graded`` accumulates contributions without cancellation; ``signed``
    records the K-theoretic tally where a term in complex degree p against a
    term in degree q carries the sign (-1)^(q-p) (same weight, same degree
    entries may cancel; distinct weights never do).
    """

    source: str
    target: str
    sub_rank: int
    ambient: int
    cutoff: int
    graded: GradedGModule
    signed: dict[int, dict[Weight, int]]
    layers: dict[Weight, GradedGModule] | None = None

    def total_dims(self) -> dict[int, int]:
        return self.graded.total_dims()

    def invariant_dims(self) -> dict[int, int]:
        return self.graded.invariant_dims()

    def positive_degrees(self) -> list[int]:
        return [d for d in self.graded.degrees() if d > 0]

    def layer(self, mu) -> GradedGModule:
        if self.layers is None:
            raise ValueError("report was computed without per-layer data")
        return self.layers.get(tuple(mu), GradedGModule(self.ambient))


def ext_cotangent(
    A,
    B,
    cutoff: int | None = None,
    keep_layers: bool = False,
    source: str = "A",
    target: str = "B",
) -> ExtReport:
    """Graded Ext between bundles or bundle complexes on the same side.

    Complexes are treated termwise as formal graded objects: a contribution
    in Ext^m between the degree-p and degree-q terms lands in total degree
    m + q - p.  No differentials are used and no cancellation is performed.
    """
    ca = as_complex(A)
    cb = as_complex(B)
    bundles = list(ca.values()) + list(cb.values())
    if not bundles:
        raise WeightError("empty input")
    side = (bundles[0].sub_rank, bundles[0].ambient)
    if any((b.sub_rank, b.ambient) != side for b in bundles):
        raise WeightError("Ext inputs live on different Grassmannians")
    sub_rank, ambient = side
    if cutoff is None:
        cutoff = default_cutoff(ambient)
    layers = cauchy_layers(cutoff)
    layer_bundles = [cauchy_layer_bundle(mu, sub_rank, ambient) for mu in layers]

    parts: dict[int, dict[Weight, int]] = {}
    signed: dict[int, dict[Weight, int]] = {}
    per_layer: dict[Weight, dict[int, dict[Weight, int]]] = {}

    for p, ap in sorted(ca.items()):
        for q, bq in sorted(cb.items()):
            core = ap.dual().tensor(bq)
            if core.is_zero():
                continue
            shift = q - p
            sign = -1 if shift % 2 else 1
            for mu, lb in zip(layers, layer_bundles):
                coh = cohomology_gr(core.tensor(lb))
                if coh.is_zero():
                    continue
                layer_parts = per_layer.setdefault(mu, {}) if keep_layers else None
                for deg, ws in coh.parts.items():
                    total_deg = deg + shift
                    for w, m in ws.items():
                        accumulate(parts, total_deg, w, m)
                        accumulate(signed, total_deg, w, sign * m)
                        if layer_parts is not None:
                            accumulate(layer_parts, total_deg, w, m)

    graded = GradedGModule.normalised(ambient, parts)
    signed_clean = {
        d: dict(sorted(ws.items())) for d, ws in sorted(signed.items()) if ws
    }
    layer_modules = None
    if keep_layers:
        layer_modules = {
            mu: GradedGModule.normalised(ambient, lp)
            for mu, lp in sorted(per_layer.items())
        }
    return ExtReport(
        source=source,
        target=target,
        sub_rank=sub_rank,
        ambient=ambient,
        cutoff=cutoff,
        graded=graded,
        signed=signed_clean,
        layers=layer_modules,
    )


def invariant_dims(report: ExtReport) -> dict[int, int]:
    """Multiplicity of the trivial weight per degree: the equivariant part."""
    return report.invariant_dims()


def euler_characteristic(bundle: GrBundle) -> int:
    """Euler characteristic on the zero-section Grassmannian."""
    g = cohomology_gr(bundle)
    return sum(
        (-1) ** deg * sum(m * weyl_dim(w, bundle.ambient) for w, m in ws.items())
        for deg, ws in g.parts.items()
    )


# ---------------------------------------------------------------------------
# K-theory coordinates in the box basis of Schur functors of the subbundle.


@lru_cache(maxsize=None)
def kapranov_weights(N: int) -> tuple[Weight, ...]:
    """Highest weights (l1, l2) with 0 <= l2 <= l1 <= N-2, lex order."""
    return tuple(
        (l1, l2) for l1 in range(N - 1) for l2 in range(l1 + 1)
    )


def _basis_member(N: int, lam: Weight) -> GrBundle:
    return GrBundle.term(2, N, lam, zero_weight(N - 2))


@lru_cache(maxsize=None)
def gram_matrix(N: int) -> tuple[tuple[int, ...], ...]:
    """Euler pairing matrix G[i][j] = chi(basis_i^v (x) basis_j) on Gr(2,N)."""
    basis = kapranov_weights(N)
    rows = []
    for lam in basis:
        dual_member = _basis_member(N, lam).dual()
        rows.append(
            tuple(
                euler_characteristic(dual_member.tensor(_basis_member(N, mu)))
                for mu in basis
            )
        )
    return tuple(rows)


@dataclass(frozen=True)
class KClassVector:
    """Integer coordinates of a K-class in the box basis for Gr(2,N)."""

    N: int
    coords: tuple[int, ...]

    def __add__(self, other: "KClassVector") -> "KClassVector":
        if self.N != other.N:
            raise WeightError("K-classes for different N")
        return KClassVector(self.N, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scaled(self, c: int) -> "KClassVector":
        return KClassVector(self.N, tuple(c * a for a in self.coords))


def pairing_vector(X, N: int) -> list[int]:
    """chi(basis_lam^v (x) X) for each basis weight, complexes with signs."""
    cx = as_complex(X)
    out = []
    for lam in kapranov_weights(N):
        dual_member = _basis_member(N, lam).dual()
        total = 0
        for deg, bundle in cx.items():
            if (bundle.sub_rank, bundle.ambient) != (2, N):
                raise WeightError("K-classes are taken on the Gr(2,N) side")
            total += (-1) ** deg * euler_characteristic(dual_member.tensor(bundle))
        out.append(total)
    return out


def k_class(X, N: int | None = None) -> KClassVector:
    """Coordinates of a bundle or complex in the box basis.

    The Gram matrix is checked to be unimodular before solving; a failure is
    an internal error, not an input error.
    """
    cx = as_complex(X)
    if N is None:
        N = next(iter(cx.values())).ambient
    gram = gram_matrix(N)
    det = linalg.det_bareiss(gram)
    if det not in (1, -1):
        raise ArithmeticError(f"Euler pairing matrix is not unimodular for N={N}")
    coords = linalg.solve_unimodular(gram, pairing_vector(cx, N))
    return KClassVector(N, tuple(coords))
