"""Exact verification engine for tilting collections on T*Gr(2,N)."""

from .bott import (
    GradedGModule,
    GrBundle,
    canonical_bundle,
    cohomology_gr,
    det_weight,
    dot_normalize,
    relative_pushforward,
    wedge_weight,
)
from .collection import (
    CollectionMember,
    collection,
    n_minus,
    n_plus,
    primed_collection,
    schur_bundle,
    term_bundle,
)
from .cotangent import (
    ExtReport,
    KClassVector,
    default_cutoff,
    euler_characteristic,
    ext_cotangent,
    invariant_dims,
    k_class,
)
from .resolver import (
    RelGrassSetup,
    torsion_resolution,
    closed_e_image,
    closed_f_image,
    hecke_e_image,
    hecke_f_image,
)
from .weights import (
    WeightError,
    cauchy_layers,
    conjugate,
    dualize,
    gl2_tensor,
    lr_tensor,
    pieri_wedge,
    weyl_dim,
)

__all__ = [name for name in dir() if not name.startswith("_")]
