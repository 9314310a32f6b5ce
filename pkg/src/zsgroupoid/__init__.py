"""Finite groupoids, matched pairs and Zappa-Szép products, with their convolution algebras."""

from .algebra import (
    GroupoidFunction,
    check_slice_norms,
    convolve,
    delta,
    full_norm,
    i_norm,
    involve,
    reduced_norm,
    regular_representation,
    sup_norm,
)
from .blend import (
    blend_density,
    check_blend_equivalences,
    check_embeddings_are_homomorphisms,
    embed_i,
    embed_j,
    numerical_rank,
)
from .constructions import (
    Cocycle,
    FiniteGroupAction,
    cyclic_group,
    direct_product,
    disjoint_union,
    pair_groupoid,
    s3,
    semidirect_product,
    semidirect_skew_isomorphism_check,
    skew_matched_pair,
    skew_product,
    symmetric_group,
    transformation_groupoid,
    unit_groupoid,
)
from .dynamics import EndoPair, WindowedDR, dr_window, dr_zs_decomposition_check, star_commuting_check
from .errors import (
    DomainError,
    GroupoidError,
    InvalidConstruction,
    PreconditionError,
    SearchTooLarge,
    StructuralError,
    VerificationFailed,
)
from .groupoid import (
    FiniteGroupoid,
    enumerate_slices,
    find_isomorphism,
    is_isomorphism,
    is_slice,
    is_subgroupoid,
    validate_groupoid,
)
from .kgraph import (
    TwoGraphPresentation,
    blue_red_graphs,
    coaligned_check,
    hypotheses_certificate,
    validate_two_graph,
)
from .report import CheckReport, Violation
from .zs import (
    MatchedPair,
    ZsGroupoid,
    build_zs_product,
    check_derived_identities,
    internal_decompose,
    reverse_decomposition,
    trivial_matched_pair,
    verify_matched_pair,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
