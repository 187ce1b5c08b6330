"""Möbius conjugation on finite posets and the convolution identities it yields
for hyperplane arrangements and matroids."""

from .arrangement import (
    Arrangement,
    Flat,
    Hyperplane,
    IntersectionLattice,
    bounded_regions,
    build_lattice,
    char_poly,
    char_poly_interval,
    contract,
    regions,
    restrict,
    verify_interval_convolution,
    verify_region_convolution,
)
from .finite_field import (
    chi_bar,
    complement_count,
    flat_complement_count,
    lattice_isomorphic,
    q_reduce,
    stabilizer_at,
    verify_reciprocity,
    verify_translation_lemma,
)
from .linalg import AffineSubspace, intersect_affine
from .matroid import (
    Matroid,
    contract_matroid,
    matroid_graphic,
    matroid_linear,
    matroid_uniform,
    rank_gen_poly,
    restrict_matroid,
    subset_corank_poly,
    tutte_poly,
    verify_krs,
    verify_kung_identity1,
    verify_kung_identity5,
)
from .polynomial import Polynomial, poly_add, poly_eval, poly_mul, poly_substitute
from .poset import (
    IncidenceFunction,
    Poset,
    convolve,
    delta_of,
    mobius,
    mobius_conjugate,
    validate_poset,
    verify_conjugation_homomorphism,
)
from .report import VerificationReport

__version__ = "0.1.0"
