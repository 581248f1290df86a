"""Finite hyperfields: tables, axioms, constructions, morphisms."""

from .constructions import (
    MorphismWitness,
    RigidityReport,
    SubgroupWitness,
    forms_equivalent,
    generated_subgroup,
    is_exceptional,
    is_prime_type,
    level,
    prime,
    quotient,
    rigidity_report,
    subgroup,
    trivial_subgroup,
    value_set,
    whole_group,
)
from .morphisms import (
    GROUP_EXTENSION,
    INVALID,
    PLAIN,
    QUOTIENT_MORPHISM,
    automorphisms,
    check_morphism_kind,
    find_isomorphism,
    fingerprint,
    fingerprint_diff,
    is_group_extension,
    is_isomorphism,
    is_morphism,
    is_quotient_morphism,
    isomorphisms,
    require_morphism,
)
from .table import (
    FiniteHyperfield,
    ValidationReport,
    Violation,
    bits,
    dumps,
    load,
    loads,
    mask_of,
    save,
    validate_axioms,
)

__all__ = [name for name in dir() if not name.startswith("_")]
