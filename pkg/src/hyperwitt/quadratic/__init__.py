"""Quadratic hyperfields of concrete fields, field descriptors and Hilbert symbols."""

from .builders import (
    QuotientPresentation,
    build_from_descriptor,
    corpus,
    field_as_hyperfield,
    group_extension,
    group_extension_build,
    laurent_crosscheck,
    least_nonresidue,
    padic_class_index,
    padic_representatives,
    qh_archimedean,
    qh_complex,
    qh_finite_field,
    qh_laurent,
    qh_padic,
    qh_real,
)
from .descriptors import FieldDescriptor, parse_field
from .hilbert import hilbert_symbol, legendre, relevant_places, represented
