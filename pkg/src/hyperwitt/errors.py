"""Exception hierarchy shared by every module.

All domain failures derive from :class:`HyperWittError`; the CLI maps these
to exit code 1 and everything else to a crash.
"""

from __future__ import annotations


class HyperWittError(Exception):
    """Base class for domain errors."""

    code = "error"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class MalformedTable(HyperWittError):
    code = "malformed_table"


class NotASubgroup(HyperWittError):
    code = "not_a_subgroup"


class ZeroArgument(HyperWittError):
    code = "zero_argument"


class NotAMorphism(HyperWittError):
    code = "not_a_morphism"

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["witness"] = self.witness
        return d


class AxiomFailure(HyperWittError):
    code = "axiom_failure"


class EvenCharacteristic(HyperWittError):
    code = "even_characteristic"


class UnsupportedDyadicExtension(HyperWittError):
    code = "unsupported_dyadic_extension"


class PrecisionLoss(HyperWittError):
    code = "precision_loss"


class InvalidDescriptor(HyperWittError):
    code = "invalid_descriptor"


class UnsupportedResidue(HyperWittError):
    code = "unsupported_residue"


class NoCaseMatched(HyperWittError):
    code = "no_case_matched"


class NotIso(HyperWittError):
    code = "not_iso"


class NotExtensionStructured(HyperWittError):
    code = "not_extension_structured"


class ZeroPolynomial(HyperWittError):
    code = "zero_polynomial"


class ZeroElement(HyperWittError):
    code = "zero_element"


class EvenResidue(HyperWittError):
    code = "even_residue"


class DuplicatePlace(HyperWittError):
    code = "duplicate_place"


class InputIsSquare(HyperWittError):
    code = "input_is_square"


class ConstructionFailed(HyperWittError):
    code = "construction_failed"


class UnsupportedField(HyperWittError):
    code = "unsupported_field"


class BudgetExceeded(HyperWittError):
    code = "budget_exceeded"


class ParseError(HyperWittError):
    code = "parse_error"
