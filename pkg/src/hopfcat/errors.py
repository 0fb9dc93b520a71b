"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` so the CLI can map
engine failures to structured reports.
"""

from __future__ import annotations


class HopfCatError(Exception):
    code = "error"


class InputError(HopfCatError):
    """Base for errors caused by malformed or inconsistent input."""

    code = "input_error"


class DimensionMismatch(InputError):
    code = "dimension_mismatch"


class ShapeMismatch(InputError):
    code = "shape_mismatch"


class UnknownKey(InputError):
    code = "unknown_key"


class InvalidParameter(InputError):
    code = "invalid_parameter"


class GroupTooLarge(InputError):
    code = "group_too_large"


class InputParseError(InputError):
    code = "input_parse_error"


class MissingFEntry(InputError):
    code = "missing_f_entry"


class MissingREntry(InputError):
    code = "missing_r_entry"


class MissingSymbol(InputError):
    code = "missing_symbol"


class MissingBraiding(InputError):
    code = "missing_braiding"


class MissingTwists(InputError):
    code = "missing_twists"


class BasisMismatch(InputError):
    code = "basis_mismatch"


class MultiplicityNotSupported(InputError):
    code = "multiplicity_not_supported"


class NotAnAutomorphism(InputError):
    code = "not_an_automorphism"


class MixedHopfAlgebras(InputError):
    code = "mixed_hopf_algebras"


class DegenerateForm(InputError):
    code = "degenerate_form"


class ComputationError(HopfCatError):
    """Base for failures of a numerical or combinatorial search."""

    code = "computation_error"


class ConvergenceFailure(ComputationError):
    code = "convergence_failure"


class SingularH(ComputationError):
    code = "singular_h"


class AxiomViolation(ComputationError):
    code = "axiom_violation"


class NoIntegralFound(ComputationError):
    code = "no_integral_found"


class SolverBudgetExceeded(ComputationError):
    code = "solver_budget_exceeded"


class NotSemisimple(ComputationError):
    code = "not_semisimple"


class DecompositionAmbiguous(ComputationError):
    code = "decomposition_ambiguous"


class FactorizationNotFound(ComputationError):
    code = "factorization_not_found"


class FusionInconsistent(ComputationError):
    code = "fusion_inconsistent"


class InconsistentData(ComputationError):
    code = "inconsistent_data"


class NonIntegerMultiplicity(ComputationError):
    code = "non_integer_multiplicity"
