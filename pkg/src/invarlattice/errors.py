"""Exception hierarchy.

Computation errors (budget, insufficient degree) map to CLI exit code 1,
input errors to 2 and theory violations to 3.
"""

INT64_MAX = 2**63 - 1


class InvarLatticeError(Exception):
    """Base class for every error raised by this package."""

    code = "error"


class InputError(InvarLatticeError, ValueError):
    code = "invalid_input"


class ShapeError(InputError):
    code = "shape_mismatch"


class TrivialRepresentationError(InputError):
    """The character support is empty once trivial characters are removed."""

    code = "trivial_representation"


class IntegerOverflowError(InvarLatticeError, OverflowError):
    code = "integer_overflow"


class ContainmentError(InvarLatticeError, ValueError):
    """A lattice that should be a sublattice is not; carries a witness."""

    code = "containment_violation"

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = tuple(witness)


class ComputationError(InvarLatticeError):
    code = "computation_error"


class EnumerationBudgetExceeded(ComputationError):
    code = "budget_exceeded"


class InsufficientDegreeError(ComputationError):
    code = "insufficient_degree"


class WeightMismatchError(InvarLatticeError, ValueError):
    code = "weight_mismatch"


class TheoryViolation(InvarLatticeError):
    """A proven inequality failed on a computed instance.

    Either the code or the theory is wrong; ``instance`` holds enough data
    to reproduce the run.
    """

    code = "theory_violation"

    def __init__(self, message, instance=None):
        super().__init__(message)
        self.instance = instance or {}


def check_int64(value, what="value"):
    if abs(value) > INT64_MAX:
        raise IntegerOverflowError(f"{what} {value} exceeds the 64-bit integer range")
    return value
