"""Exception types shared across the package."""


class QuivalgError(Exception):
    pass


class MixedFields(QuivalgError):
    """Operands belong to different coefficient fields."""


class DivisionByZero(QuivalgError):
    pass


class WrongField(QuivalgError):
    """A scalar does not live in the field an operation requires."""


class NotIrreducible(QuivalgError):
    """A claimed minimal polynomial has a root / d-th power witness."""


class AmbientMismatch(QuivalgError):
    """Subspaces of different ambient dimensions were combined."""


class SmallCharacteristicNeedsClaim(QuivalgError):
    """Radical/semisimplicity cannot be certified in characteristic p <= dim
    without caller-supplied data."""


class ClaimRejected(QuivalgError):
    """A caller-supplied basis or idempotent set failed verification.

    The failing check is named in the message."""


class NotAnIdeal(QuivalgError):
    pass


class NotSemisimple(QuivalgError):
    pass


class SplittingStalled(QuivalgError):
    """No further central idempotent could be found by root search."""


class NotAModule(QuivalgError):
    pass


class NotAnAlgebra(QuivalgError):
    """Structure constants fail associativity or the identity axiom."""


class TruncationTooLargeForMemory(QuivalgError):
    pass


class FamilyMismatch(QuivalgError):
    pass


class IncompleteAssignment(QuivalgError):
    pass


class SplittingInvalid(QuivalgError):
    pass


class NotSurjective(QuivalgError):
    pass


class RadicalNotSquareZero(QuivalgError):
    pass


class PreconditionFailed(QuivalgError):
    pass
