"""Exception hierarchy shared by every module."""


class RingError(Exception):
    """Base class for all errors raised by idemring."""


class ParseError(RingError):
    """Malformed ring expression, element literal or table file."""

    def __init__(self, message, position=None, expected=None, text=None):
        self.position = position
        self.expected = expected
        self.text = text
        detail = message
        if position is not None:
            detail += f" at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class CapExceeded(RingError):
    """An enumeration, pair or lattice budget would be exceeded."""


class IrreduciblePolyError(RingError):
    """The modulus polynomial of a Galois field construction factors."""


class NotIdempotentError(RingError):
    pass


class NotIdealError(RingError):
    pass


class MixedRingError(RingError):
    """Elements of two different rings were combined."""


class NotCommutativeBase(RingError):
    pass


class NotApplicable(RingError):
    """A classification theorem does not cover the given base ring."""


class VerificationFailed(RingError):
    """An identity or construction that must hold did not.

    This always indicates an arithmetic bug, never a property of the input.
    """


class ConsistencyViolation(VerificationFailed):
    pass


class SearchFailed(VerificationFailed):
    pass


class NoPathError(RingError):
    pass


class WitnessError(RingError):
    """The supplied elements do not satisfy the witness equations."""


class NotUnitsSummingToOne(WitnessError):
    pass


class NotAKWitness(WitnessError):
    pass


class NotCompletable(WitnessError):
    pass


class NotCompletableInvolution(WitnessError):
    pass


class MNotSupported(RingError):
    pass
