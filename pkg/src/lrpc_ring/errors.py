"""Exception hierarchy for ring arithmetic, linear algebra and decoding."""


class LrpcError(Exception):
    """Base class for all errors raised by this package."""


class NonUnit(LrpcError, ArithmeticError):
    """An element that must be invertible is divisible by p."""


class ZeroInput(LrpcError, ValueError):
    """A valuation decomposition was requested for zero."""


class ReducibleModulus(LrpcError, ValueError):
    """The modulus polynomial is not irreducible modulo p."""


class Inconsistent(LrpcError):
    """A linear system has no solution."""


class PreconditionViolated(LrpcError, ValueError):
    pass


class EntryOutsideF(LrpcError, ValueError):
    """A parity-check entry does not lie in the span of the low-rank basis."""


class GenerationTimeout(LrpcError, RuntimeError):
    """Rejection sampling exceeded its attempt budget."""


class KernelRankMismatch(LrpcError):
    """The right kernel of H is not free of rank k."""


class ImpossibleSupport(LrpcError, ValueError):
    pass


class ErasureInconsistent(LrpcError):
    """Erasure decoding found no error vector matching the syndrome."""


class ConfigError(LrpcError, ValueError):
    pass
