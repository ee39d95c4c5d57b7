"""Exception types raised across the package."""


class CyclojacError(Exception):
    """Base class for all package errors."""


class OrderMismatch(CyclojacError, ValueError):
    """Two operands live in cyclotomic fields (or tables) of different order."""


class NotAUnit(CyclojacError, ValueError):
    """An integer that must be invertible modulo n is not."""


class BadSubgroup(CyclojacError, ValueError):
    """A proposed subgroup generator has the wrong multiplicative order."""


class NotInSubfield(CyclojacError, ValueError):
    """An element is not fixed by the automorphism defining a subfield."""


class NotPrime(CyclojacError, ValueError):
    pass


class TooLarge(CyclojacError, ValueError):
    """A finite field exceeds the configured element budget."""


class NotAGenerator(CyclojacError, ValueError):
    pass


class BadSubfield(CyclojacError, ValueError):
    pass


class ZeroHasNoIndex(CyclojacError, ValueError):
    pass


class UseCharPolyInstead(CyclojacError, ValueError):
    """Exact Gaussian periods were requested for a prime above the threshold."""


class AxiomViolation(CyclojacError, ValueError):
    """A generalized Jacobi table fails one of its defining clauses."""

    def __init__(self, clause, witness=None):
        self.clause = clause
        self.witness = witness
        super().__init__(f"clause {clause} fails at {witness}")


class NotInvertible(CyclojacError, ValueError):
    pass


class FiberMismatch(CyclojacError, ValueError):
    pass


class NotExtractable(CyclojacError, ValueError):
    pass


class InternalInconsistency(CyclojacError, RuntimeError):
    """Two independent computations of the same quantity disagree."""
