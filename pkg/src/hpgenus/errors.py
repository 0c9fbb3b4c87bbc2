"""Exception hierarchy shared by all hpgenus modules."""


class HPGenusError(ValueError):
    """Base class for every domain error raised by the library."""


class ZeroError(HPGenusError):
    pass


class DivisibilityError(HPGenusError):
    pass


class NotPrimeError(HPGenusError):
    pass


class EmptySetError(HPGenusError):
    pass


class CoverageError(HPGenusError):
    """An invariant leaves its value undefined at one or more primes."""

    def __init__(self, primes):
        self.primes = tuple(sorted(primes))
        listed = ", ".join(str(p) for p in self.primes)
        super().__init__(f"no override given at prime(s) {listed} where the default sign is undefined")


class NoEssentialMapError(HPGenusError):
    pass


class MismatchError(HPGenusError):
    pass


class ConstantTermError(HPGenusError):
    pass


class EvenPrimeError(HPGenusError):
    pass


class NoSolutionError(HPGenusError):
    pass


class InvalidFamilyError(HPGenusError):
    pass


class IncompatibleFamilyError(HPGenusError):
    def __init__(self, first, second, message):
        self.pair = (first, second)
        super().__init__(message)


class NonIntegralError(HPGenusError):
    pass


class NotRealizableError(HPGenusError):
    pass
