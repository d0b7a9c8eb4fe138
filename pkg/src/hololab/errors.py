"""Exception hierarchy.

Every exhaustive routine fails loudly: exceeding a configured cap raises
:class:`CapExceeded`, and a failed internal cross-check raises a
:class:`VerificationError` subclass.  The CLI maps these to exit codes 2 and 3.
"""


class HololabError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(HololabError, ValueError):
    """Malformed arguments (bad table, wrong parameters, mismatched objects)."""


class CapExceeded(HololabError):
    """An exhaustive search would exceed its configured size cap."""


class VerificationError(HololabError):
    """An internal consistency check failed; signals a bug in this package, not a mathematical counterexample."""


# group-core
class NotLatinSquare(InvalidInput):
    pass


class NoIdentity(InvalidInput):
    pass


class NotAssociative(InvalidInput):
    pass


class InvalidParameter(InvalidInput):
    pass


class NotNormal(InvalidInput):
    pass


class OddOrder(InvalidInput):
    pass


# regsub
class DomainMismatch(InvalidInput):
    pass


class NotFpf(InvalidInput):
    pass


class OrderMismatch(InvalidInput):
    pass


class NotCenterless(InvalidInput):
    pass


# liealg / cs
class BasisMismatch(InvalidInput):
    pass


class BadModulus(InvalidInput):
    pass


class TTooSmall(InvalidInput):
    pass


class PTooSmall(InvalidInput):
    pass


class GroupMismatch(InvalidInput):
    pass


class CertificateFailed(VerificationError):
    pass


# lifting
class DegreeTooSmall(InvalidInput):
    pass


class Abelian(InvalidInput):
    pass


class NotNormalInNormalizer(VerificationError):
    pass
