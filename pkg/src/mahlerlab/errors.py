"""Exception hierarchy.

Every error raised for a mathematically invalid input derives from
``DomainError`` so callers (the CLI in particular) can tell bad geometry
apart from programming mistakes.
"""


class DomainError(Exception):
    """Input lies outside the region where the requested quantity is defined."""


class SingularMatrix(DomainError):
    pass


class DegenerateInput(DomainError):
    pass


class OriginNotInterior(DomainError):
    pass


class NotCentered(DomainError):
    pass


class OutOfDomain(DomainError):
    pass


class NotCritical(DomainError):
    pass


class ChartViolation(DomainError):
    pass


class DegenerateImage(DomainError):
    pass


class BadParams(DomainError):
    pass


class OutOfRange(DomainError):
    pass


class BadDimension(DomainError):
    pass


class SingularSystem(DomainError):
    pass
