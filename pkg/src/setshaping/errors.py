"""Exception hierarchy shared by every module."""


class DomainError(ValueError):
    """An argument is outside the domain of the operation."""


class BudgetExceeded(DomainError):
    """The number of type classes exceeds the configured enumeration budget."""


class NotInShapedSet(DomainError):
    """A sequence of the right length lies outside the image of the transform."""


class DecodeError(DomainError):
    """A bit string is not a concatenation of codewords."""


class ScaleGuardError(DomainError):
    """A brute-force computation was requested at an infeasible size."""
