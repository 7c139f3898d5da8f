"""Exception and warning types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class ConvergenceError(RuntimeError):
    """An iterative method did not meet its tolerance."""


class BracketError(RuntimeError):
    """A sign-changing bracket could not be located."""


class ValidityError(ValueError):
    """A truncated asymptotic formula was requested outside its region of validity.

    The message names the precondition that failed.
    """


class IllConditionedWarning(UserWarning):
    """An asymptotic expansion is evaluated where its small parameter is not small."""
