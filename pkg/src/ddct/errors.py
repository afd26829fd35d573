"""Exception hierarchy shared by all ddct modules.

Every input/validation failure raises a named ``DdctError`` subclass; the
CLI maps these to exit code 2 and prints the class name on stderr.  Errors
carrying ``exit_code == 1`` signal an internal inconsistency rather than bad
input.
"""


class DdctError(Exception):
    exit_code = 2

    @property
    def name(self) -> str:
        return type(self).__name__


# digit-set validation
class BaseTooSmall(DdctError):
    pass


class TooFewDigits(DdctError):
    pass


class TooManyDigits(DdctError):
    pass


class FirstDigitNonzero(DdctError):
    pass


class DigitOutOfRange(DdctError):
    pass


class DigitsNotStrictlyIncreasing(DdctError):
    pass


# expansions
class StreamExhausted(DdctError):
    pass


class NotClosedForm(DdctError):
    pass


class OutOfRange(DdctError):
    pass


class NoAlternate(DdctError):
    pass


class NotDecidable(DdctError):
    pass


# oracle
class BudgetExceeded(DdctError):
    pass


# automaton
class NotPeriodic(DdctError):
    pass


class NotMember(DdctError):
    pass


# constructor
class AlphaOutOfRange(DdctError):
    pass


class SeparationViolated(DdctError):
    pass


class HypothesesUnmet(DdctError):
    pass


class ContradictionCaseC(DdctError):
    """The density procedure hit the potentially-empty-only branch although
    the digit set rules it out; the membership precondition must have been
    violated internally."""

    exit_code = 1


# F geometry
class NoCommonDivisor(DdctError):
    pass
