"""Exception hierarchy shared by all modules."""


class Sp4RepError(Exception):
    """Base class for library errors."""


class SingularQuaternion(Sp4RepError, ZeroDivisionError):
    pass


class SingularDenominator(Sp4RepError, ZeroDivisionError):
    pass


class SingularBlock(Sp4RepError):
    """A block of a group element is too close to a null quaternion."""


class NotInGroup(Sp4RepError, ValueError):
    pass


class NotInDomain(Sp4RepError, ValueError):
    pass


class DeterminantNotOne(Sp4RepError, ValueError):
    pass


class IndexOutOfRange(Sp4RepError, ValueError):
    pass


class InvalidLambda(Sp4RepError, ValueError):
    pass


class OutOfRegime(Sp4RepError, ValueError):
    """Representation label outside the regime varsigma > s + 2."""


class InsufficientSamples(Sp4RepError, ValueError):
    pass


class TruncationNotConverged(Sp4RepError, ArithmeticError):
    def __init__(self, message, value=None, tail=None):
        super().__init__(message)
        self.value = value
        self.tail = tail
