"""Exception hierarchy shared by every module of the toolkit."""


class SocleLabError(Exception):
    """Base class for all toolkit errors."""


# fields
class NotPrime(SocleLabError, ValueError):
    pass


class Reducible(SocleLabError, ValueError):
    """A proposed minimal polynomial has a nontrivial factor."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class UncertifiedIrreducibility(SocleLabError, ValueError):
    pass


class DivisionByZero(SocleLabError, ZeroDivisionError):
    pass


class ParentMismatch(SocleLabError, TypeError):
    pass


# function fields
class ZeroDenominator(SocleLabError, ZeroDivisionError):
    pass


class NotIrreducible(SocleLabError, ValueError):
    pass


class UnsupportedBase(SocleLabError, ValueError):
    pass


class PoleAtSubstitution(SocleLabError, ZeroDivisionError):
    pass


class WrongCharacteristic(SocleLabError, ValueError):
    pass


# Kummer / Artin-Schreier
class MissingRootOfUnity(SocleLabError, ValueError):
    pass


class UnsupportedShape(SocleLabError, ValueError):
    pass


class NotCertified(SocleLabError, ValueError):
    pass


# groups
class NotAGroup(SocleLabError, ValueError):
    """Raised with the offending triple (or pair) of element indices."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class OrderBoundExceeded(SocleLabError, ValueError):
    pass


class NotASubgroup(SocleLabError, ValueError):
    pass


# extensions
class SingularSystem(SocleLabError, ArithmeticError):
    pass


class InvalidRelation(SocleLabError, ValueError):
    pass


class InvalidAutomorphism(SocleLabError, ValueError):
    pass


# front end
class ParseError(SocleLabError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


class SemanticError(SocleLabError, ValueError):
    pass


class UnknownScenario(SocleLabError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""
