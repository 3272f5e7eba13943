"""Exception hierarchy.

Every error that refutes a property carries a ``witness``: a tuple of
element/operator identifiers (labels) in the order the check declares them.
"""

from __future__ import annotations


class AlgebraError(Exception):
    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = tuple(witness)


# structure validation
class NotAGroup(AlgebraError):
    pass


class NotEndomorphism(AlgebraError):
    pass


class BadZeroOperator(AlgebraError):
    pass


class EmptySet(AlgebraError):
    pass


class NotStable(AlgebraError):
    pass


class MismatchedOperators(AlgebraError):
    pass


class NotAdditive(AlgebraError):
    pass


class NotAStable(AlgebraError):
    pass


# polynomial layer
class SortMismatch(AlgebraError):
    pass


class MissingCompanionMaps(AlgebraError):
    pass


class HypothesisNotMet(AlgebraError):
    pass


class DegreeTooHigh(AlgebraError):
    pass


# rings and modules
class NotLeftDistributive(AlgebraError):
    pass


class NotRightIdeal(AlgebraError):
    pass


# gallery
class UnknownId(AlgebraError):
    pass


class BadParams(AlgebraError):
    pass


class ClaimFailed(AlgebraError):
    def __init__(self, claim: str, message: str, witness: tuple = (), source: str = ""):
        super().__init__(f"claim {claim!r} failed: {message}", witness)
        self.claim = claim
        self.source = source


# structure files
class StructureFileError(AlgebraError):
    """Base for problems with an input file; the CLI maps these to exit code 2."""

    def __init__(self, message: str, location: str = "", witness: tuple = ()):
        super().__init__(f"{location}: {message}" if location else message, witness)
        self.location = location


class StructureSyntaxError(StructureFileError):
    pass


class SchemaError(StructureFileError):
    pass


class SemanticError(StructureFileError):
    pass
