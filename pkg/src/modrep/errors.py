"""Exception hierarchy.

Errors fall in three families that the command line maps onto exit codes:
input problems (2), exhausted budgets (3) and violated theory contracts (4).
"""

from __future__ import annotations


class ModRepError(Exception):
    exit_code = 1


class InputError(ModRepError, ValueError):
    exit_code = 2


class BudgetError(ModRepError):
    exit_code = 3


class ConsistencyError(ModRepError):
    """A theorem-backed invariant failed; this always indicates a bug."""

    exit_code = 4


# input errors
class GroupParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class NotA2Group(InputError):
    pass


class NotTameBlock(InputError):
    pass


class NotApplicable(InputError):
    pass


class MissingThreeTubeFlag(InputError):
    pass


class CharacterNotInBlock(InputError):
    pass


# budget errors
class GroupTooLarge(BudgetError):
    pass


class ChopBudgetExceeded(BudgetError):
    pass


class ProjectiveCoverBudgetExceeded(BudgetError):
    pass


class BarComplexBudgetExceeded(BudgetError):
    pass


class OracleBudgetExceeded(BudgetError):
    pass


class CapExceeded(BudgetError):
    pass


# consistency errors
class SingularSystem(ConsistencyError):
    pass


class NonIntegralSolution(ConsistencyError):
    pass


class InternalInconsistency(ConsistencyError):
    pass


class NoCorrespondent(ConsistencyError):
    pass


class VanishingViolated(ConsistencyError):
    def __init__(self, triple, message: str = ""):
        self.triple = triple
        super().__init__(message or f"generalized decomposition number {triple} should vanish")


class CensusViolation(ConsistencyError):
    pass


class OrbitViolation(ConsistencyError):
    pass
