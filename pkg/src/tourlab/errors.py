"""Exception types shared across the library."""


class TourlabError(Exception):
    """Base class for all library-specific errors."""


class LoopQueryError(TourlabError):
    """An orientation was requested for a pair (i, i)."""


class MalformedInjectionError(TourlabError):
    """An index-to-ordinal map turned out not to be injective."""


class BudgetExhaustedError(TourlabError):
    """A closure or scan exceeded its expansion budget.

    Carries whatever was discovered before the budget ran out so callers
    can report partial evidence.
    """

    def __init__(self, message, partial=None, budget=None):
        super().__init__(message)
        self.partial = partial
        self.budget = budget


class CycleFoundError(TourlabError):
    """An operation requiring acyclicity met a directed cycle."""

    def __init__(self, message, cycle):
        super().__init__(message)
        self.cycle = list(cycle)


class PoolTooSmallError(TourlabError):
    """A vertex pool is below the size bound required by the extraction."""


class PinIncompatibilityError(TourlabError):
    """A pinned assignment contradicts an edge of the graph being embedded."""

    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge


class OracleInconsistencyError(TourlabError):
    """An infiniteness oracle's answers contradict the observed tournament."""


class SchemeError(TourlabError):
    """A block scheme's parameters are degenerate or unrealizable."""


class GraphFormatError(TourlabError):
    """A graph file or family description could not be parsed."""
