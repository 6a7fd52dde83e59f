"""Exception hierarchy shared by all rcgraph modules."""

from __future__ import annotations


class RcGraphError(Exception):
    """Base class for every error raised by this package."""


class InputError(RcGraphError, ValueError):
    """Malformed or out-of-range user input (bad ids, bad documents, bad params)."""


class DisconnectedError(RcGraphError):
    """An operation that requires a connected graph received a disconnected one."""


class PreconditionNotMet(RcGraphError):
    """A coloring routine was invoked outside its guaranteed edge-density regime."""


class StructuralError(RcGraphError):
    """The graph violates a structural fact the caller was supposed to guarantee."""


class BudgetExceededError(RcGraphError):
    """An exhaustive search ran out of its work budget.

    Carries the best bounds established before the abort.
    """

    def __init__(self, message: str, lower_bound: int | None = None,
                 upper_bound: int | None = None, examined: int = 0):
        super().__init__(message)
        self.lower_bound = lower_bound
        self.upper_bound = upper_bound
        self.examined = examined


class CapReachedError(RcGraphError):
    """Every color count up to the requested cap was exhausted without success.

    ``proven_lower_bound`` is the smallest value the target quantity can still
    take (cap + 1).
    """

    def __init__(self, message: str, cap: int, examined: int = 0):
        super().__init__(message)
        self.cap = cap
        self.proven_lower_bound = cap + 1
        self.examined = examined


class ProofGap(RcGraphError):
    """A constructive coloring procedure produced a coloring that failed
    independent verification, or met a graph contradicting the structure the
    construction relies on.

    Recorded with the branch tag that was active, the first vertex pair with
    no rainbow path (when applicable), and the reduction trace accumulated so
    far, so the offending instance can be audited.
    """

    def __init__(self, message: str, tag: str = "", failing_pair=None, trace=()):
        super().__init__(message)
        self.tag = tag
        self.failing_pair = failing_pair
        self.trace = tuple(trace)
