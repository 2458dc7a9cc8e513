"""Shared exception types."""


class GuardExceeded(RuntimeError):
    """An enumeration or table-size guard would be exceeded.

    Raised instead of silently truncating a search or letting a
    pseudo-polynomial loop blow up.  The guards can be overridden via the
    ``SHIFTBRIBE_GUARD`` environment variable or per-call arguments.
    """


class IncompatibleRule(ValueError):
    """The requested algorithm does not apply to this instance's voting rule
    or weighting."""


class Infeasible(RuntimeError):
    """No solution exists (possible only when some shifts or flips are marked
    unreachable)."""
