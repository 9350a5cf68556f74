"""Exception hierarchy shared by all modules."""


class ToricError(Exception):
    """Base class for all errors raised by toricorbits."""


class FanValidationError(ToricError, ValueError):
    """Input data does not describe a valid fan.

    ``ray`` and ``cone`` carry the offending 1-based indices when known.
    """

    def __init__(self, message, *, ray=None, cone=None):
        super().__init__(message)
        self.ray = ray
        self.cone = cone


class IncompleteFanError(ToricError):
    """An operation requiring a complete fan was given an incomplete one."""


class UnboundedSystemError(ToricError):
    """Lattice point enumeration was asked for an unbounded polyhedron."""


class ConeNotInFanError(ToricError, KeyError):
    pass


class NotInDeltaTildeError(ToricError, ValueError):
    """A ray subset does not generate a pointed cone with exactly those extremal rays."""
