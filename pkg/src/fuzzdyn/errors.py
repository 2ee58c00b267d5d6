"""Exception hierarchy shared by every fuzzdyn module."""


class FuzzDynError(Exception):
    """Base class for all library errors."""


class MetricViolation(FuzzDynError, ValueError):
    def __init__(self, axiom, where):
        self.axiom = axiom
        self.where = tuple(where)
        super().__init__(f"metric axiom '{axiom}' violated at {self.where}")


class EmptySpace(FuzzDynError, ValueError):
    pass


class SpaceMismatch(FuzzDynError, ValueError):
    pass


class SpaceTooLarge(FuzzDynError):
    pass


class GridTooLarge(FuzzDynError):
    pass


class ProbeSpaceTooLarge(FuzzDynError):
    pass


class BallNotEnumerable(FuzzDynError):
    pass


class AlphaOutOfRange(FuzzDynError, ValueError):
    pass


class DomainError(FuzzDynError, ValueError):
    pass


class PreconditionViolated(FuzzDynError, ValueError):
    pass


class NotNormal(FuzzDynError, ValueError):
    pass


class NotApplicable(FuzzDynError):
    pass


class DegenerateDelta(FuzzDynError, ValueError):
    pass


class LatticeIncomplete(FuzzDynError, ValueError):
    pass


class ScenarioInvalid(FuzzDynError, ValueError):
    def __init__(self, field, reason):
        self.field = field
        self.reason = reason
        super().__init__(f"scenario field '{field}': {reason}")


class CapExceeded(FuzzDynError):
    pass
