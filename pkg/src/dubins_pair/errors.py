"""Exception hierarchy for the solver stack."""

from __future__ import annotations


class DubinsPairError(Exception):
    """Base class for every error raised by this package."""


class SeparationTooSmall(DubinsPairError, ValueError):
    """The vehicles came closer than the repulsion singularity guard allows."""

    def __init__(self, separation_sq: float, guard: float, step: int | None = None):
        self.separation_sq = separation_sq
        self.guard = guard
        self.step = step
        where = "" if step is None else f" at step {step}"
        super().__init__(f"squared separation {separation_sq:.3e} below guard {guard:.1e}{where}")


class NonFiniteStage(DubinsPairError, ArithmeticError):
    """An RK4 stage evaluation produced a NaN or infinity."""


class ScenarioInvalid(DubinsPairError, ValueError):
    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class Stalled(DubinsPairError):
    """Line search could not decrease the cost even at the smallest step."""


class SingularJacobian(DubinsPairError):
    """Gauss-Newton system singular and the gradient fallback failed too."""


class NotConverged(DubinsPairError):
    def __init__(self, message: str, best=None):
        self.best = best
        super().__init__(message)


class ScenarioSyntaxError(DubinsPairError, ValueError):
    """Scenario text is not valid JSON."""

    def __init__(self, message: str, line: int | None, column: int | None):
        self.line = line
        self.column = column
        where = "" if line is None else f"line {line}, column {column}: "
        super().__init__(f"{where}{message}")


class ScenarioValidationError(DubinsPairError, ValueError):
    """Scenario parsed but one or more fields are missing, unknown or out of range."""

    def __init__(self, errors: list[tuple[str, str]]):
        self.errors = list(errors)
        super().__init__("; ".join(f"{path}: {msg}" for path, msg in self.errors))
