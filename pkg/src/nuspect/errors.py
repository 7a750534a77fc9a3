"""Exception hierarchy shared across the library."""

from __future__ import annotations


class NuspectError(Exception):
    """Base class for all library errors."""


class ShapeError(NuspectError):
    """Array dimensions are incompatible with the operation."""


class DomainError(NuspectError):
    """Input is outside the mathematical domain of the operation."""


class SingularMatrixError(NuspectError):
    """A linear solve hit a numerically singular matrix.

    ``point`` optionally carries the resolvent parameter z at which the
    singularity occurred.
    """

    def __init__(self, message: str, point: complex | None = None):
        super().__init__(message)
        self.point = point


class ConvergenceError(NuspectError):
    """An iterative refinement exhausted its budget without converging."""


class OracleUnavailableError(NuspectError):
    """No exact spectral oracle exists for this model class.

    Raised instead of silently falling back to truncation eigenvalues,
    which suffer spectral pollution.
    """


class EnclosureUnavailableError(NuspectError):
    """A certified norm enclosure cannot be produced for these inputs."""


class ContractError(NuspectError):
    """A truncation or grid contract was violated (e.g. too few extra rows)."""


class HypothesisError(NuspectError):
    """A theorem hypothesis is violated or cannot be certified."""


class ContourSpectrumError(NuspectError):
    """A quadrature node of the contour touched the spectrum."""

    def __init__(self, message: str, point: complex | None = None):
        super().__init__(message)
        self.point = point


class AdmissibilityError(NuspectError):
    """Resolvent margin on a contour is below the configured floor."""


class UndefinedIndexError(NuspectError):
    """Fredholm index requested at a point on the essential-spectrum curve."""

    def __init__(self, message: str, point: complex | None = None, n: int | None = None):
        super().__init__(message)
        self.point = point
        self.n = n


class ScenarioParseError(NuspectError):
    """Scenario document violates the schema; carries a JSON path."""

    def __init__(self, message: str, json_path: str = "$"):
        super().__init__(f"{json_path}: {message}")
        self.json_path = json_path


class ScenarioValidationError(NuspectError):
    """Scenario is well-formed but semantically invalid (names the hypothesis)."""
