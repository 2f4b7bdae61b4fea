"""Exception hierarchy shared by all modules.

Every error carries a short machine-readable ``code`` so the CLI can emit
structured error objects with a stable shape.
"""

from __future__ import annotations


class ZetaError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"

    def payload(self) -> dict:
        """Structured form used by the CLI error output."""
        return {"type": self.code, "message": str(self)}


class ConfigError(ZetaError):
    """Incompatible configuration: mismatched q, mixed cyclotomic levels, bad flags."""

    code = "config"


class DomainError(ZetaError):
    """Operation applied outside its domain (pole at the expansion point, zero center)."""

    code = "domain"


class DivergenceError(ZetaError):
    """A lattice sum or measure has no finite value under the summability contract."""

    code = "divergence"

    def __init__(self, message: str, violations: list[tuple[int, int]] | None = None):
        super().__init__(message)
        self.violations = list(violations or [])

    def payload(self) -> dict:
        data = super().payload()
        data["violations"] = [
            {"term": t, "coordinate": c} for (t, c) in self.violations
        ]
        return data


class BudgetError(ZetaError):
    """Exhaustive enumeration would exceed the configured budget."""

    code = "budget"


class BoxTooSmallError(ZetaError):
    """A function table is too small for the requested difference order."""

    code = "box_too_small"
