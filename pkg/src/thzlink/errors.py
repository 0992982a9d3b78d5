"""Exception types shared across the package.

Two broad families matter to callers (and to the CLI exit codes): input or
configuration problems (``CatalogParseError``, ``ValidationError``,
``ConfigError``) and model-domain problems raised while evaluating a valid
configuration (``DomainError`` and subclasses).
"""

from __future__ import annotations


class ChannelModelError(Exception):
    """Base class for all package errors."""


class CatalogParseError(ChannelModelError):
    """A line-catalog record failed to parse.

    Carries the 1-based line number and, when the failure is confined to a
    field, the 1-based inclusive column span of that field.
    """

    def __init__(self, message: str, line_number: int,
                 col_span: tuple[int, int] | None = None):
        self.line_number = line_number
        self.col_span = col_span
        where = f"line {line_number}"
        if col_span is not None:
            where += f", columns {col_span[0]}-{col_span[1]}"
        super().__init__(f"{where}: {message}")


class ValidationError(ChannelModelError):
    """One or more construction-time invariants are violated.

    ``violations`` lists every failed check, not just the first.
    """

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ConfigError(ChannelModelError):
    """A run configuration (scenario file, CLI arguments) is unusable."""


class DomainError(ChannelModelError):
    """An operation was called outside its mathematical domain."""


class TwoRayNullError(DomainError):
    """The two-ray sine argument sits on an integer multiple of pi.

    The propagation model diverges at the null; callers decide whether to
    skip the point (sweeps record a gap) or abort.
    """

    def __init__(self, argument: float, frequency: float | None = None,
                 subband: int | None = None):
        self.argument = argument
        self.frequency = frequency
        self.subband = subband
        msg = f"two-ray null: sine argument {argument!r} is a multiple of pi"
        if frequency is not None:
            msg += f" at f={frequency:.6e} Hz"
        if subband is not None:
            msg += f" (subband {subband})"
        super().__init__(msg)


class ApproximationRegimeError(DomainError):
    """Inputs violate the small-antenna approximation preconditions."""
