"""
Capacity limits.

There is no config file: the CLI maps ``--max-enum-log2`` and
``--warn-enum-log2`` onto a ``Limits`` instance, library callers pass
``limits=`` explicitly or get ``DEFAULT_LIMITS``.
"""

from dataclasses import dataclass, replace

from .errors import ConfigurationError


@dataclass(frozen=True)
class Limits:
    """
    Bounds on work the package agrees to do.

    Attributes:
        exhaustive_warn_log2: exhaustive domains above 2^this log a warning
        exhaustive_max_log2: exhaustive domains above 2^this are refused
        grid_cells_max_log2: count tables with more than 2^this cells are refused
        exact_max_points: exact-mode discrepancy point cap
        exact_max_dim: exact-mode discrepancy dimension cap
        disc_work_max_log2: box scans touching more than 2^this table entries are refused
    """
    exhaustive_warn_log2: int = 26
    exhaustive_max_log2: int = 30
    grid_cells_max_log2: int = 24
    exact_max_points: int = 10_000
    exact_max_dim: int = 3
    disc_work_max_log2: int = 30

    def __post_init__(self):
        if self.exhaustive_warn_log2 < 0 or self.exhaustive_max_log2 < 0:
            raise ConfigurationError("enumeration bounds must be nonnegative")
        if self.exhaustive_warn_log2 > self.exhaustive_max_log2:
            raise ConfigurationError(
                f"warn bound 2^{self.exhaustive_warn_log2} exceeds "
                f"refusal bound 2^{self.exhaustive_max_log2}"
            )
        if self.grid_cells_max_log2 < 1:
            raise ConfigurationError("grid_cells_max_log2 must be >= 1")
        if self.exact_max_points < 1 or self.exact_max_dim < 1:
            raise ConfigurationError("exact discrepancy caps must be >= 1")
        if self.disc_work_max_log2 < 1:
            raise ConfigurationError("disc_work_max_log2 must be >= 1")

    def with_enumeration_bounds(self, warn_log2=None, max_log2=None) -> "Limits":
        """
        Return a copy with overridden enumeration bounds.

        None keeps the current value, except that an unspecified warn bound
        is lowered to a new, smaller refusal bound.
        """
        new_max = self.exhaustive_max_log2 if max_log2 is None else max_log2
        if warn_log2 is None:
            warn_log2 = min(self.exhaustive_warn_log2, new_max)
        return replace(self, exhaustive_warn_log2=warn_log2, exhaustive_max_log2=new_max)


DEFAULT_LIMITS = Limits()
