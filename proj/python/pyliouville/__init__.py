"""Maximal boundary blow-up solutions of -lap u + 4 e^{2u} = 0 on planar domains."""

from ._liouville import (  # noqa: F401
    Domain,
    exact_disk_v,
    fit_expansion,
    solve_trimmed,
    w0_trace,
)

__all__ = ["Domain", "exact_disk_v", "fit_expansion", "solve_trimmed", "w0_trace"]
