"""Representation spaces of cocompact planar groups (C++ core)."""

from ._planarep import (
    PlanarepError,
    analyze,
    cohomology,
    degeneracy_report,
    finite_order_classes,
    fox_derivative,
    measure,
    run,
    solve,
    su2_triangle_oracle,
)

__all__ = [
    "PlanarepError",
    "analyze",
    "cohomology",
    "degeneracy_report",
    "finite_order_classes",
    "fox_derivative",
    "measure",
    "run",
    "solve",
    "su2_triangle_oracle",
]
