"""Frozen reference values and their regeneration."""
from ._core import (SUITES, FrozenReference, ReferenceReport, load_suite, regenerate_references,
                    write_suite)

__all__ = ["SUITES", "FrozenReference", "ReferenceReport", "load_suite",
           "regenerate_references", "write_suite"]
