"""Rewrite every frozen reference suite from its oracle."""
from ._core import SUITES, write_suite

for name in SUITES:
    print(write_suite(name))
