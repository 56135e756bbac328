"""Shared test configuration."""

from hypothesis import settings

# Canonical forms of sparse dimension-5 vectors can take seconds.
settings.register_profile("lcd-certify", deadline=None)
settings.load_profile("lcd-certify")
