"""Verification toolkit for quaternionic contact geometry: exact algebra on the
quaternionic Heisenberg group and numerical checks on the round sphere."""

__version__ = "0.1.0"
