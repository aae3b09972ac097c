"""Quantum-walk simulator for the interacting off-diagonal AAH chain."""

__version__ = "0.1.0"

from .model import ModelParams, bond_coefficient, bond_profile  # noqa: F401
