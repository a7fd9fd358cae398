"""Finite-ring testbench for Rickart-type annihilator conditions."""

__all__ = ["__version__"]
__version__ = "0.1.0"
