"""Annihilator scans, deciders and ideal lattices."""
