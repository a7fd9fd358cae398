"""Rings, groups, involutions and result models."""
