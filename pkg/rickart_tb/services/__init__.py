"""Catalog, constructions, expressions and the verification harness."""
