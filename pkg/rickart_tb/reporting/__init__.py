"""Certificate rendering."""
