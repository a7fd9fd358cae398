"""SQLite certificate archive."""
