"""Blank for pytests testing."""
