"""Culprit identification toolkit - main source package."""
