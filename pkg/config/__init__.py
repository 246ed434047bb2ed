"""Configuration package for the culprit identification toolkit."""
