"""Application layer package: command-line interface."""
