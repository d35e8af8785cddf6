"""gdsp-solver: minimum-storage toolkit for graphical distributed storage."""

__version__ = "0.1.0"
