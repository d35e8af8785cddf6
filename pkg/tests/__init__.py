"""Tests for gdsp-solver."""
