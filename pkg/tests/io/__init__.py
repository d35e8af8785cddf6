"""Tests for IO modules."""
