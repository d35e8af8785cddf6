"""Tests for logic modules."""
