"""Tests for revpla."""
