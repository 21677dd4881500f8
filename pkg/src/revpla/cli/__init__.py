"""CLI package for revpla."""
