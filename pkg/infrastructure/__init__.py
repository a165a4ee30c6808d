# infrastructure/__init__.py
"""Shared plumbing: error hierarchy, logging setup and environment settings."""
