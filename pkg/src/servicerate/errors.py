"""Shared exception types."""

from __future__ import annotations

__all__ = ["GuardError"]


class GuardError(RuntimeError):
    """Raised when a request exceeds a built-in size guard for exact search."""
