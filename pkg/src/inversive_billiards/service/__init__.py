"""HTTP service wrapping the computation modules."""

from .app import app

__all__ = ["app"]
