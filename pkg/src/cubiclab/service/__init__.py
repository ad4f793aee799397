"""FastAPI layer over the series engine and congruence laboratory."""

from .app import app, create_app

__all__ = ["app", "create_app"]
