"""HTTP service exposing the algebra: basis construction, the twist map,
quantum minors, and the verification suite."""

from .app import SCHEMA_TAG, create_app

__all__ = ["create_app", "SCHEMA_TAG"]
