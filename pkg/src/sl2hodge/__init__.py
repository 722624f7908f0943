"""Exact verification engine for Hodge-type operator identities over sl(2,R) and an."""

__version__ = "0.1.0"
