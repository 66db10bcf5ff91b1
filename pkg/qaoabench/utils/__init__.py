"""Utility modules for QaoaBench."""
