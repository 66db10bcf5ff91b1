"""Core numerics and experiment logic for QaoaBench."""
