"""Tests package for QaoaBench."""
