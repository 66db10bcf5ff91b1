"""
QaoaBench - QAOA MAX-CUT workbench with repetition-cost accounting.

Emulates QAOA circuits on dense state vectors, models finite-precision
estimation and its shot cost, and compares simplex and quasi-Newton
optimizers (finite-difference and analytical gradients) on random
3-regular MAX-CUT instances.
"""

__version__ = "0.2.0"
__author__ = "QaoaBench Contributors"
