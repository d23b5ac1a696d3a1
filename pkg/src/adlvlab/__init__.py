"""Exact geometric invariants of affine Deligne-Lusztig varieties for
SL_n (nonemptiness, dimension, top-component counts) via the cyclic-shift
reduction, the quantum-Bruhat-graph verification of the dimension lower
bound, and the ML-assisted pattern-exploration pipeline around them."""

__version__ = "0.1.0"
