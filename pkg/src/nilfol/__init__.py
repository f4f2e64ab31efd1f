"""Exact toolkit for invariant foliations on nilmanifolds.

Computes, in exact arithmetic over the rational function field Q(s):
invariant and basic cohomology of nilpotent Lie algebras, mean curvature
and bundle-like checks for invariant metrics, rational hulls of leaf
subalgebras, and the basic Albanese lattice, torus and map.
"""

__version__ = "0.1.0"
