"""Exact-arithmetic verification library for p-subgroup dimension functions,
Steenrod operations on rank-two elementary abelian cohomology, and the
non-existence certificates for Qd(p) = (Z/p)^2 x| SL2(Z/p)."""

__version__ = "0.1.0"
