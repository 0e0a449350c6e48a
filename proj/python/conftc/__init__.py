"""Exact cohomology-ring computations for ordered configuration spaces."""

from ._core import basis_ranks, cat, certify, reduce, tc, zcl

__all__ = ["basis_ranks", "cat", "certify", "reduce", "tc", "zcl"]
