"""Cantor pairing on the naturals.

The diagonal enumeration pair(p, k) = (p+k)(p+k+1)/2 + k is a bijection
between pairs of naturals and naturals.  It is used to flatten a
two-argument membership sequence alpha(p, k) into a one-argument 0/1
sequence: stage p comes first, candidate value k second.
"""

from __future__ import annotations

from math import isqrt


def pair(p: int, k: int) -> int:
    """Diagonal code of (p, k); pair(0, 0) = 0, pair(1, 2) = 8."""
    if p < 0 or k < 0:
        raise ValueError(f"pair needs nonnegative arguments, got ({p}, {k})")
    s = p + k
    return s * (s + 1) // 2 + k


def unpair(z: int) -> tuple[int, int]:
    """Inverse of pair: unpair(pair(p, k)) == (p, k)."""
    if z < 0:
        raise ValueError(f"unpair needs a nonnegative argument, got {z}")
    s = (isqrt(8 * z + 1) - 1) // 2
    k = z - s * (s + 1) // 2
    return s - k, k
