"""Exact half-integer arithmetic.

Spin values j and magnetic indices m live on the lattice Z/2.  Storing the
doubled value as a plain int keeps every comparison and index computation
exact; floats only appear at the boundary when a caller asks for one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

__all__ = ["HalfInt", "walk_index", "components", "dimension"]


@dataclass(frozen=True, order=True)
class HalfInt:
    """A number of the form n/2 with n an integer, stored as ``doubled = n``."""

    doubled: int

    @staticmethod
    def parse(value) -> "HalfInt":
        """Coerce ints, floats, strings like ``"3/2"``, or HalfInt to HalfInt.

        Floats and fraction strings must land exactly on the half-integer
        lattice; anything else raises DomainError.
        """
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise DomainError(f"not a half-integer: {value!r}")
        if isinstance(value, int):
            return HalfInt(2 * value)
        if isinstance(value, float):
            if not math.isfinite(value):
                raise DomainError(f"not a half-integer: {value!r}")
            doubled = round(2.0 * value)
            if 2.0 * value != doubled:
                raise DomainError(f"not a half-integer: {value!r}")
            return HalfInt(doubled)
        if isinstance(value, str):
            try:
                frac = Fraction(value.strip())
            except (ValueError, ZeroDivisionError):
                raise DomainError(f"not a half-integer: {value!r}") from None
            if frac.denominator not in (1, 2):
                raise DomainError(f"not a half-integer: {value!r}")
            return HalfInt(int(frac * 2))
        raise DomainError(f"not a half-integer: {value!r}")

    @property
    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def __float__(self) -> float:
        return self.doubled / 2.0

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.doubled)

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"


def walk_index(value) -> int:
    """Validate a spin quantum number j >= 1/2 and return its doubled value."""
    j = HalfInt.parse(value)
    if j.doubled < 1:
        raise DomainError(f"spin must be at least 1/2, got {j}")
    return j.doubled


def components(j) -> tuple[HalfInt, ...]:
    """Magnetic quantum numbers m = j, j-1, ..., -j in descending order."""
    tj = walk_index(j)
    return tuple(HalfInt(tm) for tm in range(tj, -tj - 1, -2))


def dimension(j) -> int:
    """Number of internal components, 2j + 1."""
    return walk_index(j) + 1
