"""Unimodular complex numbers stored as exact rational angles.

A value ``Turn(k/d)`` stands for ``exp(2*pi*i*k/d)``.  Keeping the angle as a
:class:`fractions.Fraction` makes root-of-unity conditions such as
``eta**m == 1`` decidable exactly; the complex value is only materialized on
demand through :attr:`Turn.value`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str]


def as_fraction(x) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and floats to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


@dataclass(frozen=True)
class Turn:
    """Point of the unit circle at ``turns`` full revolutions (mod 1)."""

    turns: Fraction = Fraction(0)

    def __post_init__(self):
        t = as_fraction(self.turns)
        object.__setattr__(self, "turns", t - math.floor(t))

    @classmethod
    def of(cls, x: "Turn | RationalLike") -> "Turn":
        return x if isinstance(x, Turn) else cls(as_fraction(x))

    @property
    def value(self) -> complex:
        t = self.turns
        # exact values on the axes keep identity-type checks free of rounding
        if t == 0:
            return 1 + 0j
        if t == Fraction(1, 2):
            return -1 + 0j
        if t == Fraction(1, 4):
            return 1j
        if t == Fraction(3, 4):
            return -1j
        return cmath.exp(2j * math.pi * float(t))

    def __complex__(self) -> complex:
        return self.value

    def __mul__(self, other: "Turn") -> "Turn":
        if not isinstance(other, Turn):
            return NotImplemented
        return Turn(self.turns + other.turns)

    def __pow__(self, k: int) -> "Turn":
        return Turn(self.turns * k)

    def conj(self) -> "Turn":
        return Turn(-self.turns)

    def is_root_of_unity(self, m: int) -> bool:
        """True iff ``self**m == 1`` exactly."""
        return (self.turns * m).denominator == 1

    def __str__(self) -> str:
        return str(self.turns)


ONE = Turn(0)


def roots_of_unity(m: int) -> list[Turn]:
    """All ``m``-th roots of unity, starting at 1."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    return [Turn(Fraction(k, m)) for k in range(m)]
