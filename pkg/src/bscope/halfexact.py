"""Exact half-integer (and half-rational) values.

Inner products of points in an integer word metric are half-integers, so
every such quantity is stored as twice its mathematical value. That keeps
the whole pipeline in exact integer or Fraction arithmetic and makes every
certificate comparison an equality test, never a float tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _coerce_doubled(other) -> int | Fraction | None:
    """Doubled form of a comparison operand, or None if unsupported."""
    if isinstance(other, HalfExact):
        return other.doubled
    if isinstance(other, int):
        return 2 * other
    if isinstance(other, Fraction):
        return 2 * other
    return None


@dataclass(frozen=True)
class HalfExact:
    """A value stored as twice itself; ``doubled`` is an int or Fraction."""

    doubled: int | Fraction

    def __post_init__(self):
        if not isinstance(self.doubled, (int, Fraction)):
            raise TypeError(f"doubled must be int or Fraction, got {type(self.doubled).__name__}")
        if isinstance(self.doubled, Fraction) and self.doubled.denominator == 1:
            object.__setattr__(self, "doubled", int(self.doubled))

    @classmethod
    def from_value(cls, value: int | Fraction) -> "HalfExact":
        return cls(2 * value)

    @property
    def value(self) -> int | Fraction:
        v = Fraction(self.doubled, 2)
        return int(v) if v.denominator == 1 else v

    @property
    def is_integral(self) -> bool:
        return Fraction(self.doubled, 2).denominator == 1

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"HalfExact({self.value})"

    def __eq__(self, other) -> bool:
        d = _coerce_doubled(other)
        if d is None:
            return NotImplemented
        return self.doubled == d

    def __hash__(self) -> int:
        # equal-valued ints/Fractions/HalfExacts hash alike
        return hash(Fraction(self.doubled, 2))

    def __lt__(self, other) -> bool:
        d = _coerce_doubled(other)
        if d is None:
            return NotImplemented
        return self.doubled < d

    def __le__(self, other) -> bool:
        d = _coerce_doubled(other)
        if d is None:
            return NotImplemented
        return self.doubled <= d

    def __gt__(self, other) -> bool:
        d = _coerce_doubled(other)
        if d is None:
            return NotImplemented
        return self.doubled > d

    def __ge__(self, other) -> bool:
        d = _coerce_doubled(other)
        if d is None:
            return NotImplemented
        return self.doubled >= d

    def __add__(self, other) -> "HalfExact":
        d = _coerce_doubled(other)
        if d is None:
            return NotImplemented
        return HalfExact(self.doubled + d)

    __radd__ = __add__

    def __sub__(self, other) -> "HalfExact":
        d = _coerce_doubled(other)
        if d is None:
            return NotImplemented
        return HalfExact(self.doubled - d)

    def __rsub__(self, other) -> "HalfExact":
        d = _coerce_doubled(other)
        if d is None:
            return NotImplemented
        return HalfExact(d - self.doubled)

    def __neg__(self) -> "HalfExact":
        return HalfExact(-self.doubled)
