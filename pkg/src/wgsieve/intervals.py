"""A real value carried together with a certified enclosure [lo, hi]."""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class IntervalValue:
    point: float
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("enclosure endpoints must be finite")
        if not self.lo <= self.point <= self.hi:
            raise ValueError(f"point {self.point} outside [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @classmethod
    def exact(cls, x: float) -> "IntervalValue":
        return cls(x, x, x)

    @classmethod
    def from_error(cls, point: float, abs_err: float) -> "IntervalValue":
        if abs_err < 0:
            raise ValueError("error must be nonnegative")
        return cls(point, point - abs_err, point + abs_err)

    def __add__(self, other: "IntervalValue") -> "IntervalValue":
        return IntervalValue(self.point + other.point, self.lo + other.lo, self.hi + other.hi)

    def scale(self, c: float) -> "IntervalValue":
        """Multiply by an exact scalar (sign-aware)."""
        if c >= 0:
            return IntervalValue(self.point * c, self.lo * c, self.hi * c)
        return IntervalValue(self.point * c, self.hi * c, self.lo * c)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "IntervalValue") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi
