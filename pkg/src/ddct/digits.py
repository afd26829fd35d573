"""Digit-set model, validation, and difference-set computation.

A ``DigitSet`` is the ambient datum of every computation here: a base
``n >= 3`` together with a strictly increasing tuple of digits
``0 = d_1 < d_2 < ... < d_m < n`` with ``2 <= m < n``.  Invalid input is
rejected, never repaired.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    BaseTooSmall,
    DigitOutOfRange,
    DigitsNotStrictlyIncreasing,
    FirstDigitNonzero,
    TooFewDigits,
    TooManyDigits,
)


@dataclass(frozen=True)
class DigitSet:
    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.base
        d = tuple(int(x) for x in self.digits)
        object.__setattr__(self, "digits", d)
        if n < 3:
            raise BaseTooSmall(f"base must be >= 3, got {n}")
        if len(d) < 2:
            raise TooFewDigits(f"need at least 2 digits, got {len(d)}")
        if len(d) >= n:
            raise TooManyDigits(f"need m < n, got m={len(d)} with n={n}")
        if d[0] != 0:
            raise FirstDigitNonzero(f"first digit must be 0, got {d[0]}")
        for x in d:
            if not 0 <= x <= n - 1:
                raise DigitOutOfRange(f"digit {x} outside [0, {n - 1}]")
        for a, b in zip(d, d[1:]):
            if b <= a:
                raise DigitsNotStrictlyIncreasing(f"{a} followed by {b}")

    @property
    def m(self) -> int:
        return len(self.digits)

    @property
    def dmax(self) -> int:
        return self.digits[-1]

    def __str__(self) -> str:
        return f"C({self.base}; {{{','.join(map(str, self.digits))}}})"


@dataclass(frozen=True)
class DifferenceSet:
    deltas: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.deltas)


def new_digit_set(base: int, digits: list[int] | tuple[int, ...]) -> DigitSet:
    """Validate and build a DigitSet; alias for the constructor."""
    return DigitSet(base, tuple(digits))


@lru_cache(maxsize=None)
def difference_set(D: DigitSet) -> DifferenceSet:
    """All pairwise digit differences d - e, sorted and deduplicated."""
    ds = sorted({d - e for d in D.digits for e in D.digits})
    return DifferenceSet(tuple(ds))


def is_separated(D: DigitSet) -> bool:
    """True iff consecutive digits differ by at least 2."""
    return all(b - a >= 2 for a, b in zip(D.digits, D.digits[1:]))


def common_divisor(D: DigitSet) -> int:
    """Greatest h with every digit a multiple of h (1 when none exceeds 1)."""
    return math.gcd(*D.digits[1:])
