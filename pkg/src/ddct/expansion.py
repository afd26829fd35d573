"""Exact base-n expansions of translation parameters in [0, 1].

An expansion is a finite ``prefix`` of digits followed by a tail that is
either zero, a repeating ``period`` block, or a pull-based digit ``rule``
(used for constructed streams with no closed form).  Values are exact:
conversion to and from ``fractions.Fraction`` never rounds.

A terminating value has two representations (0.x1..xk and the twin ending
in repeating n-1); both are first-class here because membership semantics
downstream differ per representation.  ``canonical`` prefers the
terminating form.

Digit-string grammar (shared with the CLI): ``0.202``, ``0.(20)``,
``0.1(2)`` for bases up to 10; bracketed comma lists ``0.[10,0](7,3)``
beyond.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import (
    DigitOutOfRange,
    NoAlternate,
    NotClosedForm,
    NotDecidable,
    OutOfRange,
    StreamExhausted,
)

Rational = Fraction

DigitRule = Callable[[int], int]  # 1-based position within the tail


@dataclass(frozen=True)
class NAryExpansion:
    base: int
    prefix: tuple[int, ...] = ()
    period: tuple[int, ...] = ()
    rule: Optional[DigitRule] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        n = self.base
        if n < 2:
            raise DigitOutOfRange(f"expansion base must be >= 2, got {n}")
        if self.period and self.rule is not None:
            raise ValueError("tail cannot be both periodic and generated")
        for x in self.prefix + self.period:
            if not 0 <= x <= n - 1:
                raise DigitOutOfRange(f"digit {x} outside [0, {n - 1}]")
        if self.period and all(x == 0 for x in self.period):
            object.__setattr__(self, "period", ())  # all-zero tail is Zero

    # -- tail classification -------------------------------------------------
    @property
    def tail_kind(self) -> str:
        if self.rule is not None:
            return "generator"
        return "periodic" if self.period else "zero"

    def digit_at(self, j: int) -> int:
        """Digit x_j (1-based).  Pulls from the rule for generator tails."""
        if j < 1:
            raise OutOfRange(f"digit index must be >= 1, got {j}")
        p = len(self.prefix)
        if j <= p:
            return self.prefix[j - 1]
        if self.period:
            return self.period[(j - p - 1) % len(self.period)]
        if self.rule is not None:
            d = self.rule(j - p)
            if d is None:
                raise StreamExhausted(f"stream ended before digit {j}")
            if not 0 <= d <= self.base - 1:
                raise DigitOutOfRange(f"stream produced digit {d}")
            return d
        return 0

    def digits_upto(self, k: int) -> tuple[int, ...]:
        return tuple(self.digit_at(j) for j in range(1, k + 1))

    def __str__(self) -> str:
        return format_expansion(self)


def truncate(x: NAryExpansion, k: int) -> NAryExpansion:
    """First k digits of x as a finite expansion (value = floor(x, k))."""
    if k < 0:
        raise OutOfRange(f"truncation level must be >= 0, got {k}")
    return NAryExpansion(x.base, x.digits_upto(k))


def prefix_integer(x: NAryExpansion, k: int) -> int:
    """Integer value of the first k digits, i.e. floor(x, k) * n^k."""
    v = 0
    for j in range(1, k + 1):
        v = v * x.base + x.digit_at(j)
    return v


def to_rational(x: NAryExpansion) -> Fraction:
    if x.rule is not None:
        raise NotClosedForm("generator tails have no closed form")
    n = x.base
    p = len(x.prefix)
    v = Fraction(prefix_integer(x, p), n**p)
    if x.period:
        q = len(x.period)
        block = 0
        for d in x.period:
            block = block * n + d
        v += Fraction(block, (n**q - 1) * n**p)
    return v


def from_rational(r: Fraction, base: int) -> NAryExpansion:
    """Canonical expansion of r in [0, 1]: terminating when the denominator
    divides a power of the base, else eventually periodic via long division
    with remainder-cycle detection."""
    r = Fraction(r)
    if not 0 <= r <= 1:
        raise OutOfRange(f"value {r} outside [0, 1]")
    if r == 1:
        return NAryExpansion(base, (), (base - 1,))
    digits: list[int] = []
    seen: dict[Fraction, int] = {}
    rem = r
    while rem != 0:
        if rem in seen:
            i = seen[rem]
            return NAryExpansion(base, tuple(digits[:i]), tuple(digits[i:]))
        seen[rem] = len(digits)
        rem *= base
        d = int(rem)  # floor: rem >= 0
        digits.append(d)
        rem -= d
    return NAryExpansion(base, tuple(digits))


def _primitive_period(period: tuple[int, ...]) -> tuple[int, ...]:
    q = len(period)
    for d in range(1, q + 1):
        if q % d == 0 and period[:d] * (q // d) == period:
            return period[:d]
    return period


def canonical(x: NAryExpansion) -> NAryExpansion:
    """Minimal-form expansion of the same value.

    Trailing zeros are stripped, the period is reduced to its primitive
    block and rotated into the shortest preperiod, and an all-(n-1) tail is
    carried into the terminating twin.  Generator tails pass through.
    """
    if x.rule is not None:
        return x
    n = x.base
    prefix = list(x.prefix)
    period = _primitive_period(x.period) if x.period else ()
    if period:
        period_l = list(period)
        while prefix and prefix[-1] == period_l[-1]:
            prefix.pop()
            period_l = [period_l[-1]] + period_l[:-1]
        period = tuple(period_l)
        if all(d == 0 for d in period):
            period = ()
        elif all(d == n - 1 for d in period):
            # carry: 0.p1..pk(n-1 rep) == 0.p1..(pk + 1)
            while prefix and prefix[-1] == n - 1:
                prefix.pop()
            if not prefix:
                return NAryExpansion(n, (), (n - 1,))  # the value 1
            prefix[-1] += 1
            period = ()
    if not period:
        while prefix and prefix[-1] == 0:
            prefix.pop()
    return NAryExpansion(n, tuple(prefix), period)


def is_terminating(x: NAryExpansion) -> bool:
    """True iff x admits a finite expansion (tail zero, or all-(n-1))."""
    if x.rule is not None:
        raise NotDecidable("cannot decide termination of a generator tail")
    if not x.period:
        return True
    return all(d == x.base - 1 for d in _effective_period(x))


def _effective_period(x: NAryExpansion) -> tuple[int, ...]:
    return _primitive_period(x.period)


def terminating_level(x: NAryExpansion) -> int:
    """Smallest l with x * n^l an integer; requires a terminating x."""
    if not is_terminating(x):
        raise NotDecidable("value does not terminate")
    return len(canonical(x).prefix)


def alternate_representation(x: NAryExpansion) -> NAryExpansion:
    """The repeating-(n-1) twin of a terminating x != 0.

    Digits agree up to the last nonzero position l, where the digit drops
    by one and the tail becomes all n-1.  The value is unchanged.
    """
    if x.rule is not None:
        raise NotDecidable("cannot rewrite a generator tail")
    if not is_terminating(x):
        raise NoAlternate("only terminating values have a second form")
    c = canonical(x)
    n = x.base
    if c.period:  # canonical() only leaves a period for the value 1
        return NAryExpansion(n, (), (n - 1,))
    if not c.prefix:
        raise NoAlternate("0 has a unique expansion")
    head = c.prefix[:-1]
    return NAryExpansion(n, head + (c.prefix[-1] - 1,), (n - 1,))


# -- digit-string grammar ----------------------------------------------------

_COMPACT = re.compile(r"^0?\.(?P<pre>[0-9]*)(?:\((?P<per>[0-9]+)\))?$")
_LISTED = re.compile(
    r"^0?\.\[(?P<pre>[0-9, ]*)\](?:\((?P<per>[0-9, ]+)\))?$"
)
_PARENS_ONLY = re.compile(r"^0?\.\((?P<per>[0-9, ]+)\)$")


def _digit_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(t) for t in text.split(","))


def parse_expansion(s: str, base: int) -> NAryExpansion:
    """Parse the digit-string grammar; single characters for base <= 10,
    bracketed comma lists above."""
    s = s.strip()
    if s in ("0", "0.", "."):
        return NAryExpansion(base)
    if s == "1":
        return NAryExpansion(base, (), (base - 1,))
    m = _LISTED.match(s)
    if m:
        per = _digit_list(m.group("per")) if m.group("per") else ()
        return NAryExpansion(base, _digit_list(m.group("pre")), per)
    if base > 10:
        m = _PARENS_ONLY.match(s)
        if m:
            return NAryExpansion(base, (), _digit_list(m.group("per")))
        raise OutOfRange(f"cannot parse {s!r} for base {base}: use 0.[..](..)")
    m = _COMPACT.match(s)
    if m:
        pre = tuple(int(c) for c in m.group("pre"))
        per = tuple(int(c) for c in m.group("per")) if m.group("per") else ()
        return NAryExpansion(base, pre, per)
    raise OutOfRange(f"cannot parse expansion {s!r}")


def format_expansion(x: NAryExpansion) -> str:
    if x.rule is not None:
        raise NotClosedForm("generator tails print via truncation")
    if x.base <= 10:
        pre = "".join(map(str, x.prefix))
        per = f"({''.join(map(str, x.period))})" if x.period else ""
    else:
        pre = f"[{','.join(map(str, x.prefix))}]"
        per = f"({','.join(map(str, x.period))})" if x.period else ""
    return f"0.{pre}{per}"
