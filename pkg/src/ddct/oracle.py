"""Brute-force ground truth for translate intersections.

Everything here enumerates actual level-k interval positions as exact
integers and answers by counting; it exists to cross-check the symbolic
automaton, not to run deep.  Enumeration is budgeted (default 10^7
positions, overridable per call or via DDCT_BUDGET).

Positions follow the convention: level-k interval [a/n^k, (a+1)/n^k] is
recorded as the integer a.  For the two difference-set constructions the
window is [-1, 1] and cell indices are shifted by n^k to be nonnegative.

Offset convention for a pair (I, J) with J from the translate:
position(J) - position(I) = delta; delta = 0 is the interval case,
delta = -1 (J left-adjacent) the potential interval case, delta = +1
(J right-adjacent) the potentially empty case.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import kernels
from .digits import DigitSet
from .errors import BudgetExceeded
from .expansion import (
    NAryExpansion,
    is_terminating,
    prefix_integer,
    terminating_level,
    to_rational,
)

DEFAULT_BUDGET = 10_000_000

_INT64_SAFE = 2**62

OFFSETS = (-1, 0, 1)


def resolve_budget(budget: int | None = None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get("DDCT_BUDGET", "").strip()
    if env:
        return int(env)
    return DEFAULT_BUDGET


def _check_budget(size: int, budget: int | None) -> None:
    limit = resolve_budget(budget)
    if size > limit:
        raise BudgetExceeded(f"enumeration of {size} positions exceeds {limit}")


@dataclass(frozen=True)
class LevelIntervalSet:
    base: int
    level: int
    positions: tuple[int, ...]
    shift: int = 0  # positions are true cell indices + shift

    @property
    def size(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class AlignmentState:
    """Pair counts per alignment offset at one level; arbitrary precision."""

    level: int
    counts: tuple[int, int, int]  # offsets -1, 0, +1

    def count(self, offset: int) -> int:
        return self.counts[offset + 1]

    @property
    def interval(self) -> int:
        return self.counts[1]

    @property
    def potential(self) -> int:
        return self.counts[0]

    @property
    def potentially_empty(self) -> int:
        return self.counts[2]

    @property
    def live(self) -> int:
        return self.counts[0] + self.counts[1]

    @property
    def total(self) -> int:
        return sum(self.counts)


def initial_state() -> AlignmentState:
    return AlignmentState(0, (0, 1, 0))


# -- position enumeration ----------------------------------------------------


def _positions_array(D: DigitSet, k: int, budget: int | None) -> np.ndarray:
    _check_budget(D.m**k, budget)
    digits = np.array(D.digits, dtype=np.int64)
    pos = np.zeros(1, dtype=np.int64)
    for _ in range(k):
        pos = kernels.refine_positions(pos, digits, D.base)
    return pos


def _positions_big(D: DigitSet, k: int, budget: int | None) -> list[int]:
    _check_budget(D.m**k, budget)
    pos = [0]
    n = D.base
    pos_next: list[int] = []
    for _ in range(k):
        pos_next = []
        for p in pos:
            base_val = p * n
            for d in D.digits:
                pos_next.append(base_val + d)
        pos = pos_next
    return pos


def _fits_int64(D: DigitSet, k: int) -> bool:
    return D.base**k < _INT64_SAFE


def level_intervals(D: DigitSet, k: int, budget: int | None = None) -> LevelIntervalSet:
    """The m^k level-k intervals of the construction, as sorted positions."""
    if _fits_int64(D, k):
        pos = _positions_array(D, k, budget)
        return LevelIntervalSet(D.base, k, tuple(int(p) for p in pos))
    return LevelIntervalSet(D.base, k, tuple(_positions_big(D, k, budget)))


# -- truncation shift --------------------------------------------------------


def _truncation_int(t: NAryExpansion, k: int) -> int:
    return prefix_integer(t, k)


def _terminates_by(t: NAryExpansion, k: int) -> bool:
    """True when t admits a finite expansion of length <= k (decided on the
    value; generator tails are treated as non-terminating)."""
    if t.rule is not None:
        return False
    return is_terminating(t) and terminating_level(t) <= k


def _exact_shift_int(t: NAryExpansion, k: int) -> int:
    """t * n^k as an exact integer (valid when t terminates by level k)."""
    v = to_rational(t) * t.base**k
    assert v.denominator == 1
    return v.numerator


# -- pair census -------------------------------------------------------------


def pair_census(
    D: DigitSet, t: NAryExpansion, k: int, budget: int | None = None
) -> AlignmentState:
    """Count interval pairs of C_k against C_k + floor(t, k) at each
    alignment offset in {-1, 0, +1}.

    The shift is the truncation of t's stored digit stream, so the census
    matches the automaton evolved over the same digits.
    """
    T = _truncation_int(t, k)
    if _fits_int64(D, k) and abs(T) < _INT64_SAFE:
        pos = _positions_array(D, k, budget)
        counts = tuple(
            kernels.shift_member_count(pos, off - T) for off in OFFSETS
        )
        return AlignmentState(k, counts)
    pos_set = set(_positions_big(D, k, budget))
    counts_l = [0, 0, 0]
    for a in pos_set:
        for i, off in enumerate(OFFSETS):
            if a + off - T in pos_set:
                counts_l[i] += 1
    return AlignmentState(k, tuple(counts_l))


def offset_profile(
    D: DigitSet, t: NAryExpansion, k: int, budget: int | None = None
) -> dict[int, int]:
    """Joint census: for each nonempty offset subset (bitmask 1:-1, 2:0,
    4:+1), how many intervals of C_k carry exactly that pair profile."""
    T = _truncation_int(t, k)
    if _fits_int64(D, k) and abs(T) < _INT64_SAFE:
        pos = _positions_array(D, k, budget)
        raw = kernels.offset_mask_counts(pos, T)
        return {mask: int(raw[mask]) for mask in range(1, 8) if raw[mask]}
    pos_set = set(_positions_big(D, k, budget))
    out: dict[int, int] = {}
    for a in pos_set:
        mask = 0
        for bit, off in ((1, -1), (2, 0), (4, 1)):
            if a + off - T in pos_set:
                mask |= bit
        if mask:
            out[mask] = out.get(mask, 0) + 1
    return out


def joint_interval_potential(profile: dict[int, int]) -> int:
    """Intervals simultaneously in the interval and potential interval case
    (the B_k census of the non-separated analysis)."""
    return profile.get(3, 0) + profile.get(7, 0)


def interval_only(profile: dict[int, int]) -> int:
    """Intervals in the interval case but not the potential interval case."""
    return profile.get(2, 0) + profile.get(6, 0)


def intersect_levels(
    D: DigitSet, t: NAryExpansion, k: int, budget: int | None = None
) -> LevelIntervalSet:
    """Positions of C_k intervals that survive in the level-k cover of the
    intersection.

    Offsets {-1, 0} qualify while the remainder t - floor(t, k) is strictly
    positive; once t has terminated (exact alignment) the single-point
    contacts at offset +1 qualify too.
    """
    if _terminates_by(t, k):
        T = _exact_shift_int(t, k)
        offsets = (-1, 0, 1)
    else:
        T = _truncation_int(t, k)
        offsets = (-1, 0)
    if _fits_int64(D, k) and abs(T) < _INT64_SAFE:
        pos = _positions_array(D, k, budget)
        keep = np.zeros(pos.size, dtype=bool)
        for off in offsets:
            target = pos + (off - T)
            idx = np.searchsorted(pos, target)
            idx[idx == pos.size] = 0
            keep |= pos[idx] == target
        return LevelIntervalSet(D.base, k, tuple(int(p) for p in pos[keep]))
    pos_set = set(_positions_big(D, k, budget))
    kept = sorted(
        a for a in pos_set if any(a + off - T in pos_set for off in offsets)
    )
    return LevelIntervalSet(D.base, k, tuple(kept))


# -- difference sets ---------------------------------------------------------


def _pairwise_differences(D: DigitSet, k: int, budget: int | None) -> np.ndarray:
    limit = resolve_budget(budget)
    if D.m ** (2 * k) > limit:
        raise BudgetExceeded(
            f"difference enumeration needs {D.m ** (2 * k)} pairs > {limit}"
        )
    pos = _positions_array(D, k, budget)
    if pos.size <= 4096:
        return np.unique(pos[:, None] - pos[None, :])
    chunks = [np.unique(pos[i : i + 2048, None] - pos[None, :])
              for i in range(0, pos.size, 2048)]
    return np.unique(np.concatenate(chunks))


def _cells_touching(values: np.ndarray, k: int, base: int) -> tuple[int, ...]:
    """Cells of [-1, 1] meeting union of [v-1, v+1] over the given grid
    values; cell [a, a+1] meets [v-1, v+1] iff v-2 <= a <= v+1.  Returned
    indices are shifted by n^k."""
    nk = base**k
    cells = np.unique(
        np.concatenate([values - 2, values - 1, values, values + 1])
    )
    cells = cells[(cells >= -nk) & (cells <= nk - 1)]
    return tuple(int(c) + nk for c in cells)


def difference_level(D: DigitSet, k: int, budget: int | None = None) -> LevelIntervalSet:
    """Level-k cells of [-1, 1] meeting C_k - C_k, computed from all
    pairwise position differences (each difference c of two cells spans
    [c-1, c+1] in grid units).  Cell indices carry shift n^k."""
    diffs = _pairwise_differences(D, k, budget)
    return LevelIntervalSet(
        D.base, k, _cells_touching(diffs, k, D.base), shift=D.base**k
    )
