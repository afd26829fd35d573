"""Geometry of the translation set F.

G = (-F) union F is the attractor of the maps x -> (x + delta)/n over the
difference set Delta = D - D, living inside the ambient window [-1, 1]
(it is exactly C - C); its tight hull is I = [-R, R] with R = d_m/(n-1).
From the word expansion of the iterates everything here follows:

* interval criterion (F is an interval iff consecutive hull images
  overlap, i.e. 2 d_m >= (n-1) * gap for every Delta gap),
* the open-set condition (the reverse inequalities) with dimension
  log_n #Delta,
* the scaled-digit-set representation G = h*B - R when a common divisor
  h > 1 exists.

All interval arithmetic is exact: endpoints are integers over the common
denominator (n-1) * n^k.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log

import numpy as np

from .digits import DifferenceSet, DigitSet, common_divisor, difference_set
from .errors import BudgetExceeded, NoCommonDivisor
from .oracle import LevelIntervalSet, _cells_touching, resolve_budget


@dataclass(frozen=True)
class FReport:
    base: int
    digits: tuple[int, ...]
    delta: DifferenceSet
    is_interval: bool
    right_endpoint: Fraction
    gap_witness: tuple[int, int, int] | None  # (index j, delta_j, delta_j+1)
    osc_holds: bool
    f_dimension_count: int | None  # dimension is log_n of this count
    f_dimension: float | None


def f_report(D: DigitSet) -> FReport:
    """Both Delta-gap tests at once: F is an interval iff every gap
    satisfies 2 d_m >= (n-1) gap, and the hull images are non-overlapping
    (open set condition) iff every gap satisfies the reverse inequality."""
    delta = difference_set(D)
    n, dm = D.base, D.dmax
    witness = None
    is_interval = True
    osc = True
    for j, (a, b) in enumerate(zip(delta.deltas, delta.deltas[1:]), start=1):
        gap = b - a
        if 2 * dm < (n - 1) * gap:
            if is_interval and witness is None:
                witness = (j, a, b)
            is_interval = False
        if 2 * dm > (n - 1) * gap:
            osc = False
    count = None
    dim = None
    if osc:
        count = delta.size
        assert count > D.m, "Delta always outnumbers D"
        dim = log(count) / log(n)
    return FReport(
        base=n,
        digits=D.digits,
        delta=delta,
        is_interval=is_interval,
        right_endpoint=Fraction(dm, n - 1),
        gap_witness=witness,
        osc_holds=osc,
        f_dimension_count=count,
        f_dimension=dim,
    )


def f_is_interval(D: DigitSet) -> FReport:
    return f_report(D)


def osc_and_dimension(D: DigitSet) -> FReport:
    return f_report(D)


def even_digit_interval(D: DigitSet) -> bool:
    """Even-digit specialization: for D of even digits, F is an interval
    iff Delta is exactly {-n+1, ..., -2, 0, 2, ..., n-1} (then n is odd and
    F = [0, 1])."""
    assert all(d % 2 == 0 for d in D.digits), "meaningful for even digits only"
    n = D.base
    full_even = tuple(
        sorted({0, n - 1, -(n - 1)} | set(range(2, n, 2)) | set(range(-2, -n, -2)))
    )
    matches = difference_set(D).deltas == full_even
    report = f_report(D)
    assert matches == report.is_interval
    if matches:
        assert n % 2 == 1 and report.right_endpoint == 1
    return matches


# -- word enumeration for the Delta IFS ---------------------------------------


def _word_values(deltas: tuple[int, ...], base: int, k: int,
                 budget: int | None) -> np.ndarray:
    """Sorted distinct values sum(delta_i n^(k-i)) over length-k words.

    Distinct values are capped by the window width, so deduplicating per
    level keeps this polynomial in n^k even though there are #Delta^k
    words."""
    limit = resolve_budget(budget)
    arr = np.array(sorted(deltas), dtype=np.int64)
    vals = np.zeros(1, dtype=np.int64)
    for _ in range(k):
        if vals.size * arr.size > limit:
            raise BudgetExceeded(
                f"IFS word enumeration exceeds {limit} at level {k}"
            )
        vals = np.unique(vals[:, None] * np.int64(base) + arr[None, :])
    return vals


def g_ifs_level(D: DigitSet, k: int, budget: int | None = None) -> LevelIntervalSet:
    """Level-k cells of [-1, 1] covered by the IFS iterate of the ambient
    window: union over Delta-words w of [v_w - 1, v_w + 1] in grid units.

    Same encoding as the oracle's difference_level (cell shift n^k), and
    equal to it level by level because word values and pairwise position
    differences coincide; the two routes share no code."""
    vals = _word_values(difference_set(D).deltas, D.base, k, budget)
    return LevelIntervalSet(
        D.base, k, _cells_touching(vals, k, D.base), shift=D.base**k
    )


# -- exact hull iterates ------------------------------------------------------


def _merged_pieces(
    centers: np.ndarray, scaled_radius: int
) -> list[tuple[int, int]]:
    """Merge intervals [c*(n-1) - r, c*(n-1) + r] over sorted centers; all
    endpoints are integers over the denominator (n-1)*n^k, with touching
    pieces joined."""
    pieces: list[tuple[int, int]] = []
    for c in centers.tolist():
        lo, hi = c - scaled_radius, c + scaled_radius
        if pieces and lo <= pieces[-1][1]:
            pieces[-1] = (pieces[-1][0], max(pieces[-1][1], hi))
        else:
            pieces.append((lo, hi))
    return pieces


def hull_iterate(D: DigitSet, k: int, budget: int | None = None
                 ) -> list[tuple[int, int]]:
    """The k-th IFS iterate of the tight hull I = [-R, R], R = d_m/(n-1),
    as a merged list of exact intervals: entries are integer endpoint pairs
    over the denominator (n-1) * n^k."""
    vals = _word_values(difference_set(D).deltas, D.base, k, budget)
    return _merged_pieces(vals * np.int64(D.base - 1), D.dmax)


def hull_is_saturated(D: DigitSet, k: int, budget: int | None = None) -> bool:
    """True iff the level-k hull iterate is all of [-R, R] (single piece).

    The iterate always sits inside the hull and contains G, so saturation
    at every level is exactly the interval criterion; a gap, once present,
    persists."""
    pieces = hull_iterate(D, k, budget)
    return len(pieces) == 1


# -- scaled digit-set representation (common divisor h > 1) -------------------


@dataclass(frozen=True)
class BRepresentation:
    h: int
    kind: str  # "interval" | "digit_set"
    b: DigitSet | None
    shift: Fraction  # d_m / (n-1)


def b_representation(
    D: DigitSet, verify_depth: int = 4, budget: int | None = None
) -> BRepresentation:
    """When an integer h > 1 divides every digit, G = h*B - d_m/(n-1) for a
    digit family B over the scaled differences; B is the whole interval
    [0, 1] exactly when those differences fill every residue.

    The identity is verified exactly at all levels up to verify_depth by
    comparing merged hull iterates under the affine map."""
    h = common_divisor(D)
    if h <= 1:
        raise NoCommonDivisor(f"digits of {D} share no divisor > 1")
    n, dm = D.base, D.dmax
    e = [d // h for d in D.digits]
    em = e[-1]
    b_digits = tuple(sorted({ei - ej + em for ei in e for ej in e}))
    shift = Fraction(dm, n - 1)
    if b_digits == tuple(range(n)):
        return BRepresentation(h=h, kind="interval", b=None, shift=shift)
    B = DigitSet(n, b_digits)
    rep = BRepresentation(h=h, kind="digit_set", b=B, shift=shift)
    for k in range(verify_depth + 1):
        assert b_identity_holds(D, rep, k, budget), (
            f"scaled representation failed at level {k} for {D}"
        )
    return rep


def _b_hull_iterate(B: DigitSet, k: int, budget: int | None
                    ) -> list[tuple[int, int]]:
    """Hull iterate of the B family seeded with its own hull
    [0, b_max/(n-1)]: pieces [p*(n-1), p*(n-1) + b_max] over level-k
    position words, same denominator convention as hull_iterate."""
    vals = _word_values(B.digits, B.base, k, budget)
    n1 = B.base - 1
    bmax = B.digits[-1]
    pieces: list[tuple[int, int]] = []
    for p in (vals * np.int64(n1)).tolist():
        lo, hi = p, p + bmax
        if pieces and lo <= pieces[-1][1]:
            pieces[-1] = (pieces[-1][0], max(pieces[-1][1], hi))
        else:
            pieces.append((lo, hi))
    return pieces


def b_identity_holds(
    D: DigitSet,
    rep: BRepresentation,
    k: int,
    budget: int | None = None,
) -> bool:
    """Exact level-k check of G_k = h * B_k - d_m/(n-1) on hull iterates.

    Both sides are merged unions over the denominator (n-1) * n^k; the
    affine image of a B piece [lo, hi] is [h*lo - d_m n^k, h*hi - d_m n^k].
    """
    assert rep.kind == "digit_set" and rep.b is not None
    g_side = hull_iterate(D, k, budget)
    offset = D.dmax * D.base**k
    b_side = [
        (rep.h * lo - offset, rep.h * hi - offset)
        for lo, hi in _b_hull_iterate(rep.b, k, budget)
    ]
    return g_side == b_side
