"""Symbolic engine for translate intersections.

Refining C_k and its translate by one more digit x maps a pair at
alignment offset delta to pairs at delta' = n*delta + (e - d) + x over
digit choices (d, e); offsets outside {-1, 0, +1} never return.  That
single relation yields, per shift digit, a 3x3 nonnegative integer matrix
whose powers drive everything in this module: censuses to arbitrary depth,
membership in F for eventually periodic translations, and the exact
Minkowski dimension for periodic ones.

Counts are Python big integers throughout; depth 200 is a routine target.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt, log

from .digits import DigitSet
from .errors import DigitOutOfRange, NotDecidable, NotMember, NotPeriodic
from .expansion import (
    NAryExpansion,
    alternate_representation,
    canonical,
    from_rational,
    is_terminating,
    to_rational,
)
from .oracle import AlignmentState, initial_state

OFFSETS = (-1, 0, 1)


@dataclass(frozen=True)
class OffsetTransitionMatrix:
    """rows[i][j] counts digit pairs driving offset OFFSETS[j] to
    OFFSETS[i] under one refinement with the given shift digit."""

    shift_digit: int
    rows: tuple[tuple[int, int, int], ...]

    def entry(self, new_offset: int, old_offset: int) -> int:
        return self.rows[new_offset + 1][old_offset + 1]

    def column(self, old_offset: int) -> tuple[int, int, int]:
        return tuple(row[old_offset + 1] for row in self.rows)


@dataclass(frozen=True)
class CensusSequence:
    digits: tuple[int, ...]
    states: tuple[AlignmentState, ...]

    def offset_counts(self, offset: int) -> tuple[int, ...]:
        return tuple(s.count(offset) for s in self.states)


@lru_cache(maxsize=None)
def _diff_counter(D: DigitSet) -> Counter:
    c: Counter = Counter()
    for d in D.digits:
        for e in D.digits:
            c[e - d] += 1
    return c


@lru_cache(maxsize=None)
def transition_matrix(D: DigitSet, x: int) -> OffsetTransitionMatrix:
    if not 0 <= x <= D.base - 1:
        raise DigitOutOfRange(f"shift digit {x} outside [0, {D.base - 1}]")
    diffs = _diff_counter(D)
    n = D.base
    rows = tuple(
        tuple(diffs.get(new - n * old - x, 0) for old in OFFSETS)
        for new in OFFSETS
    )
    return OffsetTransitionMatrix(x, rows)


def evolve(state: AlignmentState, M: OffsetTransitionMatrix) -> AlignmentState:
    c = state.counts
    new = tuple(sum(row[j] * c[j] for j in range(3)) for row in M.rows)
    return AlignmentState(state.level + 1, new)


def census_sequence(D: DigitSet, t: NAryExpansion, depth: int) -> CensusSequence:
    """States 0..depth of the pair census along t's digit stream."""
    digits = t.digits_upto(depth)
    states = [initial_state()]
    for x in digits:
        states.append(evolve(states[-1], transition_matrix(D, x)))
    return CensusSequence(digits, tuple(states))


# -- refined automaton over offset subsets (non-separated regime) ------------

_MASKS = tuple(range(1, 8))  # bit 1: offset -1, bit 2: offset 0, bit 4: +1
_BIT = {-1: 1, 0: 2, 1: 4}


@lru_cache(maxsize=None)
def refined_transition(D: DigitSet, x: int) -> tuple[tuple[int, ...], ...]:
    """7x7 matrix over nonempty offset subsets: entry [S'][S] counts the
    child cells (one per digit d) whose pair profile becomes S' when the
    parent profile is S.  Children with empty profiles drop out."""
    if not 0 <= x <= D.base - 1:
        raise DigitOutOfRange(f"shift digit {x} outside [0, {D.base - 1}]")
    n = D.base
    rows = [[0] * 7 for _ in range(7)]
    for mask in _MASKS:
        offsets = [o for o in OFFSETS if mask & _BIT[o]]
        for d in D.digits:
            child = 0
            for old in offsets:
                for e in D.digits:
                    new = n * old + (e - d) + x
                    if -1 <= new <= 1:
                        child |= _BIT[new]
            if child:
                rows[child - 1][mask - 1] += 1
    return tuple(tuple(r) for r in rows)


def refined_census_sequence(
    D: DigitSet, t: NAryExpansion, depth: int
) -> list[dict[int, int]]:
    """Per-level joint census {offset-subset mask: interval count},
    levels 0..depth.  Opt-in mode; the plain 3-state census is the default
    path everywhere else."""
    state = [0] * 7
    state[_BIT[0] - 1] = 1  # level 0: the single pair sits at offset 0
    out = [{_BIT[0]: 1}]
    for x in t.digits_upto(depth):
        rows = refined_transition(D, x)
        state = [
            sum(rows[i][j] * state[j] for j in range(7)) for i in range(7)
        ]
        out.append({m: state[m - 1] for m in _MASKS if state[m - 1]})
    return out


def joint_interval_potential_counts(
    census: list[dict[int, int]]
) -> list[int]:
    """B_k per level: intervals in both the interval and the potential
    interval case (masks containing bits 1 and 2)."""
    return [c.get(3, 0) + c.get(7, 0) for c in census]


def interval_only_counts(census: list[dict[int, int]]) -> list[int]:
    """I_k per level: interval case but not potential interval case."""
    return [c.get(2, 0) + c.get(6, 0) for c in census]


# -- membership --------------------------------------------------------------


def _live_step(D: DigitSet, live: frozenset[int], x: int) -> frozenset[int]:
    M = transition_matrix(D, x)
    return frozenset(
        new for new in (-1, 0)
        if any(M.entry(new, old) for old in live)
    )


def _member_nonterminating(D: DigitSet, t: NAryExpansion) -> bool:
    """Liveness of the alive-offset subset automaton on an eventually
    periodic digit stream.  Offset +1 never leads to points when the
    remainder stays strictly positive, so the state is a subset of
    {-1, 0}; there are finitely many (phase, subset) pairs, so the orbit
    is checked until it repeats."""
    live = frozenset({0})
    for x in t.prefix:
        live = _live_step(D, live, x)
        if not live:
            return False
    period = t.period
    assert period, "non-terminating decidable t must be eventually periodic"
    seen: set[tuple[int, frozenset[int]]] = set()
    phase = 0
    while (phase, live) not in seen:
        seen.add((phase, live))
        live = _live_step(D, live, period[phase])
        if not live:
            return False
        phase = (phase + 1) % len(period)
    return True


def _terminal_state(D: DigitSet, t: NAryExpansion) -> AlignmentState:
    """Exact census at the terminal level of a terminating t, aligned with
    the exact value t * n^l (not a truncation)."""
    c = canonical(t)
    if c.period:  # canonical keeps a period only for the value 1
        return AlignmentState(0, (0, 0, 1))
    seq = census_sequence(D, c, len(c.prefix))
    return seq.states[-1]


def _member_terminating(D: DigitSet, t: NAryExpansion) -> bool:
    state = _terminal_state(D, t)
    if state.interval > 0:
        return True
    if D.dmax == D.base - 1 and (state.potential + state.potentially_empty) > 0:
        # shared endpoints survive every refinement when d_m = n-1
        return True
    if to_rational(t) == 0:
        return False  # 0 is always a member via the interval case above
    return _member_nonterminating(D, alternate_representation(t))


def is_member(D: DigitSet, t: NAryExpansion) -> bool:
    """Decide t in F, i.e. whether C and C + t intersect.

    Terminating t: decided by the exact census at the terminal level (an
    interval case survives as a copy of C; endpoint contacts survive iff
    d_m = n-1), with the repeating-(n-1) twin consulted as a fallback.
    Non-terminating eventually periodic t: liveness of the alive-offset
    automaton.
    """
    if t.rule is not None:
        raise NotDecidable("membership needs a zero or periodic tail")
    if is_terminating(t):
        return _member_terminating(D, t)
    return _member_nonterminating(D, t)


# -- dimension ---------------------------------------------------------------


@dataclass(frozen=True)
class DimensionResult:
    """Minkowski dimension of the intersection, reported exactly.

    The dimension is log(rho) / (period * log(base)).  rho is either an
    exact rational (``rho``) or the largest root of x^2 - trace*x + det
    (``rho_trace``/``rho_det``); ``rho_enclosure`` brackets it either way.
    ``value`` is a float rendering (absolute error well under 1e-12).
    """

    kind: str  # "terminating" | "periodic"
    base: int
    period: int
    rho: Fraction | None
    rho_trace: int | None
    rho_det: int | None
    rho_enclosure: tuple[Fraction, Fraction]
    value: float

    @property
    def is_exact_rational(self) -> bool:
        return self.rho is not None


def _quadratic_radius_enclosure(
    trace: int, det: int, width: Fraction
) -> tuple[Fraction | None, tuple[Fraction, Fraction]]:
    """Largest root of x^2 - trace x + det, as an exact rational when the
    discriminant is a perfect square, else bracketed to the given width by
    bisection with exact arithmetic."""
    disc = trace * trace - 4 * det
    assert disc >= 0, "nonnegative matrices have real spectrum"
    s = isqrt(disc)
    if s * s == disc:
        rho = Fraction(trace + s, 2)
        return rho, (rho, rho)
    lo = Fraction(trace + s, 2)
    hi = Fraction(trace + s + 1, 2)

    def f(x: Fraction) -> Fraction:
        return x * x - trace * x + det

    while hi - lo > width:
        mid = (lo + hi) / 2
        if f(mid) <= 0:  # root is the increasing crossing right of trace/2
            lo = mid
        else:
            hi = mid
    return None, (lo, hi)


def _log_fraction(x: Fraction) -> float:
    return log(x.numerator) - log(x.denominator)


def _live_matrix(D: DigitSet, x: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Restriction of the transition matrix to offsets (-1, 0); exact for
    live counts because +1 never feeds back."""
    M = transition_matrix(D, x)
    return (
        (M.entry(-1, -1), M.entry(-1, 0)),
        (M.entry(0, -1), M.entry(0, 0)),
    )


def _mat2_mul(A, B):
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


def _growth_rho(
    P, support: tuple[bool, bool], width: Fraction
) -> tuple[Fraction | None, tuple[Fraction, Fraction]]:
    """Growth rate of P^j v for a nonnegative 2x2 integer matrix P and any
    v with the given support: the spectral radius of P restricted to
    states reachable from the support that still reach a cycle."""
    edges = [[P[i][j] > 0 for j in range(2)] for i in range(2)]
    reach = [False, False]
    stack = [i for i in range(2) if support[i]]
    while stack:
        j = stack.pop()
        if reach[j]:
            continue
        reach[j] = True
        for i in range(2):
            if edges[i][j] and not reach[i]:
                stack.append(i)
    two_cycle = edges[0][1] and edges[1][0]

    def reaches_cycle(j: int) -> bool:
        if edges[j][j] or two_cycle:
            return True
        other = 1 - j
        return edges[other][j] and edges[other][other]

    viable = [reach[j] and reaches_cycle(j) for j in range(2)]
    if viable[0] and viable[1] and two_cycle:
        trace = P[0][0] + P[1][1]
        det = P[0][0] * P[1][1] - P[0][1] * P[1][0]
        return _quadratic_radius_enclosure(trace, det, width)
    best = 0
    for j in range(2):
        if viable[j]:
            best = max(best, P[j][j])
    rho = Fraction(best)
    return rho, (rho, rho)


def box_dimension_periodic(
    D: DigitSet,
    t: NAryExpansion,
    enclosure_width: Fraction = Fraction(1, 10**15),
) -> DimensionResult:
    """Exact Minkowski dimension of the intersection for decidable t.

    Terminating t short-circuits to the dichotomy: log_n m when an
    interval case survives the terminal level, 0 when only endpoint
    contacts do.  Otherwise the period-product of the live 2x2 matrices is
    reduced to its persistent part and its spectral radius rho gives
    dimension log(rho) / (p log n); pair and covering counts differ by a
    bounded factor, which the growth limit ignores.
    """
    if t.rule is not None:
        raise NotPeriodic("dimension needs a zero or periodic tail")
    if not is_member(D, t):
        raise NotMember(f"{t} is not in F for {D}")
    n = D.base
    if is_terminating(t):
        state = _terminal_state(D, t)
        rho = Fraction(D.m) if state.interval > 0 else Fraction(1)
        return DimensionResult(
            kind="terminating",
            base=n,
            period=1,
            rho=rho,
            rho_trace=None,
            rho_det=None,
            rho_enclosure=(rho, rho),
            value=_log_fraction(rho) / log(n),
        )
    c = canonical(t)
    seq = census_sequence(D, c, len(c.prefix))
    v = seq.states[-1]
    support = (v.potential > 0, v.interval > 0)
    P = ((1, 0), (0, 1))
    for x in c.period:
        P = _mat2_mul(_live_matrix(D, x), P)
    p = len(c.period)
    rho, (lo, hi) = _growth_rho(P, support, enclosure_width)
    assert hi > 0, "membership guarantees persistent growth"
    if rho is not None:
        value = _log_fraction(rho) / (p * log(n))
        trace = det = None
    else:
        mid = (lo + hi) / 2
        value = _log_fraction(mid) / (p * log(n))
        trace = P[0][0] + P[1][1]
        det = P[0][0] * P[1][1] - P[0][1] * P[1][0]
    return DimensionResult(
        kind="periodic",
        base=n,
        period=p,
        rho=rho,
        rho_trace=trace,
        rho_det=det,
        rho_enclosure=(lo, hi),
        value=value,
    )


def count_slope(D: DigitSet, t: NAryExpansion, depth: int) -> list[float]:
    """log_n(live pair count at level k) / k for k = 1..depth.

    Counts are exact big integers; the log evaluation is the only float
    step (absolute error well under 1e-12 at these magnitudes).
    """
    seq = census_sequence(D, t, depth)
    ln_n = log(D.base)
    out = []
    for k in range(1, depth + 1):
        live = seq.states[k].live
        if live <= 0:
            raise NotMember(f"census died at level {k}")
        out.append(log(live) / (k * ln_n))
    return out


def terminating_dimension_kind(D: DigitSet, t: NAryExpansion) -> str:
    """Classification for terminating t: 'copy' (dimension log_n m),
    'points' (dimension 0), or 'empty' (not a member)."""
    state = _terminal_state(D, t)
    if state.interval > 0:
        return "copy"
    if D.dmax == D.base - 1 and (state.potential + state.potentially_empty) > 0:
        return "points"
    return "empty"


def membership_certificate(D: DigitSet, value: Fraction) -> bool:
    """Membership of an exact rational translation value."""
    return is_member(D, from_rational(value, D.base))
