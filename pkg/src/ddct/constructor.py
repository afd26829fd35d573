"""Constructive translations: prescribed-dimension streams and density.

Two builders:

* ``construct_translation`` emits the digit stream whose level-j interval
  census is exactly m^floor(j*alpha), so the intersection dimension is
  alpha * log_n m.  Only the digits 0 (census times m) and d_m (census
  times 1) ever appear; under the separation condition neither digit can
  spawn off-zero alignment offsets.

* ``dense_translation`` steers toward an arbitrary member y of F: copy
  enough digits of y to land within eps, convert the live census into a
  pure interval census with at most two bridge digits, then graft a
  dimension-alpha stream.

Degenerate alphas would emit a constant tail whose value terminates; a
sparse set of flip levels (powers of eight from 64 up) overrides the digit
there, which perturbs the census by at most one factor of m per flip and
leaves every limit untouched.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .automaton import census_sequence, evolve, is_member, transition_matrix
from .digits import DigitSet, common_divisor, is_separated
from .errors import (
    AlphaOutOfRange,
    ContradictionCaseC,
    HypothesesUnmet,
    NotDecidable,
    NotMember,
    SeparationViolated,
)
from .expansion import (
    NAryExpansion,
    alternate_representation,
    canonical,
    is_terminating,
)
from .oracle import AlignmentState, initial_state

FLIP_FIRST = 64  # flips at 64 * 8^i: sparse enough that slopes to depth
#                  200 stay within the acceptance tolerances


def is_flip_level(j: int) -> bool:
    if j < FLIP_FIRST:
        return False
    while j % 8 == 0:
        j //= 8
    return j == 1


def stairs(alpha: Fraction, j: int) -> int:
    """floor(j * alpha), exactly."""
    if not 0 <= alpha <= 1:
        raise AlphaOutOfRange(f"alpha must lie in [0, 1], got {alpha}")
    if j < 0:
        raise AlphaOutOfRange(f"level must be >= 0, got {j}")
    return (j * alpha.numerator) // alpha.denominator


def _needs_flips(D: DigitSet, alpha: Fraction) -> bool:
    if alpha == 1:
        return True  # the plain stream would be all zeros
    return alpha == 0 and D.dmax == D.base - 1  # all d_m = all (n-1)


def construct_translation(D: DigitSet, alpha: Fraction) -> NAryExpansion:
    """Digit stream x with dim C meet (C + x) = alpha * log_n m.

    x_j = d_m when the staircase rests (h_j = h_{j-1}) and 0 when it
    steps; at flip levels the digit is inverted if the plain stream would
    terminate.  Requires the separation condition.
    """
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise AlphaOutOfRange(f"alpha must lie in [0, 1], got {alpha}")
    if not is_separated(D):
        raise SeparationViolated(f"{D} has adjacent digits")
    dm = D.dmax
    flips = _needs_flips(D, alpha)
    p, q = alpha.numerator, alpha.denominator

    def rule(j: int) -> int:
        rest = (j * p) // q == ((j - 1) * p) // q
        digit = dm if rest else 0
        if flips and is_flip_level(j):
            digit = dm - digit  # 0 <-> d_m
        return digit

    return NAryExpansion(D.base, (), (), rule)


@dataclass(frozen=True)
class DenseReport:
    copy_depth: int
    branch: str  # "interval" | "potential" | "alternate"
    graft_level: int
    graft_count: int
    used_alternate: bool


def _theorem_regime(D: DigitSet) -> str:
    if is_separated(D) and D.dmax < D.base - 1:
        return "separated"
    if common_divisor(D) > 1:
        return "uniform"
    raise HypothesesUnmet(
        f"{D} is neither separated with d_m < n-1 nor uniformly divisible"
    )


def _evolve_digits(
    D: DigitSet, state: AlignmentState, digits: tuple[int, ...]
) -> AlignmentState:
    for x in digits:
        state = evolve(state, transition_matrix(D, x))
    return state


def _graft_rule(D: DigitSet, alpha: Fraction, start_count: int, start_level: int):
    """Digit rule continuing a pure offset-zero census of start_count pairs
    from absolute level start_level: each digit multiplies the count by m
    (digit 0) or 1 (digit d_m), chosen so the count tracks the absolute
    target m^(level * alpha) as closely as the growth cap permits; flips
    keep the tail from terminating when alpha is degenerate.
    """
    m, dm = D.m, D.dmax
    p, q = alpha.numerator, alpha.denominator
    flips = _needs_flips(D, alpha)
    counts = [start_count]

    def rule(j: int) -> int:
        while len(counts) <= j:
            rel = len(counts)  # relative level being decided
            c = counts[-1]
            grow = (m * c) ** q <= m ** ((start_level + rel) * p)
            digit = 0 if grow else dm
            if flips and is_flip_level(rel):
                digit = dm - digit
            counts.append(c * m if digit == 0 else c)
        # reconstruct the digit from consecutive counts
        return 0 if counts[j] > counts[j - 1] else dm

    return rule


def dense_translation(
    D: DigitSet, y: NAryExpansion, eps: Fraction, alpha: Fraction
) -> NAryExpansion:
    x, _ = dense_translation_detailed(D, y, eps, alpha)
    return x


def dense_translation_detailed(
    D: DigitSet, y: NAryExpansion, eps: Fraction, alpha: Fraction
) -> tuple[NAryExpansion, DenseReport]:
    """Non-terminating x within eps of the member y whose intersection
    dimension is alpha * log_n m.

    Copy k digits of y (n^-k < eps), read the exact census at level k,
    then: interval case present -> emit 0 and graft; only potential
    interval cases -> emit n - d_m, which lands the rightmost refinement
    of the left neighbour onto the leftmost of its partner, then emit 0
    and graft; only potentially-empty cases -> impossible unless
    d_m = n - 1, where the repeating-(n-1) twin of y turns those contacts
    into interval cases and the procedure restarts once.
    """
    alpha = Fraction(alpha)
    eps = Fraction(eps)
    if not 0 <= alpha <= 1:
        raise AlphaOutOfRange(f"alpha must lie in [0, 1], got {alpha}")
    if eps <= 0:
        raise AlphaOutOfRange(f"eps must be positive, got {eps}")
    regime = _theorem_regime(D)
    if y.rule is not None:
        raise NotDecidable("y must have a zero or periodic tail")
    if not is_member(D, y):
        raise NotMember(f"{y} is not in F for {D}")

    n, dm = D.base, D.dmax
    k = 0
    power = 1
    while power * eps.numerator <= eps.denominator:  # until n^-k < eps
        power *= n
        k += 1

    working = canonical(y)
    used_alternate = False
    for _ in range(2):
        head = working.digits_upto(k)
        state = _evolve_digits(D, initial_state(), head)
        if state.interval > 0:
            branch = "alternate" if used_alternate else "interval"
            bridge = (0,)
            break
        if state.potential > 0:
            branch = "potential"
            bridge = (n - dm, 0)
            break
        # potentially-empty only: the separated regime rules this out for
        # members, the uniform regime switches to the twin representation
        if regime == "separated" or used_alternate or not is_terminating(working):
            raise ContradictionCaseC(
                f"census at level {k} is potentially-empty only for {working}"
            )
        working = alternate_representation(working)
        used_alternate = True
    else:  # pragma: no cover - loop always breaks or raises
        raise ContradictionCaseC("restart did not reach an interval case")

    graft_state = _evolve_digits(D, state, bridge)
    # the bridge digits must leave a pure interval census
    assert graft_state.interval > 0
    assert graft_state.potential == 0 and graft_state.potentially_empty == 0
    prefix = head + bridge
    rule = _graft_rule(D, alpha, graft_state.interval, len(prefix))
    x = NAryExpansion(n, prefix, (), rule)
    report = DenseReport(
        copy_depth=k,
        branch=branch,
        graft_level=len(prefix),
        graft_count=graft_state.interval,
        used_alternate=used_alternate,
    )
    return x, report
