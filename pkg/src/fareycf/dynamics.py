"""The Farey tent map, its bit coding, and the planar natural extension.

States carry the 2x2 cocycle matrix A_[0,n] whose columns hold consecutive
convergent/mediant pairs; orbit points pair an exact y-coordinate with an
x-enclosure (degenerate for exact rational starts).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cf import RcfExpansion, cylinder_interval
from .errors import DigitBudgetError

HALF = Fraction(1, 2)
ONE = Fraction(1)
ZERO = Fraction(0)

DEFAULT_TAIL_DEPTH = 40


def farey_step(x) -> Fraction:
    """Tent map: x/(1-x) on [0,1/2], (1-x)/x on (1/2,1]."""
    x = Fraction(x)
    if not ZERO <= x <= ONE:
        raise ValueError("farey_step is defined on [0,1]")
    return x / (1 - x) if x <= HALF else (1 - x) / x


def natural_extension_step(point) -> tuple[Fraction, Fraction]:
    """One step of the invertible planar extension on [0,1]^2."""
    x, y = Fraction(point[0]), Fraction(point[1])
    if not (ZERO <= x <= ONE and ZERO <= y <= ONE):
        raise ValueError("point must lie in the unit square")
    if x <= HALF:
        return (x / (1 - x), y / (1 + y))
    return ((1 - x) / x, 1 / (1 + y))


@dataclass(frozen=True)
class FareyState:
    """Step n of the cocycle: entries of A_[0,n] plus the (j, lambda) bookkeeping.

    Invariants: u*r - t*s = +-1 and (u,t,s,r) = (lam*p_j + p_{j-1}, p_j,
    lam*q_j + q_{j-1}, q_j) along the driving digit sequence.
    """

    n: int
    j: int
    lam: int
    u: int
    t: int
    s: int
    r: int

    @classmethod
    def seed(cls) -> "FareyState":
        return cls(0, 0, 0, 1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.u * self.r - self.t * self.s

    def y_value(self) -> Fraction:
        return Fraction(self.r, self.s + self.r)


def advance(state: FareyState, eps: int) -> FareyState:
    """Right-multiply by the branch matrix for bit eps; update (n, j, lambda)."""
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    u, t, s, r = state.u, state.t, state.s, state.r
    if eps == 0:
        nu, nt, ns, nr = u + t, t, s + r, r
        return FareyState(state.n + 1, state.j, state.lam + 1, nu, nt, ns, nr)
    nu, nt, ns, nr = t, u + t, r, s + r
    return FareyState(state.n + 1, state.j + 1, 0, nu, nt, ns, nr)


def farey_convergent(state: FareyState) -> tuple[int, int]:
    """Left-column pair (u, s); (1, 0) at the seed is the formal infinite convergent."""
    return (state.u, state.s)


def ito_convergent(state: FareyState) -> tuple[int, int]:
    """Mediant-of-columns pair (u+t, s+r), the increasing-denominator ordering."""
    return (state.u + state.t, state.s + state.r)


@dataclass(frozen=True)
class PointInOmega:
    """Orbit point: exact y, rational interval [x_lo, x_hi] enclosing x."""

    x_lo: Fraction
    x_hi: Fraction
    y: Fraction

    def __post_init__(self):
        if self.x_lo > self.x_hi:
            raise ValueError("empty x-enclosure")

    @property
    def is_exact(self) -> bool:
        return self.x_lo == self.x_hi

    @property
    def x(self) -> Fraction:
        if not self.is_exact:
            raise ValueError("x is an interval; use x_lo/x_hi")
        return self.x_lo


def epsilon_bit_stream(e: RcfExpansion):
    """Bits 0^(a1-1) 1 0^(a2-1) 1 ...; terminated expansions continue with 0s."""
    if e.terminated and e.value == 1:
        yield 1  # x = 1 sits on the right branch once, then dies at 0
    for a in e.digits:
        for _ in range(a - 1):
            yield 0
        yield 1
    if e.terminated:
        while True:
            yield 0
    raise DigitBudgetError(f"epsilon bits exhausted after {sum(e.digits)} steps")


def epsilon_bits(e: RcfExpansion, n: int) -> tuple[int, ...]:
    """First n bits of the coding; raises DigitBudgetError for short prefixes."""
    out = []
    stream = epsilon_bit_stream(e)
    for _ in range(n):
        out.append(next(stream))
    return tuple(out)


def _check_unit_interval(e: RcfExpansion):
    if e.terminated:
        if not ZERO <= e.value <= ONE:
            raise ValueError("orbit starts must lie in [0,1]")
    elif e.integer_part != 0:
        raise ValueError("orbit starts must lie in [0,1]")


def _prefix_x_enclosure(e, state, tail_depth) -> tuple[Fraction, Fraction]:
    """Enclose the tail value [0; a_{j+1}-lambda, a_{j+2}, ...] by its cylinder."""
    j, lam = state.j, state.lam
    if j >= len(e.digits):
        raise DigitBudgetError("digit budget exhausted while enclosing the orbit point")
    head = e.digits[j] - lam
    if head < 1:
        raise DigitBudgetError("state ran past the known digits")
    tail = (head,) + e.digits[j + 1 : j + tail_depth]
    return cylinder_interval(tail)


def orbit_stream(e: RcfExpansion, tail_depth: int = DEFAULT_TAIL_DEPTH):
    """Yield (k, FareyState, PointInOmega) for k = 0, 1, 2, ...

    Exact rational starts carry a degenerate x (and run past expansion
    exhaustion at the fixed point 0); prefix starts raise DigitBudgetError
    once the enclosure would need unknown digits.
    """
    _check_unit_interval(e)
    state = FareyState.seed()
    if e.terminated:
        x = e.value
        for k in itertools.count():
            yield k, state, PointInOmega(x, x, state.y_value())
            eps = 0 if x <= HALF else 1
            x = x / (1 - x) if eps == 0 else (1 - x) / x
            state = advance(state, eps)
    else:
        for k in itertools.count():
            lo, hi = _prefix_x_enclosure(e, state, tail_depth)
            yield k, state, PointInOmega(lo, hi, state.y_value())
            eps = 1 if state.lam == e.digits[state.j] - 1 else 0
            state = advance(state, eps)


def orbit(e: RcfExpansion, count: int, tail_depth: int = DEFAULT_TAIL_DEPTH):
    """Entries k = 0..count of the natural-extension orbit of (x, 1)."""
    out = []
    for k, state, point in orbit_stream(e, tail_depth):
        out.append((state, point))
        if k == count:
            break
    return out


def point_at(e: RcfExpansion, state: FareyState, tail_depth: int) -> PointInOmega:
    """Recompute the orbit point for an already-walked state, deeper if asked."""
    if e.terminated:
        x = e.value
        for _ in range(state.n):
            x = farey_step(x)
        return PointInOmega(x, x, state.y_value())
    lo, hi = _prefix_x_enclosure(e, state, tail_depth)
    return PointInOmega(lo, hi, state.y_value())
