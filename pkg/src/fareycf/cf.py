"""Exact regular and semi-regular continued fractions.

All arithmetic is over `fractions.Fraction` (arbitrary-precision, canonical
lowest terms); nothing in this module rounds.  Expansions come in two
flavours: *terminated* ones carry the exact rational they expand, and
*prefix* ones hold a finite digit budget standing in for an irrational.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DigitBudgetError

Rational = Fraction


def euclid_digits(num: int, den: int) -> list[int]:
    """Partial quotients of num/den in [0,1) by the Euclidean algorithm."""
    if not 0 <= num < den:
        raise ValueError("euclid_digits expects 0 <= num/den < 1")
    digits = []
    while num:
        a, r = divmod(den, num)
        digits.append(a)
        den, num = num, r
    return digits


@dataclass(frozen=True)
class RcfExpansion:
    """A regular continued fraction [a0; a1, a2, ...].

    `terminated` expansions are exact rationals (and store their value);
    prefix expansions answer digit queries only up to their budget and
    raise DigitBudgetError beyond it, never truncating silently.
    """

    integer_part: int
    digits: tuple[int, ...]
    terminated: bool = True
    value: Fraction | None = None

    def __post_init__(self):
        if any(d < 1 for d in self.digits):
            raise ValueError("partial quotients must be >= 1")
        if self.terminated and self.value is None:
            object.__setattr__(self, "value", self.evaluate())
        if not self.terminated and self.value is not None:
            raise ValueError("prefix expansions have no exact value")

    @classmethod
    def from_digits(cls, integer_part, digits, terminated=False):
        return cls(integer_part, tuple(int(d) for d in digits), terminated)

    @property
    def depth(self) -> int:
        if not self.terminated:
            raise ValueError("depth is defined for terminated expansions only")
        return len(self.digits)

    @property
    def budget(self) -> int:
        return len(self.digits)

    @property
    def is_canonical(self) -> bool:
        """Gauss-generated first form: last digit >= 2 when any digits exist."""
        return not self.digits or self.digits[-1] >= 2

    def digit(self, i: int) -> int:
        """1-based partial quotient a_i."""
        if i < 1:
            raise ValueError("digit index is 1-based")
        if i > len(self.digits):
            kind = "terminated expansion has" if self.terminated else "digit budget covers"
            raise DigitBudgetError(f"{kind} only {len(self.digits)} digits; asked for a_{i}")
        return self.digits[i - 1]

    def evaluate(self) -> Fraction:
        if not self.terminated and self.digits:
            raise ValueError("a prefix expansion has no exact value; use value_interval()")
        v = Fraction(0)
        for d in reversed(self.digits):
            v = Fraction(1, d + v)
        return self.integer_part + v

    def value_interval(self) -> tuple[Fraction, Fraction]:
        """Closed interval containing every completion of this expansion."""
        if self.terminated:
            return (self.value, self.value)
        lo, hi = cylinder_interval(self.digits)
        return (self.integer_part + lo, self.integer_part + hi)

    def __str__(self):
        body = ",".join(map(str, self.digits))
        tail = "" if self.terminated else ",..."
        return f"[{self.integer_part};{body}{tail}]" if body else f"[{self.integer_part}{tail}]"


def cylinder_interval(digits) -> tuple[Fraction, Fraction]:
    """Closed hull of {[0; d1, ..., dm, anything]} for the given digit prefix."""
    p0, q0, p1, q1 = 1, 0, 0, 1  # (p_{-1},q_{-1}), (p_0,q_0) of the tail
    for d in digits:
        p0, q0, p1, q1 = p1, q1, d * p1 + p0, d * q1 + q0
    if q0 == 0:  # empty prefix: whole unit interval
        return (Fraction(0), Fraction(1))
    a, b = Fraction(p1, q1), Fraction(p1 + p0, q1 + q0)
    return (a, b) if a <= b else (b, a)


def rcf_expand(x) -> RcfExpansion:
    """Gauss-generated expansion of a rational; reproduces x exactly."""
    x = Fraction(x)
    a0 = x.numerator // x.denominator
    t = x - a0
    return RcfExpansion(a0, tuple(euclid_digits(t.numerator, t.denominator)), True, x)


def rcf_convergents(e: RcfExpansion, n: int) -> list[tuple[int, int]]:
    """[(p_-1,q_-1), (p_0,q_0), ..., (p_n,q_n)] by the standard recurrence."""
    if n > len(e.digits):
        raise DigitBudgetError(f"need {n} digits, have {len(e.digits)}")
    out = [(1, 0), (e.integer_part, 1)]
    for k in range(n):
        a = e.digits[k]
        (pp, qq), (p, q) = out[-2], out[-1]
        out.append((a * p + pp, a * q + qq))
    return out


def alternate_expansion(e: RcfExpansion) -> tuple[RcfExpansion, int]:
    """Second expansion of a rational: [a0;a1,...,an-1,1]; returns (form, depth)."""
    if not e.terminated:
        raise ValueError("alternate_expansion needs a terminated expansion")
    if not e.is_canonical:
        raise ValueError("input must be the Gauss-generated (canonical) form")
    if not e.digits:
        return RcfExpansion(e.integer_part - 1, (1,), True, e.value), 0
    alt = e.digits[:-1] + (e.digits[-1] - 1, 1)
    return RcfExpansion(e.integer_part, alt, True, e.value), len(e.digits)


def depth(x) -> int:
    """Number of digits in the Gauss-generated expansion of a rational."""
    return rcf_expand(x).depth


def gauss_step(x) -> tuple[int, Fraction]:
    """One Gauss-map step on (0, 1]: returns (floor(1/x), 1/x - floor(1/x))."""
    x = Fraction(x)
    if not 0 < x <= 1:
        raise ValueError("gauss_step is defined on (0, 1]")
    a = x.denominator // x.numerator
    return a, Fraction(1, 1) / x - a


@dataclass(frozen=True)
class SrcfDigits:
    """Semi-regular digits beta0; (alpha_n, beta_n) with alpha_{n+1}+beta_n >= 1."""

    beta0: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for i, (alpha, beta) in enumerate(self.pairs):
            if alpha not in (1, -1):
                raise ValueError(f"alpha_{i + 1} must be +-1")
            if beta < 1:
                raise ValueError(f"beta_{i + 1} must be >= 1")
            if i >= 1 and alpha + self.pairs[i - 1][1] < 1:
                raise ValueError(f"invalid pair: alpha_{i + 1} + beta_{i} < 1")

    def __len__(self):
        return len(self.pairs)


def srcf_convergents(d: SrcfDigits, n: int) -> list[tuple[int, int]]:
    """[(P_-1,Q_-1), (P_0,Q_0), ..., (P_n,Q_n)] by the signed recurrence."""
    if n > len(d.pairs):
        raise DigitBudgetError(f"need {n} digit pairs, have {len(d.pairs)}")
    out = [(1, 0), (d.beta0, 1)]
    for k in range(n):
        alpha, beta = d.pairs[k]
        (pp, qq), (p, q) = out[-2], out[-1]
        out.append((beta * p + alpha * pp, beta * q + alpha * qq))
    return out


def srcf_evaluate(d: SrcfDigits) -> Fraction:
    p, q = srcf_convergents(d, len(d.pairs))[-1]
    return Fraction(p, q)


def farey_digit_pairs(bits) -> list[tuple[int, int]]:
    """Per-bit map epsilon -> (b, e) = (2 - eps, 2*eps - 1)."""
    out = []
    for eps in bits:
        if eps not in (0, 1):
            raise ValueError("bits must be 0/1")
        out.append((2 - eps, 2 * eps - 1))
    return out


def farey_expansion_digits(bits) -> SrcfDigits:
    """Assemble the tent-map-generated semi-regular expansion from its bit coding.

    With (b_n, e_{n+1}) = (2 - eps_{n+1}, 2*eps_{n+1} - 1), the expansion of x is
    [b_0 - 1; e_1/b_1, e_2/b_2, ...]; m bits determine beta0 and m-1 full pairs.
    """
    bits = list(bits)
    if not bits:
        return SrcfDigits(0, ())
    bw = farey_digit_pairs(bits)
    beta0 = bw[0][0] - 1
    pairs = tuple((bw[n - 1][1], bw[n][0]) for n in range(1, len(bits)))
    return SrcfDigits(beta0, pairs)


def gauss_orbit(x, limit=None):
    """Iterate the Gauss map on a rational until 0; yields (a_k, G^k image)."""
    x = Fraction(x)
    count = itertools.count() if limit is None else range(limit)
    for _ in count:
        if x == 0:
            return
        a, x = gauss_step(x)
        yield a, x
