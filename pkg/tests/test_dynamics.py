"""Tent-map dynamics, the matrix cocycle, and the planar extension."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fareycf import (
    DigitBudgetError,
    FareyState,
    RcfExpansion,
    advance,
    epsilon_bits,
    farey_convergent,
    farey_step,
    ito_convergent,
    natural_extension_step,
    orbit,
    rcf_convergents,
    rcf_expand,
    srcf_convergents,
)
from fareycf.cf import farey_expansion_digits

F = Fraction


class TestFareyStep:
    def test_examples(self):
        assert farey_step(F(2, 7)) == F(2, 5)
        assert farey_step(F(1, 2)) == 1
        assert farey_step(0) == 0

    def test_domain(self):
        with pytest.raises(ValueError):
            farey_step(F(3, 2))

    def test_symbolic_shift(self):
        # left branch decrements a_1; right branch (a_1 = 1) drops it
        x = F(2, 7)  # [0;3,2]
        assert rcf_expand(farey_step(x)).digits == (2, 2)
        y = F(3, 5)  # [0;1,1,2]
        assert rcf_expand(farey_step(y)).digits == (1, 2)


class TestEpsilonBits:
    def test_spec_patterns(self):
        assert epsilon_bits(rcf_expand(F(2, 7)), 5) == (0, 0, 1, 0, 1)
        golden = RcfExpansion.from_digits(0, [1] * 8)
        assert epsilon_bits(golden, 4) == (1, 1, 1, 1)
        sqrt2ish = RcfExpansion.from_digits(0, [2] * 8)
        assert epsilon_bits(sqrt2ish, 4) == (0, 1, 0, 1)

    def test_terminated_tail_is_zero(self):
        assert epsilon_bits(rcf_expand(F(1, 2)), 5) == (0, 1, 0, 0, 0)

    def test_budget(self):
        e = RcfExpansion.from_digits(0, [2, 2])
        with pytest.raises(DigitBudgetError):
            epsilon_bits(e, 5)

    def test_x_equal_one(self):
        assert epsilon_bits(rcf_expand(1), 3) == (1, 0, 0)

    def test_matches_map_iteration(self):
        x = F(45, 101)
        e = rcf_expand(x)
        bits = epsilon_bits(e, 12)
        cur = x
        for b in bits:
            assert b == (0 if cur <= F(1, 2) else 1)
            cur = farey_step(cur)


class TestAdvance:
    def test_single_steps(self):
        seed = FareyState.seed()
        s0 = advance(seed, 0)
        assert (s0.u, s0.t, s0.s, s0.r) == (1, 0, 1, 1)
        assert (s0.n, s0.j, s0.lam) == (1, 0, 1)
        s1 = advance(seed, 1)
        assert (s1.u, s1.t, s1.s, s1.r) == (0, 1, 1, 1)
        assert (s1.n, s1.j, s1.lam) == (1, 1, 0)

    def test_three_steps_of_2_7(self):
        state = FareyState.seed()
        for b in epsilon_bits(rcf_expand(F(2, 7)), 3):
            state = advance(state, b)
        # A_[0,3] columns are (p_0, q_0), (p_1, q_1)
        assert (state.u, state.t, state.s, state.r) == (0, 1, 1, 3)
        assert (state.j, state.lam) == (1, 0)

    def test_determinant_preserved(self):
        state = FareyState.seed()
        for b in epsilon_bits(rcf_expand(F(45, 101)), 20):
            state = advance(state, b)
            assert state.det in (1, -1)


class TestOrbit:
    def test_first_block_rectangles(self):
        # orbit of [0;3,...] starts in V3&H1, then V2&H2, then V1&H3
        from fareycf import Verdict, membership, parse_region

        e = RcfExpansion.from_digits(0, [3, 1, 2, 1, 1, 2, 3, 1, 1, 2])
        pts = orbit(e, 2)
        for (state, point), txt in zip(pts, ["V3&H1", "V2&H2", "V1&H3"]):
            assert membership(parse_region(txt), point) == Verdict.IN

    def test_rational_reaches_zero(self):
        e = rcf_expand(F(2, 7))
        entries = orbit(e, 5)
        state, point = entries[5]
        assert point.x == 0
        assert state.n == 5

    def test_golden_fibonacci(self):
        golden = RcfExpansion.from_digits(0, [1] * 60)
        out = orbit(golden, 10)
        fib = [1, 1]
        for _ in range(12):
            fib.append(fib[-1] + fib[-2])
        phi = (5 ** 0.5 - 1) / 2
        for k, (state, point) in enumerate(out):
            assert point.x_lo <= F(phi).limit_denominator(10**12) <= point.x_hi or (
                float(point.x_lo) <= phi <= float(point.x_hi)
            )
            # y_k is a ratio of consecutive Fibonacci numbers
            y = point.y
            assert (y.numerator, y.denominator) == (fib[k], fib[k + 1])

    def test_convergent_orderings(self):
        e = rcf_expand(F(2, 7))
        entries = orbit(e, 4)
        assert [farey_convergent(s) for s, _ in entries] == [
            (1, 0), (1, 1), (1, 2), (0, 1), (1, 4),
        ]
        assert [ito_convergent(s) for s, _ in entries[:3]] == [(1, 1), (1, 2), (1, 3)]

    def test_conjugacy_moebius(self):
        # x = A_[0,k] . x_k exactly, every step until the orbit dies at 0
        x = F(45, 101)
        for state, point in orbit(rcf_expand(x), 18):
            num = state.u * point.x + state.t
            den = state.s * point.x + state.r
            assert num / den == x

    def test_gauss_jump(self):
        x = F(2, 7)
        e = rcf_expand(x)
        entries = orbit(e, 6)
        first_j1 = next(k for k, (s, _) in enumerate(entries) if s.j == 1)
        assert first_j1 == 3  # = a_1
        state = entries[3][0]
        assert (state.t, state.r) == rcf_convergents(e, 1)[-1]

    def test_prefix_enclosure_strict(self):
        e = RcfExpansion.from_digits(0, [2, 1, 3] * 20)
        for state, point in orbit(e, 12):
            assert point.x_lo < point.x_hi

    def test_prefix_budget_error(self):
        e = RcfExpansion.from_digits(0, [2, 2, 2])
        with pytest.raises(DigitBudgetError):
            orbit(e, 10)


class TestNaturalExtension:
    def test_examples(self):
        assert natural_extension_step((F(1, 3), 1)) == (F(1, 2), F(1, 2))
        assert natural_extension_step((F(2, 3), 0)) == (F(1, 2), 1)
        y = F(2, 5)
        assert natural_extension_step((0, y)) == (0, y / (1 + y))

    def test_domain(self):
        with pytest.raises(ValueError):
            natural_extension_step((F(3, 2), 0))

    def test_matches_orbit(self):
        x = F(29, 76)
        pt = (x, F(1))
        for state, point in orbit(rcf_expand(x), 14):
            assert point.x == pt[0] and point.y == pt[1]
            pt = natural_extension_step(pt)


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=0, max_value=1).filter(lambda v: 0 < v < 1))
def test_farey_convergents_match_srcf(x):
    """u_n/s_n equals the (n-1)st tent-map-expansion convergent, all n in budget."""
    e = rcf_expand(x)
    m = min(sum(e.digits), 24)
    bits = epsilon_bits(e, m)
    d = farey_expansion_digits(bits)
    conv = srcf_convergents(d, len(d.pairs))  # (P_-1,Q_-1), (P_0,Q_0), ...
    state = FareyState.seed()
    for n in range(len(d.pairs) + 1):
        assert farey_convergent(state) == conv[n]
        if n < m:
            state = advance(state, bits[n])


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=0, max_value=1).filter(lambda v: 0 < v < 1))
def test_state_columns_are_convergents(x):
    """(u,t,s,r) = (lam p_j + p_{j-1}, p_j, lam q_j + q_{j-1}, q_j)."""
    e = rcf_expand(x)
    conv = rcf_convergents(e, e.depth)
    state = FareyState.seed()
    for b in epsilon_bits(e, min(sum(e.digits), 30)):
        (pjm, qjm), (pj, qj) = conv[state.j], conv[state.j + 1]
        assert (state.u, state.t) == (state.lam * pj + pjm, pj)
        assert (state.s, state.r) == (state.lam * qj + qjm, qj)
        state = advance(state, b)
