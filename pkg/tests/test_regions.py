"""Region algebra: parsing, membership, measures, sublevel integrals."""

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import dblquad

from fareycf import (
    PointInOmega,
    RegionParseError,
    Verdict,
    h_value,
    is_proper,
    measure,
    membership,
    parse_region,
    sublevel_measure,
)
from fareycf.regions import HStrip, Rect, SubLevel, VStrip, h_exact, h_range, strip_predicate

F = Fraction


def pt(x, y):
    return PointInOmega(F(x), F(x), F(y))


class TestH:
    def test_examples(self):
        assert h_value(pt(F(1, 3), 1)) == (0, 0)
        assert h_value(pt(F(1, 2), F(1, 2))) == (F(2, 3), F(2, 3))
        assert h_value(pt(0, F(1, 2))) == (1, 1)

    def test_undefined_origin(self):
        with pytest.raises(ValueError):
            h_exact(F(0), F(0))

    def test_interval_endpoints(self):
        p = PointInOmega(F(1, 4), F(1, 2), F(1, 3))
        lo, hi = h_value(p)
        assert lo == h_exact(F(1, 2), F(1, 3))
        assert hi == h_exact(F(1, 4), F(1, 3))

    def test_monotone(self):
        pts = [(F(a, 7), F(b, 7)) for a in range(8) for b in range(8) if (a, b) != (0, 0)]
        for x1, y1 in pts:
            for x2, y2 in pts:
                if x1 <= x2 and y1 <= y2:
                    assert h_exact(x1, y1) >= h_exact(x2, y2)


class TestParse:
    def test_round_trip_texts(self):
        for txt in ["H1", "V3", "OMEGA", "(V2&H2)|H1", "V1\\H1", "RECT(0,1/2,1/3,1)", "SUB(0.5)"]:
            r = parse_region(txt)
            again = parse_region(str(r))
            assert str(again) == str(r)

    def test_precedence(self):
        r = parse_region("H1|V2&H2")
        assert str(r) == str(parse_region("H1|(V2&H2)"))

    def test_errors_with_position(self):
        for bad in ["H0", "W1", "H1|", "RECT(0,1,0)", "H1)("]:
            with pytest.raises(RegionParseError):
                parse_region(bad)

    def test_rational_literals(self):
        r = parse_region("RECT(1/3,1/2,1/3,1/2)")
        assert measure(r) == pytest.approx(math.log(16 / 15), abs=1e-12)


class TestMembership:
    def test_strip_edges(self):
        v3 = parse_region("V3")
        assert membership(v3, pt(F(1, 3), F(1, 2))) == Verdict.IN  # closed right edge
        assert membership(v3, pt(F(1, 4), F(1, 2))) == Verdict.OUT  # open left edge
        h2 = parse_region("H2")
        assert membership(h2, pt(F(1, 2), F(1, 2))) == Verdict.IN
        assert membership(h2, pt(F(1, 2), F(1, 3))) == Verdict.OUT

    def test_boundary_uncertain(self):
        v1 = parse_region("V1")
        straddle = PointInOmega(F(1, 3), F(2, 3), F(1, 2))
        assert membership(v1, straddle) == Verdict.BOUNDARY

    def test_set_ops(self):
        r = parse_region("(V2&H2)|H1")
        assert membership(r, pt(F(2, 5), F(2, 5))) == Verdict.IN
        assert membership(r, pt(F(2, 5), F(3, 4))) == Verdict.IN
        assert membership(r, pt(F(2, 3), F(2, 5))) == Verdict.OUT
        d = parse_region("V1\\H1")
        assert membership(d, pt(F(3, 4), F(1, 4))) == Verdict.IN
        assert membership(d, pt(F(3, 4), F(3, 4))) == Verdict.OUT

    def test_sublevel_exact(self):
        s = parse_region("SUB(0.5)")
        assert membership(s, pt(F(1, 2), 1)) == Verdict.IN  # h = 0
        assert membership(s, pt(F(1, 4), F(1, 2))) == Verdict.OUT  # h = 6/7 > 1/2


class TestMeasure:
    def test_closed_forms(self):
        assert measure(parse_region("H1")) == pytest.approx(math.log(2), abs=1e-12)
        for a in range(1, 11):
            assert measure(VStrip(a)) == pytest.approx(math.log((a + 1) / a), abs=1e-12)
        assert measure(parse_region("V2&H2")) == pytest.approx(math.log(16 / 15), abs=1e-12)

    def test_union_family(self):
        assert measure(parse_region("H1|H2|V1")) == pytest.approx(math.log(4), abs=1e-12)

    def test_omega_infinite(self):
        assert measure(parse_region("OMEGA")) == math.inf
        assert not is_proper(parse_region("OMEGA"))
        assert is_proper(parse_region("H1"))
        assert not is_proper(parse_region("H1\\H1"))

    def test_omega_minus_corner_box_finite(self):
        m = measure(parse_region("OMEGA\\RECT(0,1/2,0,1/2)"))
        assert m == pytest.approx(math.log(3), abs=1e-10)

    def test_against_quadrature(self):
        rng = np.random.default_rng(42)
        density = lambda y, x: 1.0 / (x + y - x * y) ** 2
        for _ in range(20):
            xs = sorted(F(int(n), 64) for n in rng.integers(1, 65, size=2))
            ys = sorted(F(int(n), 64) for n in rng.integers(0, 65, size=2))
            if xs[0] == xs[1] or ys[0] == ys[1]:
                continue
            box = Rect(xs[0], xs[1], ys[0], ys[1])
            want, err = dblquad(
                density, float(xs[0]), float(xs[1]), float(ys[0]), float(ys[1]),
                epsabs=1e-12, epsrel=1e-12,
            )
            assert measure(box) == pytest.approx(want, abs=1e-9)

    def test_additivity(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            ax = sorted(F(int(n), 32) for n in rng.integers(1, 33, size=2))
            ay = sorted(F(int(n), 32) for n in rng.integers(1, 33, size=2))
            bx = sorted(F(int(n), 32) for n in rng.integers(1, 33, size=2))
            by = sorted(F(int(n), 32) for n in rng.integers(1, 33, size=2))
            if ax[0] == ax[1] or ay[0] == ay[1] or bx[0] == bx[1] or by[0] == by[1]:
                continue
            a = Rect(ax[0], ax[1], ay[0], ay[1])
            b = Rect(bx[0], bx[1], by[0], by[1])
            lhs = measure(a | b) + measure(a & b)
            rhs = measure(a) + measure(b)
            assert lhs == pytest.approx(rhs, abs=1e-12)


class TestSublevel:
    def test_h1_closed_form(self):
        h1 = parse_region("H1")
        assert sublevel_measure(h1, 0.5) == pytest.approx(0.5, abs=1e-10)
        assert sublevel_measure(h1, 1.0) == pytest.approx(math.log(2), abs=1e-10)
        assert sublevel_measure(h1, 0.0) == 0.0

    def test_whole_square(self):
        # mu(S_z) = z for z <= 1, 1 + log z beyond
        omega = parse_region("OMEGA")
        assert sublevel_measure(omega, 0.25) == pytest.approx(0.25, abs=1e-10)
        assert sublevel_measure(omega, 2.0) == pytest.approx(1 + math.log(2), abs=1e-10)

    def test_monotone_and_saturating(self):
        r = parse_region("V2&H2")
        lo, hi = h_range(r)
        zs = np.linspace(lo, hi * 1.05, 40)
        vals = [sublevel_measure(r, z) for z in zs]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
        assert vals[-1] == pytest.approx(measure(r), abs=1e-10)

    def test_against_quadrature(self):
        r = parse_region("H2")
        z = 0.8

        def density(y, x):
            return 1.0 / (x + y - x * y) ** 2

        def y_lower(x):
            hz = (1 - x * z) / (1 - x * z + z)  # curve h = z
            return min(max(hz, 1 / 3), 1 / 2)

        want, err = dblquad(density, 0, 1, y_lower, lambda x: 0.5, epsabs=1e-12, epsrel=1e-12)
        assert sublevel_measure(r, z) == pytest.approx(want, abs=1e-9)

    def test_negative_z(self):
        with pytest.raises(ValueError):
            sublevel_measure(parse_region("H1"), -0.5)


class TestStripPredicate:
    def test_extraction(self):
        p = strip_predicate(parse_region("(V2&H2)|H1"))
        assert p(2, 2) and p(5, 1)
        assert not p(2, 3) and not p(3, 2)
        assert strip_predicate(parse_region("SUB(1)")) is None
        assert strip_predicate(parse_region("H1|RECT(0,1,0,1)")) is None

    def test_h_range(self):
        lo, hi = h_range(parse_region("H1"))
        assert (lo, hi) == (0.0, 1.0)
        lo, hi = h_range(parse_region("H2"))
        assert lo == pytest.approx(0.5)
        assert hi == pytest.approx(2.0)
