"""Inducible subregions of the unit square and their invariant measure.

Regions are finite set-algebra expressions over vertical/horizontal strips,
rational-edged rectangles, and sublevel sets of h(x,y) = (1-y)/(x+y-xy).
The invariant density is 1/(x+y-xy)^2; rectangle measures come from the
closed-form potential, and sublevel slices integrate the closed-form inner
antiderivative in one dimension.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.integrate import quad

from .dynamics import PointInOmega

ZERO = Fraction(0)
ONE = Fraction(1)


class Verdict(enum.Enum):
    IN = "in"
    OUT = "out"
    BOUNDARY = "boundary-uncertain"


def _tri_and(a: Verdict, b: Verdict) -> Verdict:
    if Verdict.OUT in (a, b):
        return Verdict.OUT
    if a == b == Verdict.IN:
        return Verdict.IN
    return Verdict.BOUNDARY


def _tri_or(a: Verdict, b: Verdict) -> Verdict:
    if Verdict.IN in (a, b):
        return Verdict.IN
    if a == b == Verdict.OUT:
        return Verdict.OUT
    return Verdict.BOUNDARY


def _tri_diff(a: Verdict, b: Verdict) -> Verdict:
    if a == Verdict.OUT or b == Verdict.IN:
        return Verdict.OUT
    if a == Verdict.IN and b == Verdict.OUT:
        return Verdict.IN
    return Verdict.BOUNDARY


def h_exact(x: Fraction, y: Fraction) -> Fraction:
    if x == 0 and y == 0:
        raise ValueError("h is undefined at (0,0)")
    return (1 - y) / (x + y - x * y)


def h_value(p: PointInOmega) -> tuple[Fraction, Fraction]:
    """Exact image interval of h over the point's enclosure.

    h is strictly decreasing in both coordinates on the square, so endpoint
    evaluation encloses exactly; degenerate input gives a degenerate interval.
    """
    lo = h_exact(p.x_hi, p.y)
    hi = h_exact(p.x_lo, p.y)
    return (lo, hi)


class Region:
    """Base class; subclasses form a closed set algebra."""

    def membership(self, p: PointInOmega) -> Verdict:
        raise NotImplementedError

    # truth on a grid cell (midpoint mx,my) within an h-band (band_hi = Fraction or None=inf)
    def _cell_truth(self, mx, my, band_hi) -> bool:
        raise NotImplementedError

    def _collect(self, xs, ys, zs):
        raise NotImplementedError

    def _strip_truth(self, v: int, h: int):
        """Truth as a function of strip indices, or None when not expressible."""
        return None

    def __or__(self, other):
        return Union(self, other)

    def __and__(self, other):
        return Intersection(self, other)

    def __sub__(self, other):
        return Difference(self, other)


@dataclass(frozen=True)
class VStrip(Region):
    """V_k = (1/(k+1), 1/k] x [0,1]."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("strip index must be >= 1")

    def membership(self, p):
        lo, hi = Fraction(1, self.k + 1), Fraction(1, self.k)
        if p.x_lo > lo and p.x_hi <= hi:
            return Verdict.IN
        if p.x_hi <= lo or p.x_lo > hi:
            return Verdict.OUT
        return Verdict.BOUNDARY

    def _cell_truth(self, mx, my, band_hi):
        return Fraction(1, self.k + 1) < mx <= Fraction(1, self.k)

    def _collect(self, xs, ys, zs):
        xs.update((Fraction(1, self.k + 1), Fraction(1, self.k)))

    def _strip_truth(self, v, h):
        return v == self.k

    def __str__(self):
        return f"V{self.k}"


@dataclass(frozen=True)
class HStrip(Region):
    """H_k = [0,1] x (1/(k+1), 1/k]."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("strip index must be >= 1")

    def membership(self, p):
        lo, hi = Fraction(1, self.k + 1), Fraction(1, self.k)
        return Verdict.IN if lo < p.y <= hi else Verdict.OUT

    def _cell_truth(self, mx, my, band_hi):
        return Fraction(1, self.k + 1) < my <= Fraction(1, self.k)

    def _collect(self, xs, ys, zs):
        ys.update((Fraction(1, self.k + 1), Fraction(1, self.k)))

    def _strip_truth(self, v, h):
        return h == self.k

    def __str__(self):
        return f"H{self.k}"


@dataclass(frozen=True)
class Rect(Region):
    """Closed rectangle [x1,x2] x [y1,y2] inside the unit square."""

    x1: Fraction
    x2: Fraction
    y1: Fraction
    y2: Fraction

    def __post_init__(self):
        for v in (self.x1, self.x2, self.y1, self.y2):
            if not ZERO <= v <= ONE:
                raise ValueError("rectangle edges must lie in [0,1]")
        if self.x1 > self.x2 or self.y1 > self.y2:
            raise ValueError("empty rectangle")

    def membership(self, p):
        if not self.y1 <= p.y <= self.y2:
            return Verdict.OUT
        if p.x_lo >= self.x1 and p.x_hi <= self.x2:
            return Verdict.IN
        if p.x_hi < self.x1 or p.x_lo > self.x2:
            return Verdict.OUT
        return Verdict.BOUNDARY

    def _cell_truth(self, mx, my, band_hi):
        return self.x1 < mx < self.x2 and self.y1 < my < self.y2

    def _collect(self, xs, ys, zs):
        xs.update((self.x1, self.x2))
        ys.update((self.y1, self.y2))

    def __str__(self):
        return f"RECT({self.x1},{self.x2},{self.y1},{self.y2})"


@dataclass(frozen=True)
class SubLevel(Region):
    """S_z = {h <= z}; z is a double, comparisons route through exact h."""

    z: float

    def __post_init__(self):
        if self.z < 0:
            raise ValueError("sublevel threshold must be >= 0")

    def membership(self, p):
        zf = Fraction(self.z)
        lo, hi = h_value(p)
        if hi <= zf:
            return Verdict.IN
        if lo > zf:
            return Verdict.OUT
        return Verdict.BOUNDARY

    def _cell_truth(self, mx, my, band_hi):
        return band_hi is not None and band_hi <= Fraction(self.z)

    def _collect(self, xs, ys, zs):
        zs.add(Fraction(self.z))

    def __str__(self):
        return f"SUB({self.z!r})"


@dataclass(frozen=True)
class Omega(Region):
    """The whole unit square (infinite measure)."""

    def membership(self, p):
        return Verdict.IN

    def _cell_truth(self, mx, my, band_hi):
        return True

    def _collect(self, xs, ys, zs):
        pass

    def _strip_truth(self, v, h):
        return True

    def __str__(self):
        return "OMEGA"


@dataclass(frozen=True)
class Union(Region):
    a: Region
    b: Region

    def membership(self, p):
        return _tri_or(self.a.membership(p), self.b.membership(p))

    def _cell_truth(self, mx, my, band_hi):
        return self.a._cell_truth(mx, my, band_hi) or self.b._cell_truth(mx, my, band_hi)

    def _collect(self, xs, ys, zs):
        self.a._collect(xs, ys, zs)
        self.b._collect(xs, ys, zs)

    def _strip_truth(self, v, h):
        ta, tb = self.a._strip_truth(v, h), self.b._strip_truth(v, h)
        return None if ta is None or tb is None else (ta or tb)

    def __str__(self):
        return f"({self.a}|{self.b})"


@dataclass(frozen=True)
class Intersection(Region):
    a: Region
    b: Region

    def membership(self, p):
        return _tri_and(self.a.membership(p), self.b.membership(p))

    def _cell_truth(self, mx, my, band_hi):
        return self.a._cell_truth(mx, my, band_hi) and self.b._cell_truth(mx, my, band_hi)

    def _collect(self, xs, ys, zs):
        self.a._collect(xs, ys, zs)
        self.b._collect(xs, ys, zs)

    def _strip_truth(self, v, h):
        ta, tb = self.a._strip_truth(v, h), self.b._strip_truth(v, h)
        return None if ta is None or tb is None else (ta and tb)

    def __str__(self):
        return f"({self.a}&{self.b})"


@dataclass(frozen=True)
class Difference(Region):
    a: Region
    b: Region

    def membership(self, p):
        return _tri_diff(self.a.membership(p), self.b.membership(p))

    def _cell_truth(self, mx, my, band_hi):
        return self.a._cell_truth(mx, my, band_hi) and not self.b._cell_truth(mx, my, band_hi)

    def _collect(self, xs, ys, zs):
        self.a._collect(xs, ys, zs)
        self.b._collect(xs, ys, zs)

    def _strip_truth(self, v, h):
        ta, tb = self.a._strip_truth(v, h), self.b._strip_truth(v, h)
        return None if ta is None or tb is None else (ta and not tb)

    def __str__(self):
        return f"({self.a}\\{self.b})"


def membership(region: Region, p: PointInOmega) -> Verdict:
    return region.membership(p)


def strip_predicate(region: Region):
    """Callable P(v_index, h_index) when the region is strip-algebra, else None."""
    probe = region._strip_truth(1, 1)
    if probe is None:
        return None
    return region._strip_truth


# --- measure ---------------------------------------------------------------


def _cells_with_bands(region: Region):
    """Disjoint open grid cells x h-bands on which the region is constant.

    Yields (x1, x2, y1, y2, z_lo, z_hi) with z bounds as Fractions and None
    standing for 0 / +inf.  Boundaries are null for the invariant measure.
    """
    xs, ys, zs = {ZERO, ONE}, {ZERO, ONE}, set()
    region._collect(xs, ys, zs)
    xs = sorted(v for v in xs if ZERO <= v <= ONE)
    ys = sorted(v for v in ys if ZERO <= v <= ONE)
    levels = sorted(zs)
    bands = []
    prev = None
    for z in levels:
        bands.append((prev, z))
        prev = z
    bands.append((prev, None))
    for x1, x2 in zip(xs, xs[1:]):
        if x1 == x2:
            continue
        mx = (x1 + x2) / 2
        for y1, y2 in zip(ys, ys[1:]):
            if y1 == y2:
                continue
            my = (y1 + y2) / 2
            for z_lo, z_hi in bands:
                if region._cell_truth(mx, my, z_hi):
                    yield (x1, x2, y1, y2, z_lo, z_hi)


def _rect_measure(x1, x2, y1, y2) -> float:
    """Closed-form box measure from the potential -log(x+y-xy)."""
    d11 = x1 + y1 - x1 * y1
    if d11 == 0:
        return math.inf
    ratio = ((x1 + y2 - x1 * y2) * (x2 + y1 - x2 * y1)) / ((x2 + y2 - x2 * y2) * d11)
    return math.log(ratio)


def _sub_box(x1, x2, y1, y2, z) -> float:
    """mu(box ∩ {h <= z}) by 1D quadrature of the inner antiderivative."""
    if z <= 0:
        return 0.0
    h_min = float(h_exact(Fraction(x2), Fraction(y2)))
    if z <= h_min:
        return 0.0
    if not (x1 == 0 and y1 == 0):
        h_max = float(h_exact(Fraction(x1), Fraction(y1)))
        if z >= h_max:
            return _rect_measure(x1, x2, y1, y2)
    fx1, fx2, fy1, fy2, fz = float(x1), float(x2), float(y1), float(y2), float(z)

    # level curve y = f(x,z) crosses the horizontal edges at these x
    def cross(c):
        return 1.0 / fz - c / (1.0 - c) if c < 1.0 else -math.inf

    lo = min(max(cross(fy2), fx1), fx2)  # f > y2 (empty slice) for x < lo
    hi = min(max(cross(fy1), fx1), fx2)  # f < y1 (full slice) for x > hi
    total = 0.0
    if hi < fx2:
        total += _rect_measure(Fraction(hi), Fraction(fx2), y1, y2)
    if lo < hi:

        def integrand(x):
            inner_curve = 1.0 - x * fz + fz  # equals 1/(x + f - x f)
            inner_top = 1.0 / (x + fy2 * (1.0 - x))
            return (inner_curve - inner_top) / (1.0 - x) if x < 1.0 else 0.0

        val, _err = quad(integrand, lo, hi, epsabs=1e-13, epsrel=1e-12, limit=300)
        total += val
    return total


def measure(region: Region) -> float:
    """Invariant measure; +inf exactly when the region meets the origin corner."""
    total = 0.0
    for x1, x2, y1, y2, z_lo, z_hi in _cells_with_bands(region):
        if z_hi is None:
            part = _rect_measure(x1, x2, y1, y2)
        else:
            part = _sub_box(x1, x2, y1, y2, float(z_hi))
        if z_lo is not None:
            part -= _sub_box(x1, x2, y1, y2, float(z_lo))
        if math.isinf(part):
            return math.inf
        total += part
    return total


def sublevel_measure(region: Region, z) -> float:
    """mu(S_z ∩ region); finite for every finite z."""
    z = float(z)
    if z < 0:
        raise ValueError("z must be >= 0")
    total = 0.0
    for x1, x2, y1, y2, z_lo, z_hi in _cells_with_bands(region):
        cap = z if z_hi is None else min(z, float(z_hi))
        lo = 0.0 if z_lo is None else float(z_lo)
        if cap <= lo:
            continue
        total += _sub_box(x1, x2, y1, y2, cap) - (_sub_box(x1, x2, y1, y2, lo) if lo > 0 else 0.0)
    return total


def is_proper(region: Region) -> bool:
    m = measure(region)
    return 0.0 < m < math.inf


def h_range(region: Region) -> tuple[float, float]:
    """(inf, sup) of h over the region, band caps included."""
    lo, hi = math.inf, 0.0
    for x1, x2, y1, y2, z_lo, z_hi in _cells_with_bands(region):
        cell_lo = float(h_exact(x2, y2))
        cell_hi = math.inf if (x1 == 0 and y1 == 0) else float(h_exact(x1, y1))
        if z_hi is not None:
            cell_hi = min(cell_hi, float(z_hi))
        if z_lo is not None:
            cell_lo = max(cell_lo, float(z_lo))
        lo = min(lo, cell_lo)
        hi = max(hi, cell_hi)
    return lo, hi


# --- grammar ---------------------------------------------------------------


class _Parser:
    """expr := term (('|'|'\\') term)*; term := atom ('&' atom)*."""

    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg):
        from .errors import RegionParseError

        raise RegionParseError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self):
        node = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return node

    def expr(self):
        node = self.term()
        while self.peek() in ("|", "\\"):
            op = self.peek()
            self.pos += 1
            rhs = self.term()
            node = Union(node, rhs) if op == "|" else Difference(node, rhs)
        return node

    def term(self):
        node = self.atom()
        while self.peek() == "&":
            self.pos += 1
            node = Intersection(node, self.atom())
        return node

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        return self.primitive()

    def _word(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()):
            self.pos += 1
        return self.text[start : self.pos]

    def _number(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isdigit() or self.text[self.pos] in "./-+e"):
            self.pos += 1
        tok = self.text[start : self.pos]
        if not tok:
            self.error("expected a number")
        try:
            return Fraction(tok)
        except (ValueError, ZeroDivisionError):
            self.error(f"bad numeric literal {tok!r}")

    def primitive(self):
        word = self._word()
        if not word:
            self.error("expected a region primitive")
        try:
            if word == "OMEGA":
                return Omega()
            if word == "RECT":
                self.expect("(")
                args = [self._number()]
                for _ in range(3):
                    self.expect(",")
                    args.append(self._number())
                self.expect(")")
                return Rect(*args)
            if word == "SUB":
                self.expect("(")
                z = self._number()
                self.expect(")")
                return SubLevel(float(z))
            if word[0] in "HV" and word[1:].isdigit():
                k = int(word[1:])
                return HStrip(k) if word[0] == "H" else VStrip(k)
        except ValueError as exc:
            self.error(str(exc))
        self.error(f"unknown primitive {word!r}")


def parse_region(text: str) -> Region:
    """Parse the ASCII region grammar; raises RegionParseError with position."""
    return _Parser(text).parse()
