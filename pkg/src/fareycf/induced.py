"""First-return dynamics on inducible regions.

Hitting times, induced orbits and their approximation coefficients, visit
ratios, Levy-exponent estimators, entropy, the exact conjugacy with the
Gauss-map natural extension, and the denominator-sorting permutation with
its prefix rearrangement bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .dynamics import DEFAULT_TAIL_DEPTH, FareyState, PointInOmega, orbit_stream, point_at
from .errors import DigitBudgetError, NonRecurrenceError, PrecisionError
from .regions import HStrip, Region, Verdict, h_value, measure, strip_predicate

from fractions import Fraction

DEFAULT_STEP_CAP = 10**6


def _decide(e, region, state, point, tail_depth):
    """Resolve membership, deepening the enclosure once before giving up."""
    v = region.membership(point)
    if v != Verdict.BOUNDARY:
        return v, point
    deeper = point_at(e, state, 2 * tail_depth)
    v = region.membership(deeper)
    if v == Verdict.BOUNDARY:
        raise PrecisionError(
            f"orbit point at step {state.n} straddles the boundary of {region} "
            f"even at doubled enclosure depth"
        )
    return v, deeper


def hitting_time(e, region, from_step=0, *, step_cap=DEFAULT_STEP_CAP,
                 tail_depth=DEFAULT_TAIL_DEPTH) -> int:
    """Least n >= 1 with the (from_step + n)-th orbit point inside the region."""
    for k, state, point in orbit_stream(e, tail_depth):
        if k <= from_step:
            continue
        if k - from_step > step_cap:
            break
        v, _ = _decide(e, region, state, point, tail_depth)
        if v == Verdict.IN:
            return k - from_step
    raise NonRecurrenceError(str(region), from_step, step_cap)


@dataclass(frozen=True)
class InducedEntry:
    index: int
    n_abs: int
    state: FareyState
    point: PointInOmega
    verdict: Verdict


@dataclass(frozen=True)
class InducedOrbit:
    region: Region
    entries: tuple[InducedEntry, ...]

    @property
    def return_times(self) -> tuple[int, ...]:
        ns = [en.n_abs for en in self.entries]
        return tuple(b - a for a, b in zip(ns, ns[1:]))


def induced_orbit(e, region, count, *, step_cap=DEFAULT_STEP_CAP,
                  tail_depth=DEFAULT_TAIL_DEPTH) -> InducedOrbit:
    """First `count` returns (raw index >= 1), preceded by the step-0 entry
    when the start point (x, 1) already lies in the region."""
    entries = []
    returns = 0
    last_hit = 0
    for k, state, point in orbit_stream(e, tail_depth):
        if k - last_hit > step_cap:
            raise NonRecurrenceError(str(region), last_hit, step_cap)
        v, point = _decide(e, region, state, point, tail_depth)
        if v != Verdict.IN:
            continue
        if k == 0:
            entries.append(InducedEntry(0, 0, state, point, v))
            continue
        returns += 1
        entries.append(InducedEntry(len(entries), k, state, point, v))
        last_hit = k
        if returns == count:
            break
    return InducedOrbit(region, tuple(entries))


def theta_induced(e, region, count, **kw) -> list[tuple[Fraction, Fraction]]:
    """Approximation-coefficient intervals h(point) along the induced orbit."""
    orb = induced_orbit(e, region, count, **kw)
    return [h_value(en.point) for en in orb.entries]


def entropy(region) -> float:
    """pi^2 / (6 mu(region)) for proper regions."""
    m = measure(region)
    if not (0.0 < m < math.inf):
        raise ValueError("entropy needs a proper region (finite positive measure)")
    return math.pi**2 / (6.0 * m)


def visit_ratio(e, steps, s_region, r_region, *, tail_depth=DEFAULT_TAIL_DEPTH) -> float:
    """(#visits to S) / (#visits to R) over raw orbit indices 0 <= k < steps."""
    cs = cr = 0
    for k, state, point in orbit_stream(e, tail_depth):
        if k >= steps:
            break
        vs, point = _decide(e, s_region, state, point, tail_depth)
        vr, _ = _decide(e, r_region, state, point, tail_depth)
        cs += vs == Verdict.IN
        cr += vr == Verdict.IN
    if cr == 0:
        raise ValueError(f"denominator region {r_region} was never visited in {steps} steps")
    return cs / cr


def _log_int(n: int) -> float:
    return math.log(n)


def levy_estimates(e, region, count, **kw) -> tuple[float, float]:
    """((1/n) log s_n, (1/n) log |x - u_n/s_n|) at the n = count-th return.

    The error term uses |x - u/s| = 1/(s (s x_n + r)) evaluated on the
    x-enclosure; the two log endpoints are averaged (they coincide for exact
    rational starts).
    """
    orb = induced_orbit(e, region, count, **kw)
    returns = [en for en in orb.entries if en.n_abs >= 1]
    if len(returns) < count:
        raise DigitBudgetError(f"only {len(returns)} returns available")
    en = returns[count - 1]
    s, r = en.state.s, en.state.r
    log_s = _log_int(s)
    bounds = []
    for x_end in (en.point.x_lo, en.point.x_hi):
        denom = s * (s * x_end + r)
        bounds.append(-(_log_int(denom.numerator) - _log_int(denom.denominator)))
    log_err = (bounds[0] + bounds[1]) / 2.0
    return log_s / count, log_err / count


# --- Gauss-map conjugacy -----------------------------------------------------


def gauss_ne_step(point, digit=None):
    """One step of the Gauss natural extension (exact rationals)."""
    x, y = Fraction(point[0]), Fraction(point[1])
    if x == 0:
        return (x, y)
    a = x.denominator // x.numerator if digit is None else digit
    return (Fraction(1) / x - a, Fraction(1, a + y))


def conjugacy_residual_series(e, count, *, tail_depth=DEFAULT_TAIL_DEPTH,
                              step_cap=DEFAULT_STEP_CAP) -> list[Fraction]:
    """Distance between the induced orbit on H_1 and the carried Gauss orbit.

    The Gauss natural-extension orbit of (x, 0) is mapped into the induced
    system by (x, y) -> (x, 1/(y+1)) and compared entry-by-entry (matching
    digit index j); entry k of the result is the distance at the k-th return,
    with entry 0 comparing the initial points.  The y-sides agree exactly,
    so the residual is the x-enclosure width: it shrinks at the cylinder
    (inverse-Fibonacci-squared) rate and is identically 0 for rational starts.
    """
    orb = induced_orbit(e, HStrip(1), count, step_cap=step_cap, tail_depth=tail_depth)
    y_g = Fraction(0)
    built = 0
    series = []
    for en in orb.entries:
        while built < en.state.j:
            y_g = Fraction(1, e.digit(built + 1) + y_g)
            built += 1
        carried = Fraction(1, 1 + y_g)
        y_dist = abs(en.point.y - carried)
        x_dist = en.point.x_hi - en.point.x_lo
        series.append(max(y_dist, x_dist))
    return series


def gauss_conjugacy_residual(e, count, **kw) -> Fraction:
    """Residual at the count-th return to H_1 (count=0: initial points)."""
    return conjugacy_residual_series(e, count, **kw)[-1]


# --- denominator-sorting permutation ----------------------------------------


def _block_sums(e, upto_raw):
    """[A_0, A_1, ...] with A_j = a_1 + ... + a_j, extended past upto_raw."""
    sums = [0]
    i = 1
    while sums[-1] < upto_raw:
        sums.append(sums[-1] + e.digit(i))
        i += 1
    return sums


def rho_map(e, n) -> int:
    """Cyclic-shift permutation sorting convergent denominators: block
    (A_j+1, ..., A_{j+1}) maps to (A_{j+1}, A_j+1, ..., A_{j+1}-1)."""
    if n == 0:
        return 0
    sums = _block_sums(e, n)
    j = max(i for i in range(len(sums)) if sums[i] < n)
    return sums[j + 1] if n == sums[j] + 1 else n - 1


def rho_inverse_map(e, n) -> int:
    if n == 0:
        return 0
    sums = _block_sums(e, n)
    j = max(i for i in range(len(sums)) if sums[i] < n)
    return sums[j] + 1 if n == sums[j + 1] else n + 1


def induced_raw_indices(e, region, upto_n, *, tail_depth=DEFAULT_TAIL_DEPTH,
                        step_cap=DEFAULT_STEP_CAP):
    """(N, J) arrays of raw indices / digit indices of the induced sequence.

    N[0] = 0 is the formal head entry regardless of membership; returns
    follow.  Walks one full block past N[upto_n] so that the sorting
    permutation's prefix is determined.
    """
    pred = strip_predicate(region)
    N, J = [0], [0]
    if pred is not None:
        digits = e.digits
        n_base = 0
        for j, a in enumerate(digits):
            if len(N) > upto_n and n_base > N[upto_n]:
                return N, J
            shift = 1 if (j == 1 and digits[0] == 1) else 0
            for lam in range(a):
                raw = n_base + lam
                if raw >= 1 and pred(a - lam, lam + 1 + shift):
                    N.append(raw)
                    J.append(j)
            n_base += a
        raise DigitBudgetError(
            f"digit budget exhausted with {len(N) - 1} of {upto_n} region returns"
        )
    for k, state, point in orbit_stream(e, tail_depth):
        if len(N) > upto_n and state.lam == 0 and state.n > N[upto_n]:
            return N, J
        if k - N[-1] > step_cap:
            raise NonRecurrenceError(str(region), N[-1], step_cap)
        if k >= 1:
            v, _ = _decide(e, region, state, point, tail_depth)
            if v == Verdict.IN:
                N.append(k)
                J.append(state.j)
    raise DigitBudgetError("orbit ended before the requested returns")


def rho_region_order(e, region, n, **kw):
    """Permutation rho_R on induced indices 0..n (increasing denominators)."""
    N, J = induced_raw_indices(e, region, n, **kw)
    keys = [rho_inverse_map(e, raw) for raw in N]
    order = sorted(range(len(N)), key=keys.__getitem__)
    return order[: n + 1], N, J


def rearrangement_check(e, region, n, **kw) -> tuple[int, int]:
    """(|{N_k} symdiff {N_rho(k)}| over k<=n, |j at N_rho(n) - j at N_n|)."""
    order, N, J = rho_region_order(e, region, n, **kw)
    straight = set(N[: n + 1])
    permuted = {N[i] for i in order}
    sym = len(straight ^ permuted)
    jgap = abs(J[order[n]] - J[n])
    return sym, jgap


# --- mergeable statistics -----------------------------------------------------


@dataclass(frozen=True)
class OrbitStats:
    """Monoidal per-run statistics; merging equals pooling the samples."""

    total_steps: int = 0
    sample_count: int = 0
    visits: tuple[tuple[str, int], ...] = ()
    theta_edges: tuple[float, ...] = ()
    theta_counts: tuple[int, ...] = ()
    log_s_sum: float = 0.0
    log_err_sum: float = 0.0
    levy_terms: int = 0

    @classmethod
    def from_thetas(cls, thetas, edges, steps=0):
        counts, _ = np.histogram(np.asarray(thetas), bins=np.asarray(edges))
        return cls(
            total_steps=steps,
            sample_count=1,
            theta_edges=tuple(edges),
            theta_counts=tuple(int(c) for c in counts),
        )

    def merge(self, other: "OrbitStats") -> "OrbitStats":
        if self.theta_edges and other.theta_edges and self.theta_edges != other.theta_edges:
            raise ValueError("histograms with different bin edges cannot merge")
        edges = self.theta_edges or other.theta_edges
        a = self.theta_counts or (0,) * max(len(edges) - 1, 0)
        b = other.theta_counts or (0,) * max(len(edges) - 1, 0)
        visits = dict(self.visits)
        for key, cnt in other.visits:
            visits[key] = visits.get(key, 0) + cnt
        return OrbitStats(
            total_steps=self.total_steps + other.total_steps,
            sample_count=self.sample_count + other.sample_count,
            visits=tuple(sorted(visits.items())),
            theta_edges=edges,
            theta_counts=tuple(x + y for x, y in zip(a, b)) if edges else (),
            log_s_sum=self.log_s_sum + other.log_s_sum,
            log_err_sum=self.log_err_sum + other.log_err_sum,
            levy_terms=self.levy_terms + other.levy_terms,
        )
