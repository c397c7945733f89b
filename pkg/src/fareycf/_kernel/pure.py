"""Pure-Python orbit kernel.

Walks the orbit of (x, 1) block-by-block (one block per partial quotient)
instead of step-by-step: exact integer digit extraction drives stable
double-precision recursions for the y-side ratio q_{j-1}/q_j, log q_j, and
backward-evaluated tails for the x-side.  The compiled kernel mirrors this
file operation-for-operation so both produce bit-identical floats.
"""

from __future__ import annotations

import math

IMPL = "pure"


def euclid_digits(num, den, limit=None):
    """Partial quotients of num/den in [0,1); optional cap on the count."""
    digits = []
    while num:
        a, r = divmod(den, num)
        digits.append(a)
        den, num = num, r
        if limit is not None and len(digits) >= limit:
            break
    return digits


def backward_tails(digits):
    """tails[m] = float value of [0; digits[m], digits[m+1], ...].

    The backward recursion is the numerically stable direction; every entry
    is accurate to roundoff.  len(tails) == len(digits) + 1.
    """
    n = len(digits)
    tails = [0.0] * (n + 1)
    t = 0.0
    for m in range(n - 1, -1, -1):
        t = 1.0 / (digits[m] + t)
        tails[m] = t
    return tails


def _offsets(rule, a, shift):
    """Hit offsets of one block: lambdas with rule(v=a-lam, h=lam+1+shift)."""
    return [lam for lam in range(a) if rule(a - lam, lam + 1 + shift)]


class RuleTable:
    """Per-digit hit offsets for a strip-algebra predicate, memoized.

    `shift=1` tables serve the second block when a_1 = 1, where the exact
    y-coordinate sits one horizontal strip lower than the naive index.
    """

    def __init__(self, pred, cache_limit=512):
        self.pred = pred
        self.cache_limit = cache_limit
        self._plain = [tuple(_offsets(pred, a, 0)) for a in range(cache_limit)]
        self._shifted = [tuple(_offsets(pred, a, 1)) for a in range(cache_limit)]
        self._big_plain = {}
        self._big_shifted = {}

    def offsets(self, a, shifted=False):
        if a < self.cache_limit:
            return self._shifted[a] if shifted else self._plain[a]
        memo = self._big_shifted if shifted else self._big_plain
        got = memo.get(a)
        if got is None:
            got = tuple(_offsets(self.pred, a, 1 if shifted else 0))
            memo[a] = got
        return got

    def hits_per_block(self, a, shifted=False):
        return len(self.offsets(a, shifted))


def collect_thetas(digits, tails, table, returns, theta_cap=None, theta_floor=None):
    """Theta values at the first `returns` region entries with raw index >= 1.

    Returns (thetas, meta) where meta = (hits, blocks_used, raw_steps_used).
    theta_cap/theta_floor add an `h <= cap` / `h > floor` conjunct (sublevel
    rules).  Raises ValueError when the digits run out first.
    """
    thetas = []
    g = 0.0  # q_{j-1}/q_j
    n_base = 0  # raw index at the block start
    for j, a in enumerate(digits):
        shifted = j == 1 and digits[0] == 1
        t_next = tails[j + 1]
        for lam in table.offsets(a, shifted):
            if n_base + lam == 0:
                continue  # formal 1/0 entry; never a return
            x = 1.0 / ((a - lam) + t_next)
            y = 1.0 / (1.0 + lam + g)
            theta = (1.0 - y) / (x + y - x * y)
            if theta_cap is not None and theta > theta_cap:
                continue
            if theta_floor is not None and theta <= theta_floor:
                continue
            thetas.append(theta)
            if len(thetas) == returns:
                return thetas, (returns, j + 1, n_base + lam)
        g = 1.0 / (a + g)
        n_base += a
    raise ValueError(f"digit budget exhausted after {len(thetas)} of {returns} region entries")


def levy_components(digits, tails, table, returns):
    """((1/n) log s_n, (1/n) log |x - u_n/s_n|) at the n = returns-th entry."""
    g = 0.0
    log_q = 0.0  # log q_j
    hits = 0
    n_base = 0
    for j, a in enumerate(digits):
        shifted = j == 1 and digits[0] == 1
        t_next = tails[j + 1]
        for lam in table.offsets(a, shifted):
            if n_base + lam == 0:
                continue
            hits += 1
            if hits == returns:
                log_s = log_q + math.log(lam + g)
                x = 1.0 / ((a - lam) + t_next)
                log_err = -(log_s + log_s + math.log(x + 1.0 / (lam + g)))
                return log_s / returns, log_err / returns
        log_q += math.log(a + g)
        g = 1.0 / (a + g)
        n_base += a
    raise ValueError(f"digit budget exhausted after {hits} of {returns} region entries")


def visit_counts(digits, tables, steps):
    """Raw-orbit visit counts (indices 0 <= k < steps) for several rule tables."""
    counts = [0] * len(tables)
    n_base = 0
    for j, a in enumerate(digits):
        if n_base >= steps:
            break
        shifted = j == 1 and digits[0] == 1
        cutoff = steps - n_base  # offsets beyond this fall past the step budget
        for i, table in enumerate(tables):
            for lam in table.offsets(a, shifted):
                if lam >= cutoff:
                    break
                counts[i] += 1
        n_base += a
    if n_base < steps:
        raise ValueError(f"digit budget exhausted after {n_base} of {steps} raw steps")
    return counts


def log_q_at(digits, n):
    """log q_n for the regular-convergent denominators."""
    if n > len(digits):
        raise ValueError(f"need {n} digits, have {len(digits)}")
    g = 0.0
    log_q = 0.0
    for a in digits[:n]:
        log_q += math.log(a + g)
        g = 1.0 / (a + g)
    return log_q
