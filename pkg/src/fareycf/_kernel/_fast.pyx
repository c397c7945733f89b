# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled orbit kernel; mirrors pure.py operation-for-operation.

Big integers stay Python objects (their arithmetic already runs in C); the
win is loop and dispatch overhead.  Float expressions are written in the
same order as the pure kernel so results are bit-identical.
"""

from libc.math cimport log

IMPL = "cython"


def euclid_digits(num, den, limit=None):
    """Partial quotients of num/den in [0,1); optional cap on the count."""
    cdef Py_ssize_t cap = -1 if limit is None else <Py_ssize_t> limit
    cdef list digits = []
    while num:
        a, r = divmod(den, num)
        digits.append(a)
        den = num
        num = r
        if cap >= 0 and len(digits) >= cap:
            break
    return digits


def backward_tails(digits):
    """tails[m] = float value of [0; digits[m], digits[m+1], ...]."""
    cdef Py_ssize_t n = len(digits)
    cdef list tails = [0.0] * (n + 1)
    cdef double t = 0.0
    cdef Py_ssize_t m
    for m in range(n - 1, -1, -1):
        t = 1.0 / (<double> digits[m] + t)
        tails[m] = t
    return tails


def collect_thetas(digits, tails, table, returns, theta_cap=None, theta_floor=None):
    """Theta values at the first `returns` region entries with raw index >= 1."""
    cdef list thetas = []
    cdef double g = 0.0
    cdef double t_next, x, y, theta, a_d, lam_d
    cdef double cap = -1.0, floor_ = -1.0
    cdef bint has_cap = theta_cap is not None, has_floor = theta_floor is not None
    cdef bint shifted, first_is_one
    cdef Py_ssize_t j, nblocks = len(digits), want = returns
    cdef long long n_base = 0, lam_i
    if has_cap:
        cap = theta_cap
    if has_floor:
        floor_ = theta_floor
    first_is_one = nblocks > 0 and digits[0] == 1
    for j in range(nblocks):
        a = digits[j]
        shifted = j == 1 and first_is_one
        t_next = <double> tails[j + 1]
        a_d = <double> a
        for lam in table.offsets(a, shifted):
            lam_i = lam
            if n_base + lam_i == 0:
                continue
            lam_d = <double> lam_i
            x = 1.0 / ((a_d - lam_d) + t_next)
            y = 1.0 / (1.0 + lam_d + g)
            theta = (1.0 - y) / (x + y - x * y)
            if has_cap and theta > cap:
                continue
            if has_floor and theta <= floor_:
                continue
            thetas.append(theta)
            if len(thetas) == want:
                return thetas, (returns, j + 1, n_base + lam_i)
        g = 1.0 / (a_d + g)
        n_base += <long long> a
    raise ValueError(f"digit budget exhausted after {len(thetas)} of {returns} region entries")


def levy_components(digits, tails, table, returns):
    """((1/n) log s_n, (1/n) log |x - u_n/s_n|) at the n = returns-th entry."""
    cdef double g = 0.0, log_q = 0.0
    cdef double t_next, x, log_s, log_err, a_d, lam_d
    cdef bint shifted, first_is_one
    cdef Py_ssize_t j, nblocks = len(digits), hits = 0, want = returns
    cdef long long n_base = 0, lam_i
    first_is_one = nblocks > 0 and digits[0] == 1
    for j in range(nblocks):
        a = digits[j]
        shifted = j == 1 and first_is_one
        t_next = <double> tails[j + 1]
        a_d = <double> a
        for lam in table.offsets(a, shifted):
            lam_i = lam
            if n_base + lam_i == 0:
                continue
            hits += 1
            if hits == want:
                lam_d = <double> lam_i
                log_s = log_q + log(lam_d + g)
                x = 1.0 / ((a_d - lam_d) + t_next)
                log_err = -(log_s + log_s + log(x + 1.0 / (lam_d + g)))
                return log_s / returns, log_err / returns
        log_q += log(a_d + g)
        g = 1.0 / (a_d + g)
        n_base += <long long> a
    raise ValueError(f"digit budget exhausted after {hits} of {returns} region entries")


def visit_counts(digits, tables, steps):
    """Raw-orbit visit counts (indices 0 <= k < steps) for several rule tables."""
    cdef list counts = [0] * len(tables)
    cdef long long n_base = 0, cutoff, lam_i, want = steps
    cdef Py_ssize_t j, i, ntab = len(tables), nblocks = len(digits)
    cdef bint shifted, first_is_one
    first_is_one = nblocks > 0 and digits[0] == 1
    for j in range(nblocks):
        if n_base >= want:
            break
        a = digits[j]
        shifted = j == 1 and first_is_one
        cutoff = want - n_base
        for i in range(ntab):
            table = tables[i]
            for lam in table.offsets(a, shifted):
                lam_i = lam
                if lam_i >= cutoff:
                    break
                counts[i] = counts[i] + 1
        n_base += <long long> a
    if n_base < want:
        raise ValueError(f"digit budget exhausted after {n_base} of {steps} raw steps")
    return counts


def log_q_at(digits, n):
    """log q_n for the regular-convergent denominators."""
    if n > len(digits):
        raise ValueError(f"need {n} digits, have {len(digits)}")
    cdef double g = 0.0, log_q = 0.0, a_d
    cdef Py_ssize_t k, want = n
    for k in range(want):
        a_d = <double> digits[k]
        log_q += log(a_d + g)
        g = 1.0 / (a_d + g)
    return log_q
