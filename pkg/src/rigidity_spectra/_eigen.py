"""Compiled kernels for the dense symmetric eigensolver.

Householder reduction to tridiagonal form, implicitly shifted QL on the
tridiagonal, and tridiagonal inverse iteration used to recover selected
eigenvectors for residual checks. All kernels release the GIL.
"""

import math

import numpy as np
from numba import njit

_EPS = np.finfo(np.float64).eps


@njit(cache=True, nogil=True)
def tridiagonalize(a):
    """Reduce symmetric ``a`` in place.

    Returns (diag, offdiag, betas). Column k of ``a`` below row k keeps the
    Householder vector of step k so that Q = H_0 H_1 ... H_{n-3} can be
    applied later with ``apply_q``.
    """
    n = a.shape[0]
    d = np.zeros(n)
    e = np.zeros(max(n - 1, 0))
    betas = np.zeros(max(n - 2, 0))
    for k in range(n - 2):
        m = n - k - 1
        norm2 = 0.0
        for i in range(k + 1, n):
            norm2 += a[i, k] * a[i, k]
        xnorm = math.sqrt(norm2)
        if xnorm == 0.0:
            e[k] = 0.0
            betas[k] = 0.0
            d[k] = a[k, k]
            continue
        x0 = a[k + 1, k]
        alpha = -xnorm if x0 >= 0.0 else xnorm
        # v = x - alpha e1, stored in a[k+1:, k]
        a[k + 1, k] = x0 - alpha
        vnorm2 = norm2 - x0 * x0 + a[k + 1, k] * a[k + 1, k]
        beta = 2.0 / vnorm2
        betas[k] = beta
        # p = beta * A22 v
        p = np.zeros(m)
        for i in range(m):
            s = 0.0
            for j in range(m):
                s += a[k + 1 + i, k + 1 + j] * a[k + 1 + j, k]
            p[i] = beta * s
        pv = 0.0
        for i in range(m):
            pv += p[i] * a[k + 1 + i, k]
        c = 0.5 * beta * pv
        for i in range(m):
            p[i] -= c * a[k + 1 + i, k]
        # A22 -= v w^T + w v^T
        for i in range(m):
            vi = a[k + 1 + i, k]
            wi = p[i]
            for j in range(m):
                a[k + 1 + i, k + 1 + j] -= vi * p[j] + wi * a[k + 1 + j, k]
        d[k] = a[k, k]
        e[k] = alpha
    if n >= 2:
        d[n - 2] = a[n - 2, n - 2]
        d[n - 1] = a[n - 1, n - 1]
        e[n - 2] = a[n - 1, n - 2]
    elif n == 1:
        d[0] = a[0, 0]
    return d, e, betas


@njit(cache=True, nogil=True)
def apply_q(house, betas, y):
    """Return Q y for the reflectors stored by ``tridiagonalize``."""
    n = y.shape[0]
    v = y.copy()
    for k in range(n - 3, -1, -1):
        beta = betas[k]
        if beta == 0.0:
            continue
        s = 0.0
        for i in range(k + 1, n):
            s += house[i, k] * v[i]
        s *= beta
        for i in range(k + 1, n):
            v[i] -= s * house[i, k]
    return v


@njit(cache=True, nogil=True)
def tql_values(d_in, e_in, max_sweeps):
    """Eigenvalues of the symmetric tridiagonal (d, e) by implicit QL.

    Returns (values, status); status is -1 - l when eigenvalue l exhausted
    its sweep budget, otherwise 0. Values are sorted ascending.
    """
    n = d_in.shape[0]
    d = d_in.copy()
    e = np.zeros(n)
    for i in range(n - 1):
        e[i] = e_in[i]
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            if sweeps == max_sweeps:
                return d, -1 - l
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            deflated = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    d.sort()
    return d, 0


@njit(cache=True, nogil=True)
def tridiagonal_eigvec(d, e, theta, scale):
    """Eigenvector of tridiagonal (d, e) for eigenvalue ``theta``.

    Two steps of inverse iteration with an LU factorization using partial
    pivoting; zero pivots are replaced by eps * scale.
    """
    n = d.shape[0]
    y = np.empty(n)
    for i in range(n):
        y[i] = 1.0 + 0.1 * math.sin(1.0 + 3.7 * i)
    if n == 1:
        y[0] = 1.0
        return y
    tiny = _EPS * max(scale, 1.0)
    u0 = np.empty(n)
    u1 = np.zeros(n)
    u2 = np.zeros(n)
    mult = np.zeros(n)
    swap = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        u0[i] = d[i] - theta
    for i in range(n - 1):
        u1[i] = e[i]
    for k in range(n - 1):
        c = e[k]
        if abs(u0[k]) >= abs(c):
            if u0[k] == 0.0:
                u0[k] = tiny
            mk = c / u0[k]
            mult[k] = mk
            u0[k + 1] -= mk * u1[k]
            if k + 1 < n - 1:
                u1[k + 1] -= mk * u2[k]
        else:
            mk = u0[k] / c
            mult[k] = mk
            swap[k] = True
            old1 = u1[k]
            u0[k] = c
            u1[k] = u0[k + 1]
            if k + 1 < n - 1:
                u2[k] = u1[k + 1]
            u0[k + 1] = old1 - mk * u1[k]
            if k + 1 < n - 1:
                u1[k + 1] = -mk * u2[k]
    if u0[n - 1] == 0.0:
        u0[n - 1] = tiny
    for _ in range(3):
        for k in range(n - 1):
            if swap[k]:
                t = y[k]
                y[k] = y[k + 1]
                y[k + 1] = t
            y[k + 1] -= mult[k] * y[k]
        y[n - 1] /= u0[n - 1]
        y[n - 2] = (y[n - 2] - u1[n - 2] * y[n - 1]) / u0[n - 2]
        for k in range(n - 3, -1, -1):
            y[k] = (y[k] - u1[k] * y[k + 1] - u2[k] * y[k + 2]) / u0[k]
        nrm = 0.0
        for i in range(n):
            nrm += y[i] * y[i]
        nrm = math.sqrt(nrm)
        if nrm == 0.0 or not math.isfinite(nrm):
            for i in range(n):
                y[i] = 1.0
            nrm = math.sqrt(n)
        for i in range(n):
            y[i] /= nrm
    return y


@njit(cache=True, nogil=True)
def residual(m, v, theta):
    """||M v - theta v|| / ||v||."""
    n = v.shape[0]
    r2 = 0.0
    v2 = 0.0
    for i in range(n):
        s = 0.0
        for j in range(n):
            s += m[i, j] * v[j]
        s -= theta * v[i]
        r2 += s * s
        v2 += v[i] * v[i]
    return math.sqrt(r2 / v2)


@njit(cache=True, nogil=True)
def symmetric_eigenvalues(m, max_sweeps, check):
    """Full spectrum of symmetric ``m`` plus the max residual of checked pairs.

    Checked pairs: smallest, second-smallest and largest eigenvalue.
    Returns (values, max_residual, status).
    """
    n = m.shape[0]
    house = m.copy()
    d, e, betas = tridiagonalize(house)
    values, status = tql_values(d, e, max_sweeps)
    if status != 0:
        return values, np.inf, status
    worst = 0.0
    if check:
        scale = 0.0
        for i in range(n):
            row = 0.0
            for j in range(n):
                row += abs(m[i, j])
            scale = max(scale, row)
        picks = np.array([0, 1, n - 1])
        for idx in range(3):
            k = picks[idx]
            if k >= n:
                continue
            y = tridiagonal_eigvec(d, e, values[k], scale)
            v = apply_q(house, betas, y)
            r = residual(m, v, values[k]) / max(1.0, scale)
            if r > worst:
                worst = r
    return values, worst, 0
