"""numba-compiled kernels; same signatures and layouts as ``_numpy``."""

import numpy as np
from numba import njit

_ONE = np.uint64(1)
_ALL = np.uint64(0xFFFFFFFFFFFFFFFF)


@njit(cache=True)
def ring_mul_positions(b, pos, n):
    nw = b.shape[0]
    acc = np.zeros(2 * nw + 2, dtype=np.uint64)
    for t in range(pos.shape[0]):
        p = pos[t]
        q = p >> 6
        r = np.uint64(p & 63)
        if r == 0:
            for j in range(nw):
                acc[q + j] ^= b[j]
        else:
            rr = np.uint64(64) - r
            for j in range(nw):
                acc[q + j] ^= b[j] << r
                acc[q + j + 1] ^= b[j] >> rr
    qn = n >> 6
    rn = np.uint64(n & 63)
    out = np.empty(nw, dtype=np.uint64)
    for j in range(nw):
        if rn == 0:
            hi = acc[qn + j]
        else:
            hi = (acc[qn + j] >> rn) | (acc[qn + j + 1] << (np.uint64(64) - rn))
        out[j] = acc[j] ^ hi
    tail = n - 64 * (nw - 1)
    if tail < 64:
        out[nw - 1] &= (_ONE << np.uint64(tail)) - _ONE
    return out


@njit(cache=True, inline="always")
def _masks(m):
    if m < 64:
        return (_ONE << np.uint64(m)) - _ONE, np.uint64(0)
    if m == 64:
        return _ALL, np.uint64(0)
    return _ALL, (_ONE << np.uint64(m - 64)) - _ONE


@njit(cache=True, inline="always")
def _mul1(alo, ahi, blo, bhi, m, plo, phi, mlo, mhi):
    rlo = np.uint64(0)
    rhi = np.uint64(0)
    topk = m - 1
    for i in range(m - 1, -1, -1):
        if topk < 64:
            top = (rlo >> np.uint64(topk)) & _ONE
        else:
            top = (rhi >> np.uint64(topk - 64)) & _ONE
        rhi = ((rhi << _ONE) | (rlo >> np.uint64(63))) & mhi
        rlo = (rlo << _ONE) & mlo
        if top:
            rlo ^= plo
            rhi ^= phi
        if i < 64:
            bit = (alo >> np.uint64(i)) & _ONE
        else:
            bit = (ahi >> np.uint64(i - 64)) & _ONE
        if bit:
            rlo ^= blo
            rhi ^= bhi
    return rlo, rhi


@njit(cache=True)
def gf_mul(a, b, m, poly):
    mlo, mhi = _masks(m)
    out = np.empty_like(a)
    for i in range(a.shape[0]):
        lo, hi = _mul1(a[i, 0], a[i, 1], b[i, 0], b[i, 1], m,
                       poly[0], poly[1], mlo, mhi)
        out[i, 0] = lo
        out[i, 1] = hi
    return out


@njit(cache=True)
def gf_ring_mul(a, b, m, poly):
    n = a.shape[0]
    mlo, mhi = _masks(m)
    c = np.zeros((n, 2), dtype=np.uint64)
    for i in range(n):
        if a[i, 0] == 0 and a[i, 1] == 0:
            continue
        for j in range(n):
            if b[j, 0] == 0 and b[j, 1] == 0:
                continue
            lo, hi = _mul1(a[i, 0], a[i, 1], b[j, 0], b[j, 1], m,
                           poly[0], poly[1], mlo, mhi)
            k = i + j
            if k >= n:
                k -= n
            c[k, 0] ^= lo
            c[k, 1] ^= hi
    return c


@njit(cache=True)
def _inv1(xlo, xhi, m, plo, phi, mlo, mhi):
    # x^(2^m - 2) = prod_{k=1}^{m-1} x^(2^k)
    rlo = np.uint64(1)
    rhi = np.uint64(0)
    slo, shi = _mul1(xlo, xhi, xlo, xhi, m, plo, phi, mlo, mhi)
    for _ in range(m - 1):
        rlo, rhi = _mul1(rlo, rhi, slo, shi, m, plo, phi, mlo, mhi)
        slo, shi = _mul1(slo, shi, slo, shi, m, plo, phi, mlo, mhi)
    return rlo, rhi


@njit(cache=True)
def gf_rref(mat, m, poly):
    a = mat.copy()
    rows = a.shape[0]
    cols = a.shape[1]
    mlo, mhi = _masks(m)
    plo = poly[0]
    phi = poly[1]
    pivots = np.full(rows, -1, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if a[i, c, 0] != 0 or a[i, c, 1] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(cols):
                for h in range(2):
                    tmp = a[r, j, h]
                    a[r, j, h] = a[p, j, h]
                    a[p, j, h] = tmp
        ilo, ihi = _inv1(a[r, c, 0], a[r, c, 1], m, plo, phi, mlo, mhi)
        for j in range(c, cols):
            lo, hi = _mul1(a[r, j, 0], a[r, j, 1], ilo, ihi, m, plo, phi, mlo, mhi)
            a[r, j, 0] = lo
            a[r, j, 1] = hi
        for i in range(rows):
            if i == r:
                continue
            flo = a[i, c, 0]
            fhi = a[i, c, 1]
            if flo == 0 and fhi == 0:
                continue
            for j in range(c, cols):
                lo, hi = _mul1(flo, fhi, a[r, j, 0], a[r, j, 1], m,
                               plo, phi, mlo, mhi)
                a[i, j, 0] ^= lo
                a[i, j, 1] ^= hi
        pivots[r] = c
        r += 1
    return a, pivots


@njit(cache=True)
def bch_syndromes(pos, exp, order, count):
    out = np.zeros(count, dtype=np.int64)
    for j in range(1, count + 1):
        s = 0
        for t in range(pos.shape[0]):
            s ^= exp[(j * pos[t]) % order]
        out[j - 1] = s
    return out


@njit(cache=True)
def chien_search(lam_log, log_zero, exp, order, n):
    hits = np.empty(n, dtype=np.int64)
    cnt = 0
    for i in range(n):
        acc = 0
        for j in range(lam_log.shape[0]):
            lg = lam_log[j]
            if lg == log_zero:
                continue
            acc ^= exp[(lg - i * j) % order]
        if acc == 0:
            hits[cnt] = i
            cnt += 1
    return hits[:cnt]
