"""Pure-numpy reference kernels.

Every function here has a twin with the same signature in ``_numba``.  The
numpy versions vectorise over the outer data dimension and loop in Python
over the inner one, so they are slower but need nothing beyond numpy.

Conventions shared with ``_numba``:

* binary ring elements are ``uint64`` word arrays, coefficient ``i`` at bit
  ``i % 64`` of word ``i // 64``;
* elements of GF(2^m), m <= 127, are two ``uint64`` limbs ``(lo, hi)`` stored
  in the last axis; ``poly`` is the reduction polynomial *without* its
  leading ``X^m`` term, in the same two-limb layout.
"""

import numpy as np

_U1 = np.uint64(1)
_U63 = np.uint64(63)


def _fold(acc, n, nw):
    # acc holds a linear product of degree < 2n; reduce mod X^n - 1
    qn, rn = divmod(n, 64)
    hi = acc[qn:qn + nw + 1].copy()
    if rn:
        shifted = hi[:-1] >> np.uint64(rn)
        shifted |= hi[1:] << np.uint64(64 - rn)
    else:
        shifted = hi[:-1]
    out = acc[:nw] ^ shifted[:nw]
    tail = n - 64 * (nw - 1)
    if tail < 64:
        out[-1] &= np.uint64((1 << tail) - 1)
    return out


def ring_mul_positions(b, pos, n):
    """Cyclic product of the word vector ``b`` with the sparse vector whose
    set coefficients are ``pos``."""
    nw = b.shape[0]
    acc = np.zeros(2 * nw + 2, dtype=np.uint64)
    for p in pos:
        q, r = divmod(int(p), 64)
        if r == 0:
            acc[q:q + nw] ^= b
        else:
            acc[q:q + nw] ^= b << np.uint64(r)
            acc[q + 1:q + nw + 1] ^= b >> np.uint64(64 - r)
    return _fold(acc, n, nw)


def _limb_masks(m):
    if m <= 64:
        lo = np.uint64((1 << m) - 1) if m < 64 else np.uint64(0xFFFFFFFFFFFFFFFF)
        return lo, np.uint64(0)
    return np.uint64(0xFFFFFFFFFFFFFFFF), np.uint64((1 << (m - 64)) - 1)


def _bit(x, k):
    # bit k of two-limb array x, as a boolean array
    if k < 64:
        return ((x[..., 0] >> np.uint64(k)) & _U1).astype(bool)
    return ((x[..., 1] >> np.uint64(k - 64)) & _U1).astype(bool)


def _mulx(r, m, poly, mlo, mhi):
    top = _bit(r, m - 1)
    out = np.empty_like(r)
    out[..., 1] = ((r[..., 1] << _U1) | (r[..., 0] >> _U63)) & mhi
    out[..., 0] = (r[..., 0] << _U1) & mlo
    out[top] ^= poly
    return out


def gf_mul(a, b, m, poly):
    """Element-wise product in GF(2^m); ``a`` and ``b`` broadcast."""
    a, b = np.broadcast_arrays(a, b)
    mlo, mhi = _limb_masks(m)
    r = np.zeros(a.shape, dtype=np.uint64)
    for i in range(m - 1, -1, -1):
        r = _mulx(r, m, poly, mlo, mhi)
        sel = _bit(a, i)
        r[sel] ^= b[sel]
    return r


def gf_ring_mul(a, b, m, poly):
    """Cyclic convolution of two GF(2^m) vectors of equal length."""
    n = a.shape[0]
    mlo, mhi = _limb_masks(m)
    # shifted[j] = X^j * b, so a_i * b = XOR of shifted[j] over set bits j of a_i
    shifted = np.empty((m, n, 2), dtype=np.uint64)
    shifted[0] = b
    for j in range(1, m):
        shifted[j] = _mulx(shifted[j - 1], m, poly, mlo, mhi)
    bits = np.empty((n, m), dtype=bool)
    for j in range(m):
        bits[:, j] = _bit(a, j)
    c = np.zeros((n, 2), dtype=np.uint64)
    for i in range(n):
        sel = bits[i]
        if not sel.any():
            continue
        term = np.bitwise_xor.reduce(shifted[sel], axis=0)
        c ^= np.roll(term, i, axis=0)
    return c


def _to_int(x):
    return int(x[0]) | (int(x[1]) << 64)


def _from_int(v):
    return np.array([v & 0xFFFFFFFFFFFFFFFF, v >> 64], dtype=np.uint64)


def _inv_scalar(x, m, poly):
    # x^(2^m - 2) on Python ints; array calls are too slow for one element
    f = (1 << m) | _to_int(poly)

    def mul(a, b):
        r = 0
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            if a >> m:
                a ^= f
            b >>= 1
        return r

    base, result, e = _to_int(x), 1, (1 << m) - 2
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return _from_int(result)


def gf_rref(mat, m, poly):
    """Reduced row echelon form over GF(2^m).

    Returns ``(rref, pivots)`` with ``pivots[r]`` the pivot column of row
    ``r`` or -1 for zero rows.
    """
    a = mat.copy()
    rows, cols = a.shape[0], a.shape[1]
    pivots = np.full(rows, -1, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero((a[r:, c, 0] | a[r:, c, 1]) != 0)
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        inv = _inv_scalar(a[r, c], m, poly)
        a[r] = gf_mul(a[r], inv, m, poly)
        factors = a[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero((factors[:, 0] | factors[:, 1]) != 0)
        if hit.size:
            a[hit] ^= gf_mul(factors[hit, None, :], a[r][None, :, :], m, poly)
        pivots[r] = c
        r += 1
    return a, pivots


def bch_syndromes(pos, exp, order, count):
    """S_j = sum over error-free positions p of alpha^(j p), j = 1..count."""
    out = np.zeros(count, dtype=np.int64)
    if pos.size == 0:
        return out
    j = np.arange(1, count + 1, dtype=np.int64)
    idx = np.outer(j, pos) % order
    return np.bitwise_xor.reduce(exp[idx], axis=1)


def chien_search(lam_log, log_zero, exp, order, n):
    """Positions i in [0, n) with Lambda(alpha^-i) == 0.

    ``lam_log[j]`` is the discrete log of coefficient j, or ``log_zero`` for
    a zero coefficient.
    """
    i = np.arange(n, dtype=np.int64)
    acc = np.zeros(n, dtype=np.int64)
    for j, lg in enumerate(lam_log):
        if lg == log_zero:
            continue
        acc ^= exp[(lg - i * j) % order]
    return np.flatnonzero(acc == 0)
