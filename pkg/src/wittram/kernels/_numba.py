"""numba kernels, same contracts as ``_numpy``."""

from __future__ import annotations

import numpy as np
from numba import njit

# dense accumulator is used while the exponent span stays below this many rows
_DENSE_SPAN = 1 << 22


@njit(cache=True)
def _mul_coeff(a, b, out, modulus, pk):
    f = a.shape[0]
    for i in range(2 * f - 1):
        out[i] = 0
    for i in range(f):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(f):
            out[i + j] = (out[i + j] + ai * b[j]) % pk
    for d in range(2 * f - 2, f - 1, -1):
        lead = out[d]
        if lead == 0:
            continue
        out[d] = 0
        for s in range(f):
            out[d - f + s] = (out[d - f + s] - lead * modulus[s]) % pk


@njit(cache=True)
def _emit_rows(acc, lo):
    n = 0
    for r in range(acc.shape[0]):
        for s in range(acc.shape[1]):
            if acc[r, s] != 0:
                n += 1
                break
    exps = np.empty(n, dtype=np.int64)
    coeffs = np.empty((n, acc.shape[1]), dtype=np.int64)
    k = 0
    for r in range(acc.shape[0]):
        nz = False
        for s in range(acc.shape[1]):
            if acc[r, s] != 0:
                nz = True
                break
        if nz:
            exps[k] = lo + r
            for s in range(acc.shape[1]):
                coeffs[k, s] = acc[r, s]
            k += 1
    return exps, coeffs


@njit(cache=True)
def sparse_mul(e1, c1, e2, c2, modulus, pk):
    f = modulus.shape[0] - 1
    k1 = e1.shape[0]
    k2 = e2.shape[0]
    if k1 == 0 or k2 == 0:
        return np.zeros(0, dtype=np.int64), np.zeros((0, f), dtype=np.int64)
    lo = e1[0] + e2[0]
    span = e1[k1 - 1] + e2[k2 - 1] - lo + 1
    tmp = np.empty(2 * f - 1, dtype=np.int64)
    if span * (2 * f - 1) <= _DENSE_SPAN:
        # accumulate raw products (each < pk^2, far from int64 overflow for any
        # realistic term count) and reduce modulo pk and the modulus once per row
        acc = np.zeros((span, 2 * f - 1), dtype=np.int64)
        for i in range(k1):
            for j in range(k2):
                r = e1[i] + e2[j] - lo
                for a in range(f):
                    ca = c1[i, a]
                    if ca == 0:
                        continue
                    for b in range(f):
                        acc[r, a + b] += ca * c2[j, b]
        out = np.zeros((span, f), dtype=np.int64)
        for r in range(span):
            for d in range(2 * f - 1):
                tmp[d] = acc[r, d] % pk
            for d in range(2 * f - 2, f - 1, -1):
                lead = tmp[d]
                if lead == 0:
                    continue
                for t in range(f):
                    tmp[d - f + t] = (tmp[d - f + t] - lead * modulus[t]) % pk
            for t in range(f):
                out[r, t] = tmp[t]
        return _emit_rows(out, lo)
    # very sparse and wide: sort the pairwise exponents instead
    m = k1 * k2
    pe = np.empty(m, dtype=np.int64)
    pc = np.empty((m, f), dtype=np.int64)
    t = 0
    for i in range(k1):
        for j in range(k2):
            _mul_coeff(c1[i], c2[j], tmp, modulus, pk)
            pe[t] = e1[i] + e2[j]
            for s in range(f):
                pc[t, s] = tmp[s]
            t += 1
    order = np.argsort(pe, kind="mergesort")
    out_e = np.empty(m, dtype=np.int64)
    out_c = np.zeros((m, f), dtype=np.int64)
    u = -1
    last = 0
    for idx in range(m):
        o = order[idx]
        if u < 0 or pe[o] != last:
            u += 1
            last = pe[o]
            out_e[u] = last
        for s in range(f):
            out_c[u, s] = (out_c[u, s] + pc[o, s]) % pk
    keep = np.zeros(u + 1, dtype=np.bool_)
    cnt = 0
    for r in range(u + 1):
        for s in range(f):
            if out_c[r, s] != 0:
                keep[r] = True
                cnt += 1
                break
    exps = np.empty(cnt, dtype=np.int64)
    coeffs = np.empty((cnt, f), dtype=np.int64)
    k = 0
    for r in range(u + 1):
        if keep[r]:
            exps[k] = out_e[r]
            coeffs[k] = out_c[r]
            k += 1
    return exps, coeffs


@njit(cache=True)
def sparse_add(e1, c1, e2, c2, pk):
    f = c1.shape[1]
    k1 = e1.shape[0]
    k2 = e2.shape[0]
    exps = np.empty(k1 + k2, dtype=np.int64)
    coeffs = np.empty((k1 + k2, f), dtype=np.int64)
    i = 0
    j = 0
    k = 0
    while i < k1 or j < k2:
        if j >= k2 or (i < k1 and e1[i] < e2[j]):
            exps[k] = e1[i]
            coeffs[k] = c1[i]
            i += 1
            k += 1
        elif i >= k1 or e2[j] < e1[i]:
            exps[k] = e2[j]
            coeffs[k] = c2[j]
            j += 1
            k += 1
        else:
            nz = False
            for s in range(f):
                v = (c1[i, s] + c2[j, s]) % pk
                coeffs[k, s] = v
                if v != 0:
                    nz = True
            if nz:
                exps[k] = e1[i]
                k += 1
            i += 1
            j += 1
    return exps[:k].copy(), coeffs[:k].copy()
