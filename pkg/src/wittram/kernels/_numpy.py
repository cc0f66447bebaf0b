"""Pure-numpy kernels for sparse Laurent polynomials over Z/pk[z]/(modulus).

A polynomial is a pair ``(exps, coeffs)``: ``exps`` is a sorted int64 vector
of distinct exponents, ``coeffs`` an int64 array of shape ``(len(exps), f)``
whose rows are residues mod ``pk`` in the power basis 1, z, ..., z^(f-1).
No row is identically zero.  ``modulus`` has length f+1 and is monic.
"""

from __future__ import annotations

import numpy as np


def _empty(f: int) -> tuple[np.ndarray, np.ndarray]:
    return np.zeros(0, dtype=np.int64), np.zeros((0, f), dtype=np.int64)


def _reduce_rows(prod: np.ndarray, modulus: np.ndarray, pk: int) -> np.ndarray:
    """Reduce rows of degree < 2f-1 modulo the monic ``modulus``."""
    f = modulus.shape[0] - 1
    prod = prod % pk
    for d in range(prod.shape[-1] - 1, f - 1, -1):
        lead = prod[..., d].copy()
        if not lead.any():
            continue
        prod[..., d] = 0
        # z^f = -(modulus[0] + ... + modulus[f-1] z^(f-1))
        prod[..., d - f:d] = (prod[..., d - f:d] - lead[..., None] * modulus[None, :f]) % pk
    return prod[..., :f]


def _compress(exps: np.ndarray, coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    keep = coeffs.any(axis=1)
    return np.ascontiguousarray(exps[keep]), np.ascontiguousarray(coeffs[keep])


def sparse_mul(e1, c1, e2, c2, modulus, pk):
    f = modulus.shape[0] - 1
    if e1.shape[0] == 0 or e2.shape[0] == 0:
        return _empty(f)
    exps = (e1[:, None] + e2[None, :]).ravel()
    prod = np.zeros((e1.shape[0], e2.shape[0], 2 * f - 1), dtype=np.int64)
    for a in range(f):
        col = c1[:, a]
        if not col.any():
            continue
        prod[:, :, a:a + f] += (col[:, None, None] * c2[None, :, :]) % pk
    prod = _reduce_rows(prod.reshape(-1, 2 * f - 1), modulus, pk)
    uniq, inv = np.unique(exps, return_inverse=True)
    acc = np.zeros((uniq.shape[0], f), dtype=np.int64)
    np.add.at(acc, inv.ravel(), prod)
    return _compress(uniq, acc % pk)


def sparse_add(e1, c1, e2, c2, pk):
    f = c1.shape[1]
    if e1.shape[0] == 0:
        return e2.copy(), c2.copy()
    if e2.shape[0] == 0:
        return e1.copy(), c1.copy()
    exps = np.concatenate([e1, e2])
    uniq, inv = np.unique(exps, return_inverse=True)
    acc = np.zeros((uniq.shape[0], f), dtype=np.int64)
    np.add.at(acc, inv.ravel(), np.concatenate([c1, c2]))
    return _compress(uniq, acc % pk)
