"""Truncated polynomials in z = (z1, z2, z3) expanded on (z.z)^k Y_{Lm}(z).

A polynomial of degree <= D is a coefficient vector over the flat index of
the triples (k, L, m) with 2k + L <= D.  Leading axes are free, so an array
of shape (..., size) holds a whole matrix or batch of polynomials.  Products
use the linearization of Y_{L1 m1} Y_{L2 m2} through 3-j symbols and are
truncated at the layout degree, which is exact degree by degree.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import harmonics as hm


class Layout:
    def __init__(self, degree: int):
        self.degree = degree
        self.pieces = []
        self.offset = {}
        pos = 0
        for d in range(degree + 1):
            for k in range(d // 2 + 1):
                L = d - 2 * k
                self.pieces.append((k, L))
                self.offset[(k, L)] = pos
                pos += 2 * L + 1
        self.size = pos
        self.k = np.empty(pos, dtype=int)
        self.L = np.empty(pos, dtype=int)
        self.m = np.empty(pos, dtype=int)
        for (k, L), off in self.offset.items():
            self.k[off:off + 2 * L + 1] = k
            self.L[off:off + 2 * L + 1] = L
            self.m[off:off + 2 * L + 1] = np.arange(-L, L + 1)
        self.deg = 2 * self.k + self.L

    def index(self, k: int, L: int, m: int) -> int:
        return self.offset[(k, L)] + m + L

    def piece(self, k: int, L: int) -> slice:
        off = self.offset[(k, L)]
        return slice(off, off + 2 * L + 1)

    def basis_values(self, z) -> np.ndarray:
        """(z.z)^k Y_{Lm}(z) for every flat index."""
        z = hm._vec(z)
        zz = sum(c * c for c in z)
        Y = hm.harmonics_upto(self.degree, z)
        out = np.empty(self.size, dtype=complex)
        for (k, L), off in self.offset.items():
            out[off:off + 2 * L + 1] = zz ** k * Y[L]
        return out


@lru_cache(maxsize=None)
def layout(degree: int) -> Layout:
    return Layout(degree)


@lru_cache(maxsize=None)
def _link(L1: int, L2: int):
    """Dense map from the outer product over (m1, m2) to the stacked (L3, m3) output.

    Returns ``(matrix, [(L3, start), ...])``; output degree drop is
    (L1 + L2 - L3) / 2 powers of z.z.
    """
    L3s = list(range(abs(L1 - L2), L1 + L2 + 1, 2))
    starts = []
    pos = 0
    for L3 in L3s:
        starts.append((L3, pos))
        pos += 2 * L3 + 1
    M = np.zeros(((2 * L1 + 1) * (2 * L2 + 1), pos))
    for i1, m1 in enumerate(range(-L1, L1 + 1)):
        for i2, m2 in enumerate(range(-L2, L2 + 1)):
            row = i1 * (2 * L2 + 1) + i2
            for L3, start in starts:
                m3 = m1 + m2
                if abs(m3) > L3:
                    continue
                M[row, start + m3 + L3] = hm.linearization_coeff(L1, m1, L2, m2, L3)
    return M, tuple(starts)


def multiply(x: np.ndarray, y: np.ndarray, degree: int) -> np.ndarray:
    """Product of polynomial arrays (broadcast over leading axes), truncated."""
    lay = layout(degree)
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    shape = np.broadcast_shapes(x.shape[:-1], y.shape[:-1])
    x = np.broadcast_to(x, shape + (lay.size,)).reshape(-1, lay.size)
    y = np.broadcast_to(y, shape + (lay.size,)).reshape(-1, lay.size)
    out = np.zeros_like(x)
    nz_x = [p for p in lay.pieces if np.any(x[:, lay.piece(*p)])]
    nz_y = [p for p in lay.pieces if np.any(y[:, lay.piece(*p)])]
    P = x.shape[0]
    for k1, L1 in nz_x:
        xs = x[:, lay.piece(k1, L1)]
        for k2, L2 in nz_y:
            if 2 * (k1 + k2) + L1 + L2 > degree:
                continue
            ys = y[:, lay.piece(k2, L2)]
            M, starts = _link(L1, L2)
            res = (xs[:, :, None] * ys[:, None, :]).reshape(P, -1) @ M
            for L3, start in starts:
                k3 = k1 + k2 + (L1 + L2 - L3) // 2
                out[:, lay.piece(k3, L3)] += res[:, start:start + 2 * L3 + 1]
    return out.reshape(shape + (lay.size,))


def matmul(A: np.ndarray, B: np.ndarray, degree: int) -> np.ndarray:
    """Matrix product of polynomial-valued matrices (r, n, size) @ (n, c, size)."""
    prod = multiply(A[:, :, None, :], B[None, :, :, :], degree)
    return prod.sum(axis=1)


def regrade(x: np.ndarray, degree: int) -> np.ndarray:
    """Re-express coefficients in the layout of another degree (pad or truncate)."""
    src = layout(_degree_of(x.shape[-1]))
    dst = layout(degree)
    out = np.zeros(x.shape[:-1] + (dst.size,), dtype=complex)
    for k, L in src.pieces:
        if 2 * k + L <= degree:
            out[..., dst.piece(k, L)] = x[..., src.piece(k, L)]
    return out


@lru_cache(maxsize=None)
def _size_to_degree():
    return {layout(d).size: d for d in range(0, 60)}


def _degree_of(size: int) -> int:
    return _size_to_degree()[size]


def evaluate(x: np.ndarray, z) -> np.ndarray:
    lay = layout(_degree_of(x.shape[-1]))
    return x @ lay.basis_values(z)


@lru_cache(maxsize=None)
def pure_d_matrix(j2: int, degree: int) -> np.ndarray:
    """D^{j}((0, z)) as a polynomial matrix, rows/cols m = j..-j (j = j2 / 2)."""
    lay = layout(degree)
    n = j2 + 1
    out = np.zeros((n, n, lay.size), dtype=complex)
    if j2 > degree:
        return out
    for i1 in range(n):
        for i2 in range(n):
            a, b = j2 - 2 * i1, j2 - 2 * i2
            for lp, mp, c in hm.d_from_y_weights(j2, a, b):
                out[i1, i2, lay.index((j2 - lp) // 2, lp, mp)] += c
    out.setflags(write=False)
    return out
