"""Fock-Bargmann basis, reproducing kernel and Monte Carlo inner products.

Indices follow the level structure: ``ScalarIndex(l, k, m)`` with
0 <= k <= l // 2 and |m| <= l - 2k, and ``SpinIndex(l, k, J_x2, M_x2)``
with |l - 2k - s| <= J <= l - 2k + s.  Half-integers are stored doubled.
Enumerations are lexicographic in (l, k, J, M) (or (l, k, m)), l outermost.

Spin vectors are laid out like the D-matrices: component ``s - rho`` holds
the e_{s rho} coefficient.
"""
from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np

from . import cquat as cq
from . import gegenbauer as gg
from . import harmonics as hm
from . import wigner as wg
from .cquat import CQuat
from .errors import IndexOutOfRange, InsufficientSamples, NotInDomain, OutOfRegime


class RepLabel(NamedTuple):
    varsigma: float
    s_x2: int = 0

    @property
    def s(self) -> float:
        return self.s_x2 / 2


class ScalarIndex(NamedTuple):
    l: int
    k: int
    m: int


class SpinIndex(NamedTuple):
    l: int
    k: int
    J_x2: int
    M_x2: int


def check_rep(rep: RepLabel) -> RepLabel:
    if rep.s_x2 < 0:
        raise OutOfRegime("spin must be non-negative")
    if rep.varsigma <= rep.s + 2:
        raise OutOfRegime(f"need varsigma > s + 2, got varsigma={rep.varsigma}, s={rep.s}")
    return rep


def check_scalar_index(idx: ScalarIndex) -> ScalarIndex:
    l, k, m = idx
    if l < 0 or not 0 <= k <= l // 2 or abs(m) > l - 2 * k:
        raise IndexOutOfRange(
            f"index (l, k, m) = {tuple(idx)} violates 0 <= k <= l/2, |m| <= l - 2k")
    return idx


def check_spin_index(s_x2: int, idx: SpinIndex) -> SpinIndex:
    l, k, J2, M2 = idx
    if l < 0 or not 0 <= k <= l // 2:
        raise IndexOutOfRange(f"index {tuple(idx)} violates 0 <= k <= l/2")
    L2 = 2 * (l - 2 * k)
    if not abs(L2 - s_x2) <= J2 <= L2 + s_x2 or (J2 - L2 - s_x2) % 2:
        raise IndexOutOfRange(f"J = {J2}/2 is outside |l - 2k - s| .. l - 2k + s")
    if abs(M2) > J2 or (J2 - M2) % 2:
        raise IndexOutOfRange(f"M = {M2}/2 is not a projection of J = {J2}/2")
    return idx


def scalar_level(l: int) -> list:
    return [ScalarIndex(l, k, m) for k in range(l // 2 + 1)
            for m in range(-(l - 2 * k), l - 2 * k + 1)]


def scalar_indices(lmax: int) -> list:
    return [idx for l in range(lmax + 1) for idx in scalar_level(l)]


def spin_level(s_x2: int, l: int) -> list:
    out = []
    for k in range(l // 2 + 1):
        L2 = 2 * (l - 2 * k)
        for J2 in range(abs(L2 - s_x2), L2 + s_x2 + 1, 2):
            for M2 in range(-J2, J2 + 1, 2):
                out.append(SpinIndex(l, k, J2, M2))
    return out


def spin_indices(s_x2: int, lmax: int) -> list:
    return [idx for l in range(lmax + 1) for idx in spin_level(s_x2, l)]


def level_dimension(s_x2: int, l: int) -> int:
    """Number of basis functions of degree l, counted from the index ranges."""
    return sum((s_x2 + 1) * (2 * (l - 2 * k) + 1) for k in range(l // 2 + 1))


# ---------------------------------------------------------------- constants

def norm_const(rep: RepLabel) -> float:
    check_rep(rep)
    c, s = rep.varsigma, rep.s
    return 8 / math.pi ** 3 * (c + s - 1.5) * (c - s - 1) * (c - s - 2)


def basis_vector_e(s, rho) -> np.ndarray:
    s2, r2 = wg.two(s), wg.two(rho)
    if abs(r2) > s2 or (s2 - r2) % 2:
        raise IndexOutOfRange(f"rho = {rho} is not a projection of s = {s}")
    e = np.zeros(s2 + 1, dtype=complex)
    e[(s2 - r2) // 2] = 1.0
    return e


# ---------------------------------------------------------------- domain

def in_domain_vec(z) -> np.ndarray:
    """Vectorized domain test for an array of shape (..., 3)."""
    z = np.asarray(z, dtype=complex)
    n2 = np.sum(np.abs(z) ** 2, axis=-1)
    zz = np.sum(z * z, axis=-1)
    return (n2 < 1.0) & (1 - 2 * n2 + np.abs(zz) ** 2 > 0)


def _domain_point(z):
    if isinstance(z, CQuat):
        if not cq.is_pure(z):
            raise NotInDomain("domain points are pure quaternions")
        v = z.v
    else:
        v = tuple(complex(c) for c in z)
    if not in_domain_vec(np.array(v)):
        raise NotInDomain(f"{v} is outside the domain")
    return v


def _harmonic_vector(L: int, z) -> np.ndarray:
    """Y_{L m}(z) for m = -L..L; z may carry leading array axes."""
    z1, z2, z3 = z[..., 0], z[..., 1], z[..., 2]
    out = np.empty(z.shape[:-1] + (2 * L + 1,), dtype=complex)
    for m in range(L + 1):
        out[..., L + m] = hm._y_nonneg(L, m, z1, z2, z3)
        if m:
            out[..., L - m] = (-1) ** m * hm._y_nonneg(L, m, z1, -z2, z3)
    return out


def _scalar_values(varsigma: float, idx: ScalarIndex, z: np.ndarray) -> np.ndarray:
    l, k, m = idx
    L = l - 2 * k
    zz = np.sum(z * z, axis=-1)
    z1, z2, z3 = z[..., 0], z[..., 1], z[..., 2]
    if m >= 0:
        y = hm._y_nonneg(L, m, z1, z2, z3)
    else:
        y = (-1) ** m * hm._y_nonneg(L, -m, z1, -z2, z3)
    return math.sqrt(gg.coeff_a_general(float(varsigma), l, k)) * zz ** k * y


# ---------------------------------------------------------------- basis

def scalar_basis(rep: RepLabel, idx: ScalarIndex, z) -> complex:
    check_scalar_index(idx)
    v = np.array(_domain_point(z))
    return complex(_scalar_values(rep.varsigma, idx, v))


def spin_coupling(s_x2: int, idx: SpinIndex) -> np.ndarray:
    """CG matrix C[rho position, m + L] of the coupled vector harmonic."""
    l, k, J2, M2 = idx
    L = l - 2 * k
    C = np.zeros((s_x2 + 1, 2 * L + 1))
    for i in range(s_x2 + 1):
        r2 = s_x2 - 2 * i
        m2 = M2 - r2
        if m2 % 2 or abs(m2) > 2 * L:
            continue
        C[i, m2 // 2 + L] = wg.cg_x2(s_x2, r2, 2 * L, m2, J2, M2)
    return C


def _spin_values(rep: RepLabel, idx: SpinIndex, z: np.ndarray) -> np.ndarray:
    l, k, _, _ = idx
    L = l - 2 * k
    zz = np.sum(z * z, axis=-1)
    Y = _harmonic_vector(L, z)
    pref = math.sqrt(gg.coeff_a_general(rep.varsigma + rep.s, l, k))
    return pref * (zz ** k)[..., None] * (Y @ spin_coupling(rep.s_x2, idx).T)


def spin_basis(rep: RepLabel, idx: SpinIndex, z) -> np.ndarray:
    check_spin_index(rep.s_x2, idx)
    v = np.array(_domain_point(z))
    return _spin_values(rep, idx, v)


def recouple_to_spin(s_x2: int, l: int, k: int, comps: np.ndarray) -> dict:
    """Coefficients on coupled harmonics from components c[rho position, m + L].

    Inverse of the coupling: sum_J,M coef * Y_{s,L,J,M} = sum c e_rho Y_{L,m}.
    """
    out = {}
    for idx in spin_level(s_x2, l):
        if idx.k != k:
            continue
        out[idx] = complex(np.sum(spin_coupling(s_x2, idx) * comps))
    return out


# ---------------------------------------------------------------- kernel

def d_s_matrix(s, A) -> np.ndarray:
    """D^s of the quaternion whose 2x2 image is ``A``."""
    return wg.d_matrix_of_2x2(s, A)


def kernel(rep: RepLabel, z, zp) -> np.ndarray:
    """det(1 + z conj(z'))^(-varsigma - s) D^s(1 + z conj(z'))."""
    v = _domain_point(z)
    vp = _domain_point(zp)
    q = CQuat.one() + CQuat.pure(v) * cq.conj_complex(CQuat.pure(vp))
    d = cq.det(q)
    scal = cmath.exp(-(rep.varsigma + rep.s) * cmath.log(d))
    return scal * d_s_matrix(rep.s, cq.to_matrix(q))


def kernel_expansion(rep: RepLabel, z, zp, lmax: int) -> np.ndarray:
    """sum over basis functions with l <= lmax of F(z) F(z')^dagger."""
    v = np.array(_domain_point(z))
    vp = np.array(_domain_point(zp))
    n = rep.s_x2 + 1
    out = np.zeros((n, n), dtype=complex)
    for idx in spin_indices(rep.s_x2, lmax):
        f = _spin_values(rep, idx, v)
        fp = _spin_values(rep, idx, vp)
        out += np.outer(f, fp.conj())
    return out


def kernel_expansion_check(rep: RepLabel, z, zp, lmax: int) -> float:
    """Max entrywise |kernel - truncated basis expansion|."""
    return float(np.abs(kernel(rep, z, zp) - kernel_expansion(rep, z, zp, lmax)).max())


# ---------------------------------------------------------------- Monte Carlo

MIN_SAMPLES = 10_000
BATCH = 20_000
BOX_VOLUME = 64.0


def _sample_batches(n: int, seed):
    """Yield batches of uniform draws in the box [-1, 1]^6 (as complex 3-vectors)."""
    rng = np.random.default_rng(seed)
    left = n
    while left > 0:
        b = min(BATCH, left)
        x = rng.uniform(-1.0, 1.0, size=(b, 6))
        yield x[:, :3] + 1j * x[:, 3:]
        left -= b


def _mc_integral(rep: RepLabel, integrand, n: int, seed):
    """N * integral of integrand(z) det(1 + z conj z)^(varsigma-3) over the domain.

    Returns ``(estimate, stderr, acceptance)``.  The domain volume is never
    needed: every box draw contributes, rejected draws with weight zero.
    """
    if rep.s_x2 != 0:
        raise OutOfRegime("Monte Carlo inner products are implemented for s = 0 only")
    if n < MIN_SAMPLES:
        raise InsufficientSamples(f"need at least {MIN_SAMPLES} samples, got {n}")
    N = norm_const(rep)
    s1 = 0j
    s2 = 0.0
    accepted = 0
    for z in _sample_batches(n, seed):
        mask = in_domain_vec(z)
        zin = z[mask]
        accepted += len(zin)
        n2 = np.sum(np.abs(zin) ** 2, axis=-1)
        zz = np.sum(zin * zin, axis=-1)
        w = (1 - 2 * n2 + np.abs(zz) ** 2) ** (rep.varsigma - 3)
        vals = BOX_VOLUME * N * w * integrand(zin)
        s1 += vals.sum()
        s2 += float(np.sum(np.abs(vals) ** 2))
    mean = s1 / n
    var = max(s2 / n - abs(mean) ** 2, 0.0)
    return complex(mean), math.sqrt(var / (n - 1)), accepted / n


def mc_inner_product(rep: RepLabel, idx1: ScalarIndex, idx2: ScalarIndex,
                     n_samples: int = 100_000, seed=0):
    """Monte Carlo (F_idx1, F_idx2) = N int conj(F1) F2 det(1 + z conj z)^(varsigma-3).

    Returns ``(estimate, stderr)``.
    """
    check_scalar_index(idx1)
    check_scalar_index(idx2)

    def f(z):
        return np.conj(_scalar_values(rep.varsigma, idx1, z)) * _scalar_values(rep.varsigma, idx2, z)

    est, err, _ = _mc_integral(rep, f, n_samples, seed)
    return est, err


def mc_reproducing(rep: RepLabel, idx: ScalarIndex, z0, n_samples: int = 100_000, seed=0):
    """Monte Carlo of (K(., z0), F_idx); the reproducing property says it equals F_idx(z0).

    Returns ``(estimate, stderr, exact)``.
    """
    check_scalar_index(idx)
    v0 = np.array(_domain_point(z0))

    def f(z):
        # det(1 + z0 conj w) for pure vectors
        d = 1 - 2 * (z.conj() @ v0) + np.sum(v0 * v0) * np.conj(np.sum(z * z, axis=-1))
        return d ** (-rep.varsigma) * _scalar_values(rep.varsigma, idx, z)

    est, err, _ = _mc_integral(rep, f, n_samples, seed)
    exact = complex(_scalar_values(rep.varsigma, idx, v0))
    return est, err, exact


class Truncation(NamedTuple):
    l_max: int = 14
    series_tol: float = 1e-8
    abel_t: float = 0.9
    mc_samples: int = 100_000

    def checked(self) -> "Truncation":
        if self.l_max < 0:
            raise ValueError("l_max must be non-negative")
        if not 0 < self.abel_t <= 1:
            raise ValueError("abel_t must lie in (0, 1]")
        return self


def mc_gram(rep: RepLabel, indices, n_samples: int = 100_000, seed=0):
    """Monte Carlo Gram matrix (F_i, F_j) over one shared sample.

    Returns ``(estimate, stderr)`` arrays; entry [i, j] estimates
    N int conj(F_i) F_j det(1 + z conj z)^(varsigma - 3).
    """
    if rep.s_x2 != 0:
        raise OutOfRegime("Monte Carlo inner products are implemented for s = 0 only")
    if n_samples < MIN_SAMPLES:
        raise InsufficientSamples(f"need at least {MIN_SAMPLES} samples, got {n_samples}")
    for idx in indices:
        check_scalar_index(idx)
    N = norm_const(rep)
    n = len(indices)
    s1 = np.zeros((n, n), dtype=complex)
    s2 = np.zeros((n, n))
    for z in _sample_batches(n_samples, seed):
        zin = z[in_domain_vec(z)]
        n2 = np.sum(np.abs(zin) ** 2, axis=-1)
        zz = np.sum(zin * zin, axis=-1)
        w = BOX_VOLUME * N * (1 - 2 * n2 + np.abs(zz) ** 2) ** (rep.varsigma - 3)
        F = np.array([_scalar_values(rep.varsigma, idx, zin) for idx in indices])
        vals = np.conj(F)[:, None, :] * F[None, :, :] * w
        s1 += vals.sum(axis=-1)
        s2 += np.sum(np.abs(vals) ** 2, axis=-1)
    mean = s1 / n_samples
    var = np.maximum(s2 / n_samples - np.abs(mean) ** 2, 0.0)
    return mean, np.sqrt(var / (n_samples - 1))
