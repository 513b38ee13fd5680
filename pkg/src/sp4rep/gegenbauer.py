"""Gegenbauer polynomials and the harmonic expansion of det(1 + z conj(z'))^-lambda.

For pure quaternions ``det(1 + z w) = 1 - 2 z.w + (z.z)(w.w)``, so

    det(1 + z conj(z'))^-lambda
        = sum_{l,k,m} a(lambda, l, k) (z.z)^k Y_{l-2k,m}(z) conj((z'.z')^k Y_{l-2k,m}(z')).

Pochhammer symbols are rising factorials, ``(x)_n = x (x+1) ... (x+n-1)``.
"""
from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from . import harmonics as hm
from .errors import InvalidLambda, TruncationNotConverged

SQRT_PI = math.sqrt(math.pi)
BASE_GUARD = 0.05


def pochhammer(x: float, n: int) -> float:
    out = 1.0
    for i in range(n):
        out *= x + i
    return out


def gegenbauer_c(l: int, lam: float, t: complex) -> complex:
    """C_l^lambda(t) by the three-term recurrence."""
    if l < 0:
        raise ValueError("degree must be non-negative")
    c0 = 1.0 + 0j
    if l == 0:
        return c0
    c1 = 2 * lam * t
    for n in range(2, l + 1):
        c0, c1 = c1, (2 * t * (n + lam - 1) * c1 - (n + 2 * lam - 2) * c0) / n
    return c1


def gegenbauer_series(lam: float, u: complex, t: complex, lmax: int) -> complex:
    return sum(u ** l * gegenbauer_c(l, lam, t) for l in range(lmax + 1))


def coeff_d(lam: float, l: int, k: int) -> float:
    """Gamma-form coefficient of C^{1/2}_{l-2k} in C^lambda_l (lambda > 1/2)."""
    if lam <= 0.5:
        raise InvalidLambda(f"Gamma form needs lambda > 1/2, got {lam}")
    return ((l - 2 * k + 0.5) * math.gamma(k + lam - 0.5) * math.gamma(lam + l - k)
            / (math.factorial(k) * math.gamma(l - k + 1.5)))


def coeff_d_prime(lam: float, l: int, k: int) -> float:
    """Pochhammer form, valid for any lambda: C^lambda_l = sqrt(pi) sum d'_k C^{1/2}_{l-2k}."""
    return ((l - 2 * k + 0.5) * pochhammer(lam - 0.5, k) * pochhammer(lam, l - k)
            / (math.factorial(k) * math.gamma(l - k + 1.5)))


def coeff_a(lam: float, l: int, k: int) -> float:
    """a(lambda, l, k) in its Gamma form (lambda > 1/2)."""
    if lam <= 0.5:
        raise InvalidLambda(f"Gamma form needs lambda > 1/2, got {lam}")
    log = ((2 * lam - 1) * math.log(2) + math.log(math.pi) + math.lgamma(k + lam - 0.5)
           + math.lgamma(lam + l - k) - math.lgamma(2 * lam - 1) - math.lgamma(k + 1)
           - math.lgamma(l - k + 1.5))
    return math.exp(log)


@lru_cache(maxsize=None)
def coeff_a_general(lam: float, l: int, k: int) -> float:
    """a(lambda, l, k) through Pochhammer symbols; defined for every lambda.

    Equal to :func:`coeff_a` for lambda > 1/2 by the duplication formula.  For
    a negative integer lambda it vanishes once (lambda)_{l-k} hits zero.
    """
    return (2 * math.pi * SQRT_PI * pochhammer(lam - 0.5, k) * pochhammer(lam, l - k)
            / (math.factorial(k) * math.gamma(l - k + 1.5)))


def duplication_prefactor(lam: float) -> float:
    """2^(2 lambda - 1) / Gamma(2 lambda - 1) rebuilt as sqrt(pi)-scaled Gamma(lambda) Gamma(lambda - 1/2)."""
    return 2 * SQRT_PI / (math.gamma(lam) * math.gamma(lam - 0.5))


def det_one_plus(z, w) -> complex:
    """det(1 + z w) for pure 3-vectors z and w."""
    z, w = hm._vec(z), hm._vec(w)
    zw = sum(a * b for a, b in zip(z, w))
    zz = sum(a * a for a in z)
    ww = sum(b * b for b in w)
    return 1 - 2 * zw + zz * ww


def level_terms(lam: float, z, zp, lmax: int) -> np.ndarray:
    """Contribution of each total degree l = 0..lmax to the expansion."""
    z, zp = hm._vec(z), hm._vec(zp)
    zz = sum(a * a for a in z)
    zpzp = np.conj(sum(a * a for a in zp))
    Yz = hm.harmonics_upto(lmax, z)
    Yp = [np.conj(v) for v in hm.harmonics_upto(lmax, zp)]
    out = np.zeros(lmax + 1, dtype=complex)
    for l in range(lmax + 1):
        for k in range(l // 2 + 1):
            c = coeff_a_general(float(lam), l, k)
            if c == 0.0:
                continue
            L = l - 2 * k
            out[l] += c * (zz * zpzp) ** k * np.dot(Yz[L], Yp[L])
    return out


def tail_estimate(levels) -> float:
    mags = [abs(x) for x in levels[-3:]]
    if len(mags) < 3:
        return mags[-1] if mags else 0.0
    if mags[-1] == 0.0 and mags[-2] == 0.0:
        return 0.0
    ratios = [mags[i + 1] / mags[i] for i in range(2) if mags[i] > 0]
    q = max(ratios) if ratios else 1.0
    if q >= 1.0:
        return math.inf
    return mags[-1] * q / (1 - q)


def det_power_expansion(lam: float, z, zp, lmax: int, tol: float | None = None):
    """Truncated expansion of det(1 + z conj(z'))^-lambda.

    Returns ``(value, tail_estimate)``.  Raises TruncationNotConverged when a
    tolerance is given and the estimated tail exceeds it.
    """
    base = det_one_plus(z, np.conj(hm._vec(zp)))
    if abs(base) < BASE_GUARD:
        raise ValueError(f"|det(1 + z conj z')| = {abs(base):.3g} is below the guard {BASE_GUARD}")
    levels = level_terms(lam, z, zp, lmax)
    value = complex(levels.sum())
    finite = float(lam) <= 0 and float(lam).is_integer()
    tail = 0.0 if finite and lmax >= 2 * abs(int(lam)) else tail_estimate(levels)
    if tol is not None and tail > tol:
        raise TruncationNotConverged(f"tail estimate {tail:.3g} exceeds {tol:g}", value, tail)
    return value, tail


def closed_form(lam: float, z, zp) -> complex:
    """det(1 + z conj(z'))^-lambda on the principal branch."""
    base = det_one_plus(z, np.conj(hm._vec(zp)))
    return cmath.exp(-lam * cmath.log(base))


def addition_theorem_sides(l: int, z, zp):
    """Both sides of the Legendre-type addition theorem at degree l.

    Left: [(z.z) conj(z'.z')]^{l/2} C^{1/2}_l(t) with the principal root of the
    product; right: 4 pi / (2l+1) sum_m Y_lm(z) conj(Y_lm(z')).
    """
    z, zp = hm._vec(z), hm._vec(zp)
    zz = sum(a * a for a in z)
    zpzp = np.conj(sum(a * a for a in zp))
    root = cmath.sqrt(zz * zpzp)
    zw = sum(a * np.conj(b) for a, b in zip(z, zp))
    left = root ** l * gegenbauer_c(l, 0.5, zw / root)
    Y1 = hm.harmonics_upto(l, z)[l]
    Y2 = hm.harmonics_upto(l, zp)[l]
    right = 4 * math.pi / (2 * l + 1) * np.dot(Y1, np.conj(Y2))
    return complex(left), complex(right)
