"""Holomorphic solid spherical harmonics in three complex variables.

``solid_harmonic(l, m, z)`` is the Condon-Shortley solid harmonic of degree l
continued to complex arguments.  Vectors of harmonics of fixed degree are
indexed by ``m + l`` (ascending m), unlike the D-matrices of :mod:`wigner`.

Powers like ``(-1)^m1`` with half-integer ``m1`` in the Y <-> D conversions are
taken as ``exp(i pi m1)``.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import wigner as wg
from .cquat import CQuat
from .errors import IndexOutOfRange

FOUR_PI = 4 * math.pi


def _rising(x: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= x + i
    return out


def _check_lm(l: int, m: int):
    if l < 0 or abs(m) > l:
        raise IndexOutOfRange(f"invalid harmonic index (l, m) = ({l}, {m})")


@lru_cache(maxsize=None)
def solid_harmonic_terms(l: int, m: int):
    """Exact structure of Y_lm for m >= 0.

    Returns ``(sign, norm_sq, terms)`` where

        Y_lm = sign * sqrt(norm_sq / (4 pi)) * (z1 + i z2)^m
               * sum(c * z3^e3 * (z.z)^p for c, e3, p in terms).

    Only even l - k survive the Gamma ratio, which becomes a rising factorial.
    """
    if m < 0:
        raise ValueError("terms are tabulated for m >= 0")
    _check_lm(l, m)
    f = math.factorial
    norm_sq = Fraction((2 * l + 1) * f(l - m), f(l + m))
    terms = []
    for p in range(0, (l - m) // 2 + 1):
        k = l - 2 * p
        c = Fraction(2 ** l) * _rising(Fraction(1, 2) - p, l) / (f(k - m) * f(2 * p))
        if c:
            terms.append((c, k - m, p))
    sign = -1 if m % 2 else 1
    return sign, norm_sq, tuple(terms)


@lru_cache(maxsize=None)
def _float_terms(l: int, m: int):
    sign, norm_sq, terms = solid_harmonic_terms(l, m)
    pref = sign * math.sqrt(float(norm_sq) / FOUR_PI)
    return pref, [(float(c), e3, p) for c, e3, p in terms]


def _y_nonneg(l, m, z1, z2, z3):
    pref, terms = _float_terms(l, m)
    zz = z1 * z1 + z2 * z2 + z3 * z3
    s = 0j
    for c, e3, p in terms:
        s += c * z3 ** e3 * zz ** p
    return pref * (z1 + 1j * z2) ** m * s


def _vec(z):
    if isinstance(z, CQuat):
        return z.v
    return tuple(complex(c) for c in z)


def solid_harmonic(l: int, m: int, z) -> complex:
    """Y_lm at the pure quaternion (or complex 3-vector) ``z``."""
    _check_lm(l, m)
    z1, z2, z3 = _vec(z)
    if m >= 0:
        return _y_nonneg(l, m, z1, z2, z3)
    # Y_{l,-|m|}(z1, z2, z3) = (-1)^m Y_{l,|m|}(z1, -z2, z3)
    return (-1) ** m * _y_nonneg(l, -m, z1, -z2, z3)


def harmonics_upto(lmax: int, z) -> list:
    """[Y_l(z) as a vector indexed by m + l for l = 0..lmax]."""
    z1, z2, z3 = _vec(z)
    out = []
    for l in range(lmax + 1):
        v = np.empty(2 * l + 1, dtype=complex)
        for m in range(0, l + 1):
            v[l + m] = _y_nonneg(l, m, z1, z2, z3)
            if m:
                v[l - m] = (-1) ** m * _y_nonneg(l, m, z1, -z2, z3)
        out.append(v)
    return out


# ---------------------------------------------------------------- product rule

@lru_cache(maxsize=None)
def linearization_coeff(l1: int, m1: int, l2: int, m2: int, l3: int) -> float:
    """Coefficient of (z.z)^((l1+l2-l3)/2) Y_{l3, m1+m2} in Y_{l1 m1} Y_{l2 m2}."""
    if (l1 + l2 - l3) % 2 or l3 < abs(l1 - l2) or l3 > l1 + l2:
        return 0.0
    m3 = m1 + m2
    if abs(m3) > l3:
        return 0.0
    w = wg.three_j_x2(2 * l1, 2 * l2, 2 * l3, 2 * m1, 2 * m2, -2 * m3)
    if w == 0.0:
        return 0.0
    w0 = wg.three_j_x2(2 * l1, 2 * l2, 2 * l3, 0, 0, 0)
    pref = math.sqrt((2 * l1 + 1) * (2 * l2 + 1) * (2 * l3 + 1) / FOUR_PI)
    return (-1) ** (m3 % 2) * pref * w * w0


def product_expand(l1: int, m1: int, l2: int, m2: int, z) -> complex:
    """Linearized form of Y_{l1 m1}(z) Y_{l2 m2}(z) as a sum over l3."""
    _check_lm(l1, m1)
    _check_lm(l2, m2)
    z1, z2, z3 = _vec(z)
    zz = z1 * z1 + z2 * z2 + z3 * z3
    m3 = m1 + m2
    total = 0j
    for l3 in range(abs(l1 - l2), l1 + l2 + 1):
        c = linearization_coeff(l1, m1, l2, m2, l3)
        if c:
            total += c * zz ** ((l1 + l2 - l3) // 2) * solid_harmonic(l3, m3, (z1, z2, z3))
    return total


# ---------------------------------------------------------------- Y <-> D

def _phase(mx2: int) -> complex:
    """(-1)^m for m = mx2 / 2, read as exp(i pi m)."""
    if mx2 % 2 == 0:
        return -1.0 if (mx2 // 2) % 2 else 1.0
    return cmath.exp(1j * math.pi * mx2 / 2)


@lru_cache(maxsize=None)
def y_from_d_weights(l: int, m: int):
    """Weights A[(m1, m2)] with Y_lm = sum A * D^{l/2}_{m1 m2}, m2 - m1 = m.

    Keys are doubled integers.  Any scalar part of the quaternion argument
    drops out of the sum.  The weights are

        A = 2^-l sqrt((2l+1)/(4 pi)) (-1)^m1 sigma^{l/2}_{m1,m2} / sigma^l_m,

    which is what makes the sum reproduce Y_lm exactly (a fit of the
    anti-diagonal weights against Y_lm at random points recovers them).
    """
    _check_lm(l, m)
    j2 = l
    pref = 2.0 ** (-l) * math.sqrt((2 * l + 1) / FOUR_PI) / wg.sigma(l, m)
    out = {}
    for a in range(-j2, j2 + 1, 2):
        b = a + 2 * m
        if abs(b) > j2:
            continue
        out[(a, b)] = pref * _phase(a) * wg._sig(j2, a) * wg._sig(j2, b)
    return out


def y_from_d(l: int, m: int, z: CQuat) -> complex:
    D = wg.wigner_d_matrix(Fraction(l, 2), z)
    return sum(w * D[(l - a) // 2, (l - b) // 2] for (a, b), w in y_from_d_weights(l, m).items())


@lru_cache(maxsize=None)
def d_from_y_weights(l: int, m1x2: int, m2x2: int):
    """Terms (l', m', weight) with D^{l/2}_{m1 m2}(z) = sum w (z.z)^((l-l')/2) Y_{l' m'}(z)."""
    j2 = l
    mp = (m2x2 - m1x2) // 2
    f = math.factorial
    out = []
    for lp in range(l % 2, l + 1, 2):
        if abs(mp) > lp:
            continue
        w3 = wg.three_j_x2(j2, j2, 2 * lp, m1x2, -m2x2, 2 * mp)
        if w3 == 0.0:
            continue
        c = (math.sqrt(FOUR_PI) * (-1) ** lp * _phase(m2x2) * 2.0 ** lp * math.sqrt(2 * lp + 1)
             * math.sqrt(f(l - lp) / f(l + lp + 1)) * f((l + lp) // 2) / f((l - lp) // 2) * w3)
        out.append((lp, mp, c))
    return tuple(out)


def d_from_y(l: int, m1, m2, z) -> complex:
    """D^{l/2}_{m1 m2}((0, z)) rebuilt from solid harmonics."""
    a, b = wg.two(m1), wg.two(m2)
    z1, z2, z3 = _vec(z)
    zz = z1 * z1 + z2 * z2 + z3 * z3
    return sum(c * zz ** ((l - lp) // 2) * solid_harmonic(lp, mp, (z1, z2, z3))
               for lp, mp, c in d_from_y_weights(l, a, b))


def laplacian_terms(l: int, m: int) -> dict:
    """Exact Laplacian of Y_lm (m >= 0) in z1, z2, z3, up to its normalization.

    With u = z1 + i z2, v = z1 - i z2 the Laplacian is 4 d_u d_v + d_3^2 and
    z.z = u v + z3^2, so the coefficients stay rational.  Returns the
    surviving monomials u^a v^b z3^c (empty when Y_lm is harmonic).
    """
    _, _, terms = solid_harmonic_terms(l, m)
    poly = {}
    for c, e3, p in terms:
        # u^m z3^e3 (u v + z3^2)^p
        for i in range(p + 1):
            key = (m + i, i, e3 + 2 * (p - i))
            poly[key] = poly.get(key, 0) + c * math.comb(p, i)
    out = {}
    for (a, b, e), c in poly.items():
        if a and b:
            key = (a - 1, b - 1, e)
            out[key] = out.get(key, 0) + 4 * c * a * b
        if e >= 2:
            key = (a, b, e - 2)
            out[key] = out.get(key, 0) + c * e * (e - 1)
    return {k: v for k, v in out.items() if v != 0}
