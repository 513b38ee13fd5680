"""SU(2) matrix elements, their holomorphic extension, and 3-j symbols.

Angular momenta are passed as ordinary numbers (``1``, ``0.5``, ``Fraction(3, 2)``)
and carried internally as doubled integers, so every table key is exact.

Matrix layout: ``wigner_d_matrix(j, z)[j - m1, j - m2] = D^j_{m1 m2}(z)``, i.e.
rows and columns run from ``m = j`` down to ``m = -j``.  With this layout the
spin-1/2 matrix is the cofactor matrix of the quaternion image::

    D^{1/2}(z) = [[Z11, -Z10], [-Z01, Z00]],   Z = cquat.to_matrix(z)

equivalently ``D^{1/2}_{m1 m2} = (-1)^(m1-m2) Z[i(m1), i(m2)]`` with
``i(-1/2) = 0`` and ``i(1/2) = 1``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import cquat as cq
from .cquat import CQuat
from .errors import IndexOutOfRange, TruncationNotConverged


class HalfInt:
    """A non-negative or signed half-integer stored as ``twice``."""

    __slots__ = ("twice",)

    def __init__(self, twice: int):
        self.twice = int(twice)

    @classmethod
    def of(cls, x) -> "HalfInt":
        return cls(two(x))

    def __float__(self):
        return self.twice / 2

    def __repr__(self):
        return f"HalfInt({self.twice}/2)"

    def __eq__(self, other):
        return isinstance(other, HalfInt) and other.twice == self.twice

    def __hash__(self):
        return hash(self.twice)


def two(x) -> int:
    """Return ``2 x`` as an int, rejecting anything that is not a half-integer."""
    if isinstance(x, HalfInt):
        return x.twice
    d = Fraction(x) * 2
    if d.denominator != 1:
        raise IndexOutOfRange(f"{x!r} is not a half-integer")
    return int(d)


def _check_jm(j2: int, m2: int):
    if j2 < 0 or abs(m2) > j2 or (j2 - m2) % 2:
        raise IndexOutOfRange(f"invalid (j, m) = ({j2}/2, {m2}/2)")


def m_values(j):
    """The projections j, j-1, ..., -j as Fractions."""
    j2 = two(j)
    return [Fraction(j2 - 2 * i, 2) for i in range(j2 + 1)]


# ---------------------------------------------------------------- sigma symbols

def sigma(j, m) -> float:
    j2, m2 = two(j), two(m)
    _check_jm(j2, m2)
    return 1.0 / math.sqrt(math.factorial((j2 - m2) // 2) * math.factorial((j2 + m2) // 2))


def sigma2(j, m1, m2) -> float:
    return sigma(j, m1) * sigma(j, m2)


@lru_cache(maxsize=None)
def sigma_vector(j2: int) -> np.ndarray:
    """sigma^j_m for m = j, ..., -j (doubled-integer j)."""
    return np.array([sigma(Fraction(j2, 2), Fraction(j2 - 2 * i, 2)) for i in range(j2 + 1)])


# ---------------------------------------------------------------- D^j(z)

@lru_cache(maxsize=None)
def _d_terms(j2: int, m1x2: int, m2x2: int):
    """Exact terms of the Talman sum for one matrix element.

    Returns ``(sign, norm_sq, terms)`` with ``D = sign * sqrt(norm_sq) *
    sum(c * p^e0 q^e1 r^e2 w^e3)`` where ``p = z4 + i z3``, ``q = z4 - i z3``,
    ``r = -z2 + i z1``, ``w = z2 + i z1``.
    """
    jm1 = (j2 - m1x2) // 2  # j - m1
    jp1 = (j2 + m1x2) // 2
    jm2 = (j2 - m2x2) // 2
    jp2 = (j2 + m2x2) // 2
    dm = (m2x2 - m1x2) // 2  # m2 - m1
    sign = -1 if dm % 2 else 1
    f = math.factorial
    norm_sq = f(jp1) * f(jm1) * f(jp2) * f(jm2)
    terms = []
    for t in range(max(0, -dm), min(jm2, jp1) + 1):
        den = f(jm2 - t) * f(jp1 - t) * f(t + dm) * f(t)
        terms.append((Fraction(1, den), (jm2 - t, jp1 - t, t + dm, t)))
    return sign, norm_sq, tuple(terms)


def wigner_d_terms(j, m1, m2):
    """Monomial expansion of D^j_{m1 m2} in the variables (p, q, r, w).

    See :func:`_d_terms`; exposed so tests can differentiate the polynomial
    exactly.
    """
    j2, a, b = two(j), two(m1), two(m2)
    _check_jm(j2, a)
    _check_jm(j2, b)
    return _d_terms(j2, a, b)


def _pqrw(z: CQuat):
    z1, z2, z3 = z.v
    z4 = z.w4
    return (z4 + 1j * z3, z4 - 1j * z3, -z2 + 1j * z1, z2 + 1j * z1)


def wigner_d(j, m1, m2, z: CQuat) -> complex:
    sign, norm_sq, terms = wigner_d_terms(j, m1, m2)
    p = _pqrw(z)
    total = 0j
    for c, e in terms:
        total += float(c) * p[0] ** e[0] * p[1] ** e[1] * p[2] ** e[2] * p[3] ** e[3]
    return sign * math.sqrt(norm_sq) * total


@lru_cache(maxsize=None)
def _d_tables(j2: int):
    n = j2 + 1
    rows, coefs, exps = [], [], []
    for i1 in range(n):
        for i2 in range(n):
            sign, norm_sq, terms = _d_terms(j2, j2 - 2 * i1, j2 - 2 * i2)
            for c, e in terms:
                # sign * sqrt(norm_sq) * c, formed from one exact square
                val = math.sqrt(float(c * c * norm_sq))
                rows.append(i1 * n + i2)
                coefs.append(sign * val)
                exps.append(e)
    return np.array(rows), np.array(coefs), np.array(exps, dtype=int).reshape(-1, 4)


def d_matrix_from_pqrw(j, p, q, r, w) -> np.ndarray:
    j2 = two(j)
    n = j2 + 1
    rows, coefs, exps = _d_tables(j2)
    powers = [np.array([x ** e for e in range(j2 + 1)], dtype=complex) for x in (p, q, r, w)]
    vals = coefs * powers[0][exps[:, 0]] * powers[1][exps[:, 1]] * powers[2][exps[:, 2]] * powers[3][exps[:, 3]]
    out = np.zeros(n * n, dtype=complex)
    np.add.at(out, rows, vals)
    return out.reshape(n, n)


def wigner_d_matrix(j, z: CQuat) -> np.ndarray:
    """Full matrix D^j(z), rows/columns ordered m = j, ..., -j."""
    return d_matrix_from_pqrw(j, *_pqrw(z))


def d_matrix_of_2x2(j, A) -> np.ndarray:
    """D^j of the quaternion whose 2x2 image is ``A``."""
    A = np.asarray(A, dtype=complex)
    # p = Z00, q = Z11, r = Z01, w = Z10
    return d_matrix_from_pqrw(j, A[0, 0], A[1, 1], A[0, 1], A[1, 0])


# ---------------------------------------------------------------- 3-j symbols

def _fact(n: int) -> int:
    return math.factorial(n)


@lru_cache(maxsize=None)
def three_j_exact_x2(j1: int, j2: int, j3: int, m1: int, m2: int, m3: int):
    """Exact 3-j symbol for doubled arguments as ``(sign, square)``.

    The value is ``sign * sqrt(square)`` with ``square`` a Fraction; invalid
    tuples give ``(0, Fraction(0))``.
    """
    zero = (0, Fraction(0))
    if m1 + m2 + m3 != 0:
        return zero
    for j, m in ((j1, m1), (j2, m2), (j3, m3)):
        if j < 0 or abs(m) > j or (j - m) % 2:
            return zero
    if j3 < abs(j1 - j2) or j3 > j1 + j2 or (j1 + j2 + j3) % 2:
        return zero
    a = (j1 + j2 - j3) // 2
    b = (j1 - j2 + j3) // 2
    c = (-j1 + j2 + j3) // 2
    big = (j1 + j2 + j3) // 2 + 1
    tri = Fraction(_fact(a) * _fact(b) * _fact(c), _fact(big))
    mprod = 1
    for j, m in ((j1, m1), (j2, m2), (j3, m3)):
        mprod *= _fact((j + m) // 2) * _fact((j - m) // 2)
    # summation bounds: all six factorial arguments non-negative
    k1 = (j2 + m2) // 2       # j' + m'
    k2 = (j1 - m1) // 2       # j - m
    k3 = (j3 - j2 + m1) // 2  # j'' - j' + m
    k4 = (j3 - j1 - m2) // 2  # j'' - j - m'
    k5 = a                    # j + j' - j''
    lo = max(0, -k3, -k4)
    hi = min(k1, k2, k5)
    s = Fraction(0)
    for t in range(lo, hi + 1):
        den = _fact(t) * _fact(k1 - t) * _fact(k2 - t) * _fact(k3 + t) * _fact(k4 + t) * _fact(k5 - t)
        s += Fraction(-1 if t % 2 else 1, den)
    if s == 0:
        return zero
    phase = (j1 - j2 - m3) // 2
    sign = (-1 if phase % 2 else 1) * (1 if s > 0 else -1)
    return sign, s * s * tri * mprod


@lru_cache(maxsize=None)
def three_j_x2(j1, j2, j3, m1, m2, m3) -> float:
    sign, sq = three_j_exact_x2(j1, j2, j3, m1, m2, m3)
    if sign == 0:
        return 0.0
    return sign * math.sqrt(sq)


def three_j(j1, j2, j3, m1, m2, m3) -> float:
    return three_j_x2(two(j1), two(j2), two(j3), two(m1), two(m2), two(m3))


def three_j_zero_m_exact(l1: int, l2: int, l3: int):
    """Closed form of (l1 l2 l3; 0 0 0) as ``(sign, square)``."""
    J = l1 + l2 + l3
    if J % 2 or l3 < abs(l1 - l2) or l3 > l1 + l2:
        return 0, Fraction(0)
    h = J // 2
    sq = Fraction(_fact(J - 2 * l1) * _fact(J - 2 * l2) * _fact(J - 2 * l3), _fact(J + 1))
    ratio = Fraction(_fact(h), _fact(h - l1) * _fact(h - l2) * _fact(h - l3))
    return (-1 if h % 2 else 1), sq * ratio * ratio


def clebsch_gordan(j1, m1, j2, m2, j3, m3) -> float:
    """<j1 m1 j2 m2 | j3 m3> from the 3-j symbol."""
    a, b, c = two(j1), two(j2), two(j3)
    ma, mb, mc = two(m1), two(m2), two(m3)
    val = three_j_x2(a, b, c, ma, mb, -mc)
    if val == 0.0:
        return 0.0
    phase = (a - b + mc) // 2
    return (-1 if phase % 2 else 1) * math.sqrt(c + 1) * val


@lru_cache(maxsize=None)
def cg_x2(j1, m1, j2, m2, j3, m3) -> float:
    return clebsch_gordan(Fraction(j1, 2), Fraction(m1, 2), Fraction(j2, 2),
                          Fraction(m2, 2), Fraction(j3, 2), Fraction(m3, 2))


# ---------------------------------------------------------------- identities

def tensor_reduce_check(j, jp, z: CQuat) -> float:
    """Max residual of both forms of the product reduction D^j D^j' -> sum D^j''.

    The first form involves a complex conjugate, so ``z`` must be a real unit
    quaternion (an SU(2) element).
    """
    comps = np.array(z.components())
    if np.abs(comps.imag).max() > 1e-12 or abs(cq.det(z) - 1) > 1e-12:
        raise ValueError("tensor reduction needs a real unit quaternion")
    j2, jp2 = two(j), two(jp)
    Dj = wigner_d_matrix(j, z)
    Djp = wigner_d_matrix(jp, z)
    Dpp = {J: wigner_d_matrix(Fraction(J, 2), z) for J in range(abs(j2 - jp2), j2 + jp2 + 1, 2)}
    worst = 0.0
    for i1 in range(j2 + 1):
        for i2 in range(j2 + 1):
            a1, a2 = j2 - 2 * i1, j2 - 2 * i2
            for k1 in range(jp2 + 1):
                for k2 in range(jp2 + 1):
                    b1, b2 = jp2 - 2 * k1, jp2 - 2 * k2
                    lhs = Dj[i1, i2] * Djp[k1, k2]
                    c1 = -(a1 + b1)
                    c2 = -(a2 + b2)
                    first = 0j
                    second = 0j
                    for J, D in Dpp.items():
                        if abs(c1) > J or abs(c2) > J:
                            continue
                        w1 = three_j_x2(j2, jp2, J, a1, b1, c1) * three_j_x2(j2, jp2, J, a2, b2, c2)
                        first += (J + 1) * w1 * np.conj(D[(J - c1) // 2, (J - c2) // 2])
                        # second line: D^{j''}_{-c1, -c2} with phase (-1)^{m1''-m2''}
                        ph = -1 if ((-c1 + c2) // 2) % 2 else 1
                        second += (J + 1) * ph * w1 * D[(J + c1) // 2, (J + c2) // 2]
                    worst = max(worst, abs(lhs - first), abs(lhs - second))
    return worst


def _sig(j2: int, m2: int) -> float:
    return sigma_vector(j2)[(j2 - m2) // 2]


def addition_theorem_sum(j, m1, m2, z: CQuat, zp: CQuat) -> complex:
    """Right-hand side of the addition theorem for D^j(z + z'), divided by sigma."""
    j2, a, b = two(j), two(m1), two(m2)
    total = 0j
    for jp2 in range(j2 + 1):
        D1 = wigner_d_matrix(Fraction(j2 - jp2, 2), z)
        D2 = wigner_d_matrix(Fraction(jp2, 2), zp)
        for c in range(-jp2, jp2 + 1, 2):
            for d in range(-jp2, jp2 + 1, 2):
                r1, r2 = a - c, b - d
                jr = j2 - jp2
                if abs(r1) > jr or abs(r2) > jr:
                    continue
                total += (_sig(jr, r1) * _sig(jr, r2) * D1[(jr - r1) // 2, (jr - r2) // 2]
                          * _sig(jp2, c) * _sig(jp2, d) * D2[(jp2 - c) // 2, (jp2 - d) // 2])
    return total / (_sig(j2, a) * _sig(j2, b))


def _geometric_tail(terms, tol):
    """Tail bound from the ratio of the last three term magnitudes."""
    mags = [abs(t) for t in terms[-3:]]
    if len(mags) < 3 or mags[-1] == 0.0:
        return mags[-1] if mags else 0.0
    ratios = [mags[i + 1] / mags[i] for i in range(2) if mags[i] > 0]
    if not ratios:
        return mags[-1]
    q = max(ratios)
    if q >= 1.0:
        return math.inf
    return mags[-1] * q / (1 - q)


def inverse_addition_sum(j, m1, m2, z: CQuat, zp: CQuat, j_max, tol: float = 1e-10,
                         return_tail: bool = False):
    """Truncated series for det(z + z')^-1 D^j((z + z')^-1).

    Requires |det z| < |det z'| (the determinants are complex; the modulus
    comparison is how the convergence condition is read here).  ``j_max`` is
    the largest j' kept in the sum.
    """
    if not abs(cq.det(z)) < abs(cq.det(zp)):
        raise ValueError("inverse addition series needs |det z| < |det z'|")
    j2, a, b = two(j), two(m1), two(m2)
    jmax2 = two(j_max)
    zpi = cq.inverse(zp)
    dzp = cq.det(zp)
    level_sums = []
    for jp2 in range(jmax2 + 1):
        D1 = wigner_d_matrix(Fraction(jp2, 2), z)
        J2 = j2 + jp2
        D2 = wigner_d_matrix(Fraction(J2, 2), zpi)
        s = 0j
        for c in range(-jp2, jp2 + 1, 2):
            for d in range(-jp2, jp2 + 1, 2):
                r1, r2 = a + d, b + c
                s += (_sig(jp2, c) * _sig(jp2, d) * D1[(jp2 - c) // 2, (jp2 - d) // 2]
                      / (_sig(J2, r1) * _sig(J2, r2)) * D2[(J2 - r1) // 2, (J2 - r2) // 2])
        level_sums.append((-1) ** jp2 * s / dzp)
    total = sum(level_sums) * _sig(j2, a) * _sig(j2, b)
    tail = _geometric_tail(level_sums, tol) * _sig(j2, a) * _sig(j2, b)
    if return_tail:
        if tail > tol:
            raise TruncationNotConverged(f"tail estimate {tail:.3g} exceeds {tol:g}", total, tail)
        return total, tail
    return total


def product_expansion(j, m1, m2, z: CQuat, zp: CQuat) -> complex:
    """sum_m' D^j_{m1 m'}(z) D^j_{m' m2}(z')."""
    j2, a, b = two(j), two(m1), two(m2)
    D1 = wigner_d_matrix(j, z)
    D2 = wigner_d_matrix(j, zp)
    return complex(D1[(j2 - a) // 2, :] @ D2[:, (j2 - b) // 2])


def laplacian_terms(j, m1, m2) -> dict:
    """Exact Laplacian of D^j_{m1 m2} in (z1, z2, z3, z4), up to the norm factor.

    In the variables p, q, r, w the four-dimensional Laplacian is
    4 (d_p d_q - d_r d_w).  Returns the surviving monomials (empty when
    the polynomial is harmonic).
    """
    _, _, terms = wigner_d_terms(j, m1, m2)
    out = {}
    for c, (ep, eq, er, ew) in terms:
        if ep and eq:
            key = (ep - 1, eq - 1, er, ew)
            out[key] = out.get(key, 0) + 4 * c * ep * eq
        if er and ew:
            key = (ep, eq, er - 1, ew - 1)
            out[key] = out.get(key, 0) - 4 * c * er * ew
    return {k: v for k, v in out.items() if v != 0}
