"""Matrix elements of U^(varsigma, s)(g) in the Fock-Bargmann basis.

Convention: ``T_g F_nu = sum_nu' U[nu; nu'](g) F_nu'`` where

    (T_g f)(z) = det(-b- z + a-)^(-varsigma-s) D^s(z b* + a*) f(g . z)

with the blocks (a, b) of ``g`` itself and ``g . z = (a z + b)(-b- z + a-)^-1``.
Then ``U(g2 g1) = U(g2) U(g1)``.

The general route expands the transformed basis function as a graded series:

    sqrt(a_l,k) det(den)^(1-varsigma-k) * det(a z + b)^k * det(den)^-1 Y_L(g . z)
               = A-term             * B-term          * C-term

with the A-term from the Gegenbauer expansion in w = b~ a~^-1, the B-term a
finite expansion in u = conj(b^-1 a) and the C-term from the addition
theorems for D^{L/2}(a z + b) and det(den)^-1 D^{L/2}(den^-1).  Each output
degree collects finitely many terms, so every single element is an exact
finite sum; truncation only enters when a transformed function is re-expanded.
"""
from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from . import cquat as cq
from . import fockbasis as fb
from . import gegenbauer as gg
from . import harmonics as hm
from . import series as S
from . import sp4
from . import wigner as wg
from .cquat import CQuat
from .errors import IndexOutOfRange, NotInGroup, SingularBlock, SingularDenominator
from .fockbasis import RepLabel, ScalarIndex, SpinIndex, Truncation

SQRT_4PI = math.sqrt(4 * math.pi)
B0_THRESHOLD = 1e-12
PURITY_TOL = 1e-10


# ---------------------------------------------------------------- helpers

def det_power(g: sp4.Sp4Element, z: CQuat, lam: float) -> complex:
    """det(-b- z + a-)^-lam on the branch used by the series.

    det(a-)^-lam and (det(den) / det(a-))^-lam are both principal powers.
    """
    da = cq.det(cq.conj_complex(g.a))
    den = sp4.denominator(g, z)
    dd = cq.det(den)
    if abs(dd) <= cq.EPSILON_SINGULAR:
        raise SingularDenominator("denominator quaternion is null")
    return cmath.exp(-lam * cmath.log(da)) * cmath.exp(-lam * cmath.log(dd / da))


def _pure(z) -> CQuat:
    if isinstance(z, CQuat):
        return z
    return CQuat.pure(tuple(complex(c) for c in z))


def is_b0(g: sp4.Sp4Element) -> bool:
    return abs(cq.det(g.b)) < B0_THRESHOLD * (1 + abs(cq.det(g.a)))


def _d(j2: int, q: CQuat) -> np.ndarray:
    return wg.wigner_d_matrix(wg.HalfInt(j2), q)


# ---------------------------------------------------------------- oracles

def apply_scalar_action(rep: RepLabel, g: sp4.Sp4Element, f: dict, z) -> complex:
    """Pointwise (T_g f)(z) for f = sum coef F_idx, evaluated in closed form."""
    z = _pure(z)
    x = sp4.domain_action(g, z)
    val = sum(c * fb.scalar_basis(rep, idx, CQuat.pure(x.v)) for idx, c in f.items())
    return det_power(g, z, rep.varsigma) * val


def spin_multiplier(g: sp4.Sp4Element, z: CQuat, s_x2: int) -> np.ndarray:
    """D^s(z b* + a*)."""
    q = z * cq.adjoint(g.b) + cq.adjoint(g.a)
    return _d(s_x2, q)


def apply_spin_action(rep: RepLabel, g: sp4.Sp4Element, f: dict, z) -> np.ndarray:
    """Pointwise (T_g f)(z) for vector-valued f = sum coef F_idx."""
    z = _pure(z)
    x = CQuat.pure(sp4.domain_action(g, z).v)
    val = np.zeros(rep.s_x2 + 1, dtype=complex)
    for idx, c in f.items():
        val += c * fb.spin_basis(rep, idx, x)
    mult = det_power(g, z, rep.varsigma + rep.s)
    return mult * (spin_multiplier(g, z, rep.s_x2) @ val)


# ---------------------------------------------------------------- series engine

def _const_series(values: np.ndarray, degree: int) -> np.ndarray:
    lay = S.layout(degree)
    out = np.zeros(values.shape + (lay.size,), dtype=complex)
    out[..., lay.index(0, 0, 0)] = values * SQRT_4PI
    return out


def _linear_d(j2: int, left: CQuat, right: CQuat, degree: int) -> np.ndarray:
    """D^{j}(left (0, z) right) as a polynomial matrix."""
    Dz = S.pure_d_matrix(j2, degree)
    return np.einsum("ab,bcx,cd->adx", _d(j2, left), Dz, _d(j2, right))


def _sum_theorem(j2: int, p_series, q_const, degree: int) -> np.ndarray:
    """D^j(P + Q) for P linear in z (given by ``p_series(i)``) and constant Q.

    sigma-scaled entries combine as a two-dimensional convolution over the
    row/column positions, which is the addition theorem for D^j.
    """
    lay = S.layout(degree)
    out = np.zeros((j2 + 1, j2 + 1, lay.size), dtype=complex)
    for jp2 in range(j2 + 1):
        jr = j2 - jp2
        if jr > degree:
            continue
        sr = wg.sigma_vector(jr)
        sq = wg.sigma_vector(jp2)
        P = p_series(jr) * (sr[:, None] * sr[None, :])[:, :, None]
        Q = q_const(jp2) * (sq[:, None] * sq[None, :])
        for q1 in range(jp2 + 1):
            for q2 in range(jp2 + 1):
                if Q[q1, q2] != 0:
                    out[q1:q1 + jr + 1, q2:q2 + jr + 1] += Q[q1, q2] * P
    sj = wg.sigma_vector(j2)
    return out / (sj[:, None] * sj[None, :])[:, :, None]


def _inverse_theorem(j2: int, r_series, base: CQuat, degree: int) -> np.ndarray:
    """det(R + base)^-1 D^j((R + base)^-1) for R linear in z (``r_series(i)``).

    Series in powers of R; the level j' carries degree 2j' so it is exact
    through ``degree``.
    """
    lay = S.layout(degree)
    out = np.zeros((j2 + 1, j2 + 1, lay.size), dtype=complex)
    inv = cq.inverse(base)
    dinv = 1 / cq.det(base)
    for jp2 in range(degree + 1):
        J2 = j2 + jp2
        sp = wg.sigma_vector(jp2)
        sJ = wg.sigma_vector(J2)
        R = r_series(jp2) * (sp[:, None] * sp[None, :])[:, :, None]
        T = dinv * _d(J2, inv) / (sJ[:, None] * sJ[None, :])
        sign = -1 if jp2 % 2 else 1
        for pc in range(jp2 + 1):
            for pd in range(jp2 + 1):
                r = R[pc, pd]
                if not np.any(r):
                    continue
                out += sign * T[pd:pd + j2 + 1, pc:pc + j2 + 1, None] * r[None, None, :]
    sj = wg.sigma_vector(j2)
    return out * (sj[:, None] * sj[None, :])[:, :, None]


@lru_cache(maxsize=None)
def _y_weight_table(L: int):
    """[(m, pos m1, pos m2, weight)] for Y_Lm = sum A D^{L/2}_{m1 m2}."""
    rows = []
    for m in range(-L, L + 1):
        for (a, b), w in hm.y_from_d_weights(L, m).items():
            rows.append((m, (L - a) // 2, (L - b) // 2, w))
    return tuple(rows)


class SeriesEngine:
    """Graded-series expansion of transformed basis functions for one element.

    ``lam0`` is the weight of the scalar functions being transformed
    (varsigma for the scalar representation, varsigma + s inside the spin
    one).  Results are cached per (l, k).
    """

    def __init__(self, g: sp4.Sp4Element, lam0: float, degree: int):
        if is_b0(g):
            raise SingularBlock("b is (numerically) zero; use the b = 0 formulas")
        self.g = g
        self.lam0 = float(lam0)
        self.degree = degree
        self.lay = S.layout(degree)
        a, b = g.a, g.b
        self.abar = cq.conj_complex(a)
        da = cq.det(self.abar)
        db = cq.det(b)
        if abs(da) <= cq.EPSILON_SINGULAR or abs(db) <= cq.EPSILON_SINGULAR:
            raise SingularBlock("a- or b is singular")
        self.det_abar = da
        self.det_b = db
        w = cq.conj_quat(b) * cq.inverse(cq.conj_quat(a))
        u = cq.conj_complex(cq.inverse(b) * a)
        for name, q in (("w", w), ("u", u)):
            if abs(q.w4) > PURITY_TOL * max(1.0, q.norm_max()):
                raise NotInGroup(f"{name} is not a pure vector (scalar part {abs(q.w4):.3g})")
        self.w = CQuat.pure(w.v)
        self.u = CQuat.pure(u.v)
        self._conj_w = np.conj(self.lay.basis_values(self.w.v))
        self._conj_u = np.conj(self.lay.basis_values(self.u.v))
        self._cache = {}
        self._c_cache = {}

    def _gegenbauer_series(self, lam: float, conj_basis: np.ndarray) -> np.ndarray:
        lay = self.lay
        coef = np.array([gg.coeff_a_general(lam, 2 * k + L, k)
                         for k, L in zip(lay.k, lay.L)])
        return coef * conj_basis

    def a_term(self, k: int) -> np.ndarray:
        """det(den)^(1 - lam0 - k)."""
        lam = self.lam0 + k - 1
        pref = cmath.exp(-self.lam0 * cmath.log(self.det_abar)) * self.det_abar ** (1 - k)
        return pref * self._gegenbauer_series(lam, self._conj_w)

    def b_term(self, k: int) -> np.ndarray:
        """det(a z + b)^k, a finite series of degree 2k."""
        if k == 0:
            return _const_series(np.array(1.0), self.degree)
        out = self.det_b ** k * self._gegenbauer_series(float(-k), self._conj_u)
        out[self.lay.deg > 2 * k] = 0.0
        return out

    def c_term(self, L: int) -> np.ndarray:
        """det(den)^-1 Y_{L m}(g . z) for m = -L..L."""
        if L in self._c_cache:
            return self._c_cache[L]
        D = self.degree
        a, b = self.g.a, self.g.b
        one = CQuat.one()
        N = _sum_theorem(L, lambda i: _linear_d(i, a, one, D), lambda i: _d(i, b), D)
        minus_bbar = -1 * cq.conj_complex(b)
        Q = _inverse_theorem(L, lambda i: _linear_d(i, minus_bbar, one, D), self.abar, D)
        NQ = S.matmul(N, Q, D)
        out = np.zeros((2 * L + 1, self.lay.size), dtype=complex)
        for m, p1, p2, w in _y_weight_table(L):
            out[m + L] += w * NQ[p1, p2]
        self._c_cache[L] = out
        return out

    def column(self, l: int, k: int) -> np.ndarray:
        """Series of sqrt(a_lam0,l,k) det(den)^-lam0 ((g.z).(g.z))^k Y_{L m}(g.z), m = -L..L."""
        key = (l, k)
        if key in self._cache:
            return self._cache[key]
        L = l - 2 * k
        D = self.degree
        ab = S.multiply(self.a_term(k), self.b_term(k), D)
        col = S.multiply(ab[None, :], self.c_term(L), D)
        col *= math.sqrt(gg.coeff_a_general(self.lam0, l, k))
        self._cache[key] = col
        return col

    def spin_multiplier_series(self, s_x2: int) -> np.ndarray:
        """D^s(z b* + a*) as a polynomial matrix."""
        D = self.degree
        bstar = cq.adjoint(self.g.b)
        astar = cq.adjoint(self.g.a)
        one = CQuat.one()
        return _sum_theorem(s_x2, lambda i: _linear_d(i, one, bstar, D), lambda i: _d(i, astar), D)


def _out_norm(lam: float, degree: int) -> np.ndarray:
    lay = S.layout(degree)
    return np.sqrt([gg.coeff_a_general(lam, 2 * k + L, k) for k, L in zip(lay.k, lay.L)])


@lru_cache(maxsize=64)
def _engine(g: sp4.Sp4Element, lam0: float, degree: int) -> SeriesEngine:
    return SeriesEngine(g, lam0, degree)


def scalar_column(rep: RepLabel, g: sp4.Sp4Element, l: int, k: int, degree: int) -> np.ndarray:
    """U[(l, k, m); out] for m = -L..L against every output index of degree <= ``degree``.

    Rows follow m, columns follow the flat series layout.
    """
    eng = _engine(g, float(rep.varsigma), degree)
    return eng.column(l, k) / _out_norm(rep.varsigma, degree)


def spin_column(rep: RepLabel, g: sp4.Sp4Element, l: int, k: int, degree: int) -> dict:
    """{in SpinIndex: {out SpinIndex: U}} for the inputs of fixed (l, k)."""
    return _spin_column(RepLabel(float(rep.varsigma), rep.s_x2), g, l, k, degree)


@lru_cache(maxsize=256)
def _spin_column(rep: RepLabel, g: sp4.Sp4Element, l: int, k: int, degree: int) -> dict:
    lam0 = rep.varsigma + rep.s
    eng = _engine(g, float(lam0), degree)
    lay = eng.lay
    s_x2 = rep.s_x2
    L = l - 2 * k
    scal = eng.column(l, k)
    M = eng.spin_multiplier_series(s_x2)
    ins = [idx for idx in fb.spin_level(s_x2, l) if idx.k == k]
    # Y[idx, rho] = sum_m CG * scalar column m
    C = np.stack([fb.spin_coupling(s_x2, idx) for idx in ins])
    Y = np.einsum("irm,mx->irx", C, scal)
    V = S.multiply(M[None, :, :, :], Y[:, None, :, :], eng.degree).sum(axis=2)
    V = V / _out_norm(lam0, degree)
    result = {}
    for n, idx in enumerate(ins):
        out = {}
        for lo in range(degree + 1):
            for oidx in fb.spin_level(s_x2, lo):
                Lo = lo - 2 * oidx.k
                Co = fb.spin_coupling(s_x2, oidx)
                sl = lay.piece(oidx.k, Lo)
                out[oidx] = complex(np.sum(Co * V[n][:, sl]))
        result[idx] = out
    return result


# ---------------------------------------------------------------- b = 0

def _a_weights(L: int, m: int):
    return hm.y_from_d_weights(L, m)


def scalar_matrix_element_b0(rep: RepLabel, g: sp4.Sp4Element, in_idx: ScalarIndex,
                             out_idx: ScalarIndex) -> complex:
    """Exact element for block-diagonal g: a finite sum over D^{L/2}(a), D^{L/2}(a-^-1) and 3-j symbols."""
    fb.check_scalar_index(in_idx)
    fb.check_scalar_index(out_idx)
    l, k, m = in_idx
    lp, kp, mp = out_idx
    if lp != l or kp < k:
        return 0j
    lam = float(rep.varsigma)
    a = g.a
    abar = cq.conj_complex(a)
    L = l - 2 * k
    lo = l - 2 * kp
    Da = _d(L, a)
    Dai = _d(L, cq.inverse(abar))
    f = math.factorial
    radial = (SQRT_4PI * 2.0 ** lo * math.sqrt(2 * lo + 1)
              * math.sqrt(f(2 * kp - 2 * k) / f(2 * l - 2 * k - 2 * kp + 1))
              * f(l - k - kp) / f(kp - k))
    total = 0j
    for (m1, m2), A in _a_weights(L, m).items():
        for n1 in range(-L, L + 1, 2):
            for n2 in range(-L, L + 1, 2):
                w3 = wg.three_j_x2(L, L, 2 * lo, n1, -n2, 2 * mp)
                if w3 == 0.0:
                    continue
                sign = (-1) ** lo * hm._phase(n2)
                total += (A * Da[(L - m1) // 2, (L - n1) // 2] * Dai[(L - n2) // 2, (L - m2) // 2]
                          * sign * w3)
    da = cq.det(abar)
    pref = (math.sqrt(gg.coeff_a_general(lam, l, k) / gg.coeff_a_general(lam, l, kp))
            * cmath.exp(-lam * cmath.log(da)) * da ** (-k) * cq.det(a) ** k)
    return complex(pref * radial * total)


def spin_matrix_element_b0(rep: RepLabel, g: sp4.Sp4Element, in_idx: SpinIndex,
                           out_idx: SpinIndex) -> complex:
    """Exact element for block-diagonal g from the scalar ones at varsigma + s and D^s(a*)."""
    s_x2 = rep.s_x2
    fb.check_spin_index(s_x2, in_idx)
    fb.check_spin_index(s_x2, out_idx)
    l, k, _, _ = in_idx
    lp, kp, _, _ = out_idx
    if lp != l or kp < k:
        return 0j
    shifted = RepLabel(rep.varsigma + rep.s, 0)
    Ds = _d(s_x2, cq.adjoint(g.a))
    Cin = fb.spin_coupling(s_x2, in_idx)
    Cout = fb.spin_coupling(s_x2, out_idx)
    L, Lo = l - 2 * k, l - 2 * kp
    total = 0j
    for ir in range(s_x2 + 1):
        for m in range(-L, L + 1):
            cin = Cin[ir, m + L]
            if cin == 0.0:
                continue
            for jr in range(s_x2 + 1):
                if Ds[jr, ir] == 0:
                    continue
                for mo in range(-Lo, Lo + 1):
                    co = Cout[jr, mo + Lo]
                    if co == 0.0:
                        continue
                    u = scalar_matrix_element_b0(shifted, g, ScalarIndex(l, k, m),
                                                 ScalarIndex(l, kp, mo))
                    total += cin * Ds[jr, ir] * u * co
    return complex(total)


# ---------------------------------------------------------------- public element API

def _check_degree(l_out: int, trunc: Truncation | None) -> int:
    lmax = (trunc or Truncation()).checked().l_max
    if l_out > lmax:
        raise IndexOutOfRange(f"output degree {l_out} exceeds l_max = {lmax}")
    return lmax


def scalar_matrix_element(rep: RepLabel, g: sp4.Sp4Element, in_idx: ScalarIndex,
                          out_idx: ScalarIndex, trunc: Truncation | None = None):
    """U[in; out](g) as ``(value, tail_estimate, route)``.

    The series route is exact at fixed output degree, so its tail is 0.
    """
    fb.check_scalar_index(in_idx)
    fb.check_scalar_index(out_idx)
    _check_degree(out_idx.l, trunc)
    if is_b0(g):
        return scalar_matrix_element_b0(rep, g, in_idx, out_idx), 0.0, "b0"
    col = scalar_column(rep, g, in_idx.l, in_idx.k, out_idx.l)
    lay = S.layout(out_idx.l)
    L = in_idx.l - 2 * in_idx.k
    val = col[in_idx.m + L, lay.index(out_idx.k, out_idx.l - 2 * out_idx.k, out_idx.m)]
    return complex(val), 0.0, "series"


def spin_matrix_element(rep: RepLabel, g: sp4.Sp4Element, in_idx: SpinIndex,
                        out_idx: SpinIndex, trunc: Truncation | None = None):
    """Spin analogue of :func:`scalar_matrix_element`."""
    if rep.s_x2 == 0:
        si = ScalarIndex(in_idx.l, in_idx.k, in_idx.M_x2 // 2)
        so = ScalarIndex(out_idx.l, out_idx.k, out_idx.M_x2 // 2)
        fb.check_spin_index(0, in_idx)
        fb.check_spin_index(0, out_idx)
        return scalar_matrix_element(rep, g, si, so, trunc)
    fb.check_spin_index(rep.s_x2, in_idx)
    fb.check_spin_index(rep.s_x2, out_idx)
    _check_degree(out_idx.l, trunc)
    if is_b0(g):
        return spin_matrix_element_b0(rep, g, in_idx, out_idx), 0.0, "b0"
    cols = spin_column(rep, g, in_idx.l, in_idx.k, out_idx.l)
    return cols[in_idx][out_idx], 0.0, "series"


def level_indices(rep: RepLabel, l: int) -> list:
    if rep.s_x2 == 0:
        return fb.scalar_level(l)
    return fb.spin_level(rep.s_x2, l)


def matrix_block(rep: RepLabel, g: sp4.Sp4Element, l_in: int, l_out: int,
                 degree: int | None = None) -> np.ndarray:
    """Dense block U[in; out] between the degree-l_in and degree-l_out index sets.

    Rows follow the input level, columns the output level, both in the
    enumeration order of :mod:`fockbasis`.  ``degree`` lets several blocks
    share one series engine (it must be >= l_out).
    """
    degree = max(l_out, degree or 0)
    ins = level_indices(rep, l_in)
    outs = level_indices(rep, l_out)
    B = np.zeros((len(ins), len(outs)), dtype=complex)
    if is_b0(g):
        if l_in != l_out:
            return B
        f = scalar_matrix_element_b0 if rep.s_x2 == 0 else spin_matrix_element_b0
        for i, a in enumerate(ins):
            for j, b in enumerate(outs):
                B[i, j] = f(rep, g, a, b)
        return B
    pos = {idx: j for j, idx in enumerate(outs)}
    if rep.s_x2 == 0:
        lay = S.layout(degree)
        for kin in range(l_in // 2 + 1):
            col = scalar_column(rep, g, l_in, kin, degree)
            L = l_in - 2 * kin
            for i, idx in enumerate(ins):
                if idx.k != kin:
                    continue
                for o in outs:
                    B[i, pos[o]] = col[idx.m + L, lay.index(o.k, l_out - 2 * o.k, o.m)]
        return B
    for kin in range(l_in // 2 + 1):
        cols = spin_column(rep, g, l_in, kin, degree)
        for i, idx in enumerate(ins):
            if idx.k != kin:
                continue
            for o in outs:
                B[i, pos[o]] = cols[idx][o]
    return B


def truncated_matrix(rep: RepLabel, g: sp4.Sp4Element, in_max: int, out_max: int) -> np.ndarray:
    """All blocks with input degree <= in_max and output degree <= out_max."""
    blocks = [[matrix_block(rep, g, li, lo, out_max) for lo in range(out_max + 1)]
              for li in range(in_max + 1)]
    return np.block(blocks)


# ---------------------------------------------------------------- expansion checks

@lru_cache(maxsize=512)
def _cached_block(rep: RepLabel, g: sp4.Sp4Element, l_in: int, l_out: int, degree: int) -> np.ndarray:
    B = matrix_block(rep, g, l_in, l_out, degree)
    B.setflags(write=False)
    return B


def _level_values(rep: RepLabel, lo: int, basis: np.ndarray, lay) -> np.ndarray:
    """F_out(z) for every output index of degree lo, from precomputed basis values."""
    vals = []
    for o in level_indices(rep, lo):
        if rep.s_x2 == 0:
            L = lo - 2 * o.k
            c = math.sqrt(gg.coeff_a_general(float(rep.varsigma), lo, o.k))
            vals.append(c * basis[lay.index(o.k, L, o.m)])
        else:
            L = lo - 2 * o.k
            c = math.sqrt(gg.coeff_a_general(rep.varsigma + rep.s, lo, o.k))
            vals.append(c * (fb.spin_coupling(rep.s_x2, o) @ basis[lay.piece(o.k, L)]))
    return np.array(vals)


def expansion_at(rep: RepLabel, g: sp4.Sp4Element, in_idx, z, lmax: int):
    """sum_{out degree <= lmax} U[in; out] F_out(z), with per-degree level sums."""
    z = _pure(z)
    lay = S.layout(lmax)
    basis = lay.basis_values(z.v)
    rep = RepLabel(float(rep.varsigma), rep.s_x2)
    row_pos = level_indices(rep, in_idx.l).index(in_idx)
    levels = []
    for lo in range(lmax + 1):
        row = _cached_block(rep, g, in_idx.l, lo, lmax)[row_pos]
        levels.append(np.tensordot(row, _level_values(rep, lo, basis, lay), axes=(0, 0)))
    total = sum(levels)
    return total, levels


def oracle_residual(rep: RepLabel, g: sp4.Sp4Element, in_idx, z, lmax: int):
    """(|expansion - pointwise action|, tail estimate from the last level sums)."""
    total, levels = expansion_at(rep, g, in_idx, z, lmax)
    if rep.s_x2 == 0:
        exact = apply_scalar_action(rep, g, {in_idx: 1.0}, z)
    else:
        exact = apply_spin_action(rep, g, {in_idx: 1.0}, z)
    tail = gg.tail_estimate([float(np.max(np.abs(x))) for x in levels])
    return float(np.max(np.abs(total - exact))), tail
