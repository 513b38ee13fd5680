"""Diagonal matrix elements and Abel-regularized characters on diagonal elements.

For ``g_d`` with ``a_d = (z4, z3 e3)``, ``mu = z4 + i z3`` and ``nu = z4 - i z3``,
the representation is diagonal in (l, k, m) and

    U[l,k,m; l,k,m](g_d) = (conj(nu) conj(mu))^-varsigma
        sum_{m2 - m1 = m} A(l-2k; m1, m2) mu^(l/2-m1) nu^(l/2+m1)
                          conj(nu)^(-l/2+m2) conj(mu)^(-l/2-m2) R(l, k, m1, m2)

where R collects the radial 3-j factor of the degree-preserving expansion.
The trace over all (l, k, m) is formal; :func:`character` reports partial
sums weighted by t^l and a convergence verdict.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import fockbasis as fb
from . import harmonics as hm
from . import wigner as wg
from .errors import DeterminantNotOne
from .fockbasis import RepLabel, SpinIndex, Truncation
from .sp4 import EigenQuadruple

SQRT_4PI = math.sqrt(4 * math.pi)


def _check_eig(eig: EigenQuadruple, tol: float = 1e-10):
    if abs(abs(eig.mu * eig.nu) - 1.0) > tol:
        raise DeterminantNotOne(f"|mu nu| = {abs(eig.mu * eig.nu):.12g}, expected 1")


def _cpow(x: complex, p: float) -> complex:
    return cmath.exp(p * cmath.log(x))


def diag_element_scalar(rep: RepLabel, eig: EigenQuadruple, l: int, k: int, m: int) -> complex:
    """U^(varsigma,0)[l,k,m; l,k,m](g_d)."""
    fb.check_scalar_index(fb.ScalarIndex(l, k, m))
    _check_eig(eig)
    mu, nu = complex(eig.mu), complex(eig.nu)
    mub, nub = mu.conjugate(), nu.conjugate()
    L = l - 2 * k
    f = math.factorial
    radial = SQRT_4PI * 2.0 ** L * f(L) / math.sqrt(f(2 * L))
    total = 0j
    for (a, b), A in hm.y_from_d_weights(L, m).items():
        # a = 2 m1, b = 2 m2; exponents l/2 -+ m are integers
        e1 = (l - a) // 2
        e2 = (l + a) // 2
        e3 = (-l + b) // 2
        e4 = (-l - b) // 2
        powers = mu ** e1 * nu ** e2 * nub ** e3 * mub ** e4
        sign = (-1) ** L * hm._phase(b)
        total += A * powers * sign * wg.three_j_x2(L, L, 2 * L, a, -b, 2 * m)
    return complex(_cpow(nub * mub, -rep.varsigma) * radial * total)


def diag_element_spin(rep: RepLabel, eig: EigenQuadruple, l: int, k: int, J_x2: int, M_x2: int,
                      Jp_x2: int | None = None) -> complex:
    """U^(varsigma,s)[l,k,J,M; l,k,J',M](g_d) built from scalar ones at varsigma + s.

    ``Jp_x2`` defaults to ``J_x2`` (the diagonal entry).
    """
    s_x2 = rep.s_x2
    if s_x2 == 0:
        fb.check_spin_index(0, SpinIndex(l, k, J_x2, M_x2))
        return diag_element_scalar(rep, eig, l, k, M_x2 // 2)
    Jp_x2 = J_x2 if Jp_x2 is None else Jp_x2
    idx = fb.check_spin_index(s_x2, SpinIndex(l, k, J_x2, M_x2))
    idxp = fb.check_spin_index(s_x2, SpinIndex(l, k, Jp_x2, M_x2))
    _check_eig(eig)
    mub, nub = complex(eig.mu).conjugate(), complex(eig.nu).conjugate()
    shifted = RepLabel(rep.varsigma + rep.s, 0)
    L = l - 2 * k
    C = fb.spin_coupling(s_x2, idx)
    Cp = fb.spin_coupling(s_x2, idxp)
    total = 0j
    for i in range(s_x2 + 1):
        r2 = s_x2 - 2 * i
        for m in range(-L, L + 1):
            c = C[i, m + L] * Cp[i, m + L]
            if c == 0.0:
                continue
            spin_phase = mub ** ((s_x2 - r2) // 2) * nub ** ((s_x2 + r2) // 2)
            total += c * spin_phase * diag_element_scalar(shifted, eig, l, k, m)
    return complex(total)


def level_trace(rep: RepLabel, eig: EigenQuadruple, l: int) -> complex:
    """Sum of the diagonal elements of degree l."""
    if rep.s_x2 == 0:
        return sum(diag_element_scalar(rep, eig, *idx) for idx in fb.scalar_level(l))
    return sum(diag_element_spin(rep, eig, idx.l, idx.k, idx.J_x2, idx.M_x2)
               for idx in fb.spin_level(rep.s_x2, l))


@dataclass
class CharacterReport:
    partial_sums: list
    increments: list
    verdict: str
    abel_t: float
    l_max: int
    level_traces: list = field(default_factory=list)


def convergence_verdict(increments, tol: float) -> str:
    """'converged', 'oscillating' or 'diverging' from the last increments."""
    mags = [abs(x) for x in increments]
    if not mags:
        return "converged"
    if mags[-1] < tol:
        return "converged"
    tail = mags[-min(5, len(mags)):]
    if len(tail) >= 3 and tail[-1] > 1.1 * tail[0]:
        return "diverging"
    return "oscillating"


def character(rep: RepLabel, eig: EigenQuadruple, trunc: Truncation | None = None) -> CharacterReport:
    """Partial sums S_L = sum_{l <= L} t^l (level-l trace) for L = 0..l_max."""
    trunc = (trunc or Truncation()).checked()
    t = trunc.abel_t
    levels = [level_trace(rep, eig, l) for l in range(trunc.l_max + 1)]
    sums = []
    incs = []
    acc = 0j
    for l, v in enumerate(levels):
        inc = t ** l * v
        acc += inc
        incs.append(inc)
        sums.append(acc)
    verdict = convergence_verdict(incs[1:], trunc.series_tol)
    return CharacterReport(sums, incs, verdict, t, trunc.l_max, levels)


def identity_abel_sum(s_x2: int, t: float, l_max: int) -> float:
    """sum_{l <= l_max} t^l dim(level l), from the index count."""
    return float(sum(t ** l * fb.level_dimension(s_x2, l) for l in range(l_max + 1)))


def block_trace(rep: RepLabel, g, l: int) -> complex:
    """Trace of the degree-l block of U(g) for block-diagonal g."""
    from .matrix_elements import matrix_block
    return complex(np.trace(matrix_block(rep, g, l, l)))
