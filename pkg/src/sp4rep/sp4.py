"""Sp(4, R) as 2x2 matrices over the complex quaternions.

An element is ``g = [[a, b], [-conj(b), conj(a)]]`` with complex-quaternion
blocks ``a`` and ``b``.  The blocks satisfy

    a a* - b b* = 1,     a b~ = -b a~,
    a* a - b~ b- = 1,    a* b = -b~ a-,

where ``x-`` is the complex conjugate, ``x~`` the quaternionic conjugate and
``x*`` the adjoint.

Throughout the package the blocks of the element passed to a function are the
ones that appear in the formulas: :func:`domain_action` maps
``z -> (a z + b)(-b- z + a-)^(-1)`` using the blocks of its argument.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import cquat as cq
from .cquat import CQuat
from .errors import (
    DeterminantNotOne,
    NotInDomain,
    NotInGroup,
    SingularDenominator,
)

MEMBERSHIP_TOL = 1e-10


@dataclass(frozen=True)
class Sp4Element:
    a: CQuat
    b: CQuat
    # False for the SL(4, C) diagonal forms built by make_diagonal
    in_group: bool = field(default=True, compare=False)

    @classmethod
    def identity(cls):
        return cls(CQuat.one(), CQuat.zero())

    def __matmul__(self, other: "Sp4Element") -> "Sp4Element":
        return multiply(self, other)

    @property
    def is_block_diagonal(self) -> bool:
        return self.b.norm_max() == 0.0

    def to_matrix(self) -> np.ndarray:
        """4x4 complex image obtained by replacing each block by its 2x2 image."""
        m = np.empty((4, 4), dtype=complex)
        m[:2, :2] = cq.to_matrix(self.a)
        m[:2, 2:] = cq.to_matrix(self.b)
        m[2:, :2] = -cq.to_matrix(cq.conj_complex(self.b))
        m[2:, 2:] = cq.to_matrix(cq.conj_complex(self.a))
        return m


@dataclass(frozen=True)
class EigenQuadruple:
    mu: complex
    nu: complex
    degenerate: bool = False

    def as_tuple(self):
        """The four eigenvalues in the order (mu, nu, conj(nu), conj(mu))."""
        return (self.mu, self.nu, self.nu.conjugate(), self.mu.conjugate())


def multiply(g1: Sp4Element, g2: Sp4Element) -> Sp4Element:
    a = g1.a * g2.a - g1.b * cq.conj_complex(g2.b)
    b = g1.a * g2.b + g1.b * cq.conj_complex(g2.a)
    return Sp4Element(a, b, in_group=g1.in_group and g2.in_group)


def membership_residuals(g: Sp4Element) -> dict:
    a, b = g.a, g.b
    one = CQuat.one()
    ast, tl, bar = cq.adjoint, cq.conj_quat, cq.conj_complex
    res = {
        "a a* - b b* - 1": (a * ast(a) - b * ast(b) - one).norm_max(),
        "a b~ + b a~": (a * tl(b) + b * tl(a)).norm_max(),
        "a* a - b~ b- - 1": (ast(a) * a - tl(b) * bar(b) - one).norm_max(),
        "a* b + b~ a-": (ast(a) * b + tl(b) * bar(a)).norm_max(),
        "det - 1": abs(np.linalg.det(g.to_matrix()) - 1.0),
    }
    return res


def check_membership(g: Sp4Element, tol: float = MEMBERSHIP_TOL):
    """Return ``(ok, max_residual)`` for the group constraints."""
    worst = max(membership_residuals(g).values())
    return worst <= tol, worst


def inverse(g: Sp4Element, tol: float = MEMBERSHIP_TOL) -> Sp4Element:
    ok, worst = check_membership(g, tol)
    if not ok:
        raise NotInGroup(f"membership residual {worst:.3g} exceeds {tol:g}")
    # block form [[a*, b~], [-b*, a~]]
    return Sp4Element(cq.adjoint(g.a), cq.conj_quat(g.b))


def boost(t: float) -> Sp4Element:
    """The non-compact one-parameter subgroup a = cosh t, b = sinh t e1."""
    return Sp4Element(CQuat(math.cosh(t)), CQuat(0.0, (math.sinh(t), 0.0, 0.0)))


def compact(a: CQuat) -> Sp4Element:
    return Sp4Element(a, CQuat.zero())


def random_unitary_quaternion(rng: np.random.Generator) -> CQuat:
    """Quaternion whose 2x2 image is Haar-distributed on U(2)."""
    x = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(x)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    return CQuat.from_matrix(q)


def random_element(seed, t_max: float) -> Sp4Element:
    """Seeded element ``k1 d(t) k2`` with Haar compact factors and t in [0, t_max]."""
    if t_max < 0:
        raise ValueError("t_max must be non-negative")
    rng = np.random.default_rng(seed)
    k1 = compact(random_unitary_quaternion(rng))
    t = rng.uniform(0.0, t_max) if t_max > 0 else 0.0
    k2 = compact(random_unitary_quaternion(rng))
    g = k1 @ boost(t) @ k2
    if t_max == 0:
        g = Sp4Element(g.a, CQuat.zero())
    return g


def _pure_matrix(z: CQuat) -> np.ndarray:
    return cq.to_matrix(CQuat.pure(z.v))


def in_domain(z: CQuat, tol: float = 1e-12) -> bool:
    if not cq.is_pure(z, tol):
        raise ValueError("domain points are pure quaternions")
    m = _pure_matrix(z)
    ev = np.linalg.eigvalsh(m @ m.conj().T)
    return bool(ev.max() < 1.0)


def denominator(g: Sp4Element, z: CQuat) -> CQuat:
    """The quaternion ``-b- z + a-`` of the fractional action."""
    return cq.conj_complex(g.a) - cq.conj_complex(g.b) * z


def domain_action(g: Sp4Element, z: CQuat, check: bool = True) -> CQuat:
    """``(a z + b)(-b- z + a-)^(-1)`` with the blocks of ``g``."""
    if check and not in_domain(z):
        raise NotInDomain(f"{z!r} is outside the domain")
    den = denominator(g, z)
    if abs(cq.det(den)) <= cq.EPSILON_SINGULAR:
        raise SingularDenominator("denominator quaternion is null")
    w = (g.a * z + g.b) * cq.inverse(den)
    if check and not in_domain(CQuat.pure(w.v)):
        raise NotInDomain("image left the domain")
    return w


def make_diagonal(mu: complex, nu: complex, tol: float = 1e-10) -> Sp4Element:
    """Diagonal form with ``a = (z4, z3 e3)``, ``z4 + i z3 = mu``, ``z4 - i z3 = nu``.

    The result lies in the real group only when |mu| = |nu| = 1.
    """
    mu, nu = complex(mu), complex(nu)
    if abs(abs(mu * nu) ** 2 - 1.0) > tol:
        raise DeterminantNotOne(f"|mu nu|^2 = {abs(mu * nu) ** 2:.6g}")
    a = CQuat((mu + nu) / 2, (0.0, 0.0, (mu - nu) / 2j))
    unitary = abs(abs(mu) - 1) <= tol and abs(abs(nu) - 1) <= tol
    return Sp4Element(a, CQuat.zero(), in_group=unitary)


def _arg(z: complex) -> float:
    return cmath.phase(z) % (2 * math.pi)


def eigenvalues(g: Sp4Element, tol: float = 1e-8) -> EigenQuadruple:
    """Pair the eigenvalues of the 4x4 image as (mu, nu, conj nu, conj mu).

    Ordering: by decreasing modulus, ties broken by argument in [0, 2 pi).
    ``mu`` is the first; its conjugate is removed; ``nu`` is the last of the
    remaining two.  The pairing is flagged as degenerate when the choice of
    ``nu`` among the remaining pair is not forced (equal moduli).
    """
    ev = list(np.linalg.eigvals(g.to_matrix()))
    key = lambda z: (-round(abs(z) / tol) * tol, round(_arg(z) / tol) * tol)
    ev.sort(key=key)
    mu = ev.pop(0)
    j = min(range(len(ev)), key=lambda i: abs(ev[i] - mu.conjugate()))
    ev.pop(j)
    ev.sort(key=key)
    nu = ev[-1]
    degenerate = abs(abs(ev[0]) - abs(ev[1])) <= tol and abs(ev[0] - ev[1].conjugate()) > tol
    degenerate = degenerate or abs(abs(mu) - abs(nu)) <= tol
    return EigenQuadruple(complex(mu), complex(nu), bool(degenerate))
