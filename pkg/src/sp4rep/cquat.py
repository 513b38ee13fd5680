"""Complex quaternions.

A complex quaternion is stored as ``(w4, (z1, z2, z3))``: a complex scalar part
and a complex 3-vector.  The basis vectors obey ``e_i e_j = eps_ijk e_k`` and
``e_i^2 = -1``.  The algebra is isomorphic to 2x2 complex matrices through

    z  ->  [[w4 + i z3,  i z1 - z2],
            [i z1 + z2,  w4 - i z3]]

which is what :func:`to_matrix` returns.
"""
from __future__ import annotations

import numpy as np

from .errors import SingularQuaternion

EPSILON_SINGULAR = 1e-14


class CQuat:
    """Immutable complex quaternion."""

    __slots__ = ("w4", "v")

    def __init__(self, w4=0.0, v=(0.0, 0.0, 0.0)):
        object.__setattr__(self, "w4", complex(w4))
        object.__setattr__(self, "v", tuple(complex(c) for c in v))
        if len(self.v) != 3:
            raise ValueError("vector part must have three components")

    def __setattr__(self, name, value):
        raise AttributeError("CQuat is immutable")

    @classmethod
    def from_components(cls, z1, z2, z3, z4):
        return cls(z4, (z1, z2, z3))

    @classmethod
    def pure(cls, v):
        return cls(0.0, v)

    @classmethod
    def one(cls):
        return cls(1.0)

    @classmethod
    def zero(cls):
        return cls(0.0)

    @classmethod
    def from_matrix(cls, m) -> "CQuat":
        """Inverse of :func:`to_matrix`."""
        m = np.asarray(m, dtype=complex)
        w4 = (m[0, 0] + m[1, 1]) / 2
        z3 = (m[0, 0] - m[1, 1]) / 2j
        z1 = (m[0, 1] + m[1, 0]) / 2j
        z2 = (m[1, 0] - m[0, 1]) / 2
        return cls(w4, (z1, z2, z3))

    @property
    def z1(self):
        return self.v[0]

    @property
    def z2(self):
        return self.v[1]

    @property
    def z3(self):
        return self.v[2]

    def components(self):
        """Return ``(z1, z2, z3, z4)``."""
        return (*self.v, self.w4)

    def __iter__(self):
        yield from self.components()

    def __repr__(self):
        return f"CQuat({self.w4!r}, {self.v!r})"

    def __eq__(self, other):
        if not isinstance(other, CQuat):
            return NotImplemented
        return self.w4 == other.w4 and self.v == other.v

    def __hash__(self):
        return hash((self.w4, self.v))

    def __add__(self, other):
        if isinstance(other, CQuat):
            return CQuat(self.w4 + other.w4, tuple(a + b for a, b in zip(self.v, other.v)))
        return CQuat(self.w4 + other, self.v)

    __radd__ = __add__

    def __neg__(self):
        return CQuat(-self.w4, tuple(-a for a in self.v))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CQuat):
            return mul(self, other)
        return CQuat(self.w4 * other, tuple(a * other for a in self.v))

    def __rmul__(self, other):
        return CQuat(self.w4 * other, tuple(a * other for a in self.v))

    def __truediv__(self, scalar):
        return CQuat(self.w4 / scalar, tuple(a / scalar for a in self.v))

    def norm_max(self) -> float:
        return max(abs(c) for c in self.components())

    def is_close(self, other, tol=1e-12) -> bool:
        return (self - other).norm_max() <= tol


def dot(u, v):
    """Complex-bilinear (not Hermitian) dot product of 3-vectors."""
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def mul(x: CQuat, y: CQuat) -> CQuat:
    xv, yv = x.v, y.v
    c = cross(xv, yv)
    return CQuat(
        x.w4 * y.w4 - dot(xv, yv),
        tuple(x.w4 * yv[i] + y.w4 * xv[i] + c[i] for i in range(3)),
    )


def conj_complex(z: CQuat) -> CQuat:
    return CQuat(z.w4.conjugate(), tuple(a.conjugate() for a in z.v))


def conj_quat(z: CQuat) -> CQuat:
    return CQuat(z.w4, tuple(-a for a in z.v))


def adjoint(z: CQuat) -> CQuat:
    return CQuat(z.w4.conjugate(), tuple(-a.conjugate() for a in z.v))


def det(z: CQuat) -> complex:
    return z.w4 * z.w4 + dot(z.v, z.v)


def inverse(z: CQuat, eps: float = EPSILON_SINGULAR) -> CQuat:
    d = det(z)
    # null quaternions can have large components; only det matters
    if abs(d) <= eps:
        raise SingularQuaternion(f"det z = {d!r} is below {eps:g}")
    return conj_quat(z) / d


def is_pure(z: CQuat, tol: float = 1e-12) -> bool:
    return abs(z.w4) <= tol


def to_matrix(z: CQuat) -> np.ndarray:
    z1, z2, z3 = z.v
    w = z.w4
    return np.array(
        [[w + 1j * z3, 1j * z1 - z2],
         [1j * z1 + z2, w - 1j * z3]],
        dtype=complex,
    )


def random_cquat(rng: np.random.Generator, radius: float = 1.0) -> CQuat:
    """Components drawn uniformly from the complex disk of the given radius."""
    r = radius * np.sqrt(rng.uniform(size=4))
    phi = rng.uniform(0, 2 * np.pi, size=4)
    c = r * np.exp(1j * phi)
    return CQuat(c[3], (c[0], c[1], c[2]))
