import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings

from sp4rep import cquat as cq
from sp4rep import sp4
from sp4rep.cquat import CQuat
from sp4rep.errors import DeterminantNotOne, NotInGroup

from conftest import seeds

E = sp4.Sp4Element.identity()


def is_identity(g, tol=1e-10):
    return (g.a - CQuat.one()).norm_max() <= tol and g.b.norm_max() <= tol


def test_membership_examples():
    ok, worst = sp4.check_membership(E)
    assert ok and worst == 0
    assert sp4.check_membership(sp4.boost(0.3))[0]
    assert not sp4.check_membership(sp4.Sp4Element(CQuat.one(), CQuat.one()))[0]


def test_inverse_examples():
    assert is_identity(sp4.inverse(E))
    inv = sp4.inverse(sp4.boost(0.4))
    ref = sp4.boost(-0.4)
    assert (inv.a - ref.a).norm_max() < 1e-15 and (inv.b - ref.b).norm_max() < 1e-15
    with pytest.raises(NotInGroup):
        sp4.inverse(sp4.Sp4Element(CQuat.one(), CQuat.one()))


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_random_elements(seed):
    g = sp4.random_element(seed, 1.0)
    assert sp4.check_membership(g)[0]
    assert is_identity(g @ sp4.inverse(g))
    assert abs(np.linalg.det(g.to_matrix()) - 1) < 1e-10
    h = sp4.random_element(seed, 1.0)
    assert g == h
    assert sp4.random_element(seed, 0.0).b.norm_max() == 0.0


def test_inverse_matches_matrix_inverse():
    g = sp4.random_element(1, 0.5)
    assert np.allclose(sp4.inverse(g).to_matrix(), np.linalg.inv(g.to_matrix()), atol=1e-10)


def test_domain_action_examples():
    z = CQuat.pure((0.1 + 0.2j, -0.3, 0.05j))
    assert (sp4.domain_action(E, z) - z).norm_max() < 1e-15
    a = sp4.random_unitary_quaternion(np.random.default_rng(3))
    conj = a * z * cq.inverse(cq.conj_complex(a))
    assert (sp4.domain_action(sp4.compact(a), z) - conj).norm_max() < 1e-14
    w = sp4.domain_action(sp4.boost(0.3), CQuat.pure((0, 0, 0)))
    assert (w - CQuat.pure((math.tanh(0.3), 0, 0))).norm_max() < 1e-15


@settings(max_examples=100, deadline=None)
@given(seeds, seeds)
def test_left_action(s1, s2):
    g1 = sp4.random_element(s1, 0.3)
    g2 = sp4.random_element(s2, 0.3)
    rng = np.random.default_rng(s1 ^ s2)
    v = rng.normal(size=3) + 1j * rng.normal(size=3)
    z = CQuat.pure(0.5 * rng.uniform() * v / np.linalg.norm(v))
    lhs = sp4.domain_action(sp4.inverse(g1 @ g2), z)
    rhs = sp4.domain_action(sp4.inverse(g2), sp4.domain_action(sp4.inverse(g1), z))
    assert (lhs - rhs).norm_max() < 1e-10


def test_in_domain():
    assert sp4.in_domain(CQuat.pure((0, 0, 0)))
    assert sp4.in_domain(CQuat.pure((0.99, 0, 0)))
    assert not sp4.in_domain(CQuat.pure((1.01, 0, 0)))
    m = cq.to_matrix(CQuat.pure((0.9j, 0, 0)))
    expect = np.linalg.eigvalsh(m @ m.conj().T).max() < 1
    assert sp4.in_domain(CQuat.pure((0.9j, 0, 0))) == expect


def test_eigenvalue_examples():
    q = sp4.eigenvalues(E)
    assert abs(q.mu - 1) < 1e-8 and abs(q.nu - 1) < 1e-8
    th = 0.7
    g = sp4.Sp4Element(CQuat(math.cos(th), (0, 0, math.sin(th))), CQuat.zero())
    q = sp4.eigenvalues(g)
    assert {round(q.mu.imag, 10), round(q.nu.imag, 10)} <= {round(math.sin(th), 10), round(-math.sin(th), 10)}
    assert abs(q.mu * q.mu.conjugate() - 1) < 1e-10


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_eigenvalues_reciprocal_and_conjugate_closed(seed):
    g = sp4.random_element(seed, 1.0)
    ev = np.linalg.eigvals(g.to_matrix())
    evi = np.linalg.eigvals(sp4.inverse(g).to_matrix())
    assert max(min(abs(a - 1 / b) for b in ev) for a in evi) < 1e-8
    q = sp4.eigenvalues(g)
    quad = q.as_tuple()
    for x in quad:
        assert min(abs(x.conjugate() - y) for y in quad) < 1e-8


def test_make_diagonal():
    assert is_identity(sp4.make_diagonal(1, 1))
    g = sp4.make_diagonal(cmath.exp(1j * math.pi / 3), cmath.exp(-1j * math.pi / 3))
    ref = CQuat(math.cos(math.pi / 3), (0, 0, math.sin(math.pi / 3)))
    assert (g.a - ref).norm_max() < 1e-15 and g.in_group
    h = sp4.make_diagonal(0.8 * cmath.exp(0.4j), 1.25 * cmath.exp(-0.4j))
    assert not h.in_group
    assert abs(np.linalg.det(h.to_matrix()) - 1) < 1e-12
    with pytest.raises(DeterminantNotOne):
        sp4.make_diagonal(2, 1)
