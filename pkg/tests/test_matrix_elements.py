import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sp4rep import cquat as cq
from sp4rep import fockbasis as fb
from sp4rep import matrix_elements as me
from sp4rep import series as S
from sp4rep import sp4
from sp4rep.cquat import CQuat
from sp4rep.errors import IndexOutOfRange, NotInGroup, SingularBlock
from sp4rep.fockbasis import RepLabel, ScalarIndex, SpinIndex, Truncation

from conftest import domain_vector

REP = RepLabel(4.0, 0)
SPIN = RepLabel(4.0, 1)
E = sp4.Sp4Element.identity()


def test_identity_oracle():
    z = (0.1, -0.2j, 0.05)
    f = {ScalarIndex(1, 0, 1): 0.5, ScalarIndex(2, 1, 0): -1j}
    want = sum(c * fb.scalar_basis(REP, i, z) for i, c in f.items())
    assert abs(me.apply_scalar_action(REP, E, f, z) - want) < 1e-15
    fs = {SpinIndex(1, 0, 3, 1): 1.0}
    assert np.allclose(me.apply_spin_action(SPIN, E, fs, z), fb.spin_basis(SPIN, SpinIndex(1, 0, 3, 1), z))


def test_constant_under_boost():
    g = sp4.boost(0.3)
    z = CQuat.pure((0.1, 0.2j, -0.1))
    direct = cq.det(sp4.denominator(g, z)) ** -4
    assert abs(me.apply_scalar_action(REP, g, {ScalarIndex(0, 0, 0): 1.0}, z) - direct) < 1e-14


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31))
def test_multiplier_cocycle(seed):
    g1 = sp4.random_element((seed, 1), 0.3)
    g2 = sp4.random_element((seed, 2), 0.3)
    z = CQuat.pure(tuple(domain_vector(np.random.default_rng(seed), 0.4)))
    x = CQuat.pure(sp4.domain_action(g1, z).v)
    g21 = g2 @ g1
    lhs = me.det_power(g21, z, 4.0)
    rhs = me.det_power(g1, z, 4.0) * me.det_power(g2, x, 4.0)
    assert abs(lhs - rhs) < 1e-10 * abs(lhs)
    M = me.spin_multiplier(g21, z, 1)
    Mp = me.spin_multiplier(g1, z, 1) @ me.spin_multiplier(g2, x, 1)
    assert np.abs(M - Mp).max() < 1e-10


def test_boost_vacuum_elements():
    t = 0.1
    val, tail, route = me.scalar_matrix_element(REP, sp4.boost(t), ScalarIndex(0, 0, 0), ScalarIndex(0, 0, 0))
    assert route == "series" and tail == 0.0
    assert abs(val - math.cosh(t) ** -8) < 1e-14
    idx = SpinIndex(0, 0, 1, 1)
    val, _, _ = me.spin_matrix_element(SPIN, sp4.boost(t), idx, idx)
    # det(a-)^(-varsigma - s) D^{1/2}(cosh t) = cosh(t)^(-9 + 1)
    assert abs(val - math.cosh(t) ** -8) < 1e-14


@pytest.mark.parametrize("rep", [RepLabel(4.0, 0), RepLabel(5.0, 0), RepLabel(4.0, 1), RepLabel(5.0, 1)])
def test_oracle_agreement(rep):
    g = sp4.random_element(21, 0.2)
    rng = np.random.default_rng(2)
    idxs = fb.scalar_indices(1) if rep.s_x2 == 0 else fb.spin_indices(1, 1)
    for z in (domain_vector(rng, 0.25) for _ in range(3)):
        for idx in idxs:
            err, tail = me.oracle_residual(rep, g, idx, z, 12)
            assert err < 1e-8


def test_oracle_error_decreases():
    g = sp4.random_element(22, 0.2)
    z = domain_vector(np.random.default_rng(3), 0.25)
    errs = [me.oracle_residual(REP, g, ScalarIndex(1, 0, 0), z, lm)[0] for lm in (1, 2, 4)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-10


def test_spin_zero_equals_scalar():
    g = sp4.random_element(5, 0.2)
    for a in fb.scalar_indices(2):
        for b in fb.scalar_indices(2):
            sa = SpinIndex(a.l, a.k, 2 * (a.l - 2 * a.k), 2 * a.m)
            sb = SpinIndex(b.l, b.k, 2 * (b.l - 2 * b.k), 2 * b.m)
            assert me.spin_matrix_element(REP, g, sa, sb) == me.scalar_matrix_element(REP, g, a, b)


def test_identity_is_identity():
    for rep in (REP, SPIN, RepLabel(5.0, 2)):
        for l in range(4):
            B = me.matrix_block(rep, E, l, l)
            assert np.abs(B - np.eye(len(B))).max() < 1e-14
            assert not np.any(me.matrix_block(rep, E, l, l + 1))


def test_diagonal_element_is_diagonal():
    g = sp4.make_diagonal(np.exp(0.4j), np.exp(-1.1j))
    for rep in (REP, SPIN):
        for l in range(4):
            B = me.matrix_block(rep, g, l, l)
            assert np.abs(B - np.diag(np.diag(B))).max() < 1e-12


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**31))
def test_compact_blocks_unitary_and_exact(seed):
    k = sp4.random_element(seed, 0.0)
    z = domain_vector(np.random.default_rng(seed), 0.3)
    for rep in (REP, SPIN):
        for l in range(3):
            B = me.matrix_block(rep, k, l, l)
            assert np.abs(B @ B.conj().T - np.eye(len(B))).max() < 1e-10
        idx = me.level_indices(rep, 2)[1]
        assert me.oracle_residual(rep, k, idx, z, 3)[0] < 1e-11


def test_b_factor_is_finite():
    eng = me.SeriesEngine(sp4.random_element(8, 0.2), 4.0, 8)
    lay = S.layout(8)
    for k in range(4):
        bt = eng.b_term(k)
        assert not np.any(bt[..., lay.deg > 2 * k])
        assert np.any(bt[..., lay.deg == 2 * k])


def test_errors():
    with pytest.raises(IndexOutOfRange):
        me.scalar_matrix_element(REP, sp4.boost(0.1), ScalarIndex(0, 0, 0), ScalarIndex(5, 0, 0),
                                 Truncation(l_max=4))
    with pytest.raises(SingularBlock):
        me.SeriesEngine(E, 4.0, 4)
    g = sp4.random_element(3, 0.2)
    bad = sp4.Sp4Element(g.a + CQuat(0.0, (0.05j, 0, 0)), g.b)
    with pytest.raises(NotInGroup):
        me.SeriesEngine(bad, 4.0, 4)


def test_homomorphism_defect_shrinks():
    g1 = sp4.random_element(31, 0.2)
    g2 = sp4.random_element(32, 0.2)
    g12 = g1 @ g2
    n0 = 4  # levels 0 and 1
    out = []
    for n in (2, 4, 6):
        M1 = me.truncated_matrix(REP, g1, n, n)
        M2 = me.truncated_matrix(REP, g2, n, n)
        M12 = me.truncated_matrix(REP, g12, n, n)
        out.append(np.abs((M1 @ M2)[:n0, :n0] - M12[:n0, :n0]).max())
    assert out[0] > out[1] > out[2]
