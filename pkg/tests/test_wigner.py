import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.physics.wigner import clebsch_gordan as sym_cg
from sympy.physics.wigner import wigner_3j as sym_3j
from sympy import Rational

from sp4rep import cquat as cq
from sp4rep import wigner as wg
from sp4rep.cquat import CQuat

from conftest import cquats, real_unit_quaternion

half = Fraction(1, 2)


def test_sigma_values():
    assert wg.sigma(0, 0) == 1
    assert wg.sigma(half, half) == 1
    assert wg.sigma(1, 0) == 1


def test_d_small_cases():
    z = CQuat(0.3 + 0.1j, (0.2, -0.4j, 0.7))
    assert wg.wigner_d_matrix(0, z)[0, 0] == 1
    for j2 in range(7):
        assert np.allclose(wg.wigner_d_matrix(Fraction(j2, 2), CQuat.one()), np.eye(j2 + 1))


def test_half_spin_matches_matrix_image():
    # D^{1/2}_{m1 m2} = (-1)^(m1 - m2) Z[i(m1), i(m2)] with i(-1/2) = 0, i(1/2) = 1
    z = CQuat(0.3 + 0.1j, (0.2, -0.4j, 0.7))
    Z = cq.to_matrix(z)
    D = wg.wigner_d_matrix(half, z)
    pos = {1: 1, -1: 0}
    for i1, a in enumerate((1, -1)):
        for i2, b in enumerate((1, -1)):
            sign = -1 if ((a - b) // 2) % 2 else 1
            assert abs(D[i1, i2] - sign * Z[pos[a], pos[b]]) < 1e-15


@settings(max_examples=60, deadline=None)
@given(cquats, cquats, st.integers(min_value=0, max_value=6))
def test_homomorphism(z, zp, j2):
    j = Fraction(j2, 2)
    lhs = wg.wigner_d_matrix(j, z * zp)
    rhs = wg.wigner_d_matrix(j, z) @ wg.wigner_d_matrix(j, zp)
    assert np.abs(lhs - rhs).max() <= 1e-11 * max(1.0, np.abs(rhs).max())


def test_unitarity_on_su2():
    rng = np.random.default_rng(5)
    for _ in range(20):
        xi = real_unit_quaternion(rng)
        for j2 in range(7):
            D = wg.wigner_d_matrix(Fraction(j2, 2), xi)
            assert np.abs(D.conj().T @ D - np.eye(j2 + 1)).max() < 1e-12


def test_harmonic_exactly():
    for j2 in range(9):
        for a in range(-j2, j2 + 1, 2):
            for b in range(-j2, j2 + 1, 2):
                assert wg.laplacian_terms(Fraction(j2, 2), Fraction(a, 2), Fraction(b, 2)) == {}


def test_three_j_examples():
    assert abs(wg.three_j(1, 1, 0, 0, 0, 0) + 1 / math.sqrt(3)) < 1e-15
    assert wg.three_j(1, 1, 1, 0, 0, 0) == 0.0
    assert abs(wg.three_j(1, 1, 0, 1, -1, 0) - float(sym_3j(1, 1, 0, 1, -1, 0))) < 1e-15


def test_three_j_against_sympy():
    for j1 in range(5):
        for j2 in range(5):
            for j3 in range(abs(j1 - j2), j1 + j2 + 1, 2):
                for m1 in range(-j1, j1 + 1, 2):
                    for m2 in range(-j2, j2 + 1, 2):
                        m3 = -m1 - m2
                        if abs(m3) > j3:
                            continue
                        ref = float(sym_3j(Rational(j1, 2), Rational(j2, 2), Rational(j3, 2),
                                           Rational(m1, 2), Rational(m2, 2), Rational(m3, 2)))
                        assert abs(wg.three_j_x2(j1, j2, j3, m1, m2, m3) - ref) < 1e-14


def test_clebsch_gordan():
    ref = float(sym_cg(Rational(1, 2), Rational(1, 2), 0, Rational(1, 2), Rational(-1, 2), 0))
    assert abs(wg.clebsch_gordan(half, half, half, -half, 0, 0) - ref) < 1e-15
    for j2 in range(6):
        for m2 in range(-j2, j2 + 1, 2):
            assert abs(wg.cg_x2(j2, m2, 0, 0, j2, m2) - 1) < 1e-15
    assert wg.clebsch_gordan(1, 0, 1, 0, 1, 0) == 0.0


def test_three_j_orthogonality():
    for j1 in range(5):
        for j2 in range(5):
            for J in range(abs(j1 - j2), j1 + j2 + 1, 2):
                for Jp in range(abs(j1 - j2), j1 + j2 + 1, 2):
                    for M in range(-J, J + 1, 2):
                        for Mp in range(-Jp, Jp + 1, 2):
                            s = sum(wg.three_j_x2(j1, j2, J, a, b, M) * wg.three_j_x2(j1, j2, Jp, a, b, Mp)
                                    for a in range(-j1, j1 + 1, 2) for b in range(-j2, j2 + 1, 2))
                            assert abs((J + 1) * s - (J == Jp and M == Mp)) < 1e-13


def test_zero_m_closed_form_exact():
    for a in range(7):
        for b in range(7):
            for c in range(7):
                assert wg.three_j_zero_m_exact(a, b, c) == wg.three_j_exact_x2(2 * a, 2 * b, 2 * c, 0, 0, 0)


@pytest.mark.parametrize("j, jp", [(0, 0), (half, half), (1, half), (Fraction(3, 2), 1)])
def test_tensor_reduction(j, jp):
    z = real_unit_quaternion(np.random.default_rng(11))
    assert wg.tensor_reduce_check(j, jp, z) < 1e-12


def test_tensor_reduction_needs_su2():
    with pytest.raises(ValueError):
        wg.tensor_reduce_check(half, half, CQuat(0.5 + 0.1j, (0.1, 0, 0)))


def test_addition_theorem():
    rng = np.random.default_rng(2)
    z, zp = cq.random_cquat(rng), cq.random_cquat(rng)
    for j2 in range(5):
        D = wg.wigner_d_matrix(Fraction(j2, 2), z + zp)
        D0 = wg.wigner_d_matrix(Fraction(j2, 2), z)
        for i1 in range(j2 + 1):
            for i2 in range(j2 + 1):
                m1, m2 = Fraction(j2 - 2 * i1, 2), Fraction(j2 - 2 * i2, 2)
                s = wg.addition_theorem_sum(Fraction(j2, 2), m1, m2, z, zp)
                assert abs(s - D[i1, i2]) < 1e-12
                zero = wg.addition_theorem_sum(Fraction(j2, 2), m1, m2, z, CQuat.zero())
                assert abs(zero - D0[i1, i2]) < 1e-13


def test_inverse_addition():
    zp = CQuat(1.0, (0.1, 0.2j, 0.0))
    z = CQuat(0.05, (0.02j, -0.03, 0.01))
    for j2 in range(3):
        j = Fraction(j2, 2)
        ref = wg.wigner_d_matrix(j, cq.inverse(z + zp)) / cq.det(z + zp)
        for i1 in range(j2 + 1):
            for i2 in range(j2 + 1):
                m1, m2 = Fraction(j2 - 2 * i1, 2), Fraction(j2 - 2 * i2, 2)
                val, tail = wg.inverse_addition_sum(j, m1, m2, z, zp, 12, return_tail=True)
                assert abs(val - ref[i1, i2]) < 1e-10
        zero = wg.inverse_addition_sum(j, j, j, CQuat.zero(), zp, 0)
        assert abs(zero - wg.wigner_d_matrix(j, cq.inverse(zp))[0, 0] / cq.det(zp)) < 1e-14


def test_product_expansion_half():
    rng = np.random.default_rng(4)
    z, zp = cq.random_cquat(rng), cq.random_cquat(rng)
    D = wg.wigner_d_matrix(half, z * zp)
    assert abs(wg.product_expansion(half, half, -half, z, zp) - D[0, 1]) < 1e-14
