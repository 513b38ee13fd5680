import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import sph_harm_y

from sp4rep import harmonics as hm
from sp4rep import wigner as wg
from sp4rep.cquat import CQuat

from conftest import complex_unit, domain_vector


def test_low_degree_values():
    z = (0.2 + 0.1j, -0.3j, 0.4)
    assert abs(hm.solid_harmonic(0, 0, z) - 1 / math.sqrt(4 * math.pi)) < 1e-15
    assert abs(hm.solid_harmonic(1, 0, z) - math.sqrt(3 / (4 * math.pi)) * z[2]) < 1e-15


def test_matches_scipy_on_real_points():
    rng = np.random.default_rng(0)
    for _ in range(20):
        x = rng.normal(size=3)
        r = np.linalg.norm(x)
        theta, phi = math.acos(x[2] / r), math.atan2(x[1], x[0])
        for l in range(7):
            for m in range(-l, l + 1):
                want = r ** l * complex(sph_harm_y(l, m, theta, phi))
                assert abs(hm.solid_harmonic(l, m, x) - want) < 1e-12 * max(1, abs(want))


@settings(max_examples=40, deadline=None)
@given(complex_unit, st.integers(0, 6), st.integers(0, 2**31))
def test_homogeneity(c, l, seed):
    z = domain_vector(np.random.default_rng(seed), 0.9)
    for m in range(-l, l + 1):
        a = hm.solid_harmonic(l, m, c * z)
        b = c ** l * hm.solid_harmonic(l, m, z)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(b))


def test_harmonic_exactly():
    for l in range(9):
        for m in range(l + 1):
            assert hm.laplacian_terms(l, m) == {}


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31))
def test_linearization(seed):
    z = domain_vector(np.random.default_rng(seed), 0.9)
    Y = hm.harmonics_upto(3, z)
    for l1 in range(4):
        for m1 in range(-l1, l1 + 1):
            for l2 in range(4):
                for m2 in range(-l2, l2 + 1):
                    assert abs(hm.product_expand(l1, m1, l2, m2, z) - Y[l1][m1 + l1] * Y[l2][m2 + l2]) < 1e-13


def test_linearization_parity_rule():
    for l1, l2, l3 in [(1, 1, 1), (2, 1, 2), (2, 2, 3)]:
        assert hm.linearization_coeff(l1, 0, l2, 0, l3) == 0.0


def test_y_from_d():
    z = CQuat.pure((0.2 + 0.1j, -0.3j, 0.4))
    assert abs(hm.y_from_d(0, 0, z) - 1 / math.sqrt(4 * math.pi)) < 1e-15
    shifted = CQuat(0.7, z.v)
    assert abs(hm.y_from_d(1, 0, z) - hm.y_from_d(1, 0, shifted)) < 1e-12
    for l in range(7):
        for m in range(-l, l + 1):
            assert abs(hm.y_from_d(l, m, z) - hm.solid_harmonic(l, m, z.v)) < 1e-12
            assert abs(hm.y_from_d(l, m, CQuat(0.4 - 0.2j, z.v)) - hm.solid_harmonic(l, m, z.v)) < 1e-12


def test_d_from_y():
    z = (0.2 + 0.1j, -0.3j, 0.4)
    assert abs(hm.d_from_y(0, 0, 0, z) - 1) < 1e-15
    for l in range(7):
        D = wg.wigner_d_matrix(Fraction(l, 2), CQuat.pure(z))
        for i1 in range(l + 1):
            for i2 in range(l + 1):
                v = hm.d_from_y(l, Fraction(l - 2 * i1, 2), Fraction(l - 2 * i2, 2), z)
                assert abs(v - D[i1, i2]) < 1e-12


def test_round_trip_at_l2():
    # Y built from D, with D rebuilt from Y
    z = (0.1 - 0.2j, 0.3, 0.25j)
    for m in range(-2, 3):
        total = 0
        for (a, b), w in hm.y_from_d_weights(2, m).items():
            total += w * hm.d_from_y(2, Fraction(a, 2), Fraction(b, 2), z)
        assert abs(total - hm.solid_harmonic(2, m, z)) < 1e-11
