import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smoothconst import spinor2d, weights


def test_pauli_algebra_is_exact():
    assert spinor2d.anticommutation_defect() == 0.0
    assert spinor2d.hermitian_defect() == 0.0


def test_anticommutation_detects_bad_matrices():
    bad = (spinor2d.SIGMA1, spinor2d.SIGMA1, spinor2d.SIGMA3)
    assert spinor2d.anticommutation_defect(bad) == 2.0


@pytest.mark.parametrize("k, mu, expected", [(0, 1, (0, 1)), (3, 1, (3, 4)), (0, -1, (-1, 0)), (2, -1, (-3, -2))])
def test_degrees(k, mu, expected):
    assert spinor2d.degrees(k, mu) == expected


def test_degrees_rejects_bad_sign():
    with pytest.raises(ValueError):
        spinor2d.degrees(0, 0)


def test_basis_is_orthonormal_on_circle():
    theta = np.linspace(0, 2 * math.pi, 257)[:-1]
    e = np.array([spinor2d.basis_matrix(2, 1, t) for t in theta])
    gram = np.einsum("tij,tkj->ik", e, e.conj()) * (2 * math.pi / theta.size)
    assert np.allclose(gram, np.eye(2), atol=1e-13)


@settings(max_examples=50, deadline=None)
@given(
    k=st.integers(0, 8),
    mu=st.sampled_from([1, -1]),
    x=st.floats(-10, 10),
    y=st.floats(-10, 10),
    m=st.floats(0, 5),
)
def test_intertwining_identities(k, mu, x, y, m):
    if math.hypot(x, y) < 1e-3:
        return
    defects = spinor2d.intertwining_defects(k, mu, (x, y), m)
    scale = x * x + y * y + m * m
    assert defects["symbol_square"] <= 1e-13 * scale
    assert defects["massless_symbol"] <= 1e-12 * math.hypot(x, y)
    assert defects["mass_term"] <= 1e-15
    assert defects["projector"] <= 1e-12


def test_full_projector_properties():
    p = spinor2d.full_projector(1, (0.3, -1.2), 0.7)
    q = spinor2d.full_projector(-1, (0.3, -1.2), 0.7)
    assert np.allclose(p @ p, p) and np.allclose(p + q, np.eye(2)) and np.allclose(p, p.conj().T)


@pytest.mark.parametrize("pair", [weights.gaussian(), weights.bessel_k0()])
@pytest.mark.parametrize("k", [0, 2])
@pytest.mark.parametrize("mu", [1, -1])
def test_circle_convolution(pair, k, mu):
    lhs, rhs = spinor2d.funk_hecke_circle(pair, k, mu, (1.1, 0.4))
    assert np.max(np.abs(lhs - rhs)) <= 1e-8 * np.max(np.abs(rhs))
