import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpt.errors import ZeroFiducialError
from qpt.hilbert import (
    hermitian_tensor_at,
    inner,
    is_hermitian,
    is_skew_hermitian,
    is_unitary,
    norm,
    projective_tensor_at,
)

E1 = np.array([1, 0], dtype=complex)
E2 = np.array([0, 1], dtype=complex)


def complex_numbers(max_abs=3.0):
    finite = st.floats(-max_abs, max_abs, allow_nan=False, allow_infinity=False)
    return st.builds(complex, finite, finite)


def vectors(dim=3):
    return st.lists(complex_numbers(), min_size=dim, max_size=dim).map(np.array)


def test_inner_orthonormal_basis():
    assert inner(E1, E2) == 0


def test_inner_unit_norm():
    v = np.array([1, 1j]) / np.sqrt(2)
    assert inner(v, v) == pytest.approx(1)


def test_inner_linearity_second_slot():
    assert inner([1, 0], [3 + 4j, 0]) == pytest.approx(3 + 4j)


def test_inner_conjugate_symmetry():
    u = np.array([1 + 2j, -0.5j, 3])
    v = np.array([0.2, 1j, -1 + 1j])
    assert inner(u, v) == pytest.approx(np.conj(inner(v, u)))


def test_inner_dimension_mismatch():
    with pytest.raises(ValueError):
        inner([1, 0], [1, 0, 0])


@settings(deadline=None, max_examples=50)
@given(vectors(), vectors(), vectors(), complex_numbers(), complex_numbers())
def test_inner_sesquilinearity(phi, chi, psi, a, b):
    lhs = inner(a * phi + b * chi, psi)
    rhs = np.conj(a) * inner(phi, psi) + np.conj(b) * inner(chi, psi)
    assert abs(lhs - rhs) <= 1e-12


def test_hermitian_tensor_basis_values():
    t = hermitian_tensor_at(E1, E1, E1)
    assert (t.value, t.real_part, t.imag_part) == (1, 1, 0)
    t = hermitian_tensor_at(E1, E1, 1j * E1)
    assert (t.value, t.real_part, t.imag_part) == (1j, 0, 1)
    assert hermitian_tensor_at(E1, E1, E2).value == 0


def test_hermitian_tensor_base_point_independent():
    rng = np.random.default_rng(7)
    u = rng.normal(size=2) + 1j * rng.normal(size=2)
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    a = hermitian_tensor_at(E1, u, v).value
    b = hermitian_tensor_at(E1 + 2j * E2, u, v).value
    assert a == b


def test_projective_tensor_anchor_value():
    # psi = e1, u = v = e2: 1/1 - 0 = 1, the ray-space normalization anchor.
    assert projective_tensor_at(E1, E2, E2).value == pytest.approx(1)


@settings(deadline=None, max_examples=50)
@given(vectors(), vectors())
def test_projective_degeneracy_directions(psi, v):
    if np.linalg.norm(psi) < 1e-3:
        psi = psi + np.array([1.0, 0, 0])
    assert abs(projective_tensor_at(psi, psi, v).value) <= 1e-12
    assert abs(projective_tensor_at(psi, 1j * psi, v).value) <= 1e-12
    assert abs(projective_tensor_at(psi, v, psi).value) <= 1e-12


@settings(deadline=None, max_examples=50)
@given(vectors(), vectors(), vectors(), complex_numbers())
def test_projective_scale_invariance(psi, u, v, lam):
    if np.linalg.norm(psi) < 1e-3:
        psi = psi + np.array([1.0, 0, 0])
    if abs(lam) < 1e-3:
        lam += 1.0
    base = projective_tensor_at(psi, u, v).value
    moved = projective_tensor_at(lam * psi, lam * u, lam * v).value
    assert abs(moved - base) <= 1e-10 * max(1.0, abs(base))


def test_projective_hermitian_split_symmetry():
    rng = np.random.default_rng(3)
    psi, u, v = (rng.normal(size=4) + 1j * rng.normal(size=4) for _ in range(3))
    t_uv = projective_tensor_at(psi, u, v)
    t_vu = projective_tensor_at(psi, v, u)
    assert t_uv.real_part == pytest.approx(t_vu.real_part, abs=1e-12)
    assert t_uv.imag_part == pytest.approx(-t_vu.imag_part, abs=1e-12)


def test_projective_zero_fiducial_rejected():
    with pytest.raises(ZeroFiducialError):
        projective_tensor_at([0, 0], E1, E1)


def test_tensor_value_consistency():
    t = projective_tensor_at(E1, E2, 1j * E2)
    assert t.value == pytest.approx(t.real_part + 1j * t.imag_part)


def test_norm():
    assert norm([3, 4j]) == pytest.approx(5)


def test_operator_predicates():
    sy = np.array([[0, -1j], [1j, 0]])
    assert is_hermitian(sy)
    assert is_unitary(sy)
    assert is_skew_hermitian(1j * sy)
    assert not is_hermitian([[0, 1], [0, 0]])
    assert not is_unitary([[1, 0], [0, 2]])
