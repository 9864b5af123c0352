import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from sunalg import linalg

SX = linalg.cmatrix([[0, 1], [1, 0]])
SY = linalg.cmatrix([[0, -1j], [1j, 0]])
SZ = linalg.cmatrix([[1, 0], [0, -1]])


def test_identity_is_neutral():
    m = linalg.cmatrix([[1, 2j], [3, 4]])
    assert np.array_equal(linalg.matmul(linalg.identity(2), m), m)


def test_pauli_product():
    assert np.array_equal(linalg.matmul(SX, SY), linalg.cmatrix([[1j, 0], [0, -1j]]))


def test_row_times_column_is_scalar():
    out = linalg.matmul(linalg.cmatrix([[1, 2]]), linalg.cmatrix([[3], [4]]))
    assert out.shape == (1, 1) and out[0, 0] == 11


def test_matmul_shape_error_names_both_shapes():
    with pytest.raises(linalg.ShapeError, match=r"\(2, 2\).*\(3, 3\)"):
        linalg.matmul(SX, linalg.identity(3))


def test_commutator_of_half_paulis():
    got = linalg.commutator(SX / 2, SY / 2)
    assert linalg.close(got, 1j * SZ / 2)


def test_anticommutator_of_half_sigma1():
    assert linalg.close(linalg.anticommutator(SX / 2, SX / 2), 0.5 * np.eye(2))


def test_self_commutator_vanishes():
    m = linalg.cmatrix([[1, 2], [3, 4j]])
    assert linalg.max_abs(linalg.commutator(m, m)) == 0


def test_traces():
    assert linalg.trace(linalg.identity(5)) == 5
    assert linalg.trace(linalg.cmatrix(np.zeros((3, 3)))) == 0
    with pytest.raises(linalg.ShapeError):
        linalg.trace(linalg.cmatrix([[1, 2]]))


def test_constructor_rejects_nonfinite_and_bad_shapes():
    with pytest.raises(ValueError):
        linalg.cmatrix([[np.nan, 0], [0, 1]])
    with pytest.raises(linalg.ShapeError):
        linalg.cmatrix([1, 2, 3])
    with pytest.raises(linalg.ShapeError):
        linalg.commutator(SX, linalg.identity(3))


def test_matrices_are_read_only():
    with pytest.raises(ValueError):
        SX[0, 0] = 5


_entries = st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False)


def _square(n):
    return arrays(np.complex128, (n, n), elements=_entries)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(_square(n), _square(n))))
def test_trace_is_cyclic(pair):
    a, b = map(linalg.cmatrix, pair)
    ab, ba = linalg.trace(linalg.matmul(a, b)), linalg.trace(linalg.matmul(b, a))
    scale = 1 + float(np.abs(a).sum() * np.abs(b).sum())
    assert abs(ab - ba) <= 1e-12 * scale


@given(st.integers(1, 5).flatmap(_square))
def test_dagger_is_an_exact_involution(m):
    m = linalg.cmatrix(m)
    assert np.array_equal(linalg.dagger(linalg.dagger(m)), m)


@given(st.integers(1, 4).flatmap(_square))
def test_hermitian_part_is_hermitian(m):
    h = linalg.cmatrix((m + np.conj(m).T) / 2)
    assert linalg.is_hermitian(h)
