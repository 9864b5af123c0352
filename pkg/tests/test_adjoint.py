from fractions import Fraction

import numpy as np
import pytest

from sunalg import basis
from sunalg.adjoint import adjoint_casimirs, adjoint_for, build_adjoint
from sunalg.basis import IntegrityError, Rank3Tensor


def test_su2_spin_one():
    adj = adjoint_for(2)
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1
    assert np.array_equal(adj.F, -1j * eps)
    assert not np.any(adj.D)


def test_su3_traces():
    adj = adjoint_for(3)
    assert abs(np.trace(adj.F[0] @ adj.F[0]) - 3) < 1e-14
    fd = np.einsum("aij,bji->ab", adj.F, adj.D)
    assert np.max(np.abs(fd)) < 1e-14


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_matrix_invariants(n):
    adj = adjoint_for(n)
    F, D = adj.F, adj.D
    assert not np.any(F.real)
    assert np.array_equal(F, np.conj(F.transpose(0, 2, 1)))
    assert np.array_equal(D, D.transpose(0, 2, 1))
    assert np.max(np.abs(np.trace(D, axis1=1, axis2=2))) < 1e-14


@pytest.mark.parametrize("n,dd", [(2, Fraction(0)), (3, Fraction(5, 3)), (4, Fraction(3)),
                                  (5, Fraction(21, 5))])
def test_casimirs(n, dd):
    cas = adjoint_casimirs(adjoint_for(n))
    assert cas.c_a == n
    assert cas.dd_scalar == dd
    assert cas.fd_residual < 1e-14


@pytest.mark.parametrize("n", [3, 4])
def test_jacobi_commutator(n):
    adj, (_, f, _) = adjoint_for(n), basis.tensors_for(n)
    F = adj.F
    lhs = np.einsum("aij,bjk->abik", F, F) - np.einsum("bij,ajk->abik", F, F)
    rhs = 1j * np.einsum("abc,cik->abik", f.dense, F)
    assert np.max(np.abs(lhs - rhs)) < 1e-13


def test_mismatched_inputs():
    _, f2, _ = basis.tensors_for(2)
    _, f3, d3 = basis.tensors_for(3)
    with pytest.raises(ValueError):
        build_adjoint(f2, d3)
    with pytest.raises(ValueError):
        build_adjoint(d3, f3)


def test_corrupted_d_is_caught():
    _, f, d = basis.tensors_for(3)
    bad = dict(d.entries)
    bad[(1, 1, 1)] = 0.3  # makes D^1 carry a trace
    with pytest.raises(IntegrityError):
        build_adjoint(f, Rank3Tensor(3, "symmetric", bad))
