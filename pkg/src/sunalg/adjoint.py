"""Adjoint-representation matrices (F^a)_bc = -i f_abc and (D^a)_bc = d_abc."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .basis import IntegrityError, Rank3Tensor, tensors_for


@dataclass(frozen=True, eq=False)
class AdjointSet:
    n: int
    F: np.ndarray  # (dim, dim, dim); F[a] is the matrix F^{a+1}
    D: np.ndarray

    @property
    def dim(self) -> int:
        return self.n * self.n - 1


@dataclass(frozen=True)
class AdjointCasimirs:
    c_a: Fraction
    dd_scalar: Fraction
    fd_residual: float


def build_adjoint(f: Rank3Tensor, d: Rank3Tensor, tol: float = linalg.DEFAULT_TOL) -> AdjointSet:
    if f.n != d.n:
        raise ValueError(f"f is for N={f.n} but d is for N={d.n}")
    if f.symmetry != "antisymmetric" or d.symmetry != "symmetric":
        raise ValueError("build_adjoint(f, d) expects the antisymmetric tensor first")
    F = -1j * f.dense
    D = d.dense.astype(complex)
    F.setflags(write=False)
    D.setflags(write=False)
    herm = float(np.max(np.abs(F - np.conj(F.transpose(0, 2, 1)))))
    if herm > tol or np.max(np.abs(F.real)) > 0:
        raise IntegrityError(f"F^a not hermitian and imaginary (residual {herm:.3g})")
    sym = float(np.max(np.abs(D - D.transpose(0, 2, 1))))
    tr = float(np.max(np.abs(np.trace(D, axis1=1, axis2=2))))
    if sym > tol or tr > tol:
        raise IntegrityError(f"D^a not symmetric traceless (sym {sym:.3g}, trace {tr:.3g})")
    return AdjointSet(f.n, F, D)


@lru_cache(maxsize=16)
def adjoint_for(n: int) -> AdjointSet:
    _, f, d = tensors_for(n)
    return build_adjoint(f, d)


def _proportional(mat, scalar, what, tol):
    res = linalg.residual(mat, float(scalar) * np.eye(mat.shape[0]))
    if res > tol:
        raise IntegrityError(f"{what} is not {scalar} times identity (residual {res:.3g})")
    return res


def adjoint_casimirs(adj: AdjointSet, tol: float = linalg.DEFAULT_TOL) -> AdjointCasimirs:
    """Check F^aF^a = N I, D^aD^a = (N^2-4)/N I and F^aD^a = 0."""
    n = adj.n
    ff = np.einsum("aij,ajk->ik", adj.F, adj.F)
    dd = np.einsum("aij,ajk->ik", adj.D, adj.D)
    fd = np.einsum("aij,ajk->ik", adj.F, adj.D)
    c_a = Fraction(n)
    dd_scalar = Fraction(n * n - 4, n)
    _proportional(ff, c_a, "F^a F^a", tol)
    _proportional(dd, dd_scalar, "D^a D^a", tol)
    fd_res = _proportional(fd, 0, "F^a D^a", tol)
    return AdjointCasimirs(c_a, dd_scalar, fd_res)
