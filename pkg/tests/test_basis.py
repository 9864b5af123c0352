import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sunalg import basis

SIGMA = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]])
LAMBDA = np.zeros((8, 3, 3), complex)
LAMBDA[0][0, 1] = LAMBDA[0][1, 0] = 1
LAMBDA[1][0, 1], LAMBDA[1][1, 0] = -1j, 1j
LAMBDA[2][0, 0], LAMBDA[2][1, 1] = 1, -1
LAMBDA[3][0, 2] = LAMBDA[3][2, 0] = 1
LAMBDA[4][0, 2], LAMBDA[4][2, 0] = -1j, 1j
LAMBDA[5][1, 2] = LAMBDA[5][2, 1] = 1
LAMBDA[6][1, 2], LAMBDA[6][2, 1] = -1j, 1j
LAMBDA[7] = np.diag([1, 1, -2]) / math.sqrt(3)


def test_su2_is_half_pauli():
    assert np.allclose(basis.build_basis(2).generators, SIGMA / 2, atol=0, rtol=0)


def test_su3_is_half_gell_mann():
    b = basis.build_basis(3)
    assert np.max(np.abs(b.generators - LAMBDA / 2)) < 1e-15
    assert np.max(np.abs(b[8] - np.diag([1, 1, -2]) / (2 * math.sqrt(3)))) < 1e-15


@pytest.mark.parametrize("bad", [1, 0, -3, 2.5])
def test_rejects_small_or_nonint_n(bad):
    with pytest.raises(ValueError):
        basis.build_basis(bad)


@pytest.mark.parametrize("n", range(2, 7))
def test_generators_hermitian_traceless_orthonormal(n):
    t = basis.build_basis(n).generators
    assert len(t) == n * n - 1
    assert np.max(np.abs(t - np.conj(t.transpose(0, 2, 1)))) == 0
    assert np.max(np.abs(np.trace(t, axis1=1, axis2=2))) < 1e-15
    gram = np.einsum("aij,bji->ab", t, t)
    assert np.max(np.abs(gram - np.eye(n * n - 1) / 2)) < 1e-14


@pytest.mark.parametrize("n", range(2, 6))
def test_completeness(n):
    t = basis.build_basis(n).generators
    lhs = np.einsum("aij,akl->ijkl", t, t)
    e = np.eye(n)
    rhs = 0.5 * (np.einsum("il,jk->ijkl", e, e) - np.einsum("ij,kl->ijkl", e, e) / n)
    assert np.max(np.abs(lhs - rhs)) < 1e-14


def test_su2_structure_constants_are_levi_civita():
    _, f, d = basis.tensors_for(2)
    assert f.entries == {(1, 2, 3): 1.0}
    assert d.entries == {}


def test_su3_tensors():
    _, f, d = basis.tensors_for(3)
    assert abs(f[1, 2, 3] - 1) < 1e-15
    assert abs(d[1, 1, 8] - 1 / math.sqrt(3)) < 1e-15
    # -2i Tr([l1/2, l2/2] l3/2) recomputed by hand
    l1, l2, l3 = LAMBDA[:3] / 2
    assert abs(-2j * np.trace((l1 @ l2 - l2 @ l1) @ l3) - 1) < 1e-15
    assert len(f.entries) == 9 and len(d.entries) == 16


@pytest.mark.parametrize("n", [3, 4, 5])
def test_tensor_symmetries(n):
    _, f, d = basis.tensors_for(n)
    F, D = f.dense, d.dense
    assert np.array_equal(F, -F.transpose(1, 0, 2))
    assert np.array_equal(F, F.transpose(1, 2, 0))
    assert np.array_equal(D, D.transpose(1, 0, 2))
    assert np.array_equal(D, D.transpose(2, 1, 0))
    assert np.max(np.abs(np.einsum("aac->c", D))) < 1e-14
    assert all(f[a, a, b] == 0 for a in range(1, n * n) for b in range(1, n * n))


@given(st.integers(3, 5), st.data())
def test_permuted_lookup_follows_symmetry(n, data):
    _, f, d = basis.tensors_for(n)
    dim = n * n - 1
    a, b, c = (data.draw(st.integers(1, dim)) for _ in range(3))
    assert f[a, b, c] == -f[b, a, c] == f[b, c, a] == -f[c, b, a]
    assert d[a, b, c] == d[c, a, b] == d[b, a, c]


@pytest.mark.parametrize("n,cf,c3f", [(2, Fraction(3, 4), 0), (3, Fraction(4, 3), Fraction(10, 9)),
                                      (4, Fraction(15, 8), Fraction(45, 16))])
def test_defining_casimirs(n, cf, c3f):
    b, _, d = basis.tensors_for(n)
    c2, got_cf = basis.casimir2_defining(b)
    c3, got_c3f = basis.casimir3_defining(b, d)
    assert got_cf == cf and got_c3f == c3f
    assert np.max(np.abs(c2 - float(cf) * np.eye(n))) < 1e-14
    assert np.max(np.abs(c3 - float(c3f) * np.eye(n))) < 1e-13


def test_broken_basis_is_an_integrity_error():
    b = basis.build_basis(3)
    gens = b.generators.copy()
    gens[0] = gens[0] * 1.1
    broken = basis.GeneratorBasis(3, gens, b.labels)
    with pytest.raises(basis.IntegrityError):
        basis.casimir2_defining(broken)


def test_noncanonical_tensor_key_rejected():
    with pytest.raises(ValueError):
        basis.Rank3Tensor(2, "antisymmetric", {(2, 1, 3): 1.0})
    with pytest.raises(ValueError):
        basis.Rank3Tensor(2, "antisymmetric", {(1, 1, 3): 1.0})


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_tensor_file_roundtrip_is_bit_exact(n):
    _, f, d = basis.tensors_for(n)
    text = basis.format_tensors(f, d)
    assert text.startswith(f"sun-tensors v1\nN {n}\n")
    f2, d2 = basis.parse_tensors(text)
    assert f2 == f and d2 == d
    assert basis.format_tensors(f2, d2) == text
    f3, d3 = basis.tensors_from_json(basis.tensors_to_json(f, d))
    assert f3 == f and d3 == d
    json.loads(basis.tensors_to_json(f, d))


def test_tensor_file_line_format():
    _, f, d = basis.tensors_for(3)
    lines = basis.format_tensors(f, d).splitlines()
    assert "f 1 2 3 1.0" in lines
    assert f"d 1 1 8 {basis.format_float(1 / math.sqrt(3))}" in lines


@pytest.mark.parametrize("text", ["", "sun-tensors v2\nN 2\n", "sun-tensors v1\nN 2\nf 1 2\n",
                                  "sun-tensors v1\nN 2\nx 1 2 3 1.0\n"])
def test_malformed_tensor_files(text):
    with pytest.raises(ValueError):
        basis.parse_tensors(text)


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_format_roundtrips(x):
    assert float(basis.format_float(x)) == x
