"""Generalized Gell-Mann basis of su(N) and its f / d tensors.

Indices are 1-based at the public surface (``f[1, 2, 3]``) to match the usual
physics labelling; the dense arrays behind them are 0-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

import numpy as np

from . import linalg

PRUNE = 1e-13
TENSOR_HEADER = "sun-tensors v1"


class IntegrityError(RuntimeError):
    """A constructed object violates an identity it must satisfy by construction."""


def casimir_f(n: int) -> Fraction:
    return Fraction(n * n - 1, 2 * n)


def casimir_3f(n: int) -> Fraction:
    return Fraction((n * n - 1) * (n * n - 4), 4 * n * n)


@dataclass(frozen=True, eq=False)
class GeneratorBasis:
    """The N^2-1 generators T^a, stacked as an array of shape (N^2-1, N, N).

    ``labels[a-1]`` records which construction slot produced T^a:
    ``("sym", i, j)``, ``("asym", i, j)`` or ``("diag", k)``.
    """

    n: int
    generators: np.ndarray
    labels: tuple

    @property
    def dim(self) -> int:
        return self.n * self.n - 1

    def __getitem__(self, a: int) -> np.ndarray:
        if not 1 <= a <= self.dim:
            raise IndexError(f"generator index {a} outside 1..{self.dim}")
        return self.generators[a - 1]

    def __len__(self):
        return self.dim


def build_basis(n: int) -> GeneratorBasis:
    """Generalized Gell-Mann matrices normalised to Tr(T^a T^b) = delta_ab / 2.

    Generators are grouped by the largest row index j: for j = 2..N the
    symmetric/antisymmetric pair for each i < j, then the diagonal generator
    with k = j - 1.  This gives sigma^a/2 for N = 2 and lambda^a/2 for N = 3.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"su(N) needs N >= 2, got {n!r}")
    n = int(n)
    mats, labels = [], []
    for j in range(1, n):
        for i in range(j):
            s = np.zeros((n, n), complex)
            s[i, j] = s[j, i] = 0.5
            a = np.zeros((n, n), complex)
            a[i, j], a[j, i] = -0.5j, 0.5j
            mats += [s, a]
            labels += [("sym", i + 1, j + 1), ("asym", i + 1, j + 1)]
        k = j
        diag = np.zeros(n)
        diag[:k] = 1.0
        diag[k] = -k
        mats.append(np.diag(diag / np.sqrt(2 * k * (k + 1))).astype(complex))
        labels.append(("diag", k))
    gens = np.array(mats)
    gens.setflags(write=False)
    return GeneratorBasis(n, gens, tuple(labels))


@dataclass(frozen=True)
class Rank3Tensor:
    """Sparse totally (anti)symmetric real tensor in canonical-order storage.

    ``entries`` maps sorted 1-based triples to values; for the antisymmetric
    flavour only strictly increasing triples are stored.
    """

    n: int
    symmetry: str
    entries: dict = field(hash=False)
    _dense: np.ndarray = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.symmetry not in ("antisymmetric", "symmetric"):
            raise ValueError(f"unknown symmetry {self.symmetry!r}")
        dim = self.n * self.n - 1
        for key in self.entries:
            a, b, c = key
            ok = a < b < c if self.symmetry == "antisymmetric" else a <= b <= c
            if not (ok and 1 <= a and c <= dim):
                raise ValueError(f"non-canonical tensor key {key}")
        if self._dense is None:
            dense = np.zeros((dim, dim, dim))
            sign_of = _perm_signs()
            for (a, b, c), v in self.entries.items():
                for perm, sign in sign_of:
                    idx = tuple((a - 1, b - 1, c - 1)[p] for p in perm)
                    dense[idx] = v * (sign if self.symmetry == "antisymmetric" else 1)
            dense.setflags(write=False)
            object.__setattr__(self, "_dense", dense)

    @property
    def dim(self) -> int:
        return self.n * self.n - 1

    @property
    def dense(self) -> np.ndarray:
        return self._dense

    def __getitem__(self, key) -> float:
        a, b, c = key
        for x in key:
            if not 1 <= x <= self.dim:
                raise IndexError(f"tensor index {x} outside 1..{self.dim}")
        return float(self._dense[a - 1, b - 1, c - 1])

    def nonzeros(self):
        return sorted(self.entries.items())


@lru_cache(maxsize=None)
def _perm_signs():
    out = []
    for perm in permutations(range(3)):
        inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
        out.append((perm, -1 if inversions % 2 else 1))
    return tuple(out)


def triple_traces(basis: GeneratorBasis) -> np.ndarray:
    """Tr(T^a T^b T^c) for all triples, shape (dim, dim, dim)."""
    t = basis.generators
    pair = np.matmul(t[:, None], t[None, :])  # (T^a T^b)_ik
    return np.einsum("abik,cki->abc", pair, t)


def _extract(basis, symmetry, tol):
    tr3 = triple_traces(basis)
    swapped = tr3.transpose(1, 0, 2)
    if symmetry == "antisymmetric":
        raw = -2j * (tr3 - swapped)
    else:
        raw = 2 * (tr3 + swapped)
    imag = float(np.max(np.abs(raw.imag))) if raw.size else 0.0
    if imag > tol:
        raise IntegrityError(f"{symmetry} tensor has imaginary part {imag:.3g}")
    real = raw.real
    sign = -1 if symmetry == "antisymmetric" else 1
    worst = 0.0
    for perm, psign in _perm_signs():
        expected = real if (psign == 1 or sign == 1) else -real
        worst = max(worst, float(np.max(np.abs(real.transpose(perm) - expected))))
    if worst > tol:
        raise IntegrityError(f"{symmetry} tensor violates its symmetry by {worst:.3g}")
    dim = basis.dim
    entries = {}
    strict = symmetry == "antisymmetric"
    for a, b, c in zip(*np.nonzero(np.abs(real) >= PRUNE)):
        if (a < b < c) if strict else (a <= b <= c):
            entries[(int(a) + 1, int(b) + 1, int(c) + 1)] = float(real[a, b, c])
    assert all(1 <= x <= dim for k in entries for x in k)
    return Rank3Tensor(basis.n, symmetry, entries)


def extract_f(basis: GeneratorBasis, tol: float = linalg.DEFAULT_TOL) -> Rank3Tensor:
    """Structure constants f_abc = -2i Tr([T^a, T^b] T^c)."""
    return _extract(basis, "antisymmetric", tol)


def extract_d(basis: GeneratorBasis, tol: float = linalg.DEFAULT_TOL) -> Rank3Tensor:
    """Symmetric tensor d_abc = 2 Tr({T^a, T^b} T^c)."""
    return _extract(basis, "symmetric", tol)


def casimir2_defining(basis: GeneratorBasis, tol: float = linalg.DEFAULT_TOL):
    t = basis.generators
    c2 = linalg.cmatrix(np.einsum("aij,ajk->ik", t, t))
    cf = casimir_f(basis.n)
    res = linalg.residual(c2, float(cf) * np.eye(basis.n))
    if res > tol:
        raise IntegrityError(f"T^a T^a is not C_F times identity (residual {res:.3g})")
    return c2, cf


def casimir3_defining(basis: GeneratorBasis, d: Rank3Tensor, tol: float = linalg.DEFAULT_TOL):
    if d.n != basis.n or d.symmetry != "symmetric":
        raise ValueError("casimir3_defining needs the symmetric tensor of the same N")
    t = basis.generators
    dt = np.einsum("abc,ckl->abkl", d.dense, t)
    tt = np.matmul(t[:, None], t[None, :])
    c3 = linalg.cmatrix(np.einsum("abik,abkl->il", tt, dt))
    c3f = casimir_3f(basis.n)
    res = linalg.residual(c3, float(c3f) * np.eye(basis.n))
    if res > tol:
        raise IntegrityError(f"d_abc T^a T^b T^c is not C_3F times identity (residual {res:.3g})")
    return c3, c3f


@lru_cache(maxsize=16)
def tensors_for(n: int):
    """Cached (basis, f, d) triple for a given N."""
    basis = build_basis(n)
    return basis, extract_f(basis), extract_d(basis)


# -- sun-tensors v1 file format ------------------------------------------

def format_float(x: float) -> str:
    """17 significant digits, keeping a decimal point on integral values."""
    s = format(float(x), ".17g")
    if s.lstrip("-").isdigit():
        s += ".0"
    return s


def format_tensors(f: Rank3Tensor, d: Rank3Tensor) -> str:
    if f.n != d.n:
        raise ValueError("f and d belong to different N")
    lines = [TENSOR_HEADER, f"N {f.n}"]
    for tag, tensor in (("f", f), ("d", d)):
        for (a, b, c), v in tensor.nonzeros():
            lines.append(f"{tag} {a} {b} {c} {format_float(v)}")
    return "\n".join(lines) + "\n"


def parse_tensors(text: str) -> tuple[Rank3Tensor, Rank3Tensor]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != TENSOR_HEADER:
        raise ValueError(f"missing '{TENSOR_HEADER}' header")
    if len(lines) < 2 or not lines[1].startswith("N "):
        raise ValueError("missing 'N <n>' line")
    n = int(lines[1].split()[1])
    entries = {"f": {}, "d": {}}
    for lineno, ln in enumerate(lines[2:], start=3):
        parts = ln.split()
        if len(parts) != 5 or parts[0] not in entries:
            raise ValueError(f"line {lineno}: cannot parse {ln!r}")
        key = tuple(int(x) for x in parts[1:4])
        entries[parts[0]][key] = float(parts[4])
    return (Rank3Tensor(n, "antisymmetric", entries["f"]),
            Rank3Tensor(n, "symmetric", entries["d"]))


def tensors_to_json(f: Rank3Tensor, d: Rank3Tensor) -> str:
    doc = {
        "format": TENSOR_HEADER,
        "n": f.n,
        "f": [[a, b, c, v] for (a, b, c), v in f.nonzeros()],
        "d": [[a, b, c, v] for (a, b, c), v in d.nonzeros()],
    }
    return json.dumps(doc, indent=1)


def tensors_from_json(text: str) -> tuple[Rank3Tensor, Rank3Tensor]:
    doc = json.loads(text)
    if doc.get("format") != TENSOR_HEADER:
        raise ValueError(f"expected format {TENSOR_HEADER!r}")
    n = int(doc["n"])
    f = {tuple(row[:3]): float(row[3]) for row in doc["f"]}
    d = {tuple(row[:3]): float(row[3]) for row in doc["d"]}
    return Rank3Tensor(n, "antisymmetric", f), Rank3Tensor(n, "symmetric", d)
