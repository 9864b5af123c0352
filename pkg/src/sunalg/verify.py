"""Numerical identity suite over the explicit su(N) matrices.

Every check computes a left and a right side as dense arrays whose leading
axes enumerate index tuples; the residual of a tuple is
``max|lhs - rhs| / (1 + max(|lhs|, |rhs|))`` over the remaining axes, and a
check passes when its worst tuple is within tolerance.

Four-index adjoint traces are evaluated on explicit index quadruples: all
of them for N <= 3, a seeded uniform sample for larger N.
"""

from __future__ import annotations

import json
import time
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable

import numpy as np

from .oracle import arrays

REPORT_FORMAT = "report v1"
CHUNK = 2000
EXHAUSTIVE_MAX_N = 3


def _all_n(n: int) -> bool:
    return True


def _only_su3(n: int) -> bool:
    return n == 3


@dataclass(frozen=True)
class IdentityCheck:
    id: str
    statement: str
    compute: Callable
    tuple_axes: int
    applies: Callable[[int], bool] = _all_n
    cost_class: str = "exhaustive"  # or "sampled"
    skip_reason: str = ""
    # (lhs, rhs, free-index order) in the expression grammar, when expressible
    grammar: tuple | None = None


REGISTRY: dict[str, IdentityCheck] = {}


def _check(id, statement, axes, *, su3=False, sampled=False, grammar=None):
    def deco(fn):
        if id in REGISTRY:
            raise ValueError(f"duplicate check id {id}")
        REGISTRY[id] = IdentityCheck(
            id, statement, fn, axes,
            _only_su3 if su3 else _all_n,
            "sampled" if sampled else "exhaustive",
            "N≠3" if su3 else "",
            grammar,
        )
        return fn
    return deco


class Ctx:
    """Matrices and cached contractions for one N."""

    def __init__(self, n: int):
        A = arrays(n)
        self.n = n
        self.dim = n * n - 1
        self.T, self.f, self.d, self.F, self.D = A.T, A.f, A.d, A.F, A.D
        self.I = np.eye(self.dim)
        self.Ifund = np.eye(n)

    def mat(self, kind):
        return {"T": self.T, "F": self.F, "D": self.D}[kind]

    def ten(self, kind):
        return {"f": self.f, "d": self.d}[kind]

    def con(self, x, left, y, right):
        """x_{left e} y_{right e} as an (a,b,c,d) array, e.g. con('f', 'ac', 'd', 'bd')."""
        return np.einsum(f"{left}e,{right}e->abcd", self.ten(x), self.ten(y), optimize=True)

    def dl4(self, p, q):
        """delta_p delta_q over adjoint indices (a,b,c,d), e.g. dl4('ab', 'cd')."""
        return np.einsum(f"{p},{q}->abcd", self.I, self.I)

    @cached_property
    def _pairs(self):
        return {}

    def pair(self, word):
        """X^a Y^b as an array [a, b, i, k]."""
        if word not in self._pairs:
            X, Y = self.mat(word[0]), self.mat(word[1])
            self._pairs[word] = np.einsum("aij,bjk->abik", X, Y, optimize=True)
        return self._pairs[word]

    def tr3(self, word):
        X, Y, Z = (self.mat(k) for k in word)
        return np.einsum("abik,cki->abc", self.pair(word[:2]), Z, optimize=True)

    def tr4(self, word, quads):
        P, Q = self.pair(word[:2]), self.pair(word[2:])
        out = np.empty(len(quads), dtype=complex)
        for s in range(0, len(quads), CHUNK):
            q = quads[s:s + CHUNK]
            out[s:s + CHUNK] = np.einsum("qik,qki->q", P[q[:, 0], q[:, 1]], Q[q[:, 2], q[:, 3]])
        return out

    def all_quads(self):
        return np.indices((self.dim,) * 4).reshape(4, -1).T


# -- per-quadruple tensor helpers (for four-index traces) -------------------

def _q_dl(q, x, y):
    return (q[:, x] == q[:, y]).astype(float)


def _q_con(ctx, q, x, p, y, r):
    """x_{p e} y_{r e} on quadruples; p and r are pairs of positions 0..3."""
    X, Y = ctx.ten(x), ctx.ten(y)
    out = np.empty(len(q))
    for s in range(0, len(q), CHUNK):
        c = q[s:s + CHUNK]
        out[s:s + CHUNK] = np.einsum("qe,qe->q", X[c[:, p[0]], c[:, p[1]]], Y[c[:, r[0]], c[:, r[1]]])
    return out


_POS = {"a": 0, "b": 1, "c": 2, "d": 3}


def _terms(ctx, q, spec):
    """Sum of coefficient * structure; structures like 'dl ab cd' or 'fd ad bc'."""
    total = np.zeros(len(q), dtype=complex)
    for coeff, what in spec:
        kind, p, r = what.split()
        p, r = tuple(_POS[x] for x in p), tuple(_POS[x] for x in r)
        if kind == "dl":
            val = _q_dl(q, *p) * _q_dl(q, *r)
        else:
            val = _q_con(ctx, q, kind[0], p, kind[1], r)
        total += coeff * val
    return total


def _main_trace4(ctx, word, q, fddd_coeff=Fraction(1, 4)):
    N = ctx.n
    if word == "FFFF":
        spec = [(1, "dl ad bc"), (0.5, "dl ab cd"), (0.5, "dl ac bd"),
                (N / 4, "ff ad bc"), (N / 4, "dd ad bc")]
    elif word == "FFFD":
        spec = [(1j * N / 4, "df ad bc"), (-1j * N / 4, "fd ad bc")]
    elif word == "FFDD":
        spec = [(0.5, "dl ab cd"), (-0.5, "dl ac bd"),
                ((N * N - 8) / (4 * N), "ff ad bc"), (N / 4, "dd ad bc")]
    elif word == "FDFD":
        spec = [(-0.5, "dl ab cd"), (0.5, "dl ac bd"), (N / 4, "ff ad bc"), (N / 4, "dd ad bc")]
    elif word == "FDDD":
        spec = [(2j / N, "fd ad bc"), (1j * (N * N - 8) / (4 * N), "fd ab cd"),
                (1j * N * float(fddd_coeff), "df ab cd")]
    else:
        spec = [((N * N - 4) / N**2, "dl ad bc"), ((N * N - 8) / (2 * N**2), "dl ab cd"),
                (0.5, "dl ac bd"), (N / 4, "ff ad bc"), ((N * N - 16) / (4 * N), "dd ad bc"),
                (-4 / N, "dd ab cd")]
    return _terms(ctx, q, spec)


def _alt_trace4(ctx, word, q):
    N = ctx.n
    if word == "FFFF":
        spec = [(1, "dl ab cd"), (1, "dl ad bc"),
                (N / 4, "dd ab cd"), (-N / 4, "dd ac bd"), (N / 4, "dd ad bc")]
    elif word == "FFFD":
        spec = [(1j * N / 4, "df ab cd"), (1j * N / 4, "fd ab cd")]
    elif word == "FFDD":
        c = (N * N - 4) / N**2
        e = (N * N - 8) / (4 * N)
        spec = [(c, "dl ab cd"), (-c, "dl ac bd"), (e, "dd ab cd"), (-e, "dd ac bd"),
                (N / 4, "dd ad bc")]
    elif word == "FDFD":
        spec = [(N / 4, "dd ab cd"), (-N / 4, "dd ac bd"), (N / 4, "dd ad bc")]
    elif word == "FDDD":
        spec = [(1j * (N * N - 12) / (4 * N), "fd ab cd"), (1j / N, "fd ad bc"),
                (-1j / N, "fd ac bd"), (1j * N / 4, "df ab cd")]
    else:
        c = (N * N - 4) / N**2
        e = (N * N - 16) / (4 * N)
        spec = [(c, "dl ab cd"), (c, "dl ad bc"), (e, "dd ab cd"), (e, "dd ad bc"),
                (-N / 4, "dd ac bd")]
    return _terms(ctx, q, spec)


_MAIN_TEXT = {
    "FFFF": "delta(a,d)*delta(b,c) + 1/2*delta(a,b)*delta(c,d) + 1/2*delta(a,c)*delta(b,d)"
            " + NN/4*f(a,d,e)*f(b,c,e) + NN/4*d(a,d,e)*d(b,c,e)",
    "FFFD": "i*NN/4*d(a,d,e)*f(b,c,e) - i*NN/4*f(a,d,e)*d(b,c,e)",
    "FFDD": "1/2*delta(a,b)*delta(c,d) - 1/2*delta(a,c)*delta(b,d)"
            " + (NN^2-8)/(4*NN)*f(a,d,e)*f(b,c,e) + NN/4*d(a,d,e)*d(b,c,e)",
    "FDFD": "-1/2*delta(a,b)*delta(c,d) + 1/2*delta(a,c)*delta(b,d)"
            " + NN/4*f(a,d,e)*f(b,c,e) + NN/4*d(a,d,e)*d(b,c,e)",
    "FDDD": "2*i/NN*f(a,d,e)*d(b,c,e) + i*(NN^2-8)/(4*NN)*f(a,b,e)*d(c,d,e)"
            " + i*NN/4*d(a,b,e)*f(c,d,e)",
    "DDDD": "(NN^2-4)/NN^2*delta(a,d)*delta(b,c) + (NN^2-8)/(2*NN^2)*delta(a,b)*delta(c,d)"
            " + 1/2*delta(a,c)*delta(b,d) + NN/4*f(a,d,e)*f(b,c,e)"
            " + (NN^2-16)/(4*NN)*d(a,d,e)*d(b,c,e) - 4/NN*d(a,b,e)*d(c,d,e)",
}

_ALT_TEXT = {
    "FFFF": "delta(a,b)*delta(c,d) + delta(a,d)*delta(b,c) + NN/4*d(a,b,e)*d(c,d,e)"
            " - NN/4*d(a,c,e)*d(b,d,e) + NN/4*d(a,d,e)*d(b,c,e)",
    "FFFD": "i*NN/4*d(a,b,e)*f(c,d,e) + i*NN/4*f(a,b,e)*d(c,d,e)",
    "FFDD": "(NN^2-4)/NN^2*delta(a,b)*delta(c,d) - (NN^2-4)/NN^2*delta(a,c)*delta(b,d)"
            " + (NN^2-8)/(4*NN)*d(a,b,e)*d(c,d,e) - (NN^2-8)/(4*NN)*d(a,c,e)*d(b,d,e)"
            " + NN/4*d(a,d,e)*d(b,c,e)",
    "FDFD": "NN/4*d(a,b,e)*d(c,d,e) - NN/4*d(a,c,e)*d(b,d,e) + NN/4*d(a,d,e)*d(b,c,e)",
    "FDDD": "i*(NN^2-12)/(4*NN)*f(a,b,e)*d(c,d,e) + i/NN*f(a,d,e)*d(b,c,e)"
            " - i/NN*f(a,c,e)*d(b,d,e) + i*NN/4*d(a,b,e)*f(c,d,e)",
    "DDDD": "(NN^2-4)/NN^2*delta(a,b)*delta(c,d) + (NN^2-4)/NN^2*delta(a,d)*delta(b,c)"
            " + (NN^2-16)/(4*NN)*d(a,b,e)*d(c,d,e) + (NN^2-16)/(4*NN)*d(a,d,e)*d(b,c,e)"
            " - NN/4*d(a,c,e)*d(b,d,e)",
}


def _trace_text(word):
    return "TrAdj[" + "".join(f"{k}({x})" for k, x in zip(word, "abcd")) + "]"


# ---------------------------------------------------------------------------
# defining representation

def _ein(spec, *ops):
    return np.einsum(spec, *ops, optimize=True)


@_check("def-commutator", "[T^a,T^b] = i f_abc T^c", 2)
def _(c):
    P = c.pair("TT")
    return P - P.transpose(1, 0, 2, 3), 1j * _ein("abc,cik->abik", c.f, c.T)


@_check("def-traceless", "Tr T^a = 0", 1)
def _(c):
    return np.trace(c.T, axis1=1, axis2=2), np.zeros(c.dim)


@_check("def-normalization", "Tr(T^a T^b) = delta_ab / 2", 2,
        grammar=("Tr[T(a)T(b)]", "1/2*delta(a,b)", "ab"))
def _(c):
    return _ein("aij,bji->ab", c.T, c.T), 0.5 * c.I


@_check("def-casimir", "T^a T^a = C_F 1 with C_F = (N^2-1)/(2N)", 1)
def _(c):
    cf = (c.n**2 - 1) / (2 * c.n)
    return _ein("aij,ajk->ik", c.T, c.T)[None], cf * c.Ifund[None]


@_check("def-fierz", "T^a_ij T^a_kl = (delta_il delta_jk - delta_ij delta_kl / N) / 2", 4,
        grammar=("T(e;i,j)*T(e;k,l)",
                 "1/2*deltaF(i,l)*deltaF(j,k) - 1/(2*NN)*deltaF(i,j)*deltaF(k,l)", "ijkl"))
def _(c):
    I = c.Ifund
    rhs = 0.5 * (_ein("il,jk->ijkl", I, I) - _ein("ij,kl->ijkl", I, I) / c.n)
    return _ein("aij,akl->ijkl", c.T, c.T), rhs


@_check("def-completeness", "M = Tr(M) 1 / N + 2 Tr(M T^a) T^a for arbitrary M", 1)
def _(c):
    rng = np.random.default_rng(c.n)
    M = rng.normal(size=(8, c.n, c.n)) + 1j * rng.normal(size=(8, c.n, c.n))
    tr = np.trace(M, axis1=1, axis2=2)
    rhs = tr[:, None, None] * c.Ifund / c.n + 2 * _ein("mij,aji,akl->mkl", M, c.T, c.T)
    return M, rhs


@_check("def-sandwich", "T^a T^b T^a = -T^b / (2N)", 1)
def _(c):
    return _ein("aij,bjk,akl->bil", c.T, c.T, c.T), -c.T / (2 * c.n)


@_check("def-sandwich-trace", "Tr(T^a T^b T^a T^c) = -delta_bc / (4N)", 2,
        grammar=("Tr[T(a)T(b)T(a)T(c)]", "-1/(4*NN)*delta(b,c)", "bc"))
def _(c):
    P = c.pair("TT")
    return _ein("abik,acki->bc", P, P), -c.I / (4 * c.n)


@_check("def-product", "T^a T^b = [delta_ab 1 / N + (d_abc + i f_abc) T^c] / 2", 2)
def _(c):
    rhs = 0.5 * (_ein("ab,ik->abik", c.I, c.Ifund) / c.n + _ein("abc,cik->abik", c.d + 1j * c.f, c.T))
    return c.pair("TT"), rhs


@_check("def-anticommutator", "{T^a,T^b} = delta_ab 1 / N + d_abc T^c", 2)
def _(c):
    P = c.pair("TT")
    rhs = _ein("ab,ik->abik", c.I, c.Ifund) / c.n + _ein("abc,cik->abik", c.d, c.T)
    return P + P.transpose(1, 0, 2, 3), rhs


@_check("def-f-from-trace", "f_abc = -2i Tr([T^a,T^b] T^c)", 3)
def _(c):
    t = c.tr3("TTT")
    return c.f.astype(complex), -2j * (t - t.transpose(1, 0, 2))


@_check("def-d-from-trace", "d_abc = 2 Tr({T^a,T^b} T^c)", 3)
def _(c):
    t = c.tr3("TTT")
    return c.d.astype(complex), 2 * (t + t.transpose(1, 0, 2))


@_check("def-d-traceless", "d_aac = 0", 1, grammar=("d(a,a,c)", "0", "c"))
def _(c):
    return _ein("aac->c", c.d), np.zeros(c.dim)


@_check("def-trace3", "Tr(T^a T^b T^c) = (d_abc + i f_abc) / 4", 3,
        grammar=("Tr[T(a)T(b)T(c)]", "1/4*d(a,b,c) + i/4*f(a,b,c)", "abc"))
def _(c):
    return c.tr3("TTT"), 0.25 * (c.d + 1j * c.f)


@_check("def-f-trace3", "f_abd Tr(T^a T^b T^c) = i N delta_cd / 4", 2,
        grammar=("f(a,b,d)*Tr[T(a)T(b)T(c)]", "i*NN/4*delta(c,d)", "cd"))
def _(c):
    return _ein("abd,abc->cd", c.f, c.tr3("TTT")), 0.25j * c.n * c.I


@_check("def-d-trace3", "d_abd Tr(T^a T^b T^c) = (N^2-4) delta_cd / (4N)", 2,
        grammar=("d(a,b,d)*Tr[T(a)T(b)T(c)]", "(NN^2-4)/(4*NN)*delta(c,d)", "cd"))
def _(c):
    return _ein("abd,abc->cd", c.d, c.tr3("TTT")), (c.n**2 - 4) / (4 * c.n) * c.I


@_check("def-cubic-casimir", "d_abc T^a T^b T^c = C_3F 1 with C_3F = (N^2-1)(N^2-4)/(4N^2)", 1)
def _(c):
    n = c.n
    c3 = (n * n - 1) * (n * n - 4) / (4 * n * n)
    lhs = _ein("abc,aij,bjk,ckl->il", c.d, c.T, c.T, c.T)
    alt = (n * n - 4) / (2 * n) * (n * n - 1) / (2 * n) * c.Ifund
    return np.stack([lhs, alt]), np.stack([c3 * c.Ifund, c3 * c.Ifund])


@_check("def-d-TT", "d_abc T^a T^b = (N^2-4) T^c / (2N)", 1)
def _(c):
    return _ein("abc,aij,bjk->cik", c.d, c.T, c.T), (c.n**2 - 4) / (2 * c.n) * c.T


@_check("def-f-TT", "f_abc T^a T^b = i N T^c / 2", 1)
def _(c):
    return _ein("abc,aij,bjk->cik", c.f, c.T, c.T), 0.5j * c.n * c.T


@_check("def-f-cubic", "f_abc T^a T^b T^c = i N C_F 1 / 2 = i (N^2-1) 1 / 4", 1)
def _(c):
    return _ein("abc,aij,bjk,ckl->il", c.f, c.T, c.T, c.T)[None], (0.25j * (c.n**2 - 1) * c.Ifund)[None]


# ---------------------------------------------------------------------------
# f / d tensor contractions

@_check("tensor-fd", "f_abc d_abd = 0", 2, grammar=("f(a,b,c)*d(a,b,d)", "0", "cd"))
def _(c):
    return _ein("abc,abd->cd", c.f, c.d), np.zeros((c.dim, c.dim))


@_check("tensor-ff", "f_abc f_abd = N delta_cd", 2,
        grammar=("f(a,b,c)*f(a,b,d)", "NN*delta(c,d)", "cd"))
def _(c):
    return _ein("abc,abd->cd", c.f, c.f), c.n * c.I


@_check("tensor-dd", "d_abc d_abd = (N^2-4) delta_cd / N", 2,
        grammar=("d(a,b,c)*d(a,b,d)", "(NN^2-4)/NN*delta(c,d)", "cd"))
def _(c):
    return _ein("abc,abd->cd", c.d, c.d), (c.n**2 - 4) / c.n * c.I


@_check("tensor-ff-to-dd",
        "f_abe f_cde = 2/N (delta_ac delta_bd - delta_ad delta_bc) + d_ace d_bde - d_bce d_ade", 4,
        grammar=("f(a,b,e)*f(c,d,e)",
                 "2/NN*delta(a,c)*delta(b,d) - 2/NN*delta(a,d)*delta(b,c)"
                 " + d(a,c,e)*d(b,d,e) - d(b,c,e)*d(a,d,e)", "abcd"))
def _(c):
    rhs = 2 / c.n * (c.dl4("ac", "bd") - c.dl4("ad", "bc")) + c.con("d", "ac", "d", "bd") - c.con("d", "bc", "d", "ad")
    return c.con("f", "ab", "f", "cd"), rhs


@_check("tensor-ff-exchange",
        "f_ace f_bde - f_abe f_cde = 2/N (delta_ab delta_cd - delta_ac delta_bd) + d_abe d_cde - d_ace d_bde", 4)
def _(c):
    lhs = c.con("f", "ac", "f", "bd") - c.con("f", "ab", "f", "cd")
    rhs = 2 / c.n * (c.dl4("ab", "cd") - c.dl4("ac", "bd")) + c.con("d", "ab", "d", "cd") - c.con("d", "ac", "d", "bd")
    return lhs, rhs


@_check("tensor-jacobi", "f_abe f_ecd + f_cbe f_aed + f_dbe f_ace = 0", 4,
        grammar=("f(a,b,e)*f(e,c,d) + f(c,b,e)*f(a,e,d) + f(d,b,e)*f(a,c,e)", "0", "abcd"))
def _(c):
    f = c.f
    lhs = _ein("abe,ecd->abcd", f, f) + _ein("cbe,aed->abcd", f, f) + _ein("dbe,ace->abcd", f, f)
    return lhs, np.zeros_like(lhs)


@_check("tensor-fd-jacobi-1", "f_abe d_cde + f_ace d_bde + f_ade d_bce = 0", 4,
        grammar=("f(a,b,e)*d(c,d,e) + f(a,c,e)*d(b,d,e) + f(a,d,e)*d(b,c,e)", "0", "abcd"))
def _(c):
    lhs = c.con("f", "ab", "d", "cd") + c.con("f", "ac", "d", "bd") + c.con("f", "ad", "d", "bc")
    return lhs, np.zeros_like(lhs)


@_check("tensor-fd-jacobi-2", "f_abe d_cde + f_cbe d_ade + f_dbe d_ace = 0", 4)
def _(c):
    lhs = c.con("f", "ab", "d", "cd") + c.con("f", "cb", "d", "ad") + c.con("f", "db", "d", "ac")
    return lhs, np.zeros_like(lhs)


# ---------------------------------------------------------------------------
# adjoint matrices

@_check("adj-F-definition", "(F^a)_bc = -i f_abc, hermitian", 1)
def _(c):
    return np.stack([c.F, c.F.conj().transpose(0, 2, 1)]).transpose(1, 0, 2, 3), \
        np.stack([-1j * c.f, -1j * c.f]).transpose(1, 0, 2, 3)


@_check("adj-D-definition", "(D^a)_bc = d_abc, symmetric", 1)
def _(c):
    return np.stack([c.D, c.D.transpose(0, 2, 1)]).transpose(1, 0, 2, 3), \
        np.stack([c.d, c.d]).transpose(1, 0, 2, 3).astype(complex)


@_check("adj-commutator", "[F^a,F^b] = i f_abc F^c", 2)
def _(c):
    P = c.pair("FF")
    return P - P.transpose(1, 0, 2, 3), 1j * _ein("abc,cik->abik", c.f, c.F)


@_check("adj-FD-commutator", "[F^a,D^b] = i f_abc D^c", 2)
def _(c):
    return c.pair("FD") - c.pair("DF").transpose(1, 0, 2, 3), 1j * _ein("abc,cik->abik", c.f, c.D)


@_check("adj-DF-commutator", "[D^a,F^b] = i f_abc D^c", 2)
def _(c):
    return c.pair("DF") - c.pair("FD").transpose(1, 0, 2, 3), 1j * _ein("abc,cik->abik", c.f, c.D)


@_check("adj-FD-symmetrized", "F^a D^b + F^b D^a = d_abc F^c", 2)
def _(c):
    P = c.pair("FD")
    return P + P.transpose(1, 0, 2, 3), _ein("abc,cik->abik", c.d, c.F)


@_check("adj-DF-symmetrized", "D^a F^b + D^b F^a = d_abc F^c", 2)
def _(c):
    P = c.pair("DF")
    return P + P.transpose(1, 0, 2, 3), _ein("abc,cik->abik", c.d, c.F)


@_check("adj-FD-mixed", "F^a D^b + D^a F^b = d_abc F^c + i f_abc D^c", 2)
def _(c):
    rhs = _ein("abc,cik->abik", c.d, c.F) + 1j * _ein("abc,cik->abik", c.f, c.D)
    return c.pair("FD") + c.pair("DF"), rhs


@_check("adj-D-commutator", "[D^a,D^b]_cd = i f_abe (F^e)_cd - 2/N (delta_ac delta_bd - delta_ad delta_bc)", 2)
def _(c):
    P = c.pair("DD")
    rhs = 1j * _ein("abe,ecd->abcd", c.f, c.F) - 2 / c.n * (c.dl4("ac", "bd") - c.dl4("ad", "bc"))
    return P - P.transpose(1, 0, 2, 3), rhs


def _ffpdd_rhs(c):
    return (2 / c.n * (c.dl4("ab", "cd") - c.dl4("ac", "bd"))
            + _ein("abe,ecd->abcd", c.d, c.D) + 1j * _ein("abe,ecd->abcd", c.f, c.F))


@_check("adj-FF-plus-DD",
        "(F^a F^b + D^a D^b)_cd = 2/N (delta_ab delta_cd - delta_ac delta_bd) + d_abe (D^e)_cd + i f_abe (F^e)_cd", 2)
def _(c):
    return c.pair("FF") + c.pair("DD"), _ffpdd_rhs(c)


@_check("adj-casimir-F", "F^a F^a = N I", 1)
def _(c):
    return _ein("aij,ajk->ik", c.F, c.F)[None], (c.n * c.I)[None]


@_check("adj-casimir-D", "D^a D^a = (N^2-4) I / N", 1)
def _(c):
    return _ein("aij,ajk->ik", c.D, c.D)[None], ((c.n**2 - 4) / c.n * c.I)[None]


@_check("adj-casimir-FD", "F^a D^a = 0", 1)
def _(c):
    return _ein("aij,ajk->ik", c.F, c.D)[None], np.zeros((1, c.dim, c.dim))


def _f_xy(c, t, word):
    return _ein("abc,bcik->aik", c.ten(t), c.pair(word))


def _t_xyz(c, t, word):
    g = _ein("abc,abik->cik", c.ten(t), c.pair(word[:2]))
    return _ein("cik,ckl->il", g, c.mat(word[2]))[None]


@_check("adj-f-FF", "f_abc F^b F^c = i N F^a / 2", 1)
def _(c):
    return _f_xy(c, "f", "FF"), 0.5j * c.n * c.F


@_check("adj-f-FD", "f_abc F^b D^c = i N D^a / 2", 1)
def _(c):
    return _f_xy(c, "f", "FD"), 0.5j * c.n * c.D


@_check("adj-f-DD", "f_abc D^b D^c = i (N^2-4) F^a / (2N)", 1)
def _(c):
    return _f_xy(c, "f", "DD"), 1j * (c.n**2 - 4) / (2 * c.n) * c.F


@_check("adj-f-FFF", "f_abc F^a F^b F^c = i N C_A I / 2 = i N^2 I / 2", 1)
def _(c):
    return _t_xyz(c, "f", "FFF"), (0.5j * c.n**2 * c.I)[None]


@_check("adj-f-DFF", "f_abc D^a F^b F^c = 0", 1)
def _(c):
    return _t_xyz(c, "f", "DFF"), np.zeros((1, c.dim, c.dim))


@_check("adj-f-DDF", "f_abc D^a D^b F^c = i (N^2-4) I / 2", 1)
def _(c):
    return _t_xyz(c, "f", "DDF"), (0.5j * (c.n**2 - 4) * c.I)[None]


@_check("adj-f-DDD", "f_abc D^a D^b D^c = 0", 1)
def _(c):
    return _t_xyz(c, "f", "DDD"), np.zeros((1, c.dim, c.dim))


@_check("adj-d-FF", "d_abc F^b F^c = N D^a / 2", 1)
def _(c):
    return _f_xy(c, "d", "FF"), 0.5 * c.n * c.D


@_check("adj-d-FD", "d_abc F^b D^c = (N^2-4) F^a / (2N)", 1)
def _(c):
    return _f_xy(c, "d", "FD"), (c.n**2 - 4) / (2 * c.n) * c.F


@_check("adj-d-DD", "d_abc D^b D^c = (N^2-12) D^a / (2N)", 1)
def _(c):
    return _f_xy(c, "d", "DD"), (c.n**2 - 12) / (2 * c.n) * c.D


@_check("adj-d-FFF", "d_abc F^a F^b F^c = 0", 1)
def _(c):
    return _t_xyz(c, "d", "FFF"), np.zeros((1, c.dim, c.dim))


@_check("adj-d-DFF", "d_abc D^a F^b F^c = (N^2-4) I / 2", 1)
def _(c):
    return _t_xyz(c, "d", "DFF"), (0.5 * (c.n**2 - 4) * c.I)[None]


@_check("adj-d-DDF", "d_abc D^a D^b F^c = 0", 1)
def _(c):
    return _t_xyz(c, "d", "DDF"), np.zeros((1, c.dim, c.dim))


@_check("adj-d-DDD", "d_abc D^a D^b D^c = (N^2-4)(N^2-12) I / (2N^2)", 1)
def _(c):
    n = c.n
    return _t_xyz(c, "d", "DDD"), ((n * n - 4) * (n * n - 12) / (2 * n * n) * c.I)[None]


# ---------------------------------------------------------------------------
# adjoint traces

@_check("adj-trace-F", "Tr F^a = 0", 1, grammar=("TrAdj[F(a)]", "0", "a"))
def _(c):
    return np.trace(c.F, axis1=1, axis2=2), np.zeros(c.dim)


@_check("adj-trace-D", "Tr D^a = 0", 1, grammar=("TrAdj[D(a)]", "0", "a"))
def _(c):
    return np.trace(c.D, axis1=1, axis2=2), np.zeros(c.dim)


@_check("adj-trace-FD", "Tr(F^a D^b) = 0", 2, grammar=("TrAdj[F(a)D(b)]", "0", "ab"))
def _(c):
    return _ein("abii->ab", c.pair("FD")), np.zeros((c.dim, c.dim))


@_check("adj-trace-FF", "Tr(F^a F^b) = N delta_ab", 2,
        grammar=("TrAdj[F(a)F(b)]", "NN*delta(a,b)", "ab"))
def _(c):
    return _ein("abii->ab", c.pair("FF")), c.n * c.I


@_check("adj-trace-DD", "Tr(D^a D^b) = (N^2-4) delta_ab / N", 2,
        grammar=("TrAdj[D(a)D(b)]", "(NN^2-4)/NN*delta(a,b)", "ab"))
def _(c):
    return _ein("abii->ab", c.pair("DD")), (c.n**2 - 4) / c.n * c.I


@_check("adj-trace-FFF", "Tr(F^a F^b F^c) = i N f_abc / 2", 3,
        grammar=("TrAdj[F(a)F(b)F(c)]", "i*NN/2*f(a,b,c)", "abc"))
def _(c):
    return c.tr3("FFF"), 0.5j * c.n * c.f


@_check("adj-trace-DFF", "Tr(D^a F^b F^c) = N d_abc / 2", 3,
        grammar=("TrAdj[D(a)F(b)F(c)]", "NN/2*d(a,b,c)", "abc"))
def _(c):
    return c.tr3("DFF"), 0.5 * c.n * c.d


@_check("adj-trace-DDF", "Tr(D^a D^b F^c) = i (N^2-4) f_abc / (2N)", 3,
        grammar=("TrAdj[D(a)D(b)F(c)]", "i*(NN^2-4)/(2*NN)*f(a,b,c)", "abc"))
def _(c):
    return c.tr3("DDF"), 1j * (c.n**2 - 4) / (2 * c.n) * c.f


@_check("adj-trace-DDD", "Tr(D^a D^b D^c) = (N^2-12) d_abc / (2N)", 3,
        grammar=("TrAdj[D(a)D(b)D(c)]", "(NN^2-12)/(2*NN)*d(a,b,c)", "abc"))
def _(c):
    return c.tr3("DDD"), (c.n**2 - 12) / (2 * c.n) * c.d


def _register_trace4():
    for word in ("FFFF", "FFFD", "FFDD", "FDFD", "FDDD", "DDDD"):
        def main(c, q=None, w=word):
            q = c.all_quads() if q is None else q
            return c.tr4(w, q), _main_trace4(c, w, q)

        def alt(c, q=None, w=word):
            q = c.all_quads() if q is None else q
            return c.tr4(w, q), _alt_trace4(c, w, q)

        def cross(c, q=None, w=word):
            q = c.all_quads() if q is None else q
            return _main_trace4(c, w, q), _alt_trace4(c, w, q)

        lhs = _trace_text(word)
        _check(f"adj-trace4-{word}", f"Tr({word}) four-index trace, delta/ff/dd/fd form", 1,
               sampled=True, grammar=(lhs, _MAIN_TEXT[word], "abcd"))(main)
        _check(f"alt-trace4-{word}", f"Tr({word}) four-index trace, f-eliminated form", 1,
               sampled=True, grammar=(lhs, _ALT_TEXT[word], "abcd"))(alt)
        _check(f"cross-trace4-{word}", f"both forms of Tr({word}) agree", 1,
               sampled=True, grammar=(_MAIN_TEXT[word], _ALT_TEXT[word], "abcd"))(cross)


_register_trace4()


@_check("adj-trace4-FaFbFaFc", "Tr(F^a F^b F^a F^c) = N^2 delta_bc / 2", 2,
        grammar=("TrAdj[F(a)F(b)F(a)F(c)]", "NN^2/2*delta(b,c)", "bc"))
def _(c):
    P = c.pair("FF")
    return _ein("abik,acki->bc", P, P), 0.5 * c.n**2 * c.I


@_check("adj-trace-DFF-product", "Tr(D^a F^b F^c) = d_ade (F^d F^e)_bc", 3)
def _(c):
    return c.tr3("DFF"), _ein("ade,debc->abc", c.d, c.pair("FF"))


@_check("adj-trace-DDF-product", "Tr(D^a D^b F^c) = d_ade (F^d D^e)_cb", 3)
def _(c):
    return c.tr3("DDF"), _ein("ade,decb->abc", c.d, c.pair("FD"))


@_check("adj-trace-DDD-product", "Tr(D^a D^b D^c) = d_ade (D^d D^e)_bc", 3)
def _(c):
    return c.tr3("DDD"), _ein("ade,debc->abc", c.d, c.pair("DD"))


@_check("adj-trace-FFD", "Tr(F^e F^a D^b) = N d_abe / 2", 3)
def _(c):
    return c.tr3("FFD").transpose(1, 2, 0), 0.5 * c.n * c.d


@_check("adj-trace-FDD", "Tr(F^a D^b D^e) = i (N^2-4) f_abe / (2N)", 3)
def _(c):
    return c.tr3("FDD"), 1j * (c.n**2 - 4) / (2 * c.n) * c.f


@_check("adj-trace-FFD-plus-DDD", "Tr(F^a F^b D^f + D^a D^b D^f) = (N^2-6) d_abf / N", 3)
def _(c):
    return c.tr3("FFD") + c.tr3("DDD"), (c.n**2 - 6) / c.n * c.d


# ---------------------------------------------------------------------------
# four generators in the defining representation

def _trace4_symmetric(c):
    n = c.n
    return ((c.dl4("ab", "cd") - c.dl4("ac", "bd") + c.dl4("ad", "bc")) / (4 * n)
            + (c.con("d", "ab", "d", "cd") - c.con("d", "ac", "d", "bd") + c.con("d", "ad", "d", "bc")) / 8
            + 1j / 8 * (c.con("d", "ab", "f", "cd") + c.con("d", "ac", "f", "bd") + c.con("d", "ad", "f", "bc")))


def _trace4_def(c):
    P = c.pair("TT")
    return _ein("abik,cdki->abcd", P, P)


@_check("def-trace4-direct",
        "Tr(T^a T^b T^c T^d) = delta_ab delta_cd / (4N) + (dd - ff + i fd + i df) / 8", 4)
def _(c):
    rhs = (c.dl4("ab", "cd") / (4 * c.n)
           + (c.con("d", "ab", "d", "cd") - c.con("f", "ab", "f", "cd")
              + 1j * c.con("f", "ab", "d", "cd") + 1j * c.con("f", "cd", "d", "ab")) / 8)
    return _trace4_def(c), rhs


@_check("def-trace4-symmetric", "Tr(T^a T^b T^c T^d) in the symmetric delta/dd/df form", 4,
        grammar=("Tr[T(a)T(b)T(c)T(d)]",
                 "1/(4*NN)*delta(a,b)*delta(c,d) - 1/(4*NN)*delta(a,c)*delta(b,d)"
                 " + 1/(4*NN)*delta(a,d)*delta(b,c) + 1/8*d(a,b,e)*d(c,d,e)"
                 " - 1/8*d(a,c,e)*d(b,d,e) + 1/8*d(a,d,e)*d(b,c,e) + i/8*d(a,b,e)*f(c,d,e)"
                 " + i/8*d(a,c,e)*f(b,d,e) + i/8*d(a,d,e)*f(b,c,e)", "abcd"))
def _(c):
    return _trace4_def(c), _trace4_symmetric(c)


@_check("def-trace4-contracted", "symmetric four-trace form with a = c summed gives -delta_bd / (4N)", 2)
def _(c):
    return _ein("abad->bd", _trace4_symmetric(c)), -c.I / (4 * c.n)


# ---------------------------------------------------------------------------
# special to N = 3

@_check("n3-FF-anticommutator",
        "{F^a,F^b}_cd = 3 d_abe (D^e)_cd + delta_ab delta_cd - delta_ac delta_bd - delta_ad delta_bc", 4,
        su3=True)
def _(c):
    P = c.pair("FF")
    rhs = 3 * _ein("abe,ecd->abcd", c.d, c.D) + c.dl4("ab", "cd") - c.dl4("ac", "bd") - c.dl4("ad", "bc")
    return P + P.transpose(1, 0, 2, 3), rhs


@_check("n3-DD-anticommutator",
        "{D^a,D^b}_cd = -d_abe (D^e)_cd + (delta_ab delta_cd + delta_ac delta_bd + delta_ad delta_bc) / 3", 4,
        su3=True)
def _(c):
    P = c.pair("DD")
    rhs = -_ein("abe,ecd->abcd", c.d, c.D) + (c.dl4("ab", "cd") + c.dl4("ac", "bd") + c.dl4("ad", "bc")) / 3
    return P + P.transpose(1, 0, 2, 3), rhs


@_check("n3-dd-ff-tensor",
        "3 d_abe d_cde - f_ace f_bde - f_ade f_bce = delta_ac delta_bd + delta_ad delta_bc - delta_ab delta_cd", 4,
        su3=True, grammar=("3*d(a,b,e)*d(c,d,e) - f(a,c,e)*f(b,d,e) - f(a,d,e)*f(b,c,e)",
                           "delta(a,c)*delta(b,d) + delta(a,d)*delta(b,c) - delta(a,b)*delta(c,d)", "abcd"))
def _(c):
    lhs = 3 * c.con("d", "ab", "d", "cd") - c.con("f", "ac", "f", "bd") - c.con("f", "ad", "f", "bc")
    return lhs, c.dl4("ac", "bd") + c.dl4("ad", "bc") - c.dl4("ab", "cd")


@_check("n3-ddd-sum",
        "d_abe d_cde + d_ace d_bde + d_ade d_bce = (delta_ab delta_cd + delta_ac delta_bd + delta_ad delta_bc) / 3", 4,
        su3=True, grammar=("d(a,b,e)*d(c,d,e) + d(a,c,e)*d(b,d,e) + d(a,d,e)*d(b,c,e)",
                           "1/3*delta(a,b)*delta(c,d) + 1/3*delta(a,c)*delta(b,d)"
                           " + 1/3*delta(a,d)*delta(b,c)",
                           "abcd"))
def _(c):
    lhs = c.con("d", "ab", "d", "cd") + c.con("d", "ac", "d", "bd") + c.con("d", "ad", "d", "bc")
    return lhs, (c.dl4("ab", "cd") + c.dl4("ac", "bd") + c.dl4("ad", "bc")) / 3


def _a3_rhs(c):
    return (0.5j * _ein("abe,ecd->abcd", c.f, c.F) + 1.5 * _ein("abe,ecd->abcd", c.d, c.D)
            + 0.5 * (c.dl4("ab", "cd") - c.dl4("ac", "bd") - c.dl4("ad", "bc")))


def _a4_rhs(c):
    return (0.5j * _ein("abe,ecd->abcd", c.f, c.F) - 0.5 * _ein("abe,ecd->abcd", c.d, c.D)
            + (c.dl4("ab", "cd") - c.dl4("ac", "bd")) / 6 + 0.5 * c.dl4("ad", "bc"))


@_check("n3-FF-product",
        "(F^a F^b)_cd = i f_abe (F^e)_cd / 2 + 3 d_abe (D^e)_cd / 2"
        " + (delta_ab delta_cd - delta_ac delta_bd - delta_ad delta_bc) / 2", 4, su3=True)
def _(c):
    return c.pair("FF"), _a3_rhs(c)


@_check("n3-DD-product",
        "(D^a D^b)_cd = i f_abe (F^e)_cd / 2 - d_abe (D^e)_cd / 2"
        " + (delta_ab delta_cd - delta_ac delta_bd) / 6 + delta_ad delta_bc / 2", 4, su3=True)
def _(c):
    return c.pair("DD"), _a4_rhs(c)


@_check("n3-products-sum", "the two N = 3 product rules add up to the all-N F F + D D identity", 4, su3=True)
def _(c):
    return _a3_rhs(c) + _a4_rhs(c), _ffpdd_rhs(c)


# ---------------------------------------------------------------------------
# running

def residual(lhs, rhs, tuple_axes: int) -> tuple[float, int]:
    """Worst normalized residual over tuples and the number of tuples."""
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    if lhs.shape != rhs.shape:
        raise ValueError(f"shape mismatch {lhs.shape} vs {rhs.shape}")
    count = int(np.prod(lhs.shape[:tuple_axes], dtype=np.int64)) if tuple_axes else 1
    l = lhs.reshape(count, -1)
    r = rhs.reshape(count, -1)
    if l.shape[1] == 0:
        return 0.0, count
    diff = np.max(np.abs(l - r), axis=1)
    scale = 1.0 + np.maximum(np.max(np.abs(l), axis=1), np.max(np.abs(r), axis=1))
    return float(np.max(diff / scale)), count


@dataclass(frozen=True)
class CheckResult:
    id: str
    status: str  # pass / fail / skipped
    max_residual: float
    tuples: int
    seconds: float = field(default=0.0, compare=False)
    reason: str = ""

    def line(self) -> str:
        status = f"skipped({self.reason})" if self.status == "skipped" else self.status
        return f"{self.id:<28} {status:<13} {self.max_residual:.3e} {self.tuples:>8d} {self.seconds:8.3f}s"


@dataclass(frozen=True)
class IdentityReport:
    n: int
    tolerance: float
    results: tuple
    sample_budget: int = 20000
    seed: int = 0

    @property
    def failed(self) -> list:
        return [r for r in self.results if r.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failed

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for r in self.results:
            out[r.status] += 1
        return out

    def to_text(self) -> str:
        head = (f"{REPORT_FORMAT} N={self.n} tol={self.tolerance:g} "
                f"budget={self.sample_budget} seed={self.seed}")
        c = self.counts()
        tail = f"total {len(self.results)}: {c['pass']} pass, {c['fail']} fail, {c['skipped']} skipped"
        return "\n".join([head, *(r.line() for r in self.results), tail]) + "\n"

    def to_json(self) -> str:
        doc = {
            "format": REPORT_FORMAT,
            "n": self.n,
            "tolerance": self.tolerance,
            "sample_budget": self.sample_budget,
            "seed": self.seed,
            "results": [
                {"id": r.id, "status": r.status, "max_residual": r.max_residual,
                 "tuples": r.tuples, "seconds": r.seconds, "reason": r.reason}
                for r in self.results
            ],
        }
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text: str) -> IdentityReport:
        doc = json.loads(text)
        if doc.get("format") != REPORT_FORMAT:
            raise ValueError(f"expected format {REPORT_FORMAT!r}")
        results = tuple(CheckResult(r["id"], r["status"], r["max_residual"], r["tuples"],
                                    r["seconds"], r.get("reason", "")) for r in doc["results"])
        return cls(doc["n"], doc["tolerance"], results, doc["sample_budget"], doc["seed"])


def _quads_for(check: IdentityCheck, n: int, budget: int, seed: int, exhaustive: bool):
    if check.cost_class != "sampled" or exhaustive or n <= EXHAUSTIVE_MAX_N:
        return None
    dim = n * n - 1
    rng = np.random.default_rng([seed, n, zlib.crc32(check.id.encode())])
    return rng.integers(0, dim, size=(budget, 4))


def _execute(check: IdentityCheck, ctx: Ctx, tol: float, quads) -> CheckResult:
    t0 = time.perf_counter()
    lhs, rhs = check.compute(ctx) if quads is None else check.compute(ctx, quads)
    res, count = residual(lhs, rhs, check.tuple_axes)
    status = "pass" if res <= tol else "fail"  # NaN fails
    return CheckResult(check.id, status, res, count, time.perf_counter() - t0)


def run_suite(n: int, tolerance: float = 1e-10, sample_budget: int = 20000, seed: int = 0,
              ids=None) -> IdentityReport:
    """Run every applicable registered check at N = n."""
    if n < 2:
        raise ValueError("N must be at least 2")
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    if sample_budget < 1:
        raise ValueError("sample_budget must be at least 1")
    ctx = Ctx(n)
    results = []
    for cid, check in REGISTRY.items():
        if ids is not None and cid not in ids:
            continue
        if not check.applies(n):
            results.append(CheckResult(cid, "skipped", 0.0, 0, 0.0, check.skip_reason))
            continue
        quads = _quads_for(check, n, sample_budget, seed, exhaustive=False)
        results.append(_execute(check, ctx, tolerance, quads))
    return IdentityReport(n, tolerance, tuple(results), sample_budget, seed)


def check_one(id: str, n: int, tolerance: float = 1e-10) -> tuple[str, float]:
    """Run one check exhaustively; returns (status, max_residual)."""
    if id not in REGISTRY:
        raise KeyError(f"unknown check id {id!r}")
    check = REGISTRY[id]
    if not check.applies(n):
        return "skipped", 0.0
    r = _execute(check, Ctx(n), tolerance, None)
    return r.status, r.max_residual


def check_values(id: str, n: int):
    """Exhaustive (lhs, rhs) arrays of a check, for cross-validation."""
    return REGISTRY[id].compute(Ctx(n))


# -- deliberately wrong variants of two identities ---------------------------

def sandwich_residual(n: int, rhs_label: str = "b") -> float:
    """Residual of T^a T^b T^a = -X / (2N) with X = T^b, or X = T^a summed over a."""
    c = Ctx(n)
    lhs = _ein("aij,bjk,akl->bil", c.T, c.T, c.T)
    if rhs_label == "b":
        rhs = -c.T / (2 * n)
    elif rhs_label == "a":
        rhs = np.broadcast_to(-c.T.sum(axis=0) / (2 * n), lhs.shape)
    else:
        raise ValueError("rhs_label must be 'a' or 'b'")
    return residual(lhs, rhs, 1)[0]


def fddd_residual(n: int, coefficient=Fraction(1, 4)) -> float:
    """Residual of the Tr(F D D D) formula with the given coefficient on i N d_abe f_cde."""
    c = Ctx(n)
    q = c.all_quads()
    return residual(c.tr4("FDDD", q), _main_trace4(c, "FDDD", q, coefficient), 1)[0]
