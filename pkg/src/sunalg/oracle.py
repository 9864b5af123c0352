"""Brute-force numeric evaluation of colour expressions at a concrete N.

Each term is turned into an explicit tensor network over the matrices built
by :mod:`sunalg.basis` and :mod:`sunalg.adjoint` and summed with
``numpy.einsum``; nothing from the rewrite engine is used.  This is the
ground truth the simplifier is checked against.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .adjoint import adjoint_for
from .basis import tensors_for
from .expr import (ADJ, ColorExpr, D3, DElem, Delta, F3, FElem, TElem, TrAdj, TrDef,
                   Idx, parse)

_LETTERS = string.ascii_letters
# dense free-index tensors larger than this are evaluated point by point
MAX_DENSE = 2_000_000
# numpy caps intermediates at the largest operand unless told otherwise
_PATH = ("greedy", 2**27)


@dataclass(frozen=True, eq=False)
class _Arrays:
    n: int
    T: np.ndarray
    f: np.ndarray
    d: np.ndarray
    F: np.ndarray
    D: np.ndarray
    eye_adj: np.ndarray
    eye_fund: np.ndarray


@lru_cache(maxsize=16)
def arrays(n: int) -> _Arrays:
    basis, f, d = tensors_for(n)
    adj = adjoint_for(n)
    dim = n * n - 1
    return _Arrays(n, basis.generators, f.dense, d.dense, adj.F, adj.D, np.eye(dim), np.eye(n))


def _as_expr(e):
    return parse(e) if isinstance(e, str) else e


def _range(x: Idx, n: int) -> int:
    return n * n - 1 if x.sort == ADJ else n


def _network(factors, A: _Arrays):
    """Operands of a product as (array, [Idx or fresh key per axis]) pairs."""
    ops = []
    fresh = iter(range(10**9))

    def new(sort):
        return ("#", next(fresh), sort)

    scalar = 1.0
    for fac in factors:
        if isinstance(fac, Delta):
            ops.append((A.eye_adj if fac.i.sort == ADJ else A.eye_fund, [fac.i, fac.j]))
        elif isinstance(fac, F3):
            ops.append((A.f, [fac.a, fac.b, fac.c]))
        elif isinstance(fac, D3):
            ops.append((A.d, [fac.a, fac.b, fac.c]))
        elif isinstance(fac, TElem):
            ops.append((A.T, [fac.a, fac.i, fac.j]))
        elif isinstance(fac, FElem):
            ops.append((A.F, [fac.a, fac.b, fac.c]))
        elif isinstance(fac, DElem):
            ops.append((A.D, [fac.a, fac.b, fac.c]))
        elif isinstance(fac, TrDef):
            k = len(fac.gens)
            if k == 0:
                scalar *= A.n
                continue
            links = [new("fund") for _ in range(k)]
            for j, x in enumerate(fac.gens):
                ops.append((A.T, [x, links[j], links[(j + 1) % k]]))
        elif isinstance(fac, TrAdj):
            k = len(fac.gens)
            links = [new(ADJ) for _ in range(k)]
            for j, (kind, x) in enumerate(fac.gens):
                ops.append((A.F if kind == "F" else A.D, [x, links[j], links[(j + 1) % k]]))
        else:
            raise TypeError(f"unknown factor {fac!r}")
    return scalar, ops


def _eval_term(term, A: _Arrays, out_order, fixed):
    """Contract one term; ``fixed`` maps Idx -> 0-based value (constants and sliced frees)."""
    scalar, ops = _network(term.factors, A)
    letters = {}

    def letter(key):
        if key not in letters:
            if len(letters) >= len(_LETTERS):
                raise ValueError("term has too many indices for the oracle")
            letters[key] = _LETTERS[len(letters)]
        return letters[key]

    operands, subs = [], []
    for arr, keys in ops:
        sl, sub = [], []
        for key in keys:
            if isinstance(key, Idx) and (key.const or key in fixed):
                v = int(key.name) - 1 if key.const else fixed[key]
                if not 0 <= v < _range(key, A.n):
                    raise IndexError(f"index {key.name}={v + 1} out of range for N={A.n}")
                sl.append(v)
            else:
                sl.append(slice(None))
                sub.append(letter(key))
        operands.append(arr[tuple(sl)])
        subs.append("".join(sub))
    out = "".join(letter(x) for x in out_order)
    coeff = term.coeff.evaluate(A.n) * scalar
    if not operands:
        return np.asarray(coeff)
    spec = ",".join(subs) + "->" + out
    return coeff * np.einsum(spec, *operands, optimize=_PATH)


def eval_tensor(e, n: int, order=None) -> tuple[np.ndarray, tuple]:
    """Value of ``e`` for every assignment of its free indices.

    Returns the dense array and the index order of its axes.
    """
    e = _as_expr(e)
    if n < 2:
        raise ValueError("N must be at least 2")
    A = arrays(n)
    if order is None:
        order = tuple(sorted(e.free))
    else:
        by_name = {x.name: x for x in e.free}
        order = tuple(by_name[x] if isinstance(x, str) else x for x in order)
    shape = tuple(_range(x, n) for x in order)
    total = np.zeros(shape, dtype=complex)
    for t in e.terms:
        total = total + _eval_term(t, A, order, {})
    return total, order


def eval(e, n: int, free_assignment=None) -> complex:
    """Value of ``e`` at N = n with free indices fixed by ``free_assignment``.

    The assignment maps index names (or :class:`Idx`) to 1-based values and
    must cover exactly the free indices.
    """
    e = _as_expr(e)
    if n < 2:
        raise ValueError("N must be at least 2")
    fixed = _resolve(e, free_assignment or {}, n)
    A = arrays(n)
    total = 0j
    for t in e.terms:
        total += complex(_eval_term(t, A, (), fixed))
    return total


def _resolve(e: ColorExpr, assignment, n):
    by_name = {x.name: x for x in e.free}
    fixed = {}
    for k, v in assignment.items():
        name = k.name if isinstance(k, Idx) else str(k)
        if name not in by_name:
            raise KeyError(f"{name!r} is not a free index of the expression")
        x = by_name[name]
        if not 1 <= int(v) <= _range(x, n):
            raise IndexError(f"index {name}={v} out of range 1..{_range(x, n)}")
        fixed[x] = int(v) - 1
    missing = set(by_name) - {x.name for x in fixed}
    if missing:
        raise KeyError(f"no value for free indices {sorted(missing)}")
    return fixed


@dataclass
class Comparison:
    equal: bool
    worst_residual: float
    witness: dict  # {"n": ..., index name: 1-based value}


def equal_by_sampling(a, b, n_set=(2, 3, 4, 5), samples: int = 50, tol: float = 1e-9,
                      seed: int = 0) -> Comparison:
    """Compare two expressions numerically on random free-index assignments."""
    a, b = _as_expr(a), _as_expr(b)
    # an empty sum is zero for any free-index set
    if not a.terms:
        a = ColorExpr((), b.free)
    if not b.terms:
        b = ColorExpr((), a.free)
    if a.free != b.free:
        raise ValueError(f"free indices differ: {sorted(map(str, a.free))} vs {sorted(map(str, b.free))}")
    order = tuple(sorted(a.free))
    worst, witness = -1.0, {}
    for n in n_set:
        rng = np.random.default_rng([seed, n])
        ranges = [_range(x, n) for x in order]
        picks = np.stack([rng.integers(0, r, size=samples) for r in ranges], axis=1) \
            if order else np.zeros((1, 0), dtype=int)
        if not order or int(np.prod(ranges, dtype=float)) <= MAX_DENSE:
            va, _ = eval_tensor(a, n, order)
            vb, _ = eval_tensor(b, n, order)
            diffs = [abs(va[tuple(p)] - vb[tuple(p)]) for p in picks]
        else:
            diffs = []
            for p in picks:
                assign = {x.name: int(v) + 1 for x, v in zip(order, p)}
                diffs.append(abs(eval(a, n, assign) - eval(b, n, assign)))
        k = int(np.argmax(diffs))
        if diffs[k] > worst:
            worst = float(diffs[k])
            witness = {"n": n, **{x.name: int(v) + 1 for x, v in zip(order, picks[k])}}
    return Comparison(worst <= tol, worst, witness)
