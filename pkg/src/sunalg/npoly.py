"""Exact Laurent polynomials in N with Gaussian-rational coefficients.

Every scalar produced by the simplifier lives here, e.g. ``(N^2-4)/(2N)`` or
``i N/2``.  Arithmetic is exact; floating point only appears in
:meth:`NPoly.evaluate`.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Union

Scalar = Union[int, Fraction, "NPoly"]

_ZERO = Fraction(0)


def _cmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


class NPoly:
    """Sum of ``c_k * N**k`` with ``c_k = p + q*i`` and p, q rational.

    Instances are immutable and hashable.  Zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, (re, im) in terms.items():
                re, im = Fraction(re), Fraction(im)
                if re or im:
                    clean[int(k)] = (re, im)
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, value, imag=0) -> NPoly:
        return cls({0: (value, imag)})

    @classmethod
    def n(cls, power: int = 1) -> NPoly:
        return cls({power: (1, 0)})

    @classmethod
    def i(cls) -> NPoly:
        return cls({0: (0, 1)})

    @classmethod
    def coerce(cls, x: Scalar) -> NPoly:
        if isinstance(x, NPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as an NPoly")

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: (Fraction(1), _ZERO)}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def powers(self):
        return sorted(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NPoly.const(other)
        if not isinstance(other, NPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = NPoly.coerce(other)
        out = dict(self._terms)
        for k, (re, im) in other._terms.items():
            r0, i0 = out.get(k, (_ZERO, _ZERO))
            out[k] = (r0 + re, i0 + im)
        return NPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return NPoly({k: (-re, -im) for k, (re, im) in self._terms.items()})

    def __sub__(self, other):
        return self + (-NPoly.coerce(other))

    def __rsub__(self, other):
        return NPoly.coerce(other) - self

    def __mul__(self, other):
        other = NPoly.coerce(other)
        out = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                re, im = _cmul(c1, c2)
                r0, i0 = out.get(k1 + k2, (_ZERO, _ZERO))
                out[k1 + k2] = (r0 + re, i0 + im)
        return NPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = NPoly.coerce(other)
        if not other.is_monomial():
            raise ZeroDivisionError("division is only defined by a single monomial in N")
        (k, (re, im)), = other._terms.items()
        norm = re * re + im * im
        inv = (re / norm, -im / norm)
        return NPoly({p - k: _cmul(c, inv) for p, c in self._terms.items()})

    def __rtruediv__(self, other):
        return NPoly.coerce(other) / self

    def __pow__(self, exp: int):
        if not isinstance(exp, int):
            raise TypeError("NPoly exponent must be an integer")
        if exp < 0:
            return NPoly.const(1) / self ** (-exp)
        out = NPoly.const(1)
        for _ in range(exp):
            out = out * self
        return out

    def conjugate(self) -> NPoly:
        return NPoly({k: (re, -im) for k, (re, im) in self._terms.items()})

    # -- evaluation ---------------------------------------------------
    def evaluate_exact(self, n: int) -> tuple[Fraction, Fraction]:
        re = im = _ZERO
        for k, (a, b) in self._terms.items():
            scale = Fraction(n) ** k
            re += a * scale
            im += b * scale
        return re, im

    def evaluate(self, n: int) -> complex:
        re, im = self.evaluate_exact(n)
        return complex(float(re), float(im))

    # -- printing -----------------------------------------------------
    def leading_sign(self) -> int:
        """Sign of the highest-power coefficient (real part, else imaginary)."""
        if not self._terms:
            return 0
        re, im = self._terms[max(self._terms)]
        return 1 if (re > 0 or (re == 0 and im > 0)) else -1

    def to_text(self) -> str:
        """Render in the coefficient grammar, e.g. ``(NN^2-4)/(2*NN)``."""
        if not self._terms:
            return "0"
        kmin = min(self._terms)
        shift = -kmin if kmin < 0 else 0
        den = 1
        for re, im in self._terms.values():
            den = lcm(den, re.denominator, im.denominator)
        parts = []
        for k in sorted(self._terms, reverse=True):
            re, im = self._terms[k]
            parts.append((k + shift, int(re * den), int(im * den)))
        prefix = ""
        if len(parts) > 1 and not any(re for _, re, _ in parts):
            prefix = "i*"
            parts = [(k, im, 0) for k, _, im in parts]
        num = _render_numerator(parts)
        if prefix:
            num = f"({num})"
        if den == 1 and shift == 0:
            return prefix + num
        if shift == 0:
            den_text = str(den)
        else:
            nn = "NN" if shift == 1 else f"NN^{shift}"
            den_text = nn if den == 1 else f"({den}*{nn})"
        if len(parts) > 1 and not prefix:
            num = f"({num})"
        return f"{prefix}{num}/{den_text}"

    def __repr__(self):
        return f"NPoly({self.to_text()})"

    __str__ = to_text


def _render_numerator(parts) -> str:
    out = []
    for idx, (k, re, im) in enumerate(parts):
        if re and im:
            sign = 1
            body = f"({re}{'+' if im > 0 else '-'}{_imag(abs(im))})"
        elif re:
            sign = 1 if re > 0 else -1
            body = str(abs(re))
        else:
            sign = 1 if im > 0 else -1
            body = _imag(abs(im))
        if k:
            nn = "NN" if k == 1 else f"NN^{k}"
            body = nn if body == "1" else f"{body}*{nn}"
        if idx == 0:
            out.append(body if sign > 0 else f"-{body}")
        else:
            out.append(("+" if sign > 0 else "-") + body)
    return "".join(out)


def _imag(q: int) -> str:
    return "i" if q == 1 else f"{q}*i"


ONE = NPoly.const(1)
ZERO = NPoly()
NN = NPoly.n()
I = NPoly.i()
