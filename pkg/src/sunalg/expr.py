"""Colour-algebra expressions: AST, parser, printer and canonical ordering.

An expression is a sum of terms; each term is an exact :class:`NPoly`
coefficient times an ordered product of factors.  Index labels that occur
twice in a term are summed (Einstein convention), labels that occur once are
free, and integer labels are fixed index values.

Grammar (``-`` also accepts the unicode minus)::

    expr   := ["+"|"-"] term (("+"|"-") term)*
    term   := item (("*"|"/") item)*
    item   := atom ["^" ["-"] INT]
    atom   := NUMBER | "i" | "NN" | "(" expr ")" | factor
    factor := "delta(" x "," x ")" | "deltaF(" x "," x ")"
            | "f(" x "," x "," x ")" | "d(" x "," x "," x ")"
            | "T(" x ";" x "," x ")" | "F(" x ";" x "," x ")" | "D(" x ";" x "," x ")"
            | "Tr[" ("T(" x ")")+ "]" | "TrAdj[" (("F("|"D(") x ")")+ "]"

Parenthesised sub-expressions and divisors must be scalars.  ``deltaF`` is
a Kronecker delta on fundamental indices; plain ``delta`` takes its sort
from the other uses of its labels and defaults to adjoint.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .npoly import NPoly

ADJ = "adj"
FUND = "fund"


class ParseError(ValueError):
    def __init__(self, msg, pos=None):
        self.pos = pos
        super().__init__(msg if pos is None else f"{msg} (at position {pos})")


class Idx(NamedTuple):
    name: str
    sort: str

    @property
    def const(self) -> bool:
        return self.name.isdigit()

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Delta:
    i: Idx
    j: Idx


@dataclass(frozen=True, slots=True)
class F3:
    a: Idx
    b: Idx
    c: Idx


@dataclass(frozen=True, slots=True)
class D3:
    a: Idx
    b: Idx
    c: Idx


@dataclass(frozen=True, slots=True)
class TElem:
    a: Idx
    i: Idx
    j: Idx


@dataclass(frozen=True, slots=True)
class FElem:
    a: Idx
    b: Idx
    c: Idx


@dataclass(frozen=True, slots=True)
class DElem:
    a: Idx
    b: Idx
    c: Idx


@dataclass(frozen=True, slots=True)
class TrDef:
    gens: tuple


@dataclass(frozen=True, slots=True)
class TrAdj:
    gens: tuple  # of (kind, Idx) with kind in {"F", "D"}


Factor = Union[Delta, F3, D3, TElem, FElem, DElem, TrDef, TrAdj]
KIND_ORDER = {Delta: 0, F3: 1, D3: 2, TElem: 3, FElem: 4, DElem: 5, TrDef: 6, TrAdj: 7}


def indices(fac) -> tuple:
    """All index slots of a factor, in slot order."""
    if isinstance(fac, TrDef):
        return fac.gens
    if isinstance(fac, TrAdj):
        return tuple(x for _, x in fac.gens)
    if isinstance(fac, Delta):
        return (fac.i, fac.j)
    if isinstance(fac, TElem):
        return (fac.a, fac.i, fac.j)
    return (fac.a, fac.b, fac.c)


def remap(fac, fn):
    """Apply ``fn`` to every index of a factor."""
    if isinstance(fac, TrDef):
        return TrDef(tuple(fn(x) for x in fac.gens))
    if isinstance(fac, TrAdj):
        return TrAdj(tuple((k, fn(x)) for k, x in fac.gens))
    if isinstance(fac, Delta):
        return Delta(fn(fac.i), fn(fac.j))
    if isinstance(fac, TElem):
        return TElem(fn(fac.a), fn(fac.i), fn(fac.j))
    return type(fac)(fn(fac.a), fn(fac.b), fn(fac.c))


@dataclass(frozen=True)
class Term:
    coeff: NPoly
    factors: tuple = ()


@dataclass(frozen=True)
class ColorExpr:
    terms: tuple
    free: frozenset = frozenset()

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        return to_text(self)

    def __add__(self, other):
        # the empty sum is compatible with any free-index set
        if not other.terms:
            return self
        if not self.terms:
            return ColorExpr(other.terms, other.free)
        _check_free(self.free, other.free)
        return ColorExpr(self.terms + other.terms, self.free)

    def __neg__(self):
        return ColorExpr(tuple(Term(-t.coeff, t.factors) for t in self.terms), self.free)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> ColorExpr:
        c = NPoly.coerce(c)
        return ColorExpr(tuple(Term(t.coeff * c, t.factors) for t in self.terms), self.free)


def _check_free(a, b):
    if a != b:
        raise ValueError(f"free indices differ: {sorted(map(str, a))} vs {sorted(map(str, b))}")


def index_counts(factors) -> Counter:
    """Occurrence counts of non-constant labels in a product."""
    c = Counter()
    for fac in factors:
        for x in indices(fac):
            if not x.const:
                c[x] += 1
    return c


def bound_indices(factors) -> set:
    return {x for x, k in index_counts(factors).items() if k == 2}


def free_indices(factors) -> frozenset:
    return frozenset(x for x, k in index_counts(factors).items() if k == 1)


# ---------------------------------------------------------------------------
# tokenizer / parser

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(.))")
_FACTOR_NAMES = {"delta", "deltaF", "f", "d", "T", "F", "D"}


class _Tok(NamedTuple):
    kind: str  # num, id, op, end
    text: str
    pos: int


def _tokenize(text: str):
    text = text.replace("−", "-").replace("·", "*")
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex)
        num, ident, op = m.groups()
        if num is not None:
            out.append(_Tok("num", num, start))
        elif ident is not None:
            out.append(_Tok("id", ident, start))
        else:
            if op not in "()[],;*/^+-":
                raise ParseError(f"unexpected character {op!r}", start)
            out.append(_Tok("op", op, start))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _RawFactor(NamedTuple):
    kind: str
    slots: tuple  # of (label, sort or None)
    extra: tuple = ()  # adjoint-trace kinds


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self, off=0):
        return self.toks[min(self.k + off, len(self.toks) - 1)]

    def next(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def expect(self, text):
        tok = self.next()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.pos)
        return tok

    def parse_sum(self):
        terms = []
        sign = 1
        if self.peek().text in "+-" and self.peek().kind == "op":
            sign = -1 if self.next().text == "-" else 1
        while True:
            coeff, facs = self.parse_term()
            terms.append((coeff * sign, facs))
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.next()
                sign = -1 if tok.text == "-" else 1
            else:
                return terms

    def parse_term(self):
        coeff, facs = self.parse_item()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.next()
            c2, f2 = self.parse_item()
            if op.text == "*":
                coeff, facs = coeff * c2, facs + f2
            else:
                if f2:
                    raise ParseError("cannot divide by a tensor factor", op.pos)
                try:
                    coeff = coeff / c2
                except ZeroDivisionError as exc:
                    raise ParseError(str(exc), op.pos) from None
        return coeff, facs

    def parse_item(self):
        start = self.peek()
        coeff, facs = self.parse_atom()
        if self.peek().text == "^" and self.peek().kind == "op":
            self.next()
            if facs:
                raise ParseError("only scalars can be raised to a power", start.pos)
            neg = False
            if self.peek().text == "-":
                self.next()
                neg = True
            tok = self.next()
            if tok.kind != "num" or not tok.text.isdigit():
                raise ParseError("exponent must be an integer", tok.pos)
            e = int(tok.text)
            try:
                coeff = coeff ** (-e if neg else e)
            except ZeroDivisionError as exc:
                raise ParseError(str(exc), tok.pos) from None
        return coeff, facs

    def parse_atom(self):
        tok = self.next()
        if tok.kind == "num":
            return NPoly.const(Fraction(tok.text)), []
        if tok.kind == "op" and tok.text == "(":
            inner = self.parse_sum()
            self.expect(")")
            total = NPoly()
            for c, facs in inner:
                if facs:
                    raise ParseError("parenthesised groups must be scalar", tok.pos)
                total = total + c
            return total, []
        if tok.kind == "id":
            nxt = self.peek().text
            if tok.text in _FACTOR_NAMES and nxt == "(":
                return NPoly.const(1), [self.parse_factor(tok)]
            if tok.text in ("Tr", "TrAdj") and nxt == "[":
                return NPoly.const(1), [self.parse_trace(tok)]
            if tok.text == "i":
                return NPoly.i(), []
            if tok.text == "NN":
                return NPoly.n(), []
        raise ParseError(f"unexpected token {tok.text or 'end of input'!r}", tok.pos)

    def label(self):
        tok = self.next()
        if tok.kind == "num" and tok.text.isdigit() and int(tok.text) >= 1:
            return tok.text
        if tok.kind == "id":
            return tok.text
        raise ParseError(f"expected an index label, found {tok.text or 'end of input'!r}", tok.pos)

    def parse_factor(self, name_tok):
        name = name_tok.text
        self.expect("(")
        if name in ("delta", "deltaF"):
            x = self.label()
            self.expect(",")
            y = self.label()
            sort = FUND if name == "deltaF" else None
            raw = _RawFactor("delta", ((x, sort), (y, sort)))
        elif name in ("f", "d"):
            xs = [self.label()]
            for _ in range(2):
                self.expect(",")
                xs.append(self.label())
            raw = _RawFactor(name, tuple((x, ADJ) for x in xs))
        else:
            a = self.label()
            self.expect(";")
            b = self.label()
            self.expect(",")
            c = self.label()
            sort = FUND if name == "T" else ADJ
            raw = _RawFactor(name + "elem", ((a, ADJ), (b, sort), (c, sort)))
        self.expect(")")
        return raw

    def parse_trace(self, name_tok):
        self.expect("[")
        allowed = ("T",) if name_tok.text == "Tr" else ("F", "D")
        kinds, slots = [], []
        while self.peek().text != "]":
            tok = self.next()
            if tok.kind != "id" or tok.text not in allowed:
                raise ParseError(f"{name_tok.text} accepts only {'/'.join(allowed)}(x) generators", tok.pos)
            self.expect("(")
            slots.append((self.label(), ADJ))
            self.expect(")")
            if self.peek().text == "*":
                self.next()
            kinds.append(tok.text)
        if not slots:
            raise ParseError("empty trace", name_tok.pos)
        self.expect("]")
        if name_tok.text == "Tr":
            return _RawFactor("tr", tuple(slots))
        return _RawFactor("tradj", tuple(slots), tuple(kinds))


def parse(text: str) -> ColorExpr:
    """Parse ``text`` into a sort-checked :class:`ColorExpr`.

    Summed labels are renamed ``_1, _2, ...`` in order of first occurrence.
    """
    p = _Parser(text)
    raw_terms = p.parse_sum()
    tok = p.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected token {tok.text!r}", tok.pos)
    raw_terms = [(c, f) for c, f in raw_terms if not c.is_zero()]

    # occurrence checks and free labels
    per_term_counts = []
    for _, facs in raw_terms:
        cnt = Counter(x for fac in facs for x, _ in fac.slots if not x.isdigit())
        for x, k in cnt.items():
            if k > 2:
                raise ParseError(f"index {x!r} appears {k} times in one term")
        per_term_counts.append(cnt)
    free_sets = [frozenset(x for x, k in cnt.items() if k == 1) for cnt in per_term_counts]
    free = free_sets[0] if free_sets else frozenset()
    for fs in free_sets[1:]:
        if fs != free:
            raise ParseError(f"inconsistent free indices {sorted(free)} vs {sorted(fs)}")

    # sorts of free labels are shared between terms
    global_sort = {}
    for _, facs in raw_terms:
        for fac in facs:
            for x, s in fac.slots:
                if x in free and s is not None:
                    if global_sort.setdefault(x, s) != s:
                        raise ParseError(f"index {x!r} used with both adjoint and fundamental sort")

    terms = []
    free_idx = set()
    for coeff, facs in raw_terms:
        sorts = _infer_sorts(facs, global_sort)
        renamed = _rename_map(facs, free)
        def mk(x, sorts=sorts, renamed=renamed):
            return Idx(renamed.get(x, x), sorts[x])
        built = tuple(_build(fac, mk) for fac in facs)
        terms.append(Term(coeff, built))
        free_idx |= {Idx(x, sorts[x]) for x in free}
    return ColorExpr(tuple(terms), frozenset(free_idx))


def _infer_sorts(facs, global_sort):
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    known = {}
    for fac in facs:
        for x, s in fac.slots:
            find(x)
            if x.isdigit():
                continue
            if s is not None:
                if known.setdefault(x, s) != s:
                    raise ParseError(f"index {x!r} used with both adjoint and fundamental sort")
        if fac.kind == "delta":
            (x, _), (y, _) = fac.slots
            if not (x.isdigit() or y.isdigit()):
                parent[find(x)] = find(y)
    for x, s in global_sort.items():
        if x in parent and known.setdefault(x, s) != s:
            raise ParseError(f"index {x!r} used with both adjoint and fundamental sort")
    comp_sort = {}
    for x, s in known.items():
        r = find(x)
        if comp_sort.setdefault(r, s) != s:
            raise ParseError(f"delta joins indices of different sorts at {x!r}")
    out = {}
    for x in parent:
        out[x] = comp_sort.get(find(x), ADJ)
    for fac in facs:
        if fac.kind == "delta":
            (x, sx), (y, sy) = fac.slots
            if sx == FUND:
                for z in (x, y):
                    if not z.isdigit() and out[z] != FUND:
                        raise ParseError(f"deltaF used on adjoint index {z!r}")
    return out


def _build(fac, mk):
    def idx(pos):
        x, s = fac.slots[pos]
        if x.isdigit():
            return Idx(x, s if s is not None else (mk(fac.slots[1 - pos][0]).sort
                                                    if fac.kind == "delta" and not fac.slots[1 - pos][0].isdigit()
                                                    else ADJ))
        return mk(x)

    if fac.kind == "delta":
        return Delta(idx(0), idx(1))
    if fac.kind == "f":
        return F3(idx(0), idx(1), idx(2))
    if fac.kind == "d":
        return D3(idx(0), idx(1), idx(2))
    if fac.kind == "Telem":
        return TElem(idx(0), idx(1), idx(2))
    if fac.kind == "Felem":
        return FElem(idx(0), idx(1), idx(2))
    if fac.kind == "Delem":
        return DElem(idx(0), idx(1), idx(2))
    if fac.kind == "tr":
        return TrDef(tuple(idx(k) for k in range(len(fac.slots))))
    return TrAdj(tuple((kind, idx(k)) for k, kind in enumerate(fac.extra)))


def _rename_map(facs, free):
    seen, out = [], {}
    for fac in facs:
        for x, _ in fac.slots:
            if x.isdigit() or x in free or x in out:
                continue
            seen.append(x)
            out[x] = None
    names = _serial_names(len(seen), {str(x) for x in free})
    return dict(zip(seen, names))


def _serial_names(count, taken):
    out, k = [], 1
    while len(out) < count:
        name = f"_{k}"
        if name not in taken:
            out.append(name)
        k += 1
    return out


# ---------------------------------------------------------------------------
# printer

def factor_text(fac) -> str:
    if isinstance(fac, Delta):
        tag = "deltaF" if fac.i.sort == FUND else "delta"
        return f"{tag}({fac.i},{fac.j})"
    if isinstance(fac, F3):
        return f"f({fac.a},{fac.b},{fac.c})"
    if isinstance(fac, D3):
        return f"d({fac.a},{fac.b},{fac.c})"
    if isinstance(fac, TElem):
        return f"T({fac.a};{fac.i},{fac.j})"
    if isinstance(fac, FElem):
        return f"F({fac.a};{fac.b},{fac.c})"
    if isinstance(fac, DElem):
        return f"D({fac.a};{fac.b},{fac.c})"
    if isinstance(fac, TrDef):
        return "Tr[" + "".join(f"T({x})" for x in fac.gens) + "]"
    return "TrAdj[" + "".join(f"{k}({x})" for k, x in fac.gens) + "]"


def _coeff_text(c: NPoly, has_factors: bool) -> str:
    text = c.to_text()
    if has_factors:
        if text == "1":
            return ""
        if any(ch in text for ch in "/+-"):
            text = f"({text})"
        return text + "*"
    return text


def term_text(t: Term, leading: bool) -> str:
    c = t.coeff
    neg = c.leading_sign() < 0
    if neg:
        c = -c
    body = _coeff_text(c, bool(t.factors)) + "*".join(factor_text(f) for f in t.factors)
    if leading:
        return f"-{body}" if neg else body
    return f" - {body}" if neg else f" + {body}"


def to_text(e: ColorExpr) -> str:
    if not e.terms:
        return "0"
    return "".join(term_text(t, k == 0) for k, t in enumerate(e.terms))


# ---------------------------------------------------------------------------
# canonical form

def _ikey(x: Idx, protected):
    if x.const:
        return (0, int(x.name), "")
    if x in protected:
        return (1, 0, x.name)
    m = _SERIAL.fullmatch(x.name)
    if m:
        return (2, int(m.group(1)), "")
    return (3, 0, x.name)


_SERIAL = re.compile(r"_(\d+)")


def _parity(keys):
    inv = sum(1 for i in range(len(keys)) for j in range(i + 1, len(keys)) if keys[i] > keys[j])
    return -1 if inv % 2 else 1


def normalize_factor(fac, protected):
    """Return (sign, factor) with symmetric slots sorted; sign 0 means the factor vanishes."""
    key = lambda x: _ikey(x, protected)
    if isinstance(fac, (F3, D3)):
        xs = (fac.a, fac.b, fac.c)
        ks = [key(x) for x in xs]
        order = sorted(range(3), key=lambda k: ks[k])
        new = type(fac)(*(xs[k] for k in order))
        if isinstance(fac, F3):
            if len(set(xs)) < 3:
                return 0, new
            return _parity([ks[k] for k in range(3)]), new
        return 1, new
    if isinstance(fac, Delta):
        if key(fac.j) < key(fac.i):
            return 1, Delta(fac.j, fac.i)
        return 1, fac
    if isinstance(fac, (FElem, DElem)):
        if fac.b == fac.c and isinstance(fac, FElem):
            return 0, fac
        if key(fac.c) < key(fac.b):
            return (-1 if isinstance(fac, FElem) else 1), type(fac)(fac.a, fac.c, fac.b)
        return 1, fac
    if isinstance(fac, TrDef):
        g = fac.gens
        best = min((tuple(key(x) for x in g[r:] + g[:r]), r) for r in range(len(g)))
        r = best[1]
        return 1, TrDef(g[r:] + g[:r])
    if isinstance(fac, TrAdj):
        g = fac.gens
        nf = sum(1 for k, _ in g if k == "F")
        rev = tuple(reversed(g))
        cands = []
        for seq, sign in ((g, 1), (rev, -1 if nf % 2 else 1)):
            for r in range(len(seq)):
                rot = seq[r:] + seq[:r]
                cands.append((tuple((k, key(x)) for k, x in rot), sign, rot))
        cands.sort(key=lambda c: c[0])
        best = cands[0]
        if any(c[0] == best[0] and c[1] != best[1] for c in cands):
            return 0, TrAdj(best[2])
        return best[1], TrAdj(best[2])
    return 1, fac


def factor_key(fac, protected):
    ks = tuple(_ikey(x, protected) for x in indices(fac))
    extra = tuple(k for k, _ in fac.gens) if isinstance(fac, TrAdj) else ()
    return (KIND_ORDER[type(fac)], len(ks), extra, ks)


def _normsort(factors, protected):
    sign = 1
    out = []
    for fac in factors:
        s, nf = normalize_factor(fac, protected)
        if s == 0:
            return 0, ()
        sign *= s
        out.append(nf)
    out.sort(key=lambda f: factor_key(f, protected))
    return sign, tuple(out)


def _rename(factors, protected):
    order = []
    seen = set()
    for fac in factors:
        for x in indices(fac):
            if x.const or x in protected or x in seen:
                continue
            seen.add(x)
            order.append(x)
    names = _serial_names(len(order), {x.name for x in protected})
    mapping = {x: Idx(nm, x.sort) for x, nm in zip(order, names)}
    return tuple(remap(f, lambda x: mapping.get(x, x)) for f in factors)


def canonical_factors(factors, protected, max_rounds: int = 12):
    """Deterministic representative of a product up to dummy relabelling.

    Returns ``(sign, factors)``; sign 0 means the product vanishes by symmetry.
    """
    protected = frozenset(protected)
    sign = 1
    state = factors
    history = {}
    for _ in range(max_rounds):
        s, ns = _normsort(state, protected)
        if s == 0:
            return 0, ()
        ns = _rename(ns, protected)
        sign *= s
        if ns == state:
            return sign, ns
        if ns in history:
            if history[ns] != sign:
                return 0, ()
            cycle = [st for st, _ in history.items()]
            start = cycle.index(ns)
            options = [(tuple(factor_key(f, protected) for f in st), st, history[st])
                       for st in cycle[start:]]
            _, st, sg = min(options, key=lambda o: o[0])
            return sg, st
        history[ns] = sign
        state = ns
    options = [(tuple(factor_key(f, protected) for f in st), st, sg) for st, sg in history.items()]
    _, st, sg = min(options, key=lambda o: o[0])
    return sg, st


def term_sort_key(t: Term, protected):
    return (len(t.factors), tuple(factor_key(f, protected) for f in t.factors))


def canonicalize(e: ColorExpr) -> ColorExpr:
    """Sort symmetric slots, order factors, rename dummies and merge like terms."""
    protected = e.free
    acc = {}
    for t in e.terms:
        sign, facs = canonical_factors(t.factors, protected)
        if sign == 0 or t.coeff.is_zero():
            continue
        c = t.coeff if sign == 1 else -t.coeff
        acc[facs] = acc[facs] + c if facs in acc else c
    terms = [Term(c, f) for f, c in acc.items() if not c.is_zero()]
    terms.sort(key=lambda t: term_sort_key(t, protected))
    return ColorExpr(tuple(terms), e.free)
