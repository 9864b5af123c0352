"""Simplification of colour expressions to normal form.

The engine is a depth-first term rewriter: each rule inspects a single term
and either declines or replaces it by a list of terms.  Rules are grouped in
three stages that :func:`simplify` iterates to a fixpoint, canonicalizing
(and merging like terms) between stages:

* defining: Kronecker delta substitution, closing chains of
  ``T(a;i,j)`` into traces, short traces, the completeness (Fierz) relation
  for repeated adjoint labels on generators, the product rule
  ``Tr(T^a T^b X) = delta_ab Tr(X)/(2N) + (d_abe + i f_abe) Tr(T^e X)/2``
  and its open-chain analogue;
* adjoint: ``F``/``D`` matrix elements and adjoint traces become explicit
  ``f``/``d`` contractions;
* contract: Kronecker deltas, vanishing self-contractions, closed loops of
  2, 3 or 4 tensors via the known adjoint trace formulae, longer loops by
  rewriting them through defining-representation traces, and finally
  ``f_abe f_cde -> 2/N(...) + dd - dd`` on tree-like pairs.

Every rule strictly lowers the measure returned by :func:`measure` (the
optional SU(3)-only rules excepted), which is asserted when ``debug=True``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import count

from .expr import (ADJ, FUND, ColorExpr, D3, DElem, Delta, F3, FElem, Idx, TElem, Term,
                   TrAdj, TrDef, canonicalize, free_indices, index_counts, indices, parse,
                   remap, term_text, to_text)
from .npoly import I, NN, NPoly, ONE

_fresh_ids = count(1)


def _fresh(sort: str) -> Idx:
    return Idx(f"_r{next(_fresh_ids)}", sort)


# ---------------------------------------------------------------------------
# closed-form tables (checked numerically by the identity suite)

# Tr over adjoint words; free labels a, b, c, d name the generator indices.
ADJOINT_TRACES = {
    "FF": "NN*delta(a,b)",
    "DD": "(NN^2-4)/NN*delta(a,b)",
    "FD": "0",
    "FFF": "i*NN/2*f(a,b,c)",
    "DFF": "NN/2*d(a,b,c)",
    "DDF": "i*(NN^2-4)/(2*NN)*f(a,b,c)",
    "DDD": "(NN^2-12)/(2*NN)*d(a,b,c)",
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

# f_abe f_cde with one shared summed index, rewritten without f.
FF_SINGLE = ("2/NN*delta(a,c)*delta(b,d) - 2/NN*delta(a,d)*delta(b,c)"
             " + d(a,c,e)*d(b,d,e) - d(b,c,e)*d(a,d,e)")

# SU(3) only: matrix elements (F^a F^b)_cd and (D^a D^b)_cd.
SU3_PRODUCTS = {
    "FF": "1/2*f(a,b,e)*f(e,c,d) + 3/2*d(a,b,e)*d(e,c,d) + 1/2*delta(a,b)*delta(c,d)"
          " - 1/2*delta(a,c)*delta(b,d) - 1/2*delta(a,d)*delta(b,c)",
    "DD": "1/2*f(a,b,e)*f(e,c,d) - 1/2*d(a,b,e)*d(e,c,d) + 1/6*delta(a,b)*delta(c,d)"
          " - 1/6*delta(a,c)*delta(b,d) + 1/2*delta(a,d)*delta(b,c)",
}


@lru_cache(maxsize=None)
def _template(text: str) -> ColorExpr:
    return parse(text)


def _instantiate(text, mapping, coeff, rest):
    """Terms of a template with free labels replaced via ``mapping`` (name -> Idx)."""
    out = []
    for t in _template(text).terms:
        fresh = {}

        def sub(x):
            if x.name in mapping:
                return mapping[x.name]
            if x not in fresh:
                fresh[x] = _fresh(x.sort)
            return fresh[x]

        out.append(Term(coeff * t.coeff, rest + tuple(remap(f, sub) for f in t.factors)))
    return out


# ---------------------------------------------------------------------------
# engine

@dataclass(frozen=True)
class RuleApplication:
    rule_id: str
    term: int | None
    factor: int | None
    before: object  # Term, or ColorExpr for whole-expression steps
    after: tuple    # of Term, or (ColorExpr,)

    def __str__(self):
        if self.term is None:
            return f"{self.rule_id} @ * : {to_text(self.before)} ⇒ {to_text(self.after[0])}"
        after = "".join(term_text(t, k == 0) for k, t in enumerate(self.after)) or "0"
        return (f"{self.rule_id} @ {self.term}/{self.factor} : "
                f"{term_text(self.before, True)} ⇒ {after}")


@dataclass
class Options:
    su3_rules: bool = False
    expansion_cap: int = 64
    debug: bool = False
    log: list | None = field(default=None, repr=False)


def measure(term: Term) -> tuple:
    """Lexicographic size used to argue termination."""
    adj = tr = telem = trdef = tensors = nf = deltas = 0
    for fac in term.factors:
        if isinstance(fac, TrAdj):
            adj += len(fac.gens)
        elif isinstance(fac, (FElem, DElem)):
            adj += 1
        elif isinstance(fac, TrDef):
            tr += len(fac.gens)
            trdef += 1
        elif isinstance(fac, TElem):
            tr += 1
            telem += 1
        elif isinstance(fac, F3):
            tensors += 1
            nf += 1
        elif isinstance(fac, D3):
            tensors += 1
        elif isinstance(fac, Delta):
            deltas += 1
    return (adj, tr, telem, trdef, tensors, nf, deltas, len(term.factors))


_UNMEASURED = {"su3-product"}


def _run(terms, rules, opts: Options):
    done = []
    stack = list(reversed(terms))
    while stack:
        t = stack.pop()
        for rule_id, fn in rules:
            res = fn(t, opts)
            if res is None:
                continue
            fpos, new = res
            new = [x for x in new if not x.coeff.is_zero()]
            if opts.debug and rule_id not in _UNMEASURED:
                m0 = measure(t)
                for x in new:
                    assert measure(x) < m0, f"{rule_id} did not decrease the measure"
            if opts.log is not None:
                opts.log.append(RuleApplication(rule_id, len(done), fpos, t, tuple(new)))
            stack.extend(reversed(new))
            break
        else:
            done.append(t)
    return done


def _stage(e: ColorExpr, rules, opts: Options) -> ColorExpr:
    raw = ColorExpr(tuple(_run(list(e.terms), rules, opts)), e.free)
    return _canon(raw, opts)


def _canon(e: ColorExpr, opts: Options) -> ColorExpr:
    out = canonicalize(e)
    if opts.log is not None and out != e:
        opts.log.append(RuleApplication("canonicalize", None, None, e, (out,)))
    return out


def replay(start: ColorExpr, log) -> ColorExpr:
    """Re-apply a rule log to ``start``; reproduces the logged result."""
    terms = list(start.terms)
    for app in log:
        if app.term is None:
            if tuple(terms) != app.before.terms:
                raise ValueError(f"log does not match state before {app.rule_id}")
            terms = list(app.after[0].terms)
        else:
            if terms[app.term] != app.before:
                raise ValueError(f"log does not match term {app.term} before {app.rule_id}")
            terms[app.term:app.term + 1] = list(app.after)
    return ColorExpr(tuple(terms), start.free)


# ---------------------------------------------------------------------------
# shared helpers

def _occurrences(factors):
    occ = {}
    for p, fac in enumerate(factors):
        for s, x in enumerate(indices(fac)):
            if not x.const:
                occ.setdefault(x, []).append((p, s))
    return occ


def _without(factors, positions):
    drop = set(positions)
    return tuple(f for k, f in enumerate(factors) if k not in drop)


def _dim(sort):
    return NN * NN - 1 if sort == ADJ else NN


def _rule_delta(sorts):
    def rule(t: Term, opts):
        facs = t.factors
        counts = None
        for p, fac in enumerate(facs):
            if not isinstance(fac, Delta) or fac.i.sort not in sorts:
                continue
            i, j = fac.i, fac.j
            if i.const and j.const:
                rest = _without(facs, [p])
                return p, ([Term(t.coeff, rest)] if i.name == j.name else [])
            if i == j:
                return p, [Term(t.coeff * _dim(i.sort), _without(facs, [p]))]
            if counts is None:
                counts = index_counts(facs)
            for src, dst in ((i, j), (j, i)):
                if not src.const and counts[src] == 2:
                    rest = list(_without(facs, [p]))
                    for k, other in enumerate(rest):
                        if src in indices(other):
                            rest[k] = remap(other, lambda x: dst if x == src else x)
                            break
                    return p, [Term(t.coeff, tuple(rest))]
        return None
    return rule


# ---------------------------------------------------------------------------
# defining-representation rules

def _rule_close_loops(t: Term, opts):
    facs = t.factors
    tel = [(p, f) for p, f in enumerate(facs) if isinstance(f, TElem)]
    if not tel:
        return None
    for p, f in tel:
        if f.i == f.j and not f.i.const:
            return p, [Term(t.coeff, _without(facs, [p]) + (TrDef((f.a,)),))]
    by_row = {}
    for p, f in tel:
        if not f.i.const:
            by_row.setdefault(f.i, []).append(p)
    for p0, f0 in tel:
        chain, gens, cur = [p0], [f0.a], f0
        while True:
            nxt = [q for q in by_row.get(cur.j, []) if q not in chain] if not cur.j.const else []
            if not nxt:
                break
            q = nxt[0]
            if facs[q].j == f0.i:
                chain.append(q)
                gens.append(facs[q].a)
                return p0, [Term(t.coeff, _without(facs, chain) + (TrDef(tuple(gens)),))]
            chain.append(q)
            gens.append(facs[q].a)
            cur = facs[q]
    return None


def _rule_short_trace(t: Term, opts):
    for p, fac in enumerate(t.factors):
        if not isinstance(fac, TrDef) or len(fac.gens) > 2:
            continue
        rest = _without(t.factors, [p])
        k = len(fac.gens)
        if k == 0:
            return p, [Term(t.coeff * NN, rest)]
        if k == 1:
            return p, []
        a, b = fac.gens
        return p, [Term(t.coeff / 2, rest + (Delta(a, b),))]
    return None


def _t_positions(facs):
    """Adjoint labels sitting on generators: label -> [(factor, slot)]."""
    occ = {}
    for p, fac in enumerate(facs):
        if isinstance(fac, TrDef):
            for s, x in enumerate(fac.gens):
                if not x.const:
                    occ.setdefault(x, []).append((p, s))
        elif isinstance(fac, TElem) and not fac.a.const:
            occ.setdefault(fac.a, []).append((p, 0))
    return occ


def _rule_fierz(t: Term, opts):
    facs = t.factors
    for x, where in _t_positions(facs).items():
        if len(where) != 2:
            continue
        # open every trace involved into a closed chain of matrix elements
        new, pair = [], []
        opened = {}
        for p, fac in enumerate(facs):
            if isinstance(fac, TrDef) and any(q == p for q, _ in where):
                k = len(fac.gens)
                links = [_fresh(FUND) for _ in range(k)]
                for s, g in enumerate(fac.gens):
                    el = TElem(g, links[s], links[(s + 1) % k])
                    if g == x:
                        pair.append(el)
                    else:
                        new.append(el)
                opened[p] = True
            elif isinstance(fac, TElem) and fac.a == x:
                pair.append(fac)
            else:
                new.append(fac)
        (_, i, j), (_, k, l) = (pair[0].a, pair[0].i, pair[0].j), (pair[1].a, pair[1].i, pair[1].j)
        rest = tuple(new)
        return where[0][0], [
            Term(t.coeff / 2, rest + (Delta(i, l), Delta(j, k))),
            Term(-t.coeff / (2 * NN), rest + (Delta(i, j), Delta(k, l))),
        ]
    return None


def _rule_trace_product(t: Term, opts):
    for p, fac in enumerate(t.factors):
        if not isinstance(fac, TrDef) or len(fac.gens) < 3:
            continue
        rest = _without(t.factors, [p])
        a, b, *tail = fac.gens
        tail = tuple(tail)
        e = _fresh(ADJ)
        return p, [
            Term(t.coeff / (2 * NN), rest + (Delta(a, b), TrDef(tail))),
            Term(t.coeff / 2, rest + (D3(a, b, e), TrDef((e,) + tail))),
            Term(t.coeff * I / 2, rest + (F3(a, b, e), TrDef((e,) + tail))),
        ]
    return None


def _rule_chain_product(t: Term, opts):
    facs = t.factors
    counts = index_counts(facs)
    for p, f1 in enumerate(facs):
        if not isinstance(f1, TElem) or f1.j.const or counts[f1.j] != 2:
            continue
        for q, f2 in enumerate(facs):
            if q != p and isinstance(f2, TElem) and f2.i == f1.j:
                rest = _without(facs, [p, q])
                i, k = f1.i, f2.j
                a, b = f1.a, f2.a
                e = _fresh(ADJ)
                return p, [
                    Term(t.coeff / (2 * NN), rest + (Delta(a, b), Delta(i, k))),
                    Term(t.coeff / 2, rest + (D3(a, b, e), TElem(e, i, k))),
                    Term(t.coeff * I / 2, rest + (F3(a, b, e), TElem(e, i, k))),
                ]
    return None


DEFINING_RULES = [
    ("delta", _rule_delta({ADJ, FUND})),
    ("close-loop", _rule_close_loops),
    ("trace-short", _rule_short_trace),
    ("fierz", _rule_fierz),
    ("trace-product", _rule_trace_product),
    ("chain-product", _rule_chain_product),
]


# ---------------------------------------------------------------------------
# adjoint expansion

def _rule_expand(t: Term, opts):
    for p, fac in enumerate(t.factors):
        rest = _without(t.factors, [p])
        if isinstance(fac, FElem):
            return p, [Term(t.coeff * -I, rest + (F3(fac.a, fac.b, fac.c),))]
        if isinstance(fac, DElem):
            return p, [Term(t.coeff, rest + (D3(fac.a, fac.b, fac.c),))]
        if isinstance(fac, TrAdj):
            k = len(fac.gens)
            links = [_fresh(ADJ) for _ in range(k)]
            coeff = t.coeff
            new = []
            for s, (kind, x) in enumerate(fac.gens):
                b, c = links[s], links[(s + 1) % k]
                if kind == "F":
                    coeff = coeff * -I
                    new.append(F3(x, b, c))
                else:
                    new.append(D3(x, b, c))
            return p, [Term(coeff, rest + tuple(new))]
    return None


ADJOINT_RULES = [("expand-adjoint", _rule_expand)]


# ---------------------------------------------------------------------------
# contraction of f / d / delta networks

def _rule_annihilate(t: Term, opts):
    for p, fac in enumerate(t.factors):
        if isinstance(fac, F3):
            xs = (fac.a, fac.b, fac.c)
            if len(set(xs)) < 3:
                return p, []
        elif isinstance(fac, D3):
            xs = [x for x in (fac.a, fac.b, fac.c) if not x.const]
            if len(set(xs)) < len(xs):
                return p, []
    return None


def _tensor_graph(facs):
    occ = _occurrences(facs)
    adj = {}
    for x, where in occ.items():
        if len(where) != 2 or x.sort != ADJ:
            continue
        (p, _), (q, _) = where
        if p == q or not isinstance(facs[p], (F3, D3)) or not isinstance(facs[q], (F3, D3)):
            continue
        adj.setdefault(p, []).append((q, x))
        adj.setdefault(q, []).append((p, x))
    return adj


def find_cycle(facs):
    """Shortest closed loop of f/d tensors as [(factor position, label to next)]."""
    adj = _tensor_graph(facs)
    if not adj:
        return None
    nodes = sorted(adj)
    for p in nodes:
        seen = {}
        for q, x in adj[p]:
            if q in seen and seen[q] != x:
                return [(p, seen[q]), (q, x)]
            seen.setdefault(q, x)
    for length in range(3, len(nodes) + 1):
        for s in nodes:
            path = _dfs_cycle(adj, s, s, length, [s], [])
            if path:
                return path
    return None


def _dfs_cycle(adj, start, cur, length, nodes, labels):
    if len(nodes) == length:
        for q, x in adj[cur]:
            if q == start and x not in labels:
                return list(zip(nodes, labels + [x]))
        return None
    for q, x in adj[cur]:
        if q in nodes or q < start or x in labels:
            continue
        res = _dfs_cycle(adj, start, q, length, nodes + [q], labels + [x])
        if res:
            return res
    return None


def _orient(facs, cycle):
    """Kinds, external labels and overall factor of a loop read as an adjoint trace."""
    L = len(cycle)
    kinds, xs = [], []
    coeff = ONE
    for j, (p, out_label) in enumerate(cycle):
        in_label = cycle[j - 1][1]
        fac = facs[p]
        slots = [fac.a, fac.b, fac.c]
        ext = [s for s in range(3) if slots[s] not in (in_label, out_label)]
        if L == 2:
            # both labels of a double bond are shared; the third slot is external
            ext = [s for s in range(3) if slots[s] != in_label and slots[s] != out_label]
        perm = [ext[0], slots.index(in_label), slots.index(out_label)]
        inv = sum(1 for u in range(3) for v in range(u + 1, 3) if perm[u] > perm[v])
        if inv % 2 and isinstance(fac, F3):
            coeff = -coeff
        if isinstance(fac, F3):
            coeff = coeff * I  # f(x,p,q) = i (F^x)_pq
            kinds.append("F")
        else:
            kinds.append("D")
        xs.append(slots[ext[0]])
    return "".join(kinds), xs, coeff


def _rule_cycle(t: Term, opts):
    facs = t.factors
    cycle = find_cycle(facs)
    if cycle is None:
        return None
    positions = [p for p, _ in cycle]
    word, xs, coeff = _orient(facs, cycle)
    rest = _without(facs, positions)
    L = len(cycle)
    if L <= 4:
        for r in range(L):
            w = word[r:] + word[:r]
            if w in ADJOINT_TRACES:
                labels = xs[r:] + xs[:r]
                mapping = dict(zip("abcd", labels))
                return positions[0], _instantiate(ADJOINT_TRACES[w], mapping, t.coeff * coeff, rest)
        raise AssertionError(f"no trace formula for word {word}")
    return None


def _rule_su3_product(t: Term, opts):
    if not opts.su3_rules:
        return None
    facs = t.factors
    cycle = find_cycle(facs)
    if cycle is None or len(cycle) < 5:
        return None
    word, xs, _ = _orient(facs, cycle)
    L = len(cycle)
    for j in range(L):
        k = (j + 1) % L
        if word[j] != word[k]:
            continue
        (pj, lj), (pk, lk) = cycle[j], cycle[k]
        in_j = cycle[j - 1][1]
        pair_coeff = ONE
        for p, a_in, a_out in ((pj, in_j, lj), (pk, lj, lk)):
            fac = facs[p]
            slots = [fac.a, fac.b, fac.c]
            ext = [s for s in range(3) if slots[s] not in (a_in, a_out)][0]
            perm = [ext, slots.index(a_in), slots.index(a_out)]
            inv = sum(1 for u in range(3) for v in range(u + 1, 3) if perm[u] > perm[v])
            if isinstance(fac, F3):
                pair_coeff = pair_coeff * I * (-1 if inv % 2 else 1)
        mapping = {"a": xs[j], "b": xs[k], "c": in_j, "d": lk}
        rest = _without(facs, [pj, pk])
        return pj, _instantiate(SU3_PRODUCTS[word[j] * 2], mapping, t.coeff * pair_coeff, rest)
    return None


def _rule_long_cycle(t: Term, opts):
    facs = t.factors
    cycle = find_cycle(facs)
    if cycle is None or len(cycle) < 5:
        return None
    positions = [p for p, _ in cycle]
    loop = [facs[p] for p in positions]
    rest = _without(facs, positions)
    sub_terms = [Term(ONE, ())]
    two_i = 2 * I
    for fac in loop:
        x, y, z = fac.a, fac.b, fac.c
        if isinstance(fac, F3):
            pieces = ((-two_i, TrDef((x, y, z))), (two_i, TrDef((y, x, z))))
        else:
            pieces = ((NPoly.const(2), TrDef((x, y, z))), (NPoly.const(2), TrDef((y, x, z))))
        sub_terms = [Term(s.coeff * c, s.factors + (tr,)) for s in sub_terms for c, tr in pieces]
    outer = free_indices(loop)
    sub = _simplify(ColorExpr(tuple(sub_terms), outer), Options(opts.su3_rules, opts.expansion_cap))
    out = []
    for s in sub.terms:
        ren = {}

        def fresh(x):
            if x.const or x in outer:
                return x
            if x not in ren:
                ren[x] = _fresh(x.sort)
            return ren[x]

        out.append(Term(t.coeff * s.coeff, rest + tuple(remap(f, fresh) for f in s.factors)))
    return positions[0], out


def _rule_ff_single(t: Term, opts):
    facs = t.factors
    nf = sum(1 for f in facs if isinstance(f, F3))
    if nf < 2 or 4 ** (nf // 2) > opts.expansion_cap:
        return None
    counts = index_counts(facs)
    fpos = [p for p, f in enumerate(facs) if isinstance(f, F3)]
    for u, p in enumerate(fpos):
        for q in fpos[u + 1:]:
            s1 = (facs[p].a, facs[p].b, facs[p].c)
            s2 = (facs[q].a, facs[q].b, facs[q].c)
            shared = [x for x in s1 if x in s2]
            if len(shared) != 1:
                continue
            e = shared[0]
            if e.const or counts[e] != 2:
                continue
            sign = 1
            ends = []
            for slots in (s1, s2):
                k = slots.index(e)
                # cyclic rotation keeps the sign: move e to the last slot
                rot = slots[k + 1:] + slots[:k + 1]
                ends.append(rot[:2])
            mapping = {"a": ends[0][0], "b": ends[0][1], "c": ends[1][0], "d": ends[1][1]}
            rest = _without(facs, [p, q])
            return p, _instantiate(FF_SINGLE, mapping, t.coeff * sign, rest)
    return None


CONTRACT_RULES = [
    ("delta", _rule_delta({ADJ, FUND})),
    ("annihilate", _rule_annihilate),
    ("cycle", _rule_cycle),
    ("su3-product", _rule_su3_product),
    ("long-cycle", _rule_long_cycle),
    ("ff-single", _rule_ff_single),
]


# ---------------------------------------------------------------------------
# public entry points

def _as_expr(e):
    return parse(e) if isinstance(e, str) else e


def reduce_defining(e, log=None, debug=False) -> ColorExpr:
    """Remove defining-representation traces of length >= 3 and repeated generator labels."""
    opts = Options(debug=debug, log=log)
    return _stage(_as_expr(e), DEFINING_RULES, opts)


def expand_adjoint(e, log=None, debug=False) -> ColorExpr:
    """Replace adjoint traces and F/D matrix elements by explicit f/d tensors."""
    opts = Options(debug=debug, log=log)
    return _stage(_as_expr(e), ADJOINT_RULES, opts)


def contract(e, log=None, debug=False, su3_rules=False, expansion_cap=64) -> ColorExpr:
    """Contract summed indices of a delta/f/d/T-element product to normal form."""
    e = _as_expr(e)
    for t in e.terms:
        for fac in t.factors:
            if isinstance(fac, (TrDef, TrAdj, FElem, DElem)):
                raise ValueError(f"contract expects only delta/f/d/T factors, found {type(fac).__name__}")
    opts = Options(su3_rules, expansion_cap, debug, log)
    return _stage(e, CONTRACT_RULES, opts)


def _simplify(e: ColorExpr, opts: Options) -> ColorExpr:
    e = _canon(e, opts)
    while True:
        prev = e
        e = _stage(e, DEFINING_RULES, opts)
        e = _stage(e, ADJOINT_RULES, opts)
        e = _stage(e, CONTRACT_RULES, opts)
        if e == prev:
            return e


def simplify(e, *, su3_rules=False, expansion_cap=64, debug=False, log=None) -> ColorExpr:
    """Normal form of a colour expression.

    ``su3_rules`` enables product rules that hold only for N = 3; results
    obtained with them must only be evaluated at N = 3.
    """
    opts = Options(su3_rules, expansion_cap, debug, log)
    return _simplify(_as_expr(e), opts)


def equivalent(a, b, n_set=(2, 3, 4, 5), samples=50, tol=1e-9, seed=0) -> bool:
    """Decide a == b: exactly if simplify(a - b) vanishes, else by numeric sampling."""
    from .oracle import equal_by_sampling

    a, b = _as_expr(a), _as_expr(b)
    if simplify(a - b).is_zero():
        return True
    return equal_by_sampling(a, b, n_set, samples, tol, seed).equal
