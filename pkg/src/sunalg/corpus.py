"""Seeded random colour expressions for soundness testing.

Each expression is built from a random skeleton of factors with empty index
slots.  A few labels are then placed in two slots each (summed), and the
remaining slots receive distinct free labels.  Sums reuse one set of free labels
for every term so that the result is well formed.
"""

from __future__ import annotations

import random

_ADJ_NAMES = "abcdeghkmnpqrsuvwxyz"
_FUND_NAMES = "ijl"
_COEFFS = ["1", "2", "-1", "1/2", "i", "-3*i/2", "NN", "1/NN", "(NN^2-4)", "i*NN/3"]


def _skeleton(rng: random.Random, max_factors: int):
    """List of (template, n_adj, n_fund); templates use {A} / {F} placeholders."""
    kinds = rng.choices(
        ["tr", "tradj", "f", "d", "delta", "T", "Fel", "Del"],
        weights=[5, 4, 4, 4, 1, 2, 1, 1],
        k=rng.randint(1, max_factors),
    )
    out = []
    for kind in kinds:
        if kind == "tr":
            k = rng.randint(2, 5)
            out.append(("Tr[" + "".join("T({A})" for _ in range(k)) + "]", k, 0))
        elif kind == "tradj":
            k = rng.randint(2, 4)
            word = "".join(f"{rng.choice('FD')}({{A}})" for _ in range(k))
            out.append(("TrAdj[" + word + "]", k, 0))
        elif kind == "f":
            out.append(("f({A},{A},{A})", 3, 0))
        elif kind == "d":
            out.append(("d({A},{A},{A})", 3, 0))
        elif kind == "delta":
            out.append(("delta({A},{A})", 2, 0))
        elif kind == "T":
            out.append(("T({A};{F},{F})", 1, 2))
        elif kind == "Fel":
            out.append(("F({A};{A},{A})", 3, 0))
        else:
            out.append(("D({A};{A},{A})", 3, 0))
    return out


_RESHUFFLES = 20


def _self_contracted(skeleton, adj, fund) -> bool:
    """Would popping labels from the ends of ``adj``/``fund`` repeat one inside a tensor factor?"""
    ia, jf = len(adj), len(fund)
    for template, a, f in skeleton:
        labels = adj[ia - a:ia] + fund[jf - f:jf]
        ia, jf = ia - a, jf - f
        if not template.startswith("Tr") and len(set(labels)) < len(labels):
            return True
    return False


def _fill(rng, skeleton, free_adj, free_fund, max_bound):
    n_adj = sum(a for _, a, _ in skeleton)
    n_fund = sum(f for _, _, f in skeleton)
    # number of summed labels is fixed by slot count minus free labels
    if (n_adj - len(free_adj)) % 2 or (n_fund - len(free_fund)) % 2:
        return None
    if n_adj < len(free_adj) or n_fund < len(free_fund):
        return None
    if (n_adj - len(free_adj)) // 2 > max_bound:
        return None
    bound_adj = [f"{_ADJ_NAMES[len(free_adj) + k]}" for k in range((n_adj - len(free_adj)) // 2)]
    bound_fund = [f"{_FUND_NAMES[0]}{k}" for k in range((n_fund - len(free_fund)) // 2)]
    adj = list(free_adj) + bound_adj * 2
    fund = list(free_fund) + bound_fund * 2
    # a label repeated inside one tensor factor mostly yields a trivial zero,
    # so reshuffle a few times to keep those rare (traces may repeat labels)
    for _ in range(_RESHUFFLES):
        rng.shuffle(adj)
        rng.shuffle(fund)
        if not _self_contracted(skeleton, adj, fund):
            break
    else:
        if rng.random() > 0.1:
            return None
    parts = []
    for template, a, f in skeleton:
        text = template
        for _ in range(a):
            text = text.replace("{A}", adj.pop(), 1)
        for _ in range(f):
            text = text.replace("{F}", fund.pop(), 1)
        parts.append(text)
    return "*".join(parts)


def random_expression(rng: random.Random, max_factors: int = 3, max_terms: int = 2,
                      max_bound: int = 7) -> str:
    """One random well-formed expression in the input grammar."""
    while True:
        n_free_adj = rng.choice([0, 0, 1, 2, 2, 3])
        n_free_fund = rng.choice([0, 0, 0, 2])
        free_adj = list(_ADJ_NAMES[:n_free_adj])
        free_fund = ["j", "l"][:n_free_fund]
        terms = []
        for _ in range(rng.randint(1, max_terms)):
            for _attempt in range(50):
                body = _fill(rng, _skeleton(rng, max_factors), free_adj, free_fund, max_bound)
                if body is not None:
                    terms.append(f"{rng.choice(_COEFFS)}*{body}")
                    break
        if terms:
            text = terms[0]
            for t in terms[1:]:
                text += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
            return text


def corpus(size: int = 200, seed: int = 2024, **kw) -> list[str]:
    rng = random.Random(seed)
    return [random_expression(rng, **kw) for _ in range(size)]
