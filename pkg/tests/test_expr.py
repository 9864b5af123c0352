import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sunalg import oracle
from sunalg.corpus import random_expression
from sunalg.expr import (ADJ, FUND, ColorExpr, F3, Idx, ParseError, TrDef, canonicalize, parse,
                         to_text)

seeds = st.integers(0, 2**32 - 1)


def _expr(seed, **kw):
    return random_expression(random.Random(seed), **kw)


def test_ff_contraction_parse():
    e = parse("f(a,b,c)*f(a,b,d)")
    (t,) = e.terms
    assert all(isinstance(x, F3) for x in t.factors)
    assert e.free == {Idx("c", ADJ), Idx("d", ADJ)}
    assert t.factors[0].a.name == "_1" and t.factors[0].b.name == "_2"


def test_trace_parse():
    e = parse("Tr[T(a) T(b) T(a) T(c)]")
    (fac,) = e.terms[0].factors
    assert isinstance(fac, TrDef) and len(fac.gens) == 4
    assert {x.name for x in e.free} == {"b", "c"}


def test_sum_with_common_free_indices():
    e = parse("Tr[T(a)T(b)] - (1/2)*delta(a,b)")
    assert len(e.terms) == 2
    assert {x.name for x in e.free} == {"a", "b"}


def test_repeated_antisymmetric_slot_accepted():
    assert len(parse("f(a,a,b)").terms) == 1


def test_fundamental_sort_inference():
    e = parse("T(a;i,j)*delta(j,k)")
    assert e.free == {Idx("a", ADJ), Idx("i", FUND), Idx("k", FUND)}


@pytest.mark.parametrize("text,where", [("f(a,b", 5), ("2*", 2), ("f(a,b,c) +", 10)])
def test_syntax_errors_carry_position(text, where):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.pos == where


@pytest.mark.parametrize("text", [
    "f(a,a,a)",
    "f(a,b,c) + f(a,b,d)",
    "T(a;i,j)*delta(i,a)",
    "Tr[T(i)]*T(a;i,j)",
    "g(a,b)",
])
def test_semantic_errors(text):
    with pytest.raises(ParseError):
        parse(text)


@pytest.mark.parametrize("text,expected", [
    ("f(b,a,c)", "-f(a,b,c)"),
    ("d(c,a,b)", "d(a,b,c)"),
    ("f(a,b,c) + f(b,a,c)", "0"),
    ("2*delta(b,a) - delta(a,b)", "delta(a,b)"),
])
def test_canonicalize_examples(text, expected):
    assert to_text(canonicalize(parse(text))) == expected


def test_bound_relabelling_is_invisible():
    a = canonicalize(parse("f(a,b,c)*d(a,b,e)"))
    b = canonicalize(parse("f(x,y,c)*d(x,y,e)"))
    assert a == b


def test_mismatched_free_sets_cannot_be_added():
    with pytest.raises(ValueError):
        parse("f(a,b,c)") + parse("d(a,b,e)")
    # the empty sum adapts
    assert (parse("f(a,b,c)") + ColorExpr(())).terms == parse("f(a,b,c)").terms


@given(seeds)
def test_canonicalize_is_idempotent(seed):
    c = canonicalize(parse(_expr(seed)))
    assert canonicalize(c) == c


@given(seeds)
def test_print_parse_roundtrip_on_canonical_forms(seed):
    c = canonicalize(parse(_expr(seed, max_factors=4)))
    text = to_text(c)
    back = canonicalize(parse(text))
    assert back.terms == c.terms
    assert to_text(back) == text


@given(seeds, st.sampled_from([2, 3, 4, 5]))
def test_canonicalize_preserves_value(seed, n):
    text = _expr(seed)
    cmp = oracle.equal_by_sampling(text, canonicalize(parse(text)), [n], samples=20, seed=seed % 97)
    assert cmp.equal, cmp


def test_corpus_is_seeded_and_well_formed():
    from sunalg.corpus import corpus
    a, b = corpus(40, seed=3), corpus(40, seed=3)
    assert a == b and a != corpus(40, seed=4)
    for text in a:
        parse(text)
