from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superbbw.oddweyl import (
    PropositionViolated, check_dot_closure, elementwise_negated, enumerate_w1, make_context, odd_dot, phi_from_reduced_word,
    phi_of_w, render_report, rho_of, verify_phiw_proposition, word_perm,
)
from superbbw.rootsys import dot_word
from superbbw.superalg import UnsupportedParams, lookup, render_root

NAMES = ["gl(2|2)", "sl(2|2)", "psl(2|2)", "gl(3|3)", "sl(3|3)", "osp(3|2)", "osp(5|4)", "q(2)", "q(3)", "q(4)", "psq(3)"]


@pytest.fixture(scope="module", params=NAMES)
def ctx(request):
    return make_context(lookup(request.param))


def test_sl22_reflection():
    c = make_context(lookup("sl(2|2)"))
    phi = phi_of_w(c, (1,))
    assert sorted(render_root(c.spec, r) for r in phi.roots) == ["-ε2+δ1", "ε1-δ2"]
    assert odd_dot(c, (1,), (0,) * 4) == tuple(Fraction(x) for x in (-1, 1, -1, 1))
    assert len(phi.roots) == 2 * 1


def test_identity(ctx):
    zero = (Fraction(0),) * ctx.spec.width
    assert phi_of_w(ctx, ()).roots == frozenset()
    assert odd_dot(ctx, (), zero) == zero


def test_proposition_all_elements(ctx):
    report = verify_phiw_proposition(ctx)
    assert report.order == len(enumerate_w1(ctx))
    assert ctx.rho_equal


def test_group_orders():
    assert len(enumerate_w1(make_context(lookup("osp(5|4)")))) == 8
    assert len(enumerate_w1(make_context(lookup("sl(3|3)")))) == 6
    assert len(enumerate_w1(make_context(lookup("q(4)")))) == 24


def test_dot_closure(ctx):
    assert check_dot_closure(ctx) > 0


def test_elementwise_data():
    assert elementwise_negated(make_context(lookup("sl(2|2)"))) == {1: False}
    assert elementwise_negated(make_context(lookup("osp(5|4)"))) == {1: False, 2: True}
    assert all(elementwise_negated(make_context(lookup("q(3)"))).values())


def test_unsupported():
    for name in ("gl(3|2)", "osp(4|4)", "p(4)", "G(3)"):
        with pytest.raises(UnsupportedParams):
            make_context(lookup(name))


def test_violation_is_reported(monkeypatch):
    c = make_context(lookup("sl(2|2)"))
    import superbbw.oddweyl as ow
    monkeypatch.setattr(ow, "phi_from_reduced_word", lambda ctx, word: frozenset())
    with pytest.raises(PropositionViolated) as exc:
        ow.verify_phiw_proposition(c)
    assert exc.value.part == "c"


def test_render_report():
    c = make_context(lookup("sl(2|2)"))
    text = render_report(c, verify_phiw_proposition(c))
    assert "| s1 | 1 | {ε1-δ2, -ε2+δ1} | (-1, 1, -1, 1) |" in text
    assert "| id | 0 | ∅ |" in text


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["q(2)", "q(3)", "q(4)"]), st.data())
def test_q_odd_dot_is_even_dot(name, data):
    c = make_context(lookup(name))
    f = c.spec.factors[0]
    n = c.block
    word = tuple(data.draw(st.lists(st.integers(1, n - 1), max_size=6)))
    lam = tuple(Fraction(x) for x in data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n)))
    even = dot_word(f, [j - 1 for j in word], lam)
    assert f.normalize(odd_dot(c, word, lam)) == f.normalize(even)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(NAMES), st.data())
def test_length_oracle(name, data):
    c = make_context(lookup(name))
    elements = enumerate_w1(c)
    word, length = data.draw(st.sampled_from(elements))
    assert len(phi_of_w(c, word).roots) == c.multiplier * length
    assert phi_from_reduced_word(c, word) == phi_of_w(c, word).roots


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["sl(3|3)", "osp(5|4)", "q(4)"]), st.data())
def test_distinct_elements_distinct_weights(name, data):
    c = make_context(lookup(name))
    elements = enumerate_w1(c)
    (w1, _), (w2, _) = data.draw(st.lists(st.sampled_from(elements), min_size=2, max_size=2, unique=True))
    zero = (Fraction(0),) * c.spec.width
    if word_perm(c, w1) != word_perm(c, w2):
        assert odd_dot(c, w1, zero) != odd_dot(c, w2, zero)
        assert rho_of(phi_of_w(c, w1).roots, c.spec.width) != rho_of(phi_of_w(c, w2).roots, c.spec.width)
