import json
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from superbbw.rootsys import ReflectionGroupSpec, poincare_poly
from superbbw.series import Poly, TruncatedSeries, series_from_generator_degrees
from superbbw.superalg import (
    NoEmbeddingDefined, PartitionInvariantViolated, PartitionMismatch, UnknownAlgebra, UnsupportedParams,
    builtin_catalog, builtin_names, catalog_lookup, check_partition_matches, dumps_spec, embedding_specs, lookup,
    parabolic_from_functional, parse_algebra, pb_series, pg_series, pn_closed_form, render_root, render_roots,
    spec_from_json, spec_to_json, torus_invariant_hilbert, validate, w1_series, z_at_one, z_poly,
)

CATALOG = builtin_catalog()
IDS = [s.name for s in CATALOG]


def roots_text(spec, roots):
    return sorted(render_root(spec, r) for r in roots)


def test_q2_entry():
    s = lookup("q(2)")
    assert roots_text(s, s.pos_roots) == ["ε1-ε2"]
    assert roots_text(s, s.neg_roots) == ["-ε1+ε2"]
    assert s.f_roots == ()
    assert s.w1 == ReflectionGroupSpec("Sym", 2) and s.s_param == 1


def test_d21_entry():
    s = lookup("D(2,1,a)")
    assert sorted(render_root(s, r) for r in s.neg_roots) == sorted(["(-ε, -ε, -ε)", "(-ε, -ε, ε)", "(ε, -ε, -ε)"])
    assert sorted(render_root(s, r) for r in s.f_roots) == sorted(["(ε, -ε, ε)", "(-ε, ε, -ε)"])
    assert len(s.pos_roots) == 3


def test_p4_entry():
    s = lookup("p(4)")
    assert len(s.pos_roots) == 6
    assert roots_text(s, s.f_roots) == sorted(["ε1+ε4", "-ε1-ε4", "ε2+ε3", "-ε2-ε3"])
    assert roots_text(s, s.neg_roots) == sorted(["2ε3", "2ε4", "ε2+ε4", "ε3+ε4", "-ε1-ε2", "-ε1-ε3"])
    assert len(s.phi1) == 16


def test_functional_examples():
    s = lookup("gl(2|2)")
    c = lambda d: tuple(d.get(k, 0) for k in range(4))  # noqa: E731
    assert s.evaluate(c({0: -1, 3: 1})) == -1
    assert s.evaluate(c({0: 1, 2: -1})) == 0
    p4 = lookup("p(4)")
    assert p4.evaluate((-1, -1, 0, 0)) == -3


@pytest.mark.parametrize("spec", CATALOG, ids=IDS)
def test_partition_and_invariants(spec):
    validate(spec)
    s0, sm, sp = parabolic_from_functional(spec)
    assert Counter(s0) == Counter(spec.f_roots)
    assert Counter(sm) == Counter(spec.neg_roots)
    assert Counter(sp) == Counter(spec.pos_roots)
    assert len(spec.phi1) == len(spec.f_roots) + len(spec.neg_roots) + len(spec.pos_roots)
    if spec.symmetric:
        assert Counter(spec.pos_roots) == Counter(tuple(-x for x in r) for r in spec.neg_roots)
    if spec.family == "p":
        n = spec.params[0]
        assert len(spec.pos_roots) == n * n - len(spec.f_roots) - len(spec.neg_roots)


@pytest.mark.parametrize("spec", CATALOG, ids=IDS)
def test_parabolic_set_closure(spec):
    """S0 u S- is closed under adding even roots that also lie in it."""
    evens = []
    for off, f in zip(spec.offsets, spec.factors):
        for r in f.positive_roots:
            for sign in (1, -1):
                v = [0] * spec.width
                v[off:off + f.width] = [sign * x for x in r]
                evens.append(tuple(v))
    odd = {spec.normalize(r) for r in spec.phi1}
    s = [r for r in spec.phi1 if spec.evaluate(r) <= 0]
    inside = {spec.normalize(r) for r in s}
    for a in s:
        for b in evens:
            if spec.evaluate(b) > 0:
                continue
            c = spec.normalize(tuple(x + y for x, y in zip(a, b)))
            if c in odd:
                assert c in inside


@pytest.mark.parametrize("spec", CATALOG, ids=IDS)
def test_z_poly_and_order(spec):
    z = z_poly(spec)
    assert z_at_one(spec) == spec.w1.order
    assert pg_series(spec) * z == pb_series(spec)
    if spec.family != "p":
        assert z == TruncatedSeries.from_poly(w1_series(spec), z.order)


def test_torus_dp_examples():
    assert torus_invariant_hilbert(lookup("gl(2|2)"), 4).coeffs == (1, 0, 2, 0, 3)
    for n in range(1, 5):
        assert torus_invariant_hilbert(lookup(f"q({n})"), 2).coeffs == (1, n, n * (n + 1) // 2)
    assert torus_invariant_hilbert(lookup("gl(2|1)"), 6).coeffs[:3] == (1, 0, 1)
    assert torus_invariant_hilbert(lookup("osp(2|2)"), 4).coeffs == (1, 0, 1, 0, 1)


def test_pg_examples():
    assert pg_series(lookup("q(3)"), 10) == series_from_generator_degrees([1, 2, 3], 10)
    assert pg_series(lookup("G(3)"), 12).coeffs == (1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1)
    assert pg_series(lookup("p(4)"), 12) == series_from_generator_degrees([2, 4, 4], 12)


def test_z_examples():
    assert z_poly(lookup("gl(3|2)")).as_poly() == Poly((1, 0, 1))
    b2 = poincare_poly(ReflectionGroupSpec("Hyperoctahedral", 2))
    assert z_poly(lookup("p(5)")).as_poly() == Poly(tuple(c for k in b2.coeffs for c in (k, 0)))
    assert z_poly(lookup("q(1)")).as_poly() == Poly.one()
    assert z_poly(lookup("D(2,1,a)")).as_poly() == Poly((1, 0, 1))


@pytest.mark.parametrize("n", range(2, 7))
def test_pn_closed_form_at_one(n):
    l = n // 2
    assert pn_closed_form(n).as_poly()(1) == 2 ** l * [1, 1, 2, 6][l]


def test_embedding_examples():
    (pq,) = embedding_specs(lookup("gl(2|3)"))
    assert roots_text(pq.parent, pq.quotient_roots) == ["ε1-δ3", "ε2-δ3"]
    assert pq.within_positive and pq.levi.name == "gl(2|2)"
    (pq,) = embedding_specs(lookup("osp(4|4)"))
    assert roots_text(pq.parent, pq.quotient_roots) == sorted(f"ε{i}+δ{j}" for i in (1, 2) for j in (1, 2))
    labels = {p.label: p for p in embedding_specs(lookup("osp(4|2)"))}
    for p in labels.values():
        assert roots_text(p.parent, p.quotient_roots) == ["ε1+δ1", "ε1-δ1"]
        assert p.within_positive
    with pytest.raises(NoEmbeddingDefined):
        embedding_specs(lookup("q(3)"))


@pytest.mark.parametrize("spec", CATALOG, ids=IDS)
def test_json_roundtrip(spec):
    text = dumps_spec(spec)
    again = spec_from_json(json.loads(text))
    assert dumps_spec(again) == text
    assert again.namespace == "user"


def test_bad_user_entries():
    obj = spec_to_json(lookup("q(3)"))
    swapped = dict(obj, neg_roots=obj["pos_roots"], pos_roots=obj["neg_roots"])
    with pytest.raises(PartitionMismatch):
        spec_from_json(swapped)
    short = dict(obj, functional=["1", "2"])
    with pytest.raises(PartitionInvariantViolated):
        spec_from_json(short)


def test_name_parsing():
    assert parse_algebra("osp(5|4)") == ("osp_odd", (2, 2))
    assert parse_algebra("osp(4|2)") == ("osp_even", (2, 1))
    assert parse_algebra("D(2,1,α)") == ("D21", ())
    for bad in ("foo(3)", "osp(3|3)", "gl(2)", "q"):
        with pytest.raises(UnknownAlgebra):
            parse_algebra(bad)
    with pytest.raises(UnsupportedParams):
        catalog_lookup("q", (9,))
    for name in builtin_names():
        assert lookup(name).name == name


def test_render_roots():
    s = lookup("q(2)")
    assert render_roots(s, ()) == "∅"
    assert render_roots(s, s.pos_roots, tex=True) == r"\{\epsilon_{1}-\epsilon_{2}\}"


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(CATALOG), st.integers(8, 20))
def test_truncation_consistency(spec, n):
    assert z_poly(spec, 24).truncate(n) == z_poly(spec, n)


def test_check_partition_is_strict():
    spec = lookup("gl(2|2)")
    check_partition_matches(spec)
