import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fraisselab.autos import (
    AutoError, PartialAuto, backforth_extend, betweenness, canonical_auto, identity,
    preserves_parts, seeded_auto,
)
from fraisselab.limits import LimitHandle, LimitSpec


def lim(name, seed=7, expansion="none"):
    return LimitHandle(LimitSpec.parse(name, seed=seed, expansion=expansion))


def check_against_relations(h, mapping, level):
    for x, y in itertools.combinations(sorted(mapping), 2):
        r1, r2 = h.relation(x, y), h.relation(mapping[x], mapping[y])
        if h.spec.family == "rationals" and r1.less != r2.less:
            return False
        if r1.edge != r2.edge or r1.arc != r2.arc:
            return False
        if level == "F*" and r1.less != r2.less:
            return False
        if level == "reverse" and r1.less == r2.less:
            return False
    if level == "F*" and h.spec.family == "s2":
        return all(h.part(x) == h.part(y) for x, y in mapping.items())
    return True


def test_backforth_examples():
    q = lim("rationals")
    p = backforth_extend(PartialAuto(q, {}, "F"), {0, 1})
    assert p.domain == {0, 1}
    assert (q.coord(0) < q.coord(1)) == (q.coord(p(0)) < q.coord(p(1)))
    g = lim("random-graph")
    p = backforth_extend(PartialAuto(g, {0: 5}, "F"), {0, 1})
    assert p(0) == 5 and g.relation(0, 1).edge == g.relation(5, p(1)).edge
    bad = next((a, b) for a, b in itertools.permutations(range(10), 2) if g.relation(0, 1).edge != g.relation(a, b).edge)
    with pytest.raises(AutoError):
        backforth_extend(PartialAuto(g, {0: bad[0], 1: bad[1]}, "F"), {2})


def test_backforth_back_step_and_fixed_point_free():
    g = lim("random-tournament")
    p = backforth_extend(PartialAuto(g, {}, "F*"), range(6), range(6), fixed_point_free=True, seed=4)
    assert set(range(6)) <= p.domain and set(range(6)) <= p.range
    assert p.check() and check_against_relations(g, p.mapping, "F*")
    assert p.fixed_points() == []


@pytest.mark.parametrize("name,level", [
    ("random-graph", "F"), ("random-graph", "F*"), ("random-graph", "reverse"),
    ("random-tournament", "F"), ("random-tournament", "reverse"), ("s2", "F"), ("s2", "F*"),
    ("rationals", "F"), ("pure-set", "reverse"), ("In-Kinf(3)", "F*"), ("Iinf-Kn(2)", "F*"),
    ("Iinf-Kinf", "reverse"), ("henson(3)", "F"),
])
def test_seeded_autos_are_partial_isomorphisms(name, level):
    h = lim(name)
    a = seeded_auto(h, 11, level, fixed_point_free=True)
    rng = random.Random(name + level)
    for _ in range(5):
        a.image(rng.randrange(60))
        a.preimage(rng.randrange(60))
    cert = a.certify()
    assert cert["partial_isomorphism"] and cert["fixed_points"] == []
    assert check_against_relations(h, a.realized(), level)
    for v, w in a.realized().items():
        assert a.preimage(w) == v and a.image(v) == w


def test_answers_never_change():
    h = lim("random-graph")
    a = seeded_auto(h, 2)
    first = [a.image(v) for v in range(8)]
    a.preimage(3)
    assert [a.image(v) for v in range(8)] == first


def test_seeded_autos_deterministic_for_fixed_query_sequence():
    outs = []
    for _ in range(2):
        a = seeded_auto(lim("s2"), 5, "F*")
        outs.append([a.image(v) for v in (4, 1, 9, 2)] + [a.preimage(7)])
    assert outs[0] == outs[1]


def test_incompatible_levels():
    with pytest.raises(AutoError):
        seeded_auto(lim("rationals"), 1, "reverse")
    with pytest.raises(AutoError):
        seeded_auto(lim("s2"), 1, "reverse")
    with pytest.raises(AutoError):
        canonical_auto(lim("rationals"), "order-reversal")
    with pytest.raises(AutoError):
        canonical_auto(lim("random-graph"), "part-swap")
    with pytest.raises(ValueError):
        canonical_auto(lim("random-graph"), "seeded-back-and-forth")


def test_order_reversal():
    for fam in ("pure-set", "random-graph"):
        h = lim(fam)
        s = canonical_auto(h, "order-reversal")
        for x, y in itertools.combinations(range(80), 2):
            if h.coord(x) < h.coord(y):
                assert h.coord(s(y)) < h.coord(s(x))
            assert h.relation(x, y).edge == h.relation(s(x), s(y)).edge
        assert all(h.coord(s(v)) == -h.coord(v) for v in range(80))
        cert = s.certify()
        assert cert["fixed_point_bound_ok"] and cert["fixed_points"] == [h.vertex_at(0)]


def test_shift():
    for fam in ("pure-set", "rationals", "random-graph", "random-tournament"):
        h = lim(fam)
        t = canonical_auto(h, "shift")
        assert all(t(v) != v for v in range(100))
        assert all(h.coord(t(v)) == h.coord(v) + 1 for v in range(100))
        assert t.certify()["partial_isomorphism"]


def test_part_swap():
    h = lim("s2", seed=3)
    sw = canonical_auto(h, "part-swap", seed=3)
    rng = random.Random(0)
    for v in rng.sample(range(500), 50):
        assert h.part(sw(v)) != h.part(v)
    for _ in range(100):
        x, y = rng.sample(range(500), 2)
        assert (h.coord(x) < h.coord(y)) == (h.coord(sw(x)) < h.coord(sw(y)))
        assert h.relation(x, y).arc == h.relation(sw(x), sw(y)).arc
    assert sw.certify()["fixed_points"] == []
    assert preserves_parts(sw, range(100)) == "swaps"


def test_preserves_parts_classification():
    h = lim("s2", seed=1)
    assert preserves_parts(identity(h, range(30)), range(30)) == "preserves-each"
    assert preserves_parts(seeded_auto(h, 3, "F*"), range(20)) == "preserves-each"
    verdicts = set()
    for seed in range(4):
        verdicts.add(preserves_parts(seeded_auto(h, seed, "F"), range(20)))
    assert "mixed" in verdicts
    with pytest.raises(AutoError):
        preserves_parts(identity(lim("random-graph"), range(3)), range(3))


def test_e_star_preserved_by_part_swap_and_f_star_maps():
    h = lim("s2", seed=2)
    for g in (canonical_auto(h, "part-swap"), seeded_auto(h, 9, "F*")):
        for x, y in itertools.combinations(range(15), 2):
            assert (h.part(x) == h.part(y)) == (h.part(g(x)) == h.part(g(y)))


def test_betweenness_examples():
    assert betweenness(1, 0, 2)
    assert not betweenness(0, 1, 2)
    assert betweenness(Fraction(1, 2), 1, 0)
    with pytest.raises(ValueError):
        betweenness(1, 1, 2)


def test_betweenness_invariant_under_order_reversal():
    h = lim("random-graph")
    s = canonical_auto(h, "order-reversal")
    rng = random.Random(8)
    for _ in range(100):
        x, y, z = rng.sample(range(400), 3)
        assert betweenness(h.coord(x), h.coord(y), h.coord(z)) == \
            betweenness(h.coord(s(x)), h.coord(s(y)), h.coord(s(z)))


def test_partial_auto_algebra():
    h = lim("random-graph")
    a = seeded_auto(h, 1, "F")
    p = a.restrict(range(5))
    inv = p.inverse()
    assert inv.compose(p).mapping == {v: v for v in range(5)}
    assert p.compose(inv).mapping == {p(v): p(v) for v in range(5)}
    with pytest.raises(AutoError):
        PartialAuto(h, {0: 1, 2: 1})


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 63), st.lists(st.integers(0, 300), min_size=1, max_size=6, unique=True),
       st.sampled_from(["F", "F*"]))
def test_random_queries_keep_partial_isomorphism(seed, queries, level):
    h = LimitHandle(LimitSpec("s2", seed=seed))
    a = seeded_auto(h, seed, level)
    for i, v in enumerate(queries):
        (a.image if i % 2 else a.preimage)(v)
    assert a.certify()["partial_isomorphism"]
    assert check_against_relations(h, a.realized(), level)
