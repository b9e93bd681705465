import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fraisselab.autos import canonical_auto, seeded_auto
from fraisselab.limits import LimitHandle, LimitSpec
from fraisselab.witnesses import (
    PreconditionError, WordBoundExceeded, conjugate_order_preserving, disjoint_copy,
    factor_via_conjugates, order_transport, s2_conjugate_parts, s2_monotone_copy, s2_part_split,
)


def lim(name, seed=7, expansion="none"):
    return LimitHandle(LimitSpec.parse(name, seed=seed, expansion=expansion))


def base_equal(h, x, y, a, b):
    """Oracle: (x, y) and (a, b) carry the same base-language relation."""
    r, s = h.relation(x, y), h.relation(a, b)
    if h.spec.family == "rationals":
        return r.less == s.less
    if h.spec.family == "s2":
        return r.arc == s.arc
    return r.edge == s.edge and r.arc == s.arc and r.same_part == s.same_part


def star_equal(h, x, y, a, b):
    r, s = h.relation(x, y), h.relation(a, b)
    return base_equal(h, x, y, a, b) and r.less == s.less


def is_base_iso(h, m):
    return all(base_equal(h, x, y, m[x], m[y]) for x, y in itertools.combinations(m, 2))


def conj_image(h, g, sigma, a):
    ginv = {w: v for v, w in g.items()}
    return g[sigma.image(ginv[a])]


# -- disjoint_copy ----------------------------------------------------------

def test_disjoint_copy_empty():
    h = lim("pure-set")
    rep = disjoint_copy(h, canonical_auto(h, "shift"), [])
    assert rep.witness == {} and rep.ok


def test_disjoint_copy_rationals_shift():
    h = lim("rationals")
    A = [h.vertex_at(0), h.vertex_at(Fraction(1, 2))]
    shift = canonical_auto(h, "shift")
    iota = disjoint_copy(h, shift, A).witness
    img = {h.coord(iota[a]) for a in A}
    assert not img & {q + 1 for q in img}
    assert (h.coord(iota[A[0]]) < h.coord(iota[A[1]]))


def test_disjoint_copy_random_graph_seeded():
    h = lim("random-graph")
    a = seeded_auto(h, 3, "F", fixed_point_free=True)
    A = [2, 5, 11, 17]
    iota = disjoint_copy(h, a, A).witness
    assert is_base_iso(h, iota)
    copy = set(iota.values())
    assert not copy & {a.image(v) for v in copy}


def test_disjoint_copy_preconditions():
    h = lim("s2")
    with pytest.raises(PreconditionError):
        disjoint_copy(h, canonical_auto(h, "part-swap"), [1])
    g = lim("random-graph")
    with pytest.raises(PreconditionError):
        disjoint_copy(g, seeded_auto(g, 1, "F"), [1])
    with pytest.raises(PreconditionError):
        disjoint_copy(g, canonical_auto(lim("random-graph"), "shift"), [1])


# -- order_transport --------------------------------------------------------

def test_order_transport_single_block_current_order():
    h = lim("pure-set")
    blk = sorted([3, 8, 1], key=h.coord)
    k = order_transport(h, [blk]).witness.mapping
    assert [h.coord(k[v]) for v in blk] == sorted(h.coord(k[v]) for v in blk)


def test_order_transport_keep_and_reverse():
    h = lim("pure-set")
    A0 = sorted([1, 2, 3], key=h.coord)
    A1 = sorted([4, 5, 6], key=h.coord)
    k = order_transport(h, [A0, A1[::-1]]).witness.mapping
    for x, y in itertools.combinations(A0, 2):
        assert (h.coord(x) < h.coord(y)) == (h.coord(k[x]) < h.coord(k[y]))
    for x, y in itertools.combinations(A1, 2):
        assert (h.coord(x) < h.coord(y)) != (h.coord(k[x]) < h.coord(k[y]))


def test_order_transport_random_graph_reverse_block():
    h = lim("random-graph")
    blk = sorted([4, 9, 12], key=h.coord)[::-1]
    k = order_transport(h, [blk]).witness.mapping
    assert is_base_iso(h, k)
    assert h.coord(k[blk[0]]) < h.coord(k[blk[1]]) < h.coord(k[blk[2]])


def test_order_transport_errors():
    h = lim("pure-set")
    with pytest.raises(PreconditionError):
        order_transport(h, [[1, 2], [2, 3]])
    with pytest.raises(PreconditionError):
        order_transport(lim("s2"), [[1, 2]])


# -- conjugate_order_preserving --------------------------------------------

def test_conjugate_single_point():
    h = lim("pure-set")
    rep = conjugate_order_preserving(h, canonical_auto(h, "order-reversal"), [5])
    assert rep.method == "trivial" and rep.ok


@pytest.mark.parametrize("name,A", [("pure-set", [1, 2, 3]), ("random-graph", [3, 7, 20])])
@pytest.mark.parametrize("method", ["pipeline", "fallback"])
def test_conjugate_increasing(name, A, method):
    h = lim(name, expansion="order")
    sigma = canonical_auto(h, "order-reversal")
    rep = conjugate_order_preserving(h, sigma, A, method=method)
    g = rep.witness.mapping
    assert is_base_iso(h, g)
    A = sorted(A, key=h.coord)
    vals = [h.coord(conj_image(h, g, sigma, a)) for a in A]
    assert vals == sorted(vals) and len(set(vals)) == len(vals)


def test_conjugate_requires_reversal():
    h = lim("random-graph")
    with pytest.raises(PreconditionError):
        conjugate_order_preserving(h, canonical_auto(h, "shift"), [1, 2])


def test_conjugate_deterministic():
    outs = []
    for _ in range(2):
        h = lim("random-graph")
        outs.append(conjugate_order_preserving(h, canonical_auto(h, "order-reversal"), [1, 4, 9, 30]).to_json())
    assert outs[0] == outs[1]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["pure-set", "random-graph"]),
       st.lists(st.integers(0, 300), min_size=2, max_size=8, unique=True))
def test_conjugate_identity_property(name, A):
    h = lim(name)
    sigma = canonical_auto(h, "order-reversal")
    g = conjugate_order_preserving(h, sigma, A).witness.mapping
    A = sorted(A, key=h.coord)
    for a, b in zip(A, A[1:]):
        assert h.coord(conj_image(h, g, sigma, a)) < h.coord(conj_image(h, g, sigma, b))


# -- S(2) -------------------------------------------------------------------

def test_s2_monotone_copy_small_cases():
    h = lim("s2")
    sw = canonical_auto(h, "part-swap", seed=7)
    assert s2_monotone_copy(sw, []).witness == {}
    iota = s2_monotone_copy(sw, [4]).witness
    assert h.part(iota[4]) == h.part(4)
    A = next((a, b) for a, b in itertools.combinations(range(20), 2) if h.part(a) != h.part(b))
    iota = s2_monotone_copy(sw, A).witness
    copy = [h.coord(v) for v in iota.values()]
    image = [h.coord(sw(v)) for v in iota.values()]
    assert max(copy) < min(image) or max(image) < min(copy)
    for x, y in itertools.combinations(A, 2):
        assert star_equal(h, x, y, iota[x], iota[y]) and h.part(iota[x]) == h.part(x)


def test_s2_part_split():
    h = lim("s2")
    A0 = [v for v in range(40) if h.coord(v) < 0][:1]
    A1 = [v for v in range(40) if h.coord(v) > 0][:1]
    k = s2_part_split(h, A0, A1).witness.mapping
    x, y = A0[0], A1[0]
    assert h.part(k[x]) == h.part(x) and h.part(k[y]) != h.part(y)
    assert h.relation(x, y).arc == h.relation(k[x], k[y]).arc
    # same-part status flips, so the order of the images must flip too
    assert h.relation(k[x], k[y]).less != h.relation(x, y).less
    k = s2_part_split(h, [1, 2, 3], []).witness.mapping
    assert all(h.part(k[v]) == h.part(v) for v in (1, 2, 3))


def test_s2_part_split_interleaved():
    h = lim("s2")
    lo, mid, hi = sorted(range(3), key=h.coord)
    with pytest.raises(PreconditionError):
        s2_part_split(h, [lo, hi], [mid])


@pytest.mark.parametrize("size", [0, 1, 3])
@pytest.mark.parametrize("method", ["pipeline", "fallback"])
def test_s2_conjugate_parts(size, method):
    h = lim("s2")
    sw = canonical_auto(h, "part-swap", seed=7)
    A = [0, 1, 2, 3, 5, 8][:size] if size < 3 else \
        next(c for c in itertools.combinations(range(10), 3) if len({h.part(v) for v in c}) == 2)
    g = s2_conjugate_parts(sw, A, method=method).witness.mapping
    assert all(base_equal(h, x, y, g[x], g[y]) for x, y in itertools.combinations(g, 2))
    for a in A:
        assert h.part(conj_image(h, g, sw, a)) == h.part(a)


def test_s2_conjugate_rejects_part_preserving_sigma():
    h = lim("s2")
    with pytest.raises(PreconditionError):
        s2_conjugate_parts(seeded_auto(h, 1, "F*", fixed_point_free=True), [1, 2])


# -- factor_via_conjugates --------------------------------------------------

def word_oracle(h, word, target):
    """Evaluate the word and re-check every factor by relation queries."""
    for g, s in word.pairs:
        gm, sm = g.mapping, s.mapping
        assert all(base_equal(h, x, y, gm[x], gm[y]) for x, y in itertools.combinations(gm, 2))
        assert all(star_equal(h, x, y, sm[x], sm[y]) for x, y in itertools.combinations(sm, 2))
        assert all(h.unary(x, "F*") == h.unary(sm[x], "F*") for x in sm)
    for x, y in target.items():
        v = x
        for g, s in reversed(word.pairs):
            ginv = {b: a for a, b in g.mapping.items()}
            v = g.mapping[s.mapping[ginv[v]]]
        assert v == y


def test_factor_star_target_length_one():
    h = lim("random-graph")
    t = seeded_auto(h, 2, "F*").restrict([1, 2, 3]).mapping
    word = factor_via_conjugates(h, t).witness
    assert len(word.pairs) == 1
    g = word.pairs[0][0].mapping
    assert all(k == v for k, v in g.items())


def test_factor_pure_set_transposition():
    h = lim("pure-set")
    word = factor_via_conjugates(h, {3: 5, 5: 3}).witness
    assert len(word.pairs) <= 2
    word_oracle(h, word, {3: 5, 5: 3})


def test_factor_word_bound():
    h = lim("pure-set")
    with pytest.raises(WordBoundExceeded):
        factor_via_conjugates(h, {3: 5, 5: 3}, max_word=0)
    with pytest.raises(WordBoundExceeded):
        factor_via_conjugates(h, {3: 5, 5: 3}, max_word=1)


def test_factor_in_kinf_needs_part_fixing():
    h = lim("In-Kinf(3)")
    a, b = h.composite_vertex(0, 1), h.composite_vertex(1, 1)
    with pytest.raises(WordBoundExceeded):
        factor_via_conjugates(h, {a: b})
    t = {h.composite_vertex(0, 1): h.composite_vertex(0, 2), h.composite_vertex(0, 2): h.composite_vertex(0, 1),
         h.composite_vertex(2, 5): h.composite_vertex(2, 3)}
    word_oracle(h, factor_via_conjugates(h, t).witness, t)


def test_factor_rejects_non_isomorphism():
    h = lim("random-graph")
    x, y = next(p for p in itertools.combinations(range(20), 2) if h.relation(*p).edge)
    u, v = next(p for p in itertools.combinations(range(20), 2) if not h.relation(*p).edge)
    with pytest.raises(PreconditionError):
        factor_via_conjugates(h, {x: u, y: v})


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["pure-set", "random-graph", "random-tournament", "In-Kinf(2)", "Iinf-Kn(2)",
                        "Iinf-Kinf", "rationals"]),
       st.integers(0, 10 ** 6), st.lists(st.integers(0, 60), min_size=1, max_size=5, unique=True))
def test_factor_property(name, seed, dom):
    h = lim(name)
    t = seeded_auto(h, seed, "F").restrict(dom).mapping
    if name.startswith("In-"):
        t = {x: y for x, y in t.items() if h.composite_view(x)[0] == h.composite_view(y)[0]}
    rep = factor_via_conjugates(h, t)
    assert len(rep.witness.pairs) <= 2
    word_oracle(h, rep.witness, t)
