import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from fraisselab.fraisse import (
    AmalgamationFailed, AmalgamInstance, amalgamate, check_ap, check_chain_condition,
    check_hp, check_jep, find_chain, get_class, members, pair_type, verify_amalgam, _orbit_reps,
    _search,
)
from fraisselab.limits import LimitHandle, LimitSpec
from fraisselab.relstruct import (
    GRAPH, LINEAR_ORDER, Embedding, FinStructure, are_isomorphic, complete,
    enumerate_embeddings, graph, path,
)

ORDERED_GRAPH = GRAPH.expand(("<", LINEAR_ORDER))


def all_structures(sig, n):
    """Independent enumerator over every labelled structure (orders included)."""
    pairs = list(itertools.combinations(range(n), 2))
    binaries = sig.binary
    per = []
    for s in binaries:
        if s.kind == "graph-edge":
            per.append([[p for p, b in zip(pairs, bits) if b] + [(j, i) for (i, j), b in zip(pairs, bits) if b]
                        for bits in itertools.product((0, 1), repeat=len(pairs))])
        elif s.kind == "tournament-arc":
            per.append([[p if b else p[::-1] for p, b in zip(pairs, bits)]
                        for bits in itertools.product((0, 1), repeat=len(pairs))])
        else:
            per.append([[(perm[i], perm[j]) for i, j in pairs] for perm in itertools.permutations(range(n))])
    unary = sig.unary
    for combo in itertools.product(*per):
        for un in itertools.product(*[[frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]
                                      for _ in unary]):
            rels = {s.name: c for s, c in zip(binaries, combo)}
            rels.update({s.name: u for s, u in zip(unary, un)})
            yield FinStructure.build(sig, n, rels, symmetrize=False)


def oracle_amalgam_exists(k, inst, strong):
    top = inst.B.n + inst.C.n - inst.A.n
    for n in range(max(inst.B.n, inst.C.n), top + 1):
        for D in all_structures(k.sig, n):
            if not k.contains(D):
                continue
            for r in enumerate_embeddings(inst.B, D):
                for s in enumerate_embeddings(inst.C, D):
                    if all(r.map[inst.f.map[a]] == s.map[inst.g.map[a]] for a in range(inst.A.n)):
                        if not strong or set(r.map) & set(s.map) == {r.map[x] for x in inst.f.map}:
                            return True
    return False


def instances(k):
    by = {n: members(k, n) for n in range(k.size_bound + 1)}
    for na in range(k.size_bound + 1):
        for A in by[na]:
            ext = [(B, f) for nb in range(na, k.size_bound + 1) for B in by[nb] for f in _orbit_reps(A, B)]
            for (B, f), (C, g) in itertools.product(ext, repeat=2):
                yield AmalgamInstance(A, B, C, f, g)


def test_member_counts_match_known_isomorphism_type_counts():
    assert [len(members(get_class("all-graphs"), n)) for n in range(5)] == [1, 1, 2, 4, 11]
    assert [len(members(get_class("all-tournaments"), n)) for n in range(5)] == [1, 1, 1, 2, 4]
    assert [len(members(get_class("K3-free-graphs"), n)) for n in range(5)] == [1, 1, 2, 3, 7]
    assert [len(members(get_class("ordered(all-graphs)"), n)) for n in range(4)] == [1, 1, 2, 8]


def test_hp_examples():
    assert check_hp(get_class("all-graphs", 4)).holds
    assert check_hp(get_class("K3-free-graphs", 4)).holds
    rep = check_hp(get_class("exactly-two-vertices", 4))
    assert not rep.holds and rep.counterexample["substructure"]["n"] == 1


def test_jep():
    assert check_jep(get_class("all-tournaments", 3)).holds
    assert check_jep(get_class("K3-free-graphs", 3)).holds


@pytest.mark.parametrize("name", ["all-graphs", "K3-free-graphs", "all-tournaments",
                                  "all-linear-orders", "all-pure-sets", "all-partitioned-by-2"])
def test_sap_holds_up_to_4(name):
    rep = check_ap(get_class(name, 4), strong=True)
    assert rep.holds and rep.instances_checked > 0


def test_sap_failing_class():
    rep = check_ap(get_class("at-most-one-P", 3), strong=True)
    assert not rep.holds
    inst = rep.counterexample
    assert inst.A.n == 0 and inst.B.n == inst.C.n == 1
    assert inst.B.rel("P") and inst.C.rel("P")
    assert not oracle_amalgam_exists(get_class("at-most-one-P"), inst, strong=True)
    assert oracle_amalgam_exists(get_class("at-most-one-P"), inst, strong=False)
    assert rep.details["plain_amalgam"]["D"]["n"] == 1
    assert check_ap(get_class("at-most-one-P", 3), strong=False).holds


@pytest.mark.parametrize("name,strong", [("all-graphs", True), ("K3-free-graphs", True),
                                         ("all-tournaments", True), ("at-most-one-P", True),
                                         ("at-most-one-P", False), ("ordered(all-graphs)", False)])
def test_search_agrees_with_exhaustive_oracle(name, strong):
    k = get_class(name, 2 if name.startswith("ordered") else 3)
    for inst in instances(k):
        found = _search(k, inst, strong, slack=0)
        assert (found is not None) == oracle_amalgam_exists(k, inst, strong)
        if found is not None:
            assert verify_amalgam(inst, found, strong)


def test_free_amalgam_examples():
    k2 = complete(2)
    a1 = graph(1)
    inst = AmalgamInstance(a1, k2, k2, Embedding(a1, k2, (0,)), Embedding(a1, k2, (0,)))
    am = amalgamate(inst, "free")
    assert are_isomorphic(am.D, path(3))
    assert verify_amalgam(inst, am, strong=True)
    empty = graph(0)
    am = amalgamate(AmalgamInstance(empty, k2, k2, Embedding(empty, k2, ()), Embedding(empty, k2, ())), "free")
    assert am.D.n == 4 and len(am.D.rel("E")) == 4


def test_free_mode_rejects_orders():
    A = FinStructure.build(ORDERED_GRAPH, 1)
    B = FinStructure.build(ORDERED_GRAPH, 2, {"<": [(0, 1)]})
    inst = AmalgamInstance(A, B, B, Embedding(A, B, (0,)), Embedding(A, B, (0,)))
    with pytest.raises(ValueError):
        amalgamate(inst, "free")
    am = amalgamate(inst, "search", k=get_class("ordered(all-graphs)"), strong=False)
    assert am.D.n == 3 and verify_amalgam(inst, am, strong=False)


def test_search_failure_raises():
    k = get_class("at-most-one-P")
    P = FinStructure.build(k.sig, 1, {"P": [0]})
    e = FinStructure.build(k.sig, 0)
    inst = AmalgamInstance(e, P, P, Embedding(e, P, ()), Embedding(e, P, ()))
    with pytest.raises(AmalgamationFailed):
        amalgamate(inst, "search", k=k, strong=True)


def test_reports_are_deterministic():
    a = check_ap(get_class("all-tournaments", 3), strong=True).to_json()
    b = check_ap(get_class("all-tournaments", 3), strong=True).to_json()
    assert a == b


def test_chain_rationals_length_two():
    h = LimitHandle(LimitSpec("rationals", 7))
    rng = random.Random(1)
    pairs = [tuple(sorted(rng.sample(range(200), 2), key=h.coord)) for _ in range(30)]
    rep = check_chain_condition(h, 0, 1, pairs, max_len=2)
    assert rep.holds and all(len(c) == 2 for c in rep.details["chains"])


def test_chain_ordered_random_graph():
    h = LimitHandle(LimitSpec("random-graph", 7, "order"))
    u, v = next((a, b) for a, b in itertools.permutations(range(30), 2)
                if h.relation(a, b).edge and h.relation(a, b).less)
    x, y = next((a, b) for a, b in itertools.permutations(range(30), 2)
                if not h.relation(a, b).edge and h.relation(a, b).less)
    chain = find_chain(h, u, v, x, y, 4)
    assert len(chain) == 3
    z = chain[1]
    assert h.coord(x) < h.coord(z) < h.coord(y)
    assert h.relation(x, z).edge and h.relation(z, y).edge
    assert find_chain(h, u, v, x, y, 1) is None
    rep = check_chain_condition(h, u, v, [(x, y)], max_len=1)
    assert not rep.holds and rep.counterexample == {"pair": [x, y]}


def test_chain_rejects_decreasing_input():
    h = LimitHandle(LimitSpec("rationals", 7))
    lo, hi = sorted((0, 1), key=h.coord)
    with pytest.raises(ValueError):
        check_chain_condition(h, hi, lo, [], 3)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32), st.sampled_from(["random-graph", "random-tournament", "s2"]),
       st.integers(0, 150), st.integers(0, 150))
def test_chain_links_have_the_type_of_u_v(seed, fam, x, y):
    h = LimitHandle(LimitSpec(fam, seed, "order"))
    if x == y:
        return
    if not h.relation(x, y).less:
        x, y = y, x
    u, v = (0, 1) if h.relation(0, 1).less else (1, 0)
    chain = find_chain(h, u, v, x, y, 4)
    if chain is None:
        # only part labels can block a chain: inner links need head part == tail part
        assert fam == "s2"
        assert h.part(u) != h.part(v) or (h.part(x), h.part(y)) != (h.part(u), h.part(v))
        return
    assert chain[0] == x and chain[-1] == y
    for a, b in zip(chain, chain[1:]):
        assert pair_type(h, a, b) == pair_type(h, u, v)


def test_class_membership_isomorphism_invariant():
    k = get_class("K3-free-graphs")
    rng = random.Random(3)
    for s in itertools.islice(members(k, 4, dedup=False), 20):
        perm = list(range(4))
        rng.shuffle(perm)
        t = FinStructure.build(GRAPH, 4, {"E": [(perm[a], perm[b]) for a, b in s.rel("E")]})
        assert k.member(s) == k.member(t)


def test_unknown_class():
    with pytest.raises(ValueError):
        get_class("cats")
    with pytest.raises(ValueError):
        get_class("ordered(all-linear-orders)")
