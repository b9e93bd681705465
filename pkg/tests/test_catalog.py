import random

import pytest

from fraisselab.autos import PartialAuto, identity, seeded_auto
from fraisselab.catalog import (
    CATALOG, EvidenceFailure, consistency_check, get_entry, list_entries, part_action_quotient,
    quotient_descriptor, run_evidence,
)
from fraisselab.limits import LimitHandle, LimitSpec


def inkinf(n=3, seed=7):
    return LimitHandle(LimitSpec.parse(f"In-Kinf({n})", seed=seed))


def test_random_graph_entry():
    e = get_entry("random-graph")
    assert e.B_flow.claim == "trivial"
    assert "linear orders" in e.M_flow.claim and "LO" in e.M_flow.claim
    assert "betweenness" in e.Pi_flow.claim


def test_in_kinf_entry():
    e = get_entry("In-Kinf(3)")
    assert e.B_finite == "S_n" and e.B_flow.claim == "S_n"
    assert e is get_entry("In-Kinf(5)")


def test_s2_entry():
    e = get_entry("s2")
    assert e.B_flow.claim == "trivial"
    assert "orbit closure" in e.Pi_flow.claim and "E*" in e.Pi_flow.claim


def test_every_descriptor_has_anchor():
    for e in CATALOG.values():
        for d in (e.N_G_star, e.normal_closure, e.M_flow, e.Pi_flow, e.B_flow):
            assert d is None or (d.claim and d.anchor)


def test_unknown_entry():
    with pytest.raises(ValueError):
        get_entry("cats")


def test_catalog_lists_data_only_urysohn():
    assert "rational-urysohn" in list_entries()
    assert get_entry("rational-urysohn").data_only
    assert run_evidence("rational-urysohn").passed


def test_consistency():
    assert all(consistency_check().values())
    assert quotient_descriptor(get_entry("In-Kinf(4)")) == "S_n"


def test_entries_serialize():
    for name in list_entries():
        js = get_entry(name).to_json()
        assert js["structure"] == get_entry(name).structure


def test_quotient_identity_and_transposition():
    h = inkinf()
    pts = [h.composite_vertex(p, t) for p in range(3) for t in range(4)]
    assert part_action_quotient(h, identity(h, pts, "F")) == (0, 1, 2)
    swap = {h.composite_vertex(p, t): h.composite_vertex({0: 1, 1: 0, 2: 2}[p], t)
            for p in range(3) for t in range(4)}
    assert part_action_quotient(h, PartialAuto(h, swap, "F")) == (1, 0, 2)


def test_quotient_rejects_split_part():
    h = inkinf()
    bad = {h.composite_vertex(0, 0): h.composite_vertex(0, 0), h.composite_vertex(0, 1): h.composite_vertex(1, 1),
           h.composite_vertex(2, 0): h.composite_vertex(2, 0)}
    with pytest.raises(EvidenceFailure):
        part_action_quotient(h, bad.__getitem__, sample=list(bad))
    with pytest.raises(EvidenceFailure):
        part_action_quotient(h, identity(h, [h.composite_vertex(0, 0)], "F"))


def perm_oracle(h, g, pts):
    """Independent read-off: the part index of the image of a representative."""
    out = {}
    for v in pts:
        out.setdefault(v % h.spec.param, g(v) % h.spec.param)
    return tuple(out[i] for i in range(h.spec.param))


def test_quotient_homomorphism_50_pairs():
    h = inkinf()
    pts = [h.composite_vertex(p, t) for p in range(3) for t in range(3)]
    rng = random.Random(0)
    for _ in range(50):
        g, f = (seeded_auto(h, rng.randrange(1 << 30), "F") for _ in range(2))
        qg, qf = part_action_quotient(h, g, pts), part_action_quotient(h, f, pts)
        assert qg == perm_oracle(h, g, pts)
        gf = PartialAuto(h, {v: g(f(v)) for v in pts}, "F")
        assert part_action_quotient(h, gf) == tuple(qg[qf[i]] for i in range(3))


@pytest.mark.parametrize("name", ["pure-set", "random-graph", "s2", "In-Kinf(3)", "Iinf-Kn(2)", "Iinf-Kinf",
                                  "rationals", "henson(3)", "random-tournament"])
def test_run_evidence_passes(name):
    rec = run_evidence(name, seed=7, budget=10)
    assert rec.passed, rec.details


def test_evidence_deterministic():
    a = run_evidence("s2", seed=3, budget=5).to_json()
    b = run_evidence("s2", seed=3, budget=5).to_json()
    assert a == b
