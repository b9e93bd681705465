"""Flow catalogue for the built-in homogeneous structures, with sampled
finite-stage evidence procedures.

Descriptors are plain strings.  Each one pairs a claim with a short note
naming the argument behind it; nothing here is an executable model of an
infinite flow.  Fields the source results leave open are ``None``.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

from .autos import AutoHandle, PartialAuto, betweenness, canonical_auto, identity, preserves_parts, seeded_auto
from .fraisse import check_chain_condition
from .limits import LimitError, LimitHandle, LimitSpec
from .witnesses import (
    WitnessError, conjugate_order_preserving, disjoint_copy, factor_via_conjugates,
    s2_conjugate_parts, s2_monotone_copy,
)

TRIVIAL = "trivial"


@dataclass(frozen=True)
class Descriptor:
    claim: str
    anchor: str

    def __str__(self):
        return f"{self.claim} [{self.anchor}]"


@dataclass(frozen=True)
class CatalogEntry:
    structure: str
    G: str
    G_star: str
    N_G_star: Descriptor | None
    normal_closure: Descriptor
    M_flow: Descriptor
    Pi_flow: Descriptor | None
    B_flow: Descriptor
    B_finite: str | None = None
    evidence: tuple = ()
    data_only: bool = False

    def to_json(self) -> dict:
        out = {}
        for k, v in asdict(self).items():
            out[k] = list(v) if isinstance(v, tuple) else v
        return out


class EvidenceFailure(LimitError):
    pass


@dataclass
class EvidenceRecord:
    entry: str
    procedure: list
    samples: int
    verdict: str
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {"entry": self.entry, "procedure": self.procedure, "samples": self.samples,
                "verdict": self.verdict, "details": self.details}


# -- static data -------------------------------------------------------------

_ORDER_CASE = dict(
    N_G_star=Descriptor("Aut(F, B) for the betweenness relation B of the order",
                        "normalizer of an order-automorphism group via betweenness"),
    normal_closure=Descriptor("G", "an order reversal is a product of conjugates of G*"),
    M_flow=Descriptor("LO(F): logic action on the space of linear orders",
                      "order expansion with the Ramsey property"),
    Pi_flow=Descriptor("logic action on the space of betweenness relations",
                       "proximal flow is the completion of G/N(G*)"),
    B_flow=Descriptor(TRIVIAL, "quotient of G by the closed normal closure of G*"),
)


def _order_entry(structure: str, G: str, evidence: Sequence[str] = (), data_only: bool = False) -> CatalogEntry:
    return CatalogEntry(structure=structure, G=G, G_star=f"Aut({structure}, <) for a generic order <",
                        evidence=tuple(evidence), data_only=data_only, **_ORDER_CASE)


def _entries() -> dict[str, CatalogEntry]:
    e = {}
    e["pure-set"] = _order_entry("pure-set", "S_inf",
                                 ("conjugate-order", "disjoint-copy", "betweenness", "factor"))
    e["random-graph"] = _order_entry("random-graph", "Aut(random graph)",
                                     ("conjugate-order", "disjoint-copy", "betweenness", "chain"))
    e["henson(k)"] = _order_entry("henson(k)", "Aut(H_k)", ("disjoint-copy",))
    e["random-tournament"] = _order_entry("random-tournament", "Aut(random tournament)",
                                          ("disjoint-copy", "factor"))
    e["rational-urysohn"] = _order_entry("rational-urysohn", "Iso(rational Urysohn space)", data_only=True)
    e["rationals"] = CatalogEntry(
        structure="rationals", G="Aut(Q, <)", G_star="Aut(Q, <)",
        N_G_star=Descriptor("G", "G* = G"),
        normal_closure=Descriptor("G", "G* = G"),
        M_flow=Descriptor("single point", "extremely amenable"),
        Pi_flow=Descriptor("single point", "extremely amenable"),
        B_flow=Descriptor(TRIVIAL, "extremely amenable"),
        evidence=("chain",))
    e["s2"] = CatalogEntry(
        structure="s2", G="Aut(S(2))", G_star="Aut(S(2), P0, P1)",
        N_G_star=Descriptor("Aut(S(2), E*) for the two-part equivalence E*",
                            "normalizer of the part-preserving group"),
        normal_closure=Descriptor("G", "part swaps are products of conjugates of part-preserving maps"),
        M_flow=Descriptor("orbit closure of the partition into two parts",
                          "part expansion with the Ramsey property"),
        Pi_flow=Descriptor("orbit closure of the two-part equivalence relation E*",
                           "proximal flow is the completion of G/N(G*)"),
        B_flow=Descriptor(TRIVIAL, "quotient of G by the closed normal closure of G*"),
        evidence=("s2-monotone", "s2-conjugate", "part-classification"))
    e["In-Kinf(n)"] = CatalogEntry(
        structure="In-Kinf(n)", G="S_n x| S_inf^n", G_star="{e} x Aut(Q, <)^n",
        N_G_star=None,
        normal_closure=Descriptor("{e} x S_inf^n", "each part handled separately"),
        M_flow=Descriptor("completion of G/G*", "part labels and part orders"),
        Pi_flow=None,
        B_flow=Descriptor("S_n", "quotient of G by the closed normal closure of G*"),
        B_finite="S_n",
        evidence=("quotient-homomorphism", "kernel-factorization"))
    e["Iinf-Kn(n)"] = CatalogEntry(
        structure="Iinf-Kn(n)", G="S_inf x| S_n^N", G_star="Aut(Q, <) x {e}",
        N_G_star=None,
        normal_closure=Descriptor("G", "contains S_inf x {e}, hence everything"),
        M_flow=Descriptor("completion of G/G*", "order on the parts"),
        Pi_flow=None,
        B_flow=Descriptor(TRIVIAL, "quotient of G by the closed normal closure of G*"),
        evidence=("factor",))
    e["Iinf-Kinf"] = CatalogEntry(
        structure="Iinf-Kinf", G="S_inf x| S_inf^Q", G_star="Aut(Q, <) x| Aut(Q, <)^Q",
        N_G_star=None,
        normal_closure=Descriptor("G", "contains {e} x S_inf^Q, hence everything"),
        M_flow=Descriptor("completion of G/G*", "lexicographic order"),
        Pi_flow=None,
        B_flow=Descriptor(TRIVIAL, "quotient of G by the closed normal closure of G*"),
        evidence=("factor",))
    return e


CATALOG = _entries()
# quotients G / closure that are not trivial
_QUOTIENTS = {("S_n x| S_inf^n", "{e} x S_inf^n"): "S_n"}


def _catalog_key(name: str) -> str:
    if name in CATALOG:
        return name
    try:
        spec = LimitSpec.parse(name)
    except (ValueError, LimitError):
        spec = None
    if spec is not None and spec.param is not None:
        key = {"henson": "henson(k)"}.get(spec.family, f"{spec.family}(n)")
        if key in CATALOG:
            return key
    raise ValueError(f"unknown catalogue entry {name!r}; known: {', '.join(sorted(CATALOG))}")


def get_entry(name: str) -> CatalogEntry:
    return CATALOG[_catalog_key(name)]


def list_entries() -> list[str]:
    return sorted(CATALOG)


def quotient_descriptor(entry: CatalogEntry) -> str:
    """``G`` modulo the recorded normal closure, as a descriptor claim."""
    closure = entry.normal_closure.claim
    if closure == "G" or closure == entry.G:
        return TRIVIAL
    return _QUOTIENTS.get((entry.G, closure), f"{entry.G} / {closure}")


def consistency_check() -> dict[str, bool]:
    """Per entry: the recorded equicontinuous flow equals G modulo the normal closure."""
    out = {}
    for name, entry in CATALOG.items():
        ok = entry.B_flow.claim == quotient_descriptor(entry)
        if entry.B_finite is not None:
            ok = ok and entry.B_finite == entry.B_flow.claim
        ok = ok and (entry.data_only or bool(entry.evidence))
        out[name] = ok
    return out


# -- part action of I_n[K_inf] ---------------------------------------------

def part_action_quotient(h: LimitHandle, g, sample: Sequence[int] | None = None) -> tuple:
    """The permutation of part indices induced by ``g`` on ``h = In-Kinf(n)``.

    ``g`` is a :class:`PartialAuto` (sampled on its domain unless ``sample``
    is given), an :class:`AutoHandle`, or any vertex map.  Raises
    :class:`EvidenceFailure` when the sample splits a part or misses one.
    """
    if h.spec.family != "In-Kinf":
        raise ValueError("part_action_quotient needs an In-Kinf limit")
    n = h.spec.param
    if isinstance(g, PartialAuto):
        image = g.mapping.__getitem__
        pts = list(g.mapping) if sample is None else list(sample)
    else:
        image = g.image if isinstance(g, AutoHandle) else g
        pts = list(sample) if sample is not None else [h.composite_vertex(p, t) for p in range(n) for t in range(2)]
    perm: dict[int, int] = {}
    for v in pts:
        p = h.composite_view(v)[0]
        q = h.composite_view(image(v))[0]
        if perm.setdefault(p, q) != q:
            raise EvidenceFailure(f"part {p} is sent into parts {perm[p]} and {q}")
    if sorted(perm) != list(range(n)) or sorted(perm.values()) != list(range(n)):
        raise EvidenceFailure(f"sample does not determine a permutation of the {n} parts: {perm}")
    return tuple(perm[i] for i in range(n))


def _compose_perm(a: tuple, b: tuple) -> tuple:
    return tuple(a[b[i]] for i in range(len(b)))


# -- evidence procedures ------------------------------------------------------

def _proc_conjugate_order(h, rng, samples):
    sigma = canonical_auto(h, "order-reversal")
    for _ in range(samples):
        A = rng.sample(range(200), rng.randint(1, 8))
        conjugate_order_preserving(h, sigma, A)
    return {}


def _proc_disjoint_copy(h, rng, samples):
    for i in range(samples):
        if i % 2 and h.spec.family != "henson":
            a = canonical_auto(h, "shift")
        else:
            a = seeded_auto(h, rng.randrange(1 << 30), "F", fixed_point_free=True)
        disjoint_copy(h, a, rng.sample(range(60), rng.randint(0, 5)))
    return {}


def _proc_betweenness(h, rng, samples):
    sigma = canonical_auto(h, "order-reversal")
    for _ in range(samples):
        x, y, z = rng.sample(range(400), 3)
        c = h.coord
        if betweenness(c(x), c(y), c(z)) != betweenness(c(sigma(x)), c(sigma(y)), c(sigma(z))):
            raise EvidenceFailure(f"betweenness of {(x, y, z)} not preserved")
    return {}


def _proc_chain(h, rng, samples):
    u, v = sorted((0, 1), key=h.coord)
    pairs = [tuple(sorted(rng.sample(range(150), 2), key=h.coord)) for _ in range(samples)]
    max_len = 2 if h.spec.family == "rationals" else 4
    rep = check_chain_condition(h, u, v, pairs, max_len)
    if not rep.holds:
        raise EvidenceFailure(f"no chain for {rep.counterexample}")
    return {}


def _proc_factor(h, rng, samples):
    lengths = []
    for _ in range(samples):
        t = seeded_auto(h, rng.randrange(1 << 30), "F").restrict(rng.sample(range(60), rng.randint(1, 4)))
        lengths.append(len(factor_via_conjugates(h, t, max_word=16).witness.pairs))
    return {"max_word_used": max(lengths, default=0)}


def _proc_s2_monotone(h, rng, samples):
    sw = canonical_auto(h, "part-swap", seed=rng.randrange(1 << 30))
    for _ in range(samples):
        s2_monotone_copy(sw, rng.sample(range(100), rng.randint(0, 5)))
    return {}


def _proc_s2_conjugate(h, rng, samples):
    sw = canonical_auto(h, "part-swap", seed=rng.randrange(1 << 30))
    for _ in range(samples):
        s2_conjugate_parts(sw, rng.sample(range(100), rng.randint(0, 5)))
    return {}


def _proc_part_classification(h, rng, samples):
    pts = range(20)
    got = {"identity": preserves_parts(identity(h, pts), pts),
           "part-swap": preserves_parts(canonical_auto(h, "part-swap"), pts)}
    seen = {preserves_parts(seeded_auto(h, s, "F"), pts) for s in range(max(samples, 4))}
    got["seeded-F"] = sorted(seen)
    if got["identity"] != "preserves-each" or got["part-swap"] != "swaps" or "mixed" not in seen:
        raise EvidenceFailure(f"unexpected classification {got}")
    return got


def _part_sample(h, t=3):
    return [h.composite_vertex(p, i) for p in range(h.spec.param) for i in range(t)]


def _proc_quotient_homomorphism(h, rng, samples):
    pts = _part_sample(h)
    for _ in range(samples):
        g = seeded_auto(h, rng.randrange(1 << 30), "F")
        f = seeded_auto(h, rng.randrange(1 << 30), "F")
        qg, qf = part_action_quotient(h, g, pts), part_action_quotient(h, f, pts)
        # the composite g o f on the sample, as a map on vertices
        gf = PartialAuto(h, {v: g(f(v)) for v in pts}, "F")
        if part_action_quotient(h, gf) != _compose_perm(qg, qf):
            raise EvidenceFailure("part action is not multiplicative on a sampled pair")
    return {}


def _proc_kernel_factorization(h, rng, samples, max_word=16):
    n = h.spec.param
    lengths = []
    for _ in range(samples):
        t = {}
        for p in range(n):
            src = rng.sample(range(12), rng.randint(0, 3))
            dst = rng.sample(range(12), len(src))
            t.update({h.composite_vertex(p, a): h.composite_vertex(p, b) for a, b in zip(src, dst)})
        if any(h.composite_view(v)[0] != h.composite_view(w)[0] for v, w in t.items()):
            raise EvidenceFailure("kernel sample moves a part")
        lengths.append(len(factor_via_conjugates(h, t, max_word=max_word).witness.pairs))
    return {"max_word_used": max(lengths, default=0), "word_bound": max_word}


PROCEDURES: dict[str, Callable] = {
    "conjugate-order": _proc_conjugate_order,
    "disjoint-copy": _proc_disjoint_copy,
    "betweenness": _proc_betweenness,
    "chain": _proc_chain,
    "factor": _proc_factor,
    "s2-monotone": _proc_s2_monotone,
    "s2-conjugate": _proc_s2_conjugate,
    "part-classification": _proc_part_classification,
    "quotient-homomorphism": _proc_quotient_homomorphism,
    "kernel-factorization": _proc_kernel_factorization,
}

# concrete structures for entries with a parameter
_DEFAULT_INSTANCE = {"henson(k)": "henson(3)", "In-Kinf(n)": "In-Kinf(3)", "Iinf-Kn(n)": "Iinf-Kn(3)"}


def run_evidence(entry: CatalogEntry | str, seed: int = 7, budget: int = 20,
                 structure: str | None = None) -> EvidenceRecord:
    """Run every evidence procedure of ``entry`` with ``budget`` samples each."""
    if isinstance(entry, str):
        structure = structure or (entry if entry not in _DEFAULT_INSTANCE else None)
        entry = get_entry(entry)
    structure = structure or _DEFAULT_INSTANCE.get(entry.structure, entry.structure)
    if entry.data_only or not entry.evidence:
        return EvidenceRecord(entry.structure, [], 0, "pass", {"note": "data-only entry"})
    details = {}
    verdict = "pass"
    for name in entry.evidence:
        rng = random.Random(f"{seed}:{structure}:{name}")
        h = LimitHandle(LimitSpec.parse(structure, seed=seed))
        try:
            extra = PROCEDURES[name](h, rng, budget)
            details[name] = {"verdict": "pass", **extra}
        except (LimitError, WitnessError) as exc:
            verdict = "fail"
            details[name] = {"verdict": "fail", "error": f"{type(exc).__name__}: {exc}"}
    return EvidenceRecord(structure, list(entry.evidence), budget, verdict, details)
