"""Bounded brute-force checks of hereditary, joint-embedding and
amalgamation properties, amalgam construction, and chain searches in limits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Callable, Iterator

from .limits import ORDER_BIT, REL_BIT, BudgetExceeded, LimitHandle
from .relstruct import (
    ARC, GRAPH, GRAPH_EDGE, LINEAR_ORDER, TOURNAMENT_ARC, UNARY_PART, Embedding,
    FinStructure, Signature, canonical_key, enumerate_embeddings, induced_substructure,
    is_embedding, validate,
)
from .reports import FAILS, HOLDS, PropertyReport

OVERFLOW_CAP = 10 ** 5
DEFAULT_SLACK = 2


class EnumerationOverflow(Exception):
    pass


class AmalgamationFailed(Exception):
    pass


@dataclass(frozen=True)
class ClassSpec:
    name: str
    sig: Signature
    member: Callable[[FinStructure], bool]
    size_bound: int = 4

    def contains(self, s: FinStructure) -> bool:
        return s.sig == self.sig and validate(s).ok and self.member(s)

    def with_bound(self, bound: int) -> "ClassSpec":
        return ClassSpec(self.name, self.sig, self.member, bound)


def _kk_free(k: int):
    def member(s):
        e = s.rel("E")
        return not any(all((a, b) in e for a, b in combinations(c, 2))
                       for c in combinations(range(s.n), k))
    return member


def _always(_s):
    return True


def ordered(base: ClassSpec) -> ClassSpec:
    """``base`` expanded by an arbitrary linear order."""
    if base.sig.order_symbol is not None:
        raise ValueError(f"{base.name} already carries an order")
    sig = base.sig.expand(("<", LINEAR_ORDER))

    def member(s):
        return base.member(_reduct(s, base.sig))

    return ClassSpec(f"ordered({base.name})", sig, member, base.size_bound)


def _reduct(s: FinStructure, sig: Signature) -> FinStructure:
    return FinStructure.build(sig, s.n, {x.name: s.rel(x.name) for x in sig.symbols}, symmetrize=False)


_TOURNAMENT = Signature.of(("T", TOURNAMENT_ARC))
_PURE = Signature()
_ORDER = Signature.of(("<", LINEAR_ORDER))
_PARTS = Signature.of(("P0", UNARY_PART, "parts"), ("P1", UNARY_PART, "parts"))
_PRED = Signature.of(("P", UNARY_PART))


def get_class(name: str, bound: int = 4) -> ClassSpec:
    """Built-in class by name; ``ordered(X)`` wraps any built-in ``X``."""
    name = name.strip()
    m = re.fullmatch(r"ordered\((.+)\)", name)
    if m:
        return ordered(get_class(m.group(1), bound))
    m = re.fullmatch(r"K(\d+)-free-graphs", name)
    if m:
        k = int(m.group(1))
        if k < 2:
            raise ValueError("K_k-free needs k >= 2")
        return ClassSpec(name, GRAPH, _kk_free(k), bound)
    table = {
        "all-graphs": (GRAPH, _always),
        "all-tournaments": (_TOURNAMENT, _always),
        "all-linear-orders": (_ORDER, _always),
        "all-pure-sets": (_PURE, _always),
        "all-partitioned-by-2": (_PARTS, _always),
        "exactly-two-vertices": (_PURE, lambda s: s.n == 2),
        "at-most-one-P": (_PRED, lambda s: len(s.rel("P")) <= 1),
    }
    if name not in table:
        raise ValueError(f"unknown class {name!r}")
    sig, member = table[name]
    return ClassSpec(name, sig, member, bound)


BUILTIN_CLASSES = ("all-graphs", "K3-free-graphs", "all-tournaments", "all-linear-orders",
                   "all-pure-sets", "all-partitioned-by-2", "ordered(all-graphs)",
                   "exactly-two-vertices", "at-most-one-P")


# -- enumeration -------------------------------------------------------------

def _pair_choices(kind: str):
    # options for an unordered pair (i < j): list of ((i,j) in R, (j,i) in R)
    if kind == GRAPH_EDGE:
        return ((False, False), (True, True))
    if kind == TOURNAMENT_ARC:
        return ((True, False), (False, True))
    if kind == ARC:
        return ((False, False), (True, False), (False, True), (True, True))
    raise ValueError(kind)


def _unary_choices(sig: Signature):
    """Per-vertex unary assignments: tuples of symbol names that hold."""
    fams: dict[str, list[str]] = {}
    free = []
    for s in sig.unary:
        if s.family:
            fams.setdefault(s.family, []).append(s.name)
        else:
            free.append(s.name)
    groups = [[(name,) for name in names] for names in fams.values()]
    groups += [[(), (name,)] for name in free]
    return [sum(c, ()) for c in product(*groups)]


def raw_structures(sig: Signature, n: int) -> Iterator[FinStructure]:
    """Every structure on ``{0..n-1}`` whose linear order (if any) is the natural one.

    Up to isomorphism this covers the whole class: any ordered structure is
    isomorphic to one ordered naturally.
    """
    pairs = list(combinations(range(n), 2))
    free_syms = [s for s in sig.binary if s.kind != LINEAR_ORDER]
    order = sig.order_symbol
    ucs = _unary_choices(sig)
    per_sym = [list(product(_pair_choices(s.kind), repeat=len(pairs))) for s in free_syms]
    for bin_choice in product(*per_sym):
        for un in product(ucs, repeat=n):
            rels: dict[str, list] = {s.name: [] for s in sig.symbols}
            for s, choice in zip(free_syms, bin_choice):
                for (i, j), (fw, bw) in zip(pairs, choice):
                    if fw:
                        rels[s.name].append((i, j))
                    if bw:
                        rels[s.name].append((j, i))
            if order is not None:
                rels[order.name] = pairs
            for v, names in enumerate(un):
                for name in names:
                    rels[name].append(v)
            yield FinStructure.build(sig, n, rels, symmetrize=False)


def members(k: ClassSpec, n: int, dedup: bool = True, cap: int = OVERFLOW_CAP) -> list[FinStructure]:
    """Members of size ``n``, one per isomorphism type when ``dedup``."""
    out, seen, count = [], set(), 0
    for s in raw_structures(k.sig, n):
        count += 1
        if count > cap:
            raise EnumerationOverflow(f"more than {cap} raw structures of size {n} for {k.name}")
        if not k.member(s):
            continue
        if dedup:
            key = canonical_key(s)
            if key in seen:
                continue
            seen.add(key)
        out.append(s)
    return out


# -- hereditary and joint embedding -----------------------------------------

def check_hp(k: ClassSpec) -> PropertyReport:
    """Every one-vertex deletion of every member up to the bound is a member.

    One-vertex deletions suffice: induced substructures are reached by
    repeated deletion, and smaller members are themselves checked.
    """
    checked = 0
    for n in range(k.size_bound + 1):
        for s in members(k, n, dedup=False):
            for v in range(n):
                checked += 1
                sub, _ = induced_substructure(s, [w for w in range(n) if w != v])
                if not k.contains(sub):
                    return PropertyReport("HP", FAILS, checked, {
                        "structure": s.to_json(), "substructure": sub.to_json(),
                        "deleted": v})
    return PropertyReport("HP", HOLDS, checked, details={"class": k.name, "bound": k.size_bound})


def check_jep(k: ClassSpec) -> PropertyReport:
    empty = FinStructure.build(k.sig, 0)
    checked = 0
    for nb in range(k.size_bound + 1):
        for B in members(k, nb):
            for nc in range(nb, k.size_bound + 1):
                for C in members(k, nc):
                    checked += 1
                    inst = AmalgamInstance(empty, B, C, Embedding(empty, B, ()), Embedding(empty, C, ()))
                    if _search(k, inst, strong=False, slack=DEFAULT_SLACK) is None:
                        return PropertyReport("JEP", FAILS, checked, inst)
    return PropertyReport("JEP", HOLDS, checked, details={"class": k.name, "bound": k.size_bound})


# -- amalgamation ------------------------------------------------------------

@dataclass(frozen=True)
class AmalgamInstance:
    A: FinStructure
    B: FinStructure
    C: FinStructure
    f: Embedding
    g: Embedding

    def __post_init__(self):
        if not (is_embedding(self.f.map, self.A, self.B) and is_embedding(self.g.map, self.A, self.C)):
            raise ValueError("f and g must be embeddings of A")

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "B": self.B.to_json(), "C": self.C.to_json(),
                "f": list(self.f.map), "g": list(self.g.map)}


@dataclass(frozen=True)
class Amalgam:
    D: FinStructure
    r: Embedding
    s: Embedding

    def to_json(self) -> dict:
        return {"D": self.D.to_json(), "r": list(self.r.map), "s": list(self.s.map)}


def verify_amalgam(inst: AmalgamInstance, am: Amalgam, strong: bool) -> bool:
    """Re-check an amalgam: embeddings, commuting square, and disjointness if strong."""
    if not (is_embedding(am.r.map, inst.B, am.D) and is_embedding(am.s.map, inst.C, am.D)):
        return False
    if any(am.r.map[inst.f.map[a]] != am.s.map[inst.g.map[a]] for a in range(inst.A.n)):
        return False
    if strong:
        common = set(am.r.map) & set(am.s.map)
        return common == {am.r.map[inst.f.map[a]] for a in range(inst.A.n)}
    return True


def _linear_extensions(n: int, below: set) -> Iterator[list[int]]:
    """Total orders of range(n) extending the strict relation ``below``; smallest index first."""
    preds = [set() for _ in range(n)]
    for a, b in below:
        preds[b].add(a)
    placed: list[int] = []
    used = [False] * n

    def rec():
        if len(placed) == n:
            yield list(placed)
            return
        for v in range(n):
            if not used[v] and all(used[p] for p in preds[v]):
                used[v] = True
                placed.append(v)
                yield from rec()
                placed.pop()
                used[v] = False

    yield from rec()


def _identifications(k: ClassSpec, inst: AmalgamInstance, bnew, cnew, size: int):
    """Injective partial matchings C-new -> B-new of ``size`` pairs with equal unary type."""
    bu, cu = inst.B.unary_codes, inst.C.unary_codes
    for cs in combinations(cnew, size):
        for bs in permutations(bnew, size):
            if all(cu[c] == bu[b] for c, b in zip(cs, bs)):
                yield dict(zip(cs, bs))


def _candidates(k: ClassSpec, inst: AmalgamInstance, ident: dict, extra: int):
    B, C = inst.B, inst.C
    nb, nc = B.n, C.n
    s_map = [None] * nc
    for a in range(inst.A.n):
        s_map[inst.g.map[a]] = inst.f.map[a]
    nxt = nb
    for c in range(nc):
        if s_map[c] is None:
            if c in ident:
                s_map[c] = ident[c]
            else:
                s_map[c] = nxt
                nxt += 1
    n = nxt + extra
    rB = set(range(nb))
    sC = set(s_map)
    # relations fixed by B and C; conflicts make this identification impossible
    fixed: dict[str, dict] = {}
    for sym in k.sig.binary:
        table = {}
        for (x, y) in B.rel(sym.name):
            table[(x, y)] = True
        for x in range(nb):
            for y in range(nb):
                if x != y:
                    table.setdefault((x, y), False)
        for x in range(nc):
            for y in range(nc):
                if x == y:
                    continue
                key = (s_map[x], s_map[y])
                val = (x, y) in C.rel(sym.name)
                if table.get(key, val) != val:
                    return
                table[key] = val
        fixed[sym.name] = table
    unary_fixed = {}
    for sym in k.sig.unary:
        t = set(B.rel(sym.name)) | {s_map[c] for c in C.rel(sym.name)}
        unary_fixed[sym.name] = t
    free_pairs = [(i, j) for i, j in combinations(range(n), 2)
                  if not ({i, j} <= rB or {i, j} <= sC)]
    free_syms = [s for s in k.sig.binary if s.kind != LINEAR_ORDER]
    order = k.sig.order_symbol
    extra_unary = list(product(_unary_choices(k.sig), repeat=extra))
    below = {p for p, v in fixed[order.name].items() if v} if order is not None else None
    for bin_choice in _lazy_product([lambda s=s: product(_pair_choices(s.kind), repeat=len(free_pairs))
                                     for s in free_syms]):
        orders = _linear_extensions(n, below) if order is not None else [None]
        for total in orders:
            for un in extra_unary:
                rels: dict[str, set] = {}
                for sym in k.sig.binary:
                    if sym.kind == LINEAR_ORDER:
                        rels[sym.name] = {(total[a], total[b]) for a in range(n) for b in range(a + 1, n)}
                    else:
                        rels[sym.name] = {p for p, v in fixed[sym.name].items() if v}
                for sym, choice in zip(free_syms, bin_choice):
                    for (i, j), (fw, bw) in zip(free_pairs, choice):
                        if fw:
                            rels[sym.name].add((i, j))
                        if bw:
                            rels[sym.name].add((j, i))
                for sym in k.sig.unary:
                    rels[sym.name] = set(unary_fixed[sym.name])
                for t, names in enumerate(un):
                    for name in names:
                        rels[name].add(nxt + t)
                D = FinStructure.build(k.sig, n, rels, symmetrize=False)
                yield Amalgam(D, Embedding(B, D, tuple(range(nb))), Embedding(C, D, tuple(s_map)))


def _lazy_product(factories):
    """Cartesian product that re-creates inner iterators instead of materializing them."""
    if not factories:
        yield ()
        return
    for head in factories[0]():
        for tail in _lazy_product(factories[1:]):
            yield (head,) + tail


def _search(k: ClassSpec, inst: AmalgamInstance, strong: bool, slack: int,
            cap: int = OVERFLOW_CAP) -> Amalgam | None:
    bnew = [b for b in range(inst.B.n) if b not in set(inst.f.map)]
    cnew = [c for c in range(inst.C.n) if c not in set(inst.g.map)]
    max_ident = 0 if strong else min(len(bnew), len(cnew))
    tried = 0
    for extra in range(slack + 1):
        for size in range(max_ident + 1):
            for ident in _identifications(k, inst, bnew, cnew, size):
                for am in _candidates(k, inst, ident, extra):
                    tried += 1
                    if tried > cap:
                        raise EnumerationOverflow(f"amalgam search exceeded {cap} candidates")
                    if k.contains(am.D) and verify_amalgam(inst, am, strong):
                        return am
    return None


def amalgamate(inst: AmalgamInstance, mode: str = "search", k: ClassSpec | None = None,
               strong: bool = True, slack: int = DEFAULT_SLACK) -> Amalgam:
    """Free amalgam ``B ⊔_A C``, or the first amalgam in ``k`` found by search."""
    if mode == "free":
        kinds = {s.kind for s in inst.B.sig.binary}
        if not kinds <= {GRAPH_EDGE, ARC}:
            raise ValueError("free amalgams need graph-edge or arc symbols only")
        free = ClassSpec("free", inst.B.sig, _always)
        am = next(_candidates(free, inst, {}, 0), None)
        if am is None:
            raise AmalgamationFailed("B and C disagree on the image of A")
        return am
    if mode != "search":
        raise ValueError(f"unknown mode {mode!r}")
    if k is None:
        k = ClassSpec("any", inst.B.sig, _always)
    am = _search(k, inst, strong, slack)
    if am is None:
        raise AmalgamationFailed(f"no amalgam in {k.name} within slack {slack}")
    return am


def _orbit_reps(a: FinStructure, b: FinStructure) -> list[Embedding]:
    """Embeddings ``a -> b`` up to automorphisms of ``b``."""
    auts = [e.map for e in enumerate_embeddings(b, b)]
    reps = []
    for e in enumerate_embeddings(a, b):
        if all(tuple(al[x] for x in e.map) >= e.map for al in auts):
            reps.append(e)
    return reps


def check_ap(k: ClassSpec, strong: bool = False, slack: int = DEFAULT_SLACK) -> PropertyReport:
    """Search an amalgam for every instance with ``|B|, |C| <= bound``."""
    prop = "SAP" if strong else "AP"
    bound = k.size_bound
    by_size = {n: members(k, n) for n in range(bound + 1)}
    checked = 0
    for na in range(bound + 1):
        for A in by_size[na]:
            ext = [(B, f) for nb in range(na, bound + 1) for B in by_size[nb] for f in _orbit_reps(A, B)]
            # (B, f, C, g) and (C, g, B, f) amalgamate together
            for (B, f), (C, g) in combinations_with_replacement(ext, 2):
                inst = AmalgamInstance(A, B, C, f, g)
                checked += 1
                if _search(k, inst, strong, slack) is None:
                    report = PropertyReport(prop, FAILS, checked, inst, {"class": k.name, "bound": bound})
                    alt = _search(k, inst, False, slack) if strong else None
                    if alt is not None:
                        report.details["plain_amalgam"] = alt.to_json()
                    return report
    return PropertyReport(prop, HOLDS, checked, details={"class": k.name, "bound": bound})


# -- chain condition ---------------------------------------------------------

def _transpose(h: LimitHandle, code: int) -> int:
    """Code of (c, x) given the code of (x, c)."""
    out = code ^ ORDER_BIT
    if h.spec.family in ("random-tournament", "s2"):
        out ^= REL_BIT
    return out


def pair_type(h: LimitHandle, x: int, y: int) -> tuple:
    """Quantifier-free type of ``(x, y)`` in the order expansion of ``h``."""
    return (h.code(x, y) & h.mask("F*"), h.unary(x, "F*"), h.unary(y, "F*"))


def find_chain(h: LimitHandle, u: int, v: int, x: int, y: int, max_len: int,
               fanout: int = 32) -> list[int] | None:
    """Shortest chain ``x = x_0, ..., x_m = y`` (m + 1 <= max_len) with every
    consecutive pair of the same type as ``(u, v)``; ``None`` if not found."""
    target = pair_type(h, u, v)
    code, ut, vt = target
    mask = h.mask("F*")
    if pair_type(h, x, y) == target and max_len >= 2:
        return [x, y]

    def step(a, end, remaining):
        # choose z with type(a, z) == target, then continue to end
        if remaining == 1:
            return [end] if pair_type(h, a, end) == target else None
        cons = [(a, mask, _transpose(h, code))]
        if remaining == 2:
            cons.append((end, mask, code))
        start = 0
        for _ in range(fanout):
            try:
                z = h.realize(cons, unary=vt, level="F*", start=start, exclude={x, y})
            except BudgetExceeded:
                return None
            rest = step(z, end, remaining - 1)
            if rest is not None:
                return [z] + rest
            start = z + 1
        return None

    # an inner vertex is the head of one link and the tail of the next
    if h.unary(x, "F*") != ut or h.unary(y, "F*") != vt or ut != vt:
        return None
    for length in range(3, max_len + 1):
        tail = step(x, y, length - 1)
        if tail is not None:
            return [x] + tail
    return None


def check_chain_condition(h: LimitHandle, u: int, v: int, pairs, max_len: int = 4) -> PropertyReport:
    """For each ``(x, y)`` search a chain from ``x`` to ``y`` whose links all have
    the type of ``(u, v)``; links of equal type are related by an automorphism
    because every built-in limit is ultrahomogeneous."""
    if not h.code(u, v) & ORDER_BIT:
        raise ValueError("need u < v")
    chains, missing = [], []
    for x, y in pairs:
        if not h.code(x, y) & ORDER_BIT:
            raise ValueError(f"sample pair ({x}, {y}) is not increasing")
        c = find_chain(h, u, v, x, y, max_len)
        chains.append(c)
        if c is None:
            missing.append([x, y])
    report = PropertyReport("chain", FAILS if missing else HOLDS, len(chains),
                            {"pair": missing[0]} if missing else None,
                            {"u": u, "v": v, "max_len": max_len, "chains": chains})
    return report
