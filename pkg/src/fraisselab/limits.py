"""Seeded, lazily extended countable homogeneous structures.

Every family lives on the dyadic rationals enumerated by
:func:`fraisselab.kernels.key_of`; vertex ``i`` carries the exact coordinate
``key_of(i) / 2**40``.  For the hash families (pure set, rationals, random
graph, random tournament, S(2)) the relation between two vertices is a pure
function of their coordinates and the seed, so stages are nested by
construction and ``relation(i, j)`` never needs history.  The random graph
is invariant under ``q -> -q`` and ``q -> q + 1``; the random tournament
under ``q -> q + 1``; S(2) parts flip under ``q -> q + 1``.

Henson graphs are grown greedily in index order (triangle-free by
construction) and therefore keep adjacency history.  Composite graphs
(disjoint unions of cliques) are computed from vertex coordinates.
"""

from __future__ import annotations

import random
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import isqrt
from typing import Callable, Iterable, Sequence

from . import kernels as K
from .relstruct import (
    GRAPH_EDGE, LINEAR_ORDER, TOURNAMENT_ARC, UNARY_PART, FinStructure, Signature,
)
from .reports import FAILS, HOLDS, PropertyReport

HASH_FAMILIES = {
    "pure-set": K.FAM_PURE,
    "rationals": K.FAM_RATIONALS,
    "random-graph": K.FAM_GRAPH,
    "random-tournament": K.FAM_TOURNAMENT,
    "s2": K.FAM_S2,
}
COMPOSITES = ("In-Kinf", "Iinf-Kn", "Iinf-Kinf")
FAMILIES = tuple(HASH_FAMILIES) + ("henson",) + COMPOSITES
EXPANSIONS = ("none", "order", "order+parts")

ORDER_BIT = 1
REL_BIT = 2

DEFAULT_BUDGET = 10 ** 5
DEFAULT_SEARCH_BUDGET = 1 << 23
HENSON_SEARCH_CAP = 1 << 12


class LimitError(Exception):
    pass


class Unsatisfiable(LimitError):
    """The demanded one-point type is outside the age of the limit."""

    def __init__(self, axiom: str):
        super().__init__(f"unsatisfiable: {axiom}")
        self.axiom = axiom


class BudgetExceeded(LimitError):
    pass


_NAME = re.compile(r"^([A-Za-z0-9-]+?)(?:\((\d+)\))?$")


@dataclass(frozen=True)
class LimitSpec:
    family: str
    seed: int = 0
    expansion: str = "none"
    param: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.expansion not in EXPANSIONS:
            raise ValueError(f"unknown expansion {self.expansion!r}")
        if self.family == "henson" and (self.param is None or self.param < 3):
            raise ValueError("henson(k) requires k >= 3")
        if self.family in ("In-Kinf", "Iinf-Kn") and (self.param is None or self.param < 1):
            raise ValueError(f"{self.family}(n) requires n >= 1")
        if self.expansion == "order+parts" and self.family not in ("s2",) + COMPOSITES:
            raise ValueError("part expansions exist only for s2 and composite families")

    @classmethod
    def parse(cls, name: str, seed: int = 0, expansion: str = "none") -> "LimitSpec":
        m = _NAME.match(name.strip())
        if not m:
            raise ValueError(f"cannot parse structure name {name!r}")
        fam, arg = m.group(1), m.group(2)
        return cls(fam, seed, expansion, int(arg) if arg else None)

    @property
    def name(self) -> str:
        return self.family if self.param is None else f"{self.family}({self.param})"


@dataclass(frozen=True)
class Relation:
    edge: bool | None = None
    arc: int | None = None          # +1: i -> j, -1: j -> i
    less: bool | None = None        # i < j in the carrier order
    same_part: bool | None = None


@dataclass(frozen=True)
class ExtensionRequest:
    adjacent_to: frozenset = frozenset()
    nonadjacent_to: frozenset = frozenset()
    arc_from: frozenset = frozenset()   # u -> x
    arc_to: frozenset = frozenset()     # x -> u
    # ("between", lo, hi) | ("below", v) | ("above", v) | ("below-all",) | ("above-all",)
    order_slot: tuple | None = None
    part: int | None = None
    exclude: frozenset = frozenset()

    def __post_init__(self):
        for name in ("adjacent_to", "nonadjacent_to", "arc_from", "arc_to", "exclude"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        groups = [self.adjacent_to, self.nonadjacent_to, self.arc_from, self.arc_to]
        seen = set()
        for g in groups:
            if seen & g:
                raise ValueError("constraint vertex sets must be disjoint")
            seen |= g

    def referenced(self) -> frozenset:
        refs = set(self.adjacent_to | self.nonadjacent_to | self.arc_from | self.arc_to)
        if self.order_slot and self.order_slot[0] in ("between", "below", "above"):
            refs.update(self.order_slot[1:])
        return frozenset(refs)


def _unpair(m: int) -> tuple[int, int]:
    w = (isqrt(8 * m + 1) - 1) // 2
    t = w * (w + 1) // 2
    j = m - t
    return w - j, j


def _pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


class LimitHandle:
    """Lazily materialized realization of a :class:`LimitSpec`.

    Single writer: stage growth holds ``self._lock``; readers of already
    materialized vertices need no lock.
    """

    def __init__(self, spec: LimitSpec, budget: int = DEFAULT_BUDGET,
                 search_budget: int = DEFAULT_SEARCH_BUDGET):
        self.spec = spec
        self.budget = budget
        self.search_budget = search_budget
        self.fam = HASH_FAMILIES.get(spec.family)
        self.seed = spec.seed & ((1 << 64) - 1)
        self._size = 0
        self._lock = threading.Lock()
        self._adj: list[int] = []   # henson adjacency bitmasks

    def __repr__(self):
        return f"LimitHandle({self.spec.name}, seed={self.spec.seed}, stage_size={self._size})"

    # -- vertex data --------------------------------------------------------

    @property
    def stage_size(self) -> int:
        return self._size

    @property
    def is_composite(self) -> bool:
        return self.spec.family in COMPOSITES

    def _touch(self, v: int):
        if v >= self._size:
            with self._lock:
                if v >= self._size:
                    if self.spec.family == "henson":
                        self._grow_henson(v + 1)
                    self._size = v + 1

    def key(self, v: int) -> int:
        return K.key_of(v)

    def coord(self, v: int) -> Fraction:
        return Fraction(K.key_of(v), K.ONE)

    def vertex_at(self, coord) -> int:
        """Vertex whose carrier coordinate is the dyadic ``coord``."""
        q = Fraction(coord)
        if q.denominator & (q.denominator - 1):
            raise ValueError("carrier coordinates are dyadic rationals")
        return K.index_of(q.numerator * K.ONE // q.denominator)

    def part(self, v: int) -> int:
        if self.spec.family == "s2":
            return K.s2_part(self.seed, K.key_of(v))
        if self.is_composite:
            return self.composite_view(v)[0]
        raise LimitError(f"{self.spec.name} has no parts")

    def composite_view(self, v: int) -> tuple[int, int]:
        fam, n = self.spec.family, self.spec.param
        if fam == "In-Kinf":
            return v % n, v // n
        if fam == "Iinf-Kn":
            return v // n, v % n
        if fam == "Iinf-Kinf":
            return _unpair(v)
        raise LimitError(f"{self.spec.name} is not a composite family")

    def composite_vertex(self, part: int, inner: int) -> int:
        fam, n = self.spec.family, self.spec.param
        if fam == "In-Kinf":
            if not 0 <= part < n:
                raise ValueError("part index out of range")
            return inner * n + part
        if fam == "Iinf-Kn":
            if not 0 <= inner < n:
                raise ValueError("inner index out of range")
            return part * n + inner
        if fam == "Iinf-Kinf":
            return _pair(part, inner)
        raise LimitError(f"{self.spec.name} is not a composite family")

    def _lex(self, v: int) -> tuple:
        p, i = self.composite_view(v)
        fam = self.spec.family
        if fam == "In-Kinf":
            return (p, K.key_of(i))
        if fam == "Iinf-Kn":
            return (K.key_of(p), i)
        return (K.key_of(p), K.key_of(i))

    def metadata(self, v: int) -> dict:
        meta = {"coord": _frac_str(self.coord(v))}
        if self.spec.family == "s2":
            meta["part"] = self.part(v)
        if self.is_composite:
            meta["coords"] = list(self.composite_view(v))
        return meta

    # -- henson growth ------------------------------------------------------

    def _grow_henson(self, upto: int):
        # vertex j wishes for each earlier vertex with probability 1/2 and
        # accepts wishes in index order unless a K_k would close
        k = self.spec.param
        adj = self._adj
        base = self.seed ^ 0x4E5C0000000000AB
        while len(adj) < upto:
            j = len(adj)
            wish = random.Random(K.mix64(base ^ K.mix64(j))).getrandbits(j) if j else 0
            cur = 0
            if k == 3:
                # a wish is blocked once any accepted vertex is adjacent to it
                while wish:
                    low = wish & -wish
                    cur |= low
                    wish &= ~(low | adj[low.bit_length() - 1])
            while wish:
                low = wish & -wish
                wish ^= low
                if not _has_clique(cur & adj[low.bit_length() - 1], adj, k - 2):
                    cur |= low
            bit = 1 << j
            rest = cur
            while rest:
                low = rest & -rest
                adj[low.bit_length() - 1] |= bit
                rest ^= low
            adj.append(cur)

    # -- relations ----------------------------------------------------------

    def code(self, x: int, c: int) -> int:
        """Pair code of (x, c): bit 0 order, bit 1 edge / arc x->c / same part."""
        if self.fam is not None:
            kx, kc = K.key_of(x), K.key_of(c)
            return (1 if kx < kc else 0) | (K.rel_bit(self.fam, self.seed, kx, kc) << 1)
        if self.spec.family == "henson":
            self._touch(max(x, c))
            lt = 1 if K.key_of(x) < K.key_of(c) else 0
            return lt | ((self._adj[x] >> c & 1) << 1)
        lx, lc = self._lex(x), self._lex(c)
        same = self.composite_view(x)[0] == self.composite_view(c)[0]
        return (1 if lx < lc else 0) | ((1 if same else 0) << 1)

    def mask(self, level: str) -> int:
        """Code bits that are part of the language at ``level`` ("F" or "F*")."""
        if level not in ("F", "F*"):
            raise ValueError(f"unknown level {level!r}")
        fam = self.spec.family
        if level == "F*":
            return ORDER_BIT | (0 if fam in ("pure-set", "rationals") else REL_BIT)
        if fam == "pure-set":
            return 0
        if fam == "rationals":
            return ORDER_BIT
        return REL_BIT

    def unary(self, x: int, level: str):
        """Unary type of ``x`` at ``level`` (part labels named in F* only)."""
        if level != "F*":
            return None
        fam = self.spec.family
        if fam == "s2":
            return self.part(x)
        if fam == "In-Kinf":
            return self.composite_view(x)[0]
        if fam == "Iinf-Kn":
            return self.composite_view(x)[1]
        return None

    def relation(self, i: int, j: int) -> Relation:
        if i == j:
            raise ValueError("relation() needs distinct vertices")
        self._touch(max(i, j))
        code = self.code(i, j)
        less = bool(code & ORDER_BIT)
        rel = bool(code & REL_BIT)
        fam = self.spec.family
        if fam in ("random-graph", "henson"):
            return Relation(edge=rel, less=less)
        if fam in ("random-tournament", "s2"):
            same = self.part(i) == self.part(j) if fam == "s2" else None
            return Relation(arc=1 if rel else -1, less=less, same_part=same)
        if self.is_composite:
            return Relation(edge=rel, less=less, same_part=rel)
        return Relation(less=less)

    # -- stages -------------------------------------------------------------

    @property
    def signature(self) -> Signature:
        fam, exp = self.spec.family, self.spec.expansion
        specs = []
        if fam in ("random-graph", "henson") + COMPOSITES:
            specs.append(("E", GRAPH_EDGE))
        elif fam in ("random-tournament", "s2"):
            specs.append(("T", TOURNAMENT_ARC))
        if fam == "rationals" or exp != "none":
            specs.append(("<", LINEAR_ORDER))
        if exp == "order+parts":
            specs.extend(("P%d" % p, UNARY_PART, "parts") for p in range(self._label_count()))
        return Signature.of(*specs)

    def _label_count(self) -> int:
        fam = self.spec.family
        if fam == "s2":
            return 2
        if fam in ("In-Kinf", "Iinf-Kn"):
            return self.spec.param
        raise LimitError(f"{self.spec.name} has no finite part labelling")

    def stage(self, n: int) -> FinStructure:
        if n > self.budget:
            raise BudgetExceeded(f"stage {n} exceeds budget {self.budget}")
        if n:
            self._touch(n - 1)
        sig = self.signature
        names = {s.kind: s.name for s in sig.binary}
        rels: dict[str, list] = {s.name: [] for s in sig.symbols}
        for i, j in combinations(range(n), 2):
            code = self.code(i, j)
            if GRAPH_EDGE in names and code & REL_BIT:
                rels["E"] += [(i, j), (j, i)]
            if TOURNAMENT_ARC in names:
                rels["T"].append((i, j) if code & REL_BIT else (j, i))
            if LINEAR_ORDER in names:
                rels["<"].append((i, j) if code & ORDER_BIT else (j, i))
        if self.spec.expansion == "order+parts":
            for v in range(n):
                label = self.part(v) if self.spec.family in ("s2", "In-Kinf") else self.composite_view(v)[1]
                rels["P%d" % label].append(v)
        return FinStructure.build(sig, n, rels, symmetrize=False)

    def stage_json(self, n: int) -> dict:
        return {"structure": self.spec.name, "seed": self.spec.seed,
                "expansion": self.spec.expansion, "stage": self.stage(n).to_json(),
                "vertices": [self.metadata(v) for v in range(n)]}

    # -- search -------------------------------------------------------------

    def realize(self, constraints: Sequence[tuple[int, int, int]], unary=None, level: str = "F*",
                start: int = 0, exclude: Iterable[int] = (), accept: Callable[[int], bool] | None = None,
                stop: int | None = None) -> int:
        """First vertex ``x >= start`` with ``code(x, c) & mask == want`` for all
        constraints ``(c, mask, want)``, unary type ``unary`` at ``level``,
        not in ``exclude`` and passing ``accept``.  Deterministic.
        """
        stop = self.search_budget if stop is None else min(stop, self.search_budget)
        excl = set(exclude) | {c for c, _, _ in constraints}
        cons = list(constraints)
        for c, _, _ in cons:
            self._touch(c)
        part_want = -1
        if unary is not None and self.spec.family == "s2" and level == "F*":
            part_want = unary
        i = start
        while True:
            found = self._scan(cons, unary, level, part_want, i, stop)
            if found < 0:
                cap = stop if self.fam is not None or self.is_composite else min(stop, HENSON_SEARCH_CAP)
                raise BudgetExceeded(
                    f"no witness below index {cap} for {len(cons)} constraints on {self.spec.name}")
            if found not in excl and (accept is None or accept(found)):
                self._touch(found)
                return found
            i = found + 1

    def _scan(self, cons, unary, level, part_want, start, stop) -> int:
        if self.fam is not None:
            ckeys = [K.key_of(c) for c, _, _ in cons]
            return K.scan(self.fam, self.seed, start, stop, ckeys,
                          [m for _, m, _ in cons], [w for _, _, w in cons], part_want)
        if self.is_composite:
            return self._scan_composite(cons, unary, level, start, stop)
        # greedy growth costs O(n^2); searches stop at a smaller index
        stop = min(stop, HENSON_SEARCH_CAP)
        for x in range(start, stop):
            if x >= len(self._adj):
                self._touch(min(stop - 1, max(x, 2 * len(self._adj), 64)))
            if any(c == x for c, _, _ in cons):
                continue
            if all(self.code(x, c) & m == w for c, m, w in cons):
                return x
        return -1

    def _scan_composite(self, cons, unary, level, start, stop) -> int:
        want_part = None
        for c, m, w in cons:
            if m & REL_BIT and w & REL_BIT:
                want_part = self.composite_view(c)[0]
                break
        if unary is not None and level == "F*" and self.spec.family == "In-Kinf":
            if want_part is not None and want_part != unary:
                return -1
            want_part = unary

        def ok(x):
            if any(c == x for c, _, _ in cons):
                return False
            if unary is not None and self.unary(x, level) != unary:
                return False
            return all(self.code(x, c) & m == w for c, m, w in cons)

        if want_part is None:
            for x in range(start, stop):
                if ok(x):
                    return x
            return -1
        fam, n = self.spec.family, self.spec.param
        if fam == "Iinf-Kn":
            for inner in range(n):
                x = self.composite_vertex(want_part, inner)
                if start <= x < stop and ok(x):
                    return x
            return -1
        inner = 0
        while True:
            x = self.composite_vertex(want_part, inner)
            if x >= stop:
                return -1
            if x >= start and ok(x):
                return x
            inner += 1

    def find_extension(self, req: ExtensionRequest) -> int:
        """A vertex meeting ``req``; raises :class:`Unsatisfiable` for demands
        outside the age and :class:`BudgetExceeded` when the search cap is hit."""
        for v in req.referenced() | req.exclude:
            self._touch(v)
        self._check_satisfiable(req)
        cons = []
        for u in sorted(req.adjacent_to):
            cons.append((u, REL_BIT, REL_BIT))
        for u in sorted(req.nonadjacent_to):
            cons.append((u, REL_BIT, 0))
        for u in sorted(req.arc_from):
            cons.append((u, REL_BIT, 0))
        for u in sorted(req.arc_to):
            cons.append((u, REL_BIT, REL_BIT))
        slot = req.order_slot
        if slot:
            if slot[0] == "between":
                cons += [(slot[1], ORDER_BIT, 0), (slot[2], ORDER_BIT, ORDER_BIT)]
            elif slot[0] in ("below", "above"):
                cons.append((slot[1], ORDER_BIT, ORDER_BIT if slot[0] == "below" else 0))
            elif slot[0] in ("below-all", "above-all"):
                ext = (min if slot[0] == "below-all" else max)(
                    range(max(self._size, 1)), key=self._order_key)
                want = ORDER_BIT if slot[0] == "below-all" else 0
                cons.append((ext, ORDER_BIT, want))
            else:
                raise ValueError(f"unknown order slot {slot[0]!r}")
        unary = None
        if req.part is not None:
            if self.spec.family not in ("s2", "In-Kinf"):
                raise ValueError(f"{self.spec.name} has no part labels")
            unary = req.part
        return self.realize(cons, unary=unary, level="F*", exclude=req.exclude)

    def _order_key(self, v: int):
        return self._lex(v) if self.is_composite else K.key_of(v)

    def _check_satisfiable(self, req: ExtensionRequest):
        fam = self.spec.family
        graphlike = fam in ("random-graph", "henson") + COMPOSITES
        if req.adjacent_to and not graphlike:
            raise Unsatisfiable(f"{fam} has no edges")
        if (req.arc_from or req.arc_to) and fam not in ("random-tournament", "s2"):
            raise Unsatisfiable(f"{fam} has no arcs")
        if req.order_slot and req.order_slot[0] == "between":
            lo, hi = req.order_slot[1:]
            if not self._order_key(lo) < self._order_key(hi):
                raise Unsatisfiable("order slot is empty: lower end not below upper end")
        if req.part is not None and req.part not in range(self._label_count()):
            raise Unsatisfiable(f"no part labelled {req.part}")
        if fam == "henson":
            k = self.spec.param
            adj = sorted(req.adjacent_to)
            self._touch(max(adj, default=0))
            mask = sum(1 << v for v in adj)
            if _has_clique(mask, self._adj, k - 1):
                raise Unsatisfiable(f"K{k}-free: adjacent_to contains a K{k - 1}")
        if self.is_composite:
            parts = {self.composite_view(u)[0] for u in req.adjacent_to}
            if len(parts) > 1:
                raise Unsatisfiable("adjacent to vertices of two different cliques")
            if parts & {self.composite_view(u)[0] for u in req.nonadjacent_to}:
                raise Unsatisfiable("adjacent and non-adjacent to one clique")
            if fam == "Iinf-Kn" and parts:
                p = parts.pop()
                taken = {u for u in req.adjacent_to | req.exclude if self.composite_view(u)[0] == p}
                if len(taken) >= self.spec.param:
                    raise Unsatisfiable(f"cliques have exactly {self.spec.param} vertices")
            if fam == "In-Kinf" and not req.adjacent_to:
                if len({self.composite_view(u)[0] for u in req.nonadjacent_to}) >= self.spec.param:
                    raise Unsatisfiable(f"only {self.spec.param} cliques")
            if req.part is not None and fam == "In-Kinf" and parts and req.part not in parts:
                raise Unsatisfiable("requested part differs from the adjacent clique")

    # -- certification -------------------------------------------------------

    def verify_extension_axioms(self, demand_size: int = 2, within: int | None = None,
                                base: int = 12) -> PropertyReport:
        """Check one-point extension demands over subsets of the first ``base``
        vertices; every witness must lie below index ``within``."""
        if demand_size > 3:
            raise ValueError("demand_size must be <= 3")
        within = within or self.search_budget
        fam = self.spec.family
        failures = []
        checked = 0
        for S in combinations(range(base), demand_size):
            for req in self._demands(S):
                checked += 1
                try:
                    w = self.find_extension(req)
                except (Unsatisfiable, BudgetExceeded) as exc:
                    failures.append({"subset": list(S), "demand": _req_json(req), "error": str(exc)})
                    continue
                if w >= within:
                    failures.append({"subset": list(S), "demand": _req_json(req), "witness": w})
        report = PropertyReport("extension", FAILS if failures else HOLDS, checked)
        if failures:
            report.counterexample = failures[0]
            report.details["failures"] = failures
        report.details["family"] = fam
        return report

    def _demands(self, S) -> Iterable[ExtensionRequest]:
        fam = self.spec.family
        S = tuple(S)
        if fam in ("random-graph", "henson"):
            for bits in product((0, 1), repeat=len(S)):
                adj = frozenset(s for s, b in zip(S, bits) if b)
                if fam == "henson":
                    mask = sum(1 << v for v in adj)
                    self._touch(max(S, default=0))
                    if _has_clique(mask, self._adj, self.spec.param - 1):
                        continue
                yield ExtensionRequest(adjacent_to=adj, nonadjacent_to=frozenset(S) - adj)
        elif fam == "random-tournament":
            for bits in product((0, 1), repeat=len(S)):
                frm = frozenset(s for s, b in zip(S, bits) if b)
                yield ExtensionRequest(arc_from=frm, arc_to=frozenset(S) - frm)
        elif fam in ("rationals", "pure-set", "s2"):
            ordered = sorted(S, key=self._order_key)
            slots = [("below", ordered[0])] if ordered else [None]
            slots += [("between", a, b) for a, b in zip(ordered, ordered[1:])]
            if ordered:
                slots.append(("above", ordered[-1]))
            parts = (0, 1) if fam == "s2" else (None,)
            for slot, part in product(slots, parts):
                yield self._slot_request(slot, part, S)
        else:
            parts = sorted({self.composite_view(s)[0] for s in S})
            for p in parts:
                rep = next(s for s in S if self.composite_view(s)[0] == p)
                if fam == "Iinf-Kn" and sum(self.composite_view(s)[0] == p for s in S) >= self.spec.param:
                    continue
                yield ExtensionRequest(adjacent_to={rep}, exclude=frozenset(S))
            if fam != "In-Kinf" or len(parts) < self.spec.param:
                yield ExtensionRequest(nonadjacent_to=frozenset(S))

    def _slot_request(self, slot, part, S) -> ExtensionRequest:
        if slot is None:
            return ExtensionRequest(part=part, exclude=frozenset(S))
        return ExtensionRequest(order_slot=slot, part=part, exclude=frozenset(S))


def _has_clique(mask: int, adj: list[int], size: int) -> bool:
    """Whether the vertex set ``mask`` contains a clique of ``size`` vertices."""
    if size <= 0:
        return True
    while mask:
        v = mask.bit_length() - 1
        mask &= ~(1 << v)
        if size == 1 or _has_clique(mask & adj[v], adj, size - 1):
            return True
    return False


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _req_json(req: ExtensionRequest) -> dict:
    out = {k: sorted(getattr(req, k)) for k in ("adjacent_to", "nonadjacent_to", "arc_from", "arc_to")
           if getattr(req, k)}
    if req.order_slot:
        out["order_slot"] = list(req.order_slot)
    if req.part is not None:
        out["part"] = req.part
    return out


def s2_arc(x: tuple, y: tuple) -> tuple:
    """Arc between two labelled rationals ``(q, part)`` of S(2).

    Same part: the larger points to the smaller; different parts: reversed.
    Returns the arc as ``(tail, head)`` of the inputs.
    """
    (qx, px), (qy, py) = x, y
    qx, qy = Fraction(qx), Fraction(qy)
    if qx == qy:
        raise ValueError("S(2) vertices need distinct rationals")
    lo, hi = (x, y) if qx < qy else (y, x)
    return (hi, lo) if px == py else (lo, hi)
