"""Finite relational structures over binary/unary signatures.

Vertices are the integers ``0..n-1``.  Binary relations are sets of ordered
pairs (symmetric kinds hold both orientations); unary relations are vertex
sets.  Embeddings preserve *and reflect* every relation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import kernels

GRAPH_EDGE = "graph-edge"
ARC = "arc"
TOURNAMENT_ARC = "tournament-arc"
LINEAR_ORDER = "linear-order"
UNARY_PART = "unary-part"

BINARY_KINDS = (GRAPH_EDGE, ARC, TOURNAMENT_ARC, LINEAR_ORDER)
KINDS = BINARY_KINDS + (UNARY_PART,)


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int
    kind: str
    # unary symbols sharing a non-empty family must partition the vertices
    family: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown relation kind {self.kind!r}")
        want = 1 if self.kind == UNARY_PART else 2
        if self.arity != want:
            raise ValueError(f"{self.kind} symbols have arity {want}, got {self.arity}")


@dataclass(frozen=True)
class Signature:
    symbols: tuple[Symbol, ...] = ()

    def __post_init__(self):
        names = [s.name for s in self.symbols]
        if len(set(names)) != len(names):
            raise ValueError("symbol names must be unique")
        if sum(s.kind == LINEAR_ORDER for s in self.symbols) > 1:
            raise ValueError("at most one linear-order symbol per signature")

    @classmethod
    def of(cls, *specs) -> "Signature":
        """``Signature.of(("E", GRAPH_EDGE), ("P", UNARY_PART, "parts"))``."""
        syms = []
        for spec in specs:
            name, kind, *rest = spec
            syms.append(Symbol(name, 1 if kind == UNARY_PART else 2, kind, *rest))
        return cls(tuple(syms))

    @cached_property
    def binary(self) -> tuple[Symbol, ...]:
        return tuple(s for s in self.symbols if s.arity == 2)

    @cached_property
    def unary(self) -> tuple[Symbol, ...]:
        return tuple(s for s in self.symbols if s.arity == 1)

    @cached_property
    def order_symbol(self) -> Symbol | None:
        return next((s for s in self.symbols if s.kind == LINEAR_ORDER), None)

    def __getitem__(self, name: str) -> Symbol:
        for s in self.symbols:
            if s.name == name:
                return s
        raise KeyError(name)

    def expand(self, *specs) -> "Signature":
        return Signature(self.symbols + Signature.of(*specs).symbols)

    def to_json(self) -> list:
        out = []
        for s in self.symbols:
            d = {"name": s.name, "arity": s.arity, "kind": s.kind}
            if s.family:
                d["family"] = s.family
            out.append(d)
        return out


@dataclass(frozen=True)
class FinStructure:
    sig: Signature
    n: int
    _rels: tuple[frozenset, ...] = field(repr=False)

    @classmethod
    def build(cls, sig: Signature, n: int, rels: Mapping[str, Iterable] | None = None,
              symmetrize: bool = True) -> "FinStructure":
        """Make a structure; graph-edge pairs are symmetrized unless told not to."""
        rels = dict(rels or {})
        unknown = set(rels) - {s.name for s in sig.symbols}
        if unknown:
            raise KeyError(f"relations for undeclared symbols: {sorted(unknown)}")
        tables = []
        for s in sig.symbols:
            raw = rels.get(s.name, ())
            if s.arity == 1:
                t = frozenset(int(v) for v in raw)
                bad = [v for v in t if not 0 <= v < n]
            else:
                t = {(int(a), int(b)) for a, b in raw}
                if symmetrize and s.kind == GRAPH_EDGE:
                    t |= {(b, a) for a, b in t}
                t = frozenset(t)
                bad = [p for p in t if not (0 <= p[0] < n and 0 <= p[1] < n)]
            if bad:
                raise ValueError(f"{s.name}: vertex out of range in {sorted(bad)[:3]}")
            tables.append(t)
        return cls(sig, n, tuple(tables))

    def rel(self, name: str) -> frozenset:
        for s, t in zip(self.sig.symbols, self._rels):
            if s.name == name:
                return t
        raise KeyError(name)

    @property
    def rels(self) -> dict[str, frozenset]:
        return {s.name: t for s, t in zip(self.sig.symbols, self._rels)}

    def holds(self, name: str, *t: int) -> bool:
        table = self.rel(name)
        return (t[0] in table) if len(t) == 1 else (t in table)

    @cached_property
    def pair_codes(self) -> list[int]:
        """Flat ``n*n`` list; bit k set when binary symbol k holds on (i, j)."""
        n = self.n
        codes = [0] * (n * n)
        for k, s in enumerate(self.sig.binary):
            bit = 1 << k
            for a, b in self.rel(s.name):
                codes[a * n + b] |= bit
        return codes

    @cached_property
    def unary_codes(self) -> list[int]:
        codes = [0] * self.n
        for k, s in enumerate(self.sig.unary):
            for v in self.rel(s.name):
                codes[v] |= 1 << k
        return codes

    def to_json(self) -> dict:
        rels = {}
        for s in self.sig.symbols:
            t = self.rel(s.name)
            if s.arity == 1:
                rels[s.name] = sorted(t)
            elif s.kind == GRAPH_EDGE:
                rels[s.name] = [list(p) for p in sorted(p for p in t if p[0] < p[1])]
            else:
                rels[s.name] = [list(p) for p in sorted(t)]
        return {"sig": self.sig.to_json(), "n": self.n, "rels": rels}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def __repr__(self):
        return f"FinStructure(n={self.n}, {self.dumps()})"


def from_json(data: dict | str) -> FinStructure:
    if isinstance(data, str):
        data = json.loads(data)
    syms = tuple(Symbol(d["name"], d["arity"], d["kind"], d.get("family")) for d in data["sig"])
    return FinStructure.build(Signature(syms), data["n"], data.get("rels", {}))


def to_dot(s: FinStructure, name: str = "S") -> str:
    """DOT text for the graph/arc symbols of ``s``; stable for equal input."""
    directed = any(x.kind in (ARC, TOURNAMENT_ARC) for x in s.sig.binary)
    lines = [f"{'digraph' if directed else 'graph'} {name} {{"]
    for v in range(s.n):
        labels = [u.name for u in s.sig.unary if v in s.rel(u.name)]
        extra = f' [label="{v}:{",".join(labels)}"]' if labels else ""
        lines.append(f"  {v}{extra};")
    for sym in s.sig.binary:
        if sym.kind == LINEAR_ORDER:
            continue
        t = s.rel(sym.name)
        if sym.kind == GRAPH_EDGE:
            pairs = sorted(p for p in t if p[0] < p[1])
            op = "->" if directed else "--"
            attr = ' [dir=none]' if directed else ""
        else:
            pairs = sorted(t)
            op, attr = "->", ""
        for a, b in pairs:
            lines.append(f"  {a} {op} {b}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Violation:
    constraint: str
    symbol: str
    witness: tuple

    def __str__(self):
        return f"{self.symbol}: {self.constraint} violated at {self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    violation: Violation | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None

    def __bool__(self):
        return self.ok


def validate(s: FinStructure) -> ValidationReport:
    """Check every kind constraint; report the first violation found."""

    def bad(constraint, sym, *w):
        return ValidationReport(Violation(constraint, sym.name, tuple(w)))

    n = s.n
    for sym in s.sig.binary:
        t = s.rel(sym.name)
        for a, b in sorted(t):
            if a == b:
                return bad("irreflexive", sym, a, b)
        if sym.kind == GRAPH_EDGE:
            for a, b in sorted(t):
                if (b, a) not in t:
                    return bad("symmetric", sym, a, b)
        elif sym.kind in (ARC, TOURNAMENT_ARC, LINEAR_ORDER):
            for a, b in sorted(t):
                if a < b and (b, a) in t:
                    return bad("antisymmetric", sym, a, b)
            if sym.kind != ARC:
                for a, b in combinations(range(n), 2):
                    if (a, b) not in t and (b, a) not in t:
                        return bad("total", sym, a, b)
            if sym.kind == LINEAR_ORDER:
                succ = {}
                for a, b in t:
                    succ.setdefault(a, set()).add(b)
                for a, b in sorted(t):
                    for c in sorted(succ.get(b, ())):
                        if (a, c) not in t:
                            return bad("transitive", sym, a, b, c)
    families: dict[str, list[Symbol]] = {}
    for sym in s.sig.unary:
        if sym.family:
            families.setdefault(sym.family, []).append(sym)
    for fam, syms in families.items():
        for v in range(n):
            hits = [x.name for x in syms if v in s.rel(x.name)]
            if len(hits) != 1:
                return ValidationReport(Violation("partition covers each vertex once", fam, (v, *hits)))
    return ValidationReport()


@dataclass(frozen=True)
class Embedding:
    dom: FinStructure
    cod: FinStructure
    map: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.map[v]

    def image(self) -> frozenset:
        return frozenset(self.map)

    def compose(self, other: "Embedding") -> "Embedding":
        """``self ∘ other``: first ``other``, then ``self``."""
        return Embedding(other.dom, self.cod, tuple(self.map[v] for v in other.map))

    def to_json(self) -> dict:
        return {"dom": self.dom.to_json(), "cod": self.cod.to_json(), "map": list(self.map)}


def _check_signatures(a: FinStructure, b: FinStructure):
    if a.sig != b.sig:
        raise ValueError("structures have different signatures")


def is_embedding(f: Sequence[int], a: FinStructure, b: FinStructure) -> bool:
    _check_signatures(a, b)
    f = tuple(f)
    if len(f) != a.n:
        raise ValueError(f"map has {len(f)} entries, domain has {a.n} vertices")
    if any(not 0 <= w < b.n for w in f):
        raise ValueError("map value outside codomain")
    if len(set(f)) != len(f):
        return False
    au, bu = a.unary_codes, b.unary_codes
    if any(au[i] != bu[f[i]] for i in range(a.n)):
        return False
    ac, bc, na, nb = a.pair_codes, b.pair_codes, a.n, b.n
    return all(ac[i * na + j] == bc[f[i] * nb + f[j]]
               for i in range(na) for j in range(na) if i != j)


def enumerate_embeddings(a: FinStructure, b: FinStructure, limit: int | None = None) -> list[Embedding]:
    """All (or the first ``limit``) embeddings, lexicographic in the image tuple."""
    _check_signatures(a, b)
    if a.n > b.n:
        return []
    maps = kernels.embeddings(a.n, a.pair_codes, a.unary_codes, b.n, b.pair_codes,
                              b.unary_codes, -1 if limit is None else limit, False)
    return [Embedding(a, b, m) for m in maps]


def induced_substructure(b: FinStructure, vertices: Iterable[int]) -> tuple[FinStructure, Embedding]:
    """Substructure on ``vertices`` (renumbered in increasing order) and its inclusion."""
    verts = sorted(set(vertices))
    if any(not 0 <= v < b.n for v in verts):
        raise ValueError("vertex outside structure")
    pos = {v: i for i, v in enumerate(verts)}
    rels = {}
    for s in b.sig.symbols:
        t = b.rel(s.name)
        if s.arity == 1:
            rels[s.name] = [pos[v] for v in t if v in pos]
        else:
            rels[s.name] = [(pos[x], pos[y]) for x, y in t if x in pos and y in pos]
    sub = FinStructure.build(b.sig, len(verts), rels, symmetrize=False)
    return sub, Embedding(sub, b, tuple(verts))


def are_isomorphic(a: FinStructure, b: FinStructure) -> Embedding | None:
    _check_signatures(a, b)
    if a.n != b.n or sorted(a.unary_codes) != sorted(b.unary_codes):
        return None
    if any(len(x) != len(y) for x, y in zip(a._rels, b._rels)):
        return None
    maps = kernels.embeddings(a.n, a.pair_codes, a.unary_codes, b.n, b.pair_codes,
                              b.unary_codes, 1, True)
    return Embedding(a, b, maps[0]) if maps else None


def canonical_key(s: FinStructure) -> tuple:
    """Brute-force canonical form: least code table over all relabelings."""
    from itertools import permutations

    n = s.n
    pc, uc = s.pair_codes, s.unary_codes
    best = None
    for perm in permutations(range(n)):
        # perm[new] = old
        key = (tuple(uc[perm[i]] for i in range(n)),
               tuple(pc[perm[i] * n + perm[j]] for i in range(n) for j in range(n)))
        if best is None or key < best:
            best = key
    return (n,) + (best or ((), ()))


# common small structures

GRAPH = Signature.of(("E", GRAPH_EDGE))


def graph(n: int, edges: Iterable[tuple[int, int]] = ()) -> FinStructure:
    return FinStructure.build(GRAPH, n, {"E": edges})


def cycle(n: int) -> FinStructure:
    return graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> FinStructure:
    return graph(n, combinations(range(n), 2))


def path(n: int) -> FinStructure:
    return graph(n, [(i, i + 1) for i in range(n - 1)])
