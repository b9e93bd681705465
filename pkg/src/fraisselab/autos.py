"""Partial automorphisms, back-and-forth extension and named automorphisms.

Levels
    ``"F"``        preserve the base language (edges, arcs; nothing for a pure set,
                   the order for the rationals).
    ``"F*"``       preserve the expansion: base language, carrier order, part labels.
    ``"reverse"``  preserve the base language and reverse the carrier order.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import kernels as K
from .limits import ORDER_BIT, BudgetExceeded, LimitError, LimitHandle

LEVELS = ("F", "F*", "reverse")
KINDS = ("order-reversal", "shift", "part-swap", "seeded-back-and-forth")

_SCAN_OFFSET = 97


class AutoError(LimitError):
    pass


def _level_mask(h: LimitHandle, level: str) -> int:
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}")
    if level == "reverse":
        return h.mask("F*") if h.spec.family != "rationals" else ORDER_BIT
    return h.mask(level)


# the base language determines the order here, so nothing reverses it
_NO_REVERSAL = ("rationals", "s2")


def _check_level(h: LimitHandle, level: str):
    if level == "reverse" and h.spec.family in _NO_REVERSAL:
        raise AutoError(f"{h.spec.name} has no order-reversing automorphism")


def _target_code(h: LimitHandle, level: str, code: int) -> int:
    """Code an image pair must carry, given the code of the source pair."""
    if level == "reverse":
        return code ^ ORDER_BIT
    return code


def _unary_level(level: str) -> str:
    return "F*" if level == "F*" else "F"


@dataclass(frozen=True)
class PartialAuto:
    limit: LimitHandle
    mapping: Mapping[int, int]
    level: str = "F"

    def __post_init__(self):
        object.__setattr__(self, "mapping", dict(self.mapping))
        if self.level not in LEVELS:
            raise ValueError(f"unknown level {self.level!r}")
        _check_level(self.limit, self.level)
        if len(set(self.mapping.values())) != len(self.mapping):
            raise AutoError("map is not injective")

    def __call__(self, v: int) -> int:
        return self.mapping[v]

    @property
    def domain(self) -> frozenset:
        return frozenset(self.mapping)

    @property
    def range(self) -> frozenset:
        return frozenset(self.mapping.values())

    def violation(self):
        """First pair of domain points whose relations are not carried over, or ``None``."""
        h, lvl = self.limit, self.level
        m = _level_mask(h, lvl)
        ul = _unary_level(lvl)
        items = sorted(self.mapping.items())
        for a, b in items:
            if h.unary(a, ul) != h.unary(b, ul):
                return (a,)
        for i, (a, b) in enumerate(items):
            for c, d in items[i + 1:]:
                if h.code(b, d) & m != _target_code(h, lvl, h.code(a, c)) & m:
                    return (a, c)
        return None

    def check(self) -> bool:
        return self.violation() is None

    def inverse(self) -> "PartialAuto":
        return PartialAuto(self.limit, {b: a for a, b in self.mapping.items()}, self.level)

    def compose(self, other: "PartialAuto") -> "PartialAuto":
        """``self ∘ other`` on the points where both are defined."""
        if other.limit is not self.limit:
            raise AutoError("partial maps live on different limits")
        mp = {a: self.mapping[b] for a, b in other.mapping.items() if b in self.mapping}
        return PartialAuto(self.limit, mp, _compose_level(self.level, other.level))

    def fixed_points(self) -> list[int]:
        return sorted(v for v, w in self.mapping.items() if v == w)

    def to_json(self) -> dict:
        return {"level": self.level, "map": {str(k): v for k, v in sorted(self.mapping.items())}}


def _compose_level(a: str, b: str) -> str:
    if "reverse" in (a, b):
        return "F*" if a == b else "reverse"
    return "F*" if a == b == "F*" else "F"


def _candidate_for(h: LimitHandle, mapping: Mapping[int, int], level: str, v: int,
                   taken: Iterable[int], forbid: Iterable[int] = (), start: int = 0) -> int:
    """A vertex ``w`` such that ``mapping + {v: w}`` stays a partial isomorphism."""
    m = _level_mask(h, level)
    cons = [(b, m, _target_code(h, level, h.code(v, a)) & m) for a, b in sorted(mapping.items())]
    ul = _unary_level(level)
    unary = h.unary(v, ul)
    excl = set(taken) | set(forbid)
    try:
        return h.realize(cons, unary=unary, level=ul, start=start, exclude=excl)
    except BudgetExceeded:
        # finite parts can put every witness below the offset
        if start == 0:
            raise
        return h.realize(cons, unary=unary, level=ul, exclude=excl, stop=start)


def backforth_extend(p: PartialAuto, want_domain: Iterable[int] = (), want_range: Iterable[int] = (),
                     fixed_point_free: bool = False, seed: int | None = None) -> PartialAuto:
    """Extend ``p`` forth over ``want_domain`` and back over ``want_range``.

    Points are handled in increasing order, forth before back.  With a
    ``seed`` every scan starts at a seeded offset below 97, so different
    seeds give different extensions.
    """
    if not p.check():
        raise AutoError(f"not a partial isomorphism at level {p.level}: {p.violation()}")
    h, lvl = p.limit, p.level
    fwd = dict(p.mapping)
    for v in sorted(set(want_domain) - fwd.keys()):
        start = 0 if seed is None else K.hash3(seed, v, 1) % _SCAN_OFFSET
        fwd[v] = _candidate_for(h, fwd, lvl, v, fwd.values(), {v} if fixed_point_free else (), start)
    inv = {b: a for a, b in fwd.items()}
    back_level = lvl
    for w in sorted(set(want_range) - inv.keys()):
        start = 0 if seed is None else K.hash3(seed, w, 2) % _SCAN_OFFSET
        inv[w] = _candidate_for(h, inv, back_level, w, inv.values(), {w} if fixed_point_free else (), start)
    return PartialAuto(h, {a: b for b, a in inv.items()}, lvl)


class AutoHandle:
    """An automorphism of a limit, realized on demand.

    Closed-form kinds (``order-reversal``, ``shift``, ``part-swap``) compute
    images directly.  ``seeded-back-and-forth`` grows a partial isomorphism
    one query at a time; an answered query never changes.
    """

    def __init__(self, limit: LimitHandle, kind: str, level: str = "F", seed: int = 0,
                 fixed_point_free: bool = False, translation: int | None = None):
        if kind not in KINDS:
            raise ValueError(f"unknown automorphism kind {kind!r}")
        self.limit = limit
        self.kind = kind
        self.level = level
        self.seed = seed
        self.fixed_point_free = fixed_point_free
        self.translation = translation
        self._fwd: dict[int, int] = {}
        self._inv: dict[int, int] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"AutoHandle({self.kind}, {self.limit.spec.name}, level={self.level}, realized={len(self._fwd)})"

    @property
    def max_fixed_points(self) -> int | None:
        if self.kind == "order-reversal":
            return 1
        if self.kind in ("shift", "part-swap") or self.fixed_point_free:
            return 0
        return None

    def _closed(self, v: int, sign: int) -> int:
        key = K.key_of(v)
        if self.kind == "order-reversal":
            return K.index_of(-key)
        step = 1 if self.kind == "shift" else self.translation
        return K.index_of(key + sign * step * K.ONE)

    def image(self, v: int) -> int:
        if v in self._fwd:
            return self._fwd[v]
        with self._lock:
            if v not in self._fwd:
                if self.kind == "seeded-back-and-forth":
                    w = self._forth(v)
                else:
                    w = self._closed(v, 1)
                self._record(v, w)
        return self._fwd[v]

    def preimage(self, w: int) -> int:
        if w in self._inv:
            return self._inv[w]
        with self._lock:
            if w not in self._inv:
                if self.kind == "seeded-back-and-forth":
                    v = self._back(w)
                else:
                    v = self._closed(w, -1)
                self._record(v, w)
        return self._inv[w]

    def __call__(self, v: int) -> int:
        return self.image(v)

    def _record(self, v: int, w: int):
        self.limit._touch(max(v, w))
        self._fwd[v] = w
        self._inv[w] = v

    def _forth(self, v: int) -> int:
        start = K.hash3(self.seed, v, 1) % _SCAN_OFFSET
        forbid = {v} if self.fixed_point_free else set()
        return _candidate_for(self.limit, self._fwd, self.level, v, self._inv, forbid, start)

    def _back(self, w: int) -> int:
        start = K.hash3(self.seed, w, 2) % _SCAN_OFFSET
        forbid = {w} if self.fixed_point_free else set()
        return _candidate_for(self.limit, self._inv, self.level, w, self._fwd, forbid, start)

    def realized(self) -> dict[int, int]:
        return dict(self._fwd)

    def restrict(self, vertices: Iterable[int]) -> PartialAuto:
        return PartialAuto(self.limit, {v: self.image(v) for v in vertices}, self.level)

    def as_partial(self) -> PartialAuto:
        return PartialAuto(self.limit, dict(self._fwd), self.level)

    def certify(self) -> dict:
        """Partial-isomorphism and fixed-point records over every realized pair."""
        p = self.as_partial()
        fixed = p.fixed_points()
        bound = self.max_fixed_points
        return {"kind": self.kind, "level": self.level, "realized": len(self._fwd),
                "partial_isomorphism": p.check(), "fixed_points": fixed,
                "max_fixed_points": bound,
                "fixed_point_bound_ok": bound is None or len(fixed) <= bound}


_CLOSED_FAMILIES = {
    "order-reversal": ("pure-set", "random-graph"),
    "shift": ("pure-set", "rationals", "random-graph", "random-tournament"),
    "part-swap": ("s2",),
}


def canonical_auto(h: LimitHandle, kind: str, seed: int = 0) -> AutoHandle:
    """Closed-form automorphisms of the carrier.

    order-reversal is ``q -> -q`` (reverses the order, fixes only ``0``);
    shift is ``q -> q + 1``; part-swap on S(2) is ``q -> q + t`` for a seeded
    odd integer ``t``, which keeps the order and exchanges the two parts.
    """
    fams = _CLOSED_FAMILIES.get(kind)
    if fams is None:
        raise ValueError(f"{kind!r} is not a closed-form kind")
    if h.spec.family not in fams:
        raise AutoError(f"{kind} is not an automorphism of {h.spec.name}")
    if kind == "order-reversal":
        return AutoHandle(h, kind, "reverse")
    if kind == "shift":
        return AutoHandle(h, kind, "F*", fixed_point_free=True)
    t = 2 * (K.mix64(seed) % 8) + 1
    return AutoHandle(h, kind, "F", fixed_point_free=True, translation=t)


def seeded_auto(h: LimitHandle, seed: int, level: str = "F", fixed_point_free: bool = False) -> AutoHandle:
    _check_level(h, level)
    return AutoHandle(h, "seeded-back-and-forth", level, seed, fixed_point_free)


def betweenness(x, y, z) -> bool:
    """``x`` lies strictly between ``y`` and ``z``."""
    x, y, z = Fraction(x), Fraction(y), Fraction(z)
    if len({x, y, z}) < 3:
        raise ValueError("betweenness needs three distinct points")
    return y < x < z or z < x < y


def preserves_parts(g, sample: Iterable[int]) -> str:
    """Classify ``g`` on ``sample`` as preserves-each, swaps or mixed."""
    h = g.limit
    if h.spec.family != "s2":
        raise AutoError("part classification needs S(2)")
    image = g.image if isinstance(g, AutoHandle) else g
    same = swapped = False
    for v in sample:
        if h.part(image(v)) == h.part(v):
            same = True
        else:
            swapped = True
    if same and swapped:
        return "mixed"
    return "swaps" if swapped else "preserves-each"


def identity(h: LimitHandle, vertices: Iterable[int], level: str = "F*") -> PartialAuto:
    return PartialAuto(h, {v: v for v in vertices}, level)
