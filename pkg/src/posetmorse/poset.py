"""Finite posets given by their Hasse diagrams.

Element identifiers are sorted lexicographically when a poset is built; that
order is the tie-break for every deterministic choice made downstream.
The strict order relation is kept as one bitmask per element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, Mapping, Sequence

from .errors import (
    CoverCycle,
    DuplicateCover,
    DuplicateElement,
    NotGraded,
    RedundantCover,
    UnknownElement,
)

Cover = tuple[str, str]
IntervalKind = Literal["lower_closed", "lower_open", "upper_closed", "upper_open", "link"]


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """Immutable finite poset.

    ``elements`` is the sorted identifier tuple, ``covers`` the set of pairs
    ``(x, y)`` with ``x`` covered by ``y``.
    """

    def __init__(self, elements: tuple[str, ...], covers: frozenset[Cover], up: list[int], down: list[int]):
        # use build_poset; this constructor trusts its arguments
        self.elements = elements
        self.covers = covers
        self.index = {x: i for i, x in enumerate(elements)}
        self._up = up
        self._down = down
        uc: dict[str, list[str]] = {x: [] for x in elements}
        lc: dict[str, list[str]] = {x: [] for x in elements}
        for x, y in sorted(covers):
            uc[x].append(y)
            lc[y].append(x)
        self._upper_covers = {x: tuple(v) for x, v in uc.items()}
        self._lower_covers = {x: tuple(v) for x, v in lc.items()}

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.index

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((self.elements, self.covers))

    def __repr__(self) -> str:
        return f"Poset({len(self.elements)} elements, {len(self.covers)} covers)"

    def _check(self, x: str) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownElement(x) from None

    def less(self, x: str, y: str) -> bool:
        """Strict order ``x < y``."""
        return bool(self._up[self._check(x)] >> self._check(y) & 1)

    def leq(self, x: str, y: str) -> bool:
        return x == y or self.less(x, y)

    def comparable(self, x: str, y: str) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def is_cover(self, x: str, y: str) -> bool:
        return (x, y) in self.covers

    def upper_covers(self, x: str) -> tuple[str, ...]:
        self._check(x)
        return self._upper_covers[x]

    def lower_covers(self, x: str) -> tuple[str, ...]:
        self._check(x)
        return self._lower_covers[x]

    def up_mask(self, x: str) -> int:
        return self._up[self._check(x)]

    def down_mask(self, x: str) -> int:
        return self._down[self._check(x)]

    def from_mask(self, mask: int) -> list[str]:
        return [self.elements[i] for i in _bits(mask)]

    def above(self, x: str) -> list[str]:
        return self.from_mask(self.up_mask(x))

    def below(self, x: str) -> list[str]:
        return self.from_mask(self.down_mask(x))

    @cached_property
    def minimal(self) -> tuple[str, ...]:
        return tuple(x for x in self.elements if not self._lower_covers[x])

    @cached_property
    def maximal(self) -> tuple[str, ...]:
        return tuple(x for x in self.elements if not self._upper_covers[x])

    @cached_property
    def heights(self) -> dict[str, int]:
        h: dict[str, int] = {}
        for x in self.linear_extension:
            h[x] = max((h[w] + 1 for w in self._lower_covers[x]), default=0)
        return h

    @cached_property
    def linear_extension(self) -> tuple[str, ...]:
        """Elements bottom-up; ties by identifier."""
        return tuple(sorted(self.elements, key=lambda x: (self._down[self.index[x]].bit_count(), x)))

    def subposet(self, subset: Iterable[str]) -> Poset:
        """Induced subposet with covers recomputed inside ``subset``."""
        keep = set(subset)
        for x in keep:
            self._check(x)
        mask = 0
        for x in keep:
            mask |= 1 << self.index[x]
        covers = set()
        for x in keep:
            ups = self._up[self.index[x]] & mask
            for j in _bits(ups):
                # j is a cover of x in the subposet iff nothing in ups lies strictly below j
                if not (self._down[j] & ups):
                    covers.add((x, self.elements[j]))
        return _from_trusted(keep, covers)


def _closure(elements: tuple[str, ...], covers: Iterable[Cover]) -> tuple[list[int], list[int]]:
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for x, y in covers:
        succ[index[x]].append(index[y])
        indeg[index[y]] += 1
    order = []
    stack = [i for i in range(n) if indeg[i] == 0]
    while stack:
        i = stack.pop()
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                stack.append(j)
    if len(order) != n:
        stuck = sorted(elements[i] for i in range(n) if indeg[i] > 0)
        raise CoverCycle(f"covers contain a directed cycle through {stuck}")
    up = [0] * n
    for i in reversed(order):
        m = 0
        for j in succ[i]:
            m |= up[j] | (1 << j)
        up[i] = m
    down = [0] * n
    for i in range(n):
        for j in _bits(up[i]):
            down[j] |= 1 << i
    return up, down


def _from_trusted(elements: Iterable[str], covers: Iterable[Cover]) -> Poset:
    elems = tuple(sorted(elements))
    covers = frozenset(covers)
    up, down = _closure(elems, covers)
    return Poset(elems, covers, up, down)


def build_poset(elements: Sequence[str] | None, covers: Iterable[Cover]) -> Poset:
    """Validate a cover list and build the poset.

    ``elements=None`` takes the elements from the covers.
    """
    covers = [tuple(c) for c in covers]
    if elements is None:
        elements = sorted({x for c in covers for x in c})
    seen: set[str] = set()
    for x in elements:
        if x in seen:
            raise DuplicateElement(x)
        if not isinstance(x, str) or not x or any(ch.isspace() for ch in x) or "<" in x:
            raise ValueError(f"invalid element identifier {x!r}")
        seen.add(x)
    pairs: set[Cover] = set()
    for c in covers:
        if len(c) != 2:
            raise ValueError(f"cover {c!r} is not a pair")
        x, y = c
        for z in (x, y):
            if z not in seen:
                raise UnknownElement(z)
        if x == y:
            raise CoverCycle(f"reflexive cover ({x}, {y})")
        if (x, y) in pairs:
            raise DuplicateCover(f"({x}, {y})")
        pairs.add((x, y))
    elems = tuple(sorted(seen))
    up, down = _closure(elems, pairs)
    index = {x: i for i, x in enumerate(elems)}
    for x, y in sorted(pairs):
        i, j = index[x], index[y]
        # a strict intermediate z has x < z and z < y
        if up[i] & down[j]:
            z = elems[next(iter(_bits(up[i] & down[j])))]
            raise RedundantCover(f"({x}, {y}) is implied through {z}")
    return Poset(elems, frozenset(pairs), up, down)


def empty_poset() -> Poset:
    return build_poset([], [])


def antichain(names: Sequence[str]) -> Poset:
    return build_poset(list(names), [])


def chain(names: Sequence[str]) -> Poset:
    return build_poset(list(names), list(zip(names, names[1:])))


def interval(X: Poset, x: str, kind: IntervalKind) -> Poset:
    """Û x, Ût x, F̂ x, F̂t x or the link Ĉt x = Ût x ⊛ F̂t x."""
    i = X._check(x)
    down, up = X._down[i], X._up[i]
    if kind == "lower_closed":
        mask = down | (1 << i)
    elif kind == "lower_open":
        mask = down
    elif kind == "upper_closed":
        mask = up | (1 << i)
    elif kind == "upper_open":
        mask = up
    elif kind == "link":
        mask = down | up
    else:
        raise ValueError(f"unknown interval kind {kind!r}")
    return X.subposet(X.from_mask(mask))


@dataclass(frozen=True)
class GradingReport:
    height_of: Mapping[str, int]
    poset_height: int
    is_graded: bool
    is_homogeneous: bool
    degree_of: Mapping[str, int] | None


def grading_info(X: Poset) -> GradingReport:
    h = X.heights
    graded = all(h[y] == h[x] + 1 for x, y in X.covers)
    top = max(h.values(), default=-1)
    homogeneous = graded and all(h[m] == top for m in X.maximal)
    return GradingReport(
        height_of=dict(h),
        poset_height=top,
        is_graded=graded,
        is_homogeneous=homogeneous,
        degree_of=dict(h) if graded else None,
    )


def degrees(X: Poset) -> dict[str, int]:
    info = grading_info(X)
    if info.degree_of is None:
        raise NotGraded("poset is not graded")
    return dict(info.degree_of)


def join(X: Poset, Y: Poset) -> Poset:
    """X ⊛ Y: every element of X below every element of Y.

    Identifiers must be disjoint.
    """
    clash = set(X.elements) & set(Y.elements)
    if clash:
        raise DuplicateElement(f"join operands share identifiers {sorted(clash)}")
    covers = set(X.covers) | set(Y.covers)
    covers |= {(a, b) for a in X.maximal for b in Y.minimal}
    return _from_trusted(X.elements + Y.elements, covers)


def fresh_name(X: Poset, base: str = "*") -> str:
    name, k = base, 0
    while name in X:
        k += 1
        name = f"{base}{k}"
    return name


def cone(X: Poset, apex: str | None = None) -> Poset:
    apex = apex or fresh_name(X)
    return join(X, build_poset([apex], []))


def opposite(X: Poset) -> Poset:
    return _from_trusted(X.elements, {(y, x) for x, y in X.covers})


def skeleton(X: Poset, p: int) -> Poset:
    deg = degrees(X)
    return X.subposet(x for x in X.elements if deg[x] <= p)


def relabel(X: Poset, mapping: Mapping[str, str] | None = None, prefix: str = "") -> Poset:
    if mapping is None:
        mapping = {x: prefix + x for x in X.elements}
    return build_poset([mapping[x] for x in X.elements], [(mapping[a], mapping[b]) for a, b in X.covers])


def poset_algebra(op: str, *args, p: int | None = None) -> Poset:
    """Dispatch ``join``, ``cone``, ``opposite`` or ``skeleton`` by name."""
    if op == "join":
        return join(*args)
    if op == "cone":
        return cone(*args)
    if op == "opposite":
        return opposite(*args)
    if op == "skeleton":
        if p is None:
            raise ValueError("skeleton needs p")
        return skeleton(args[0], p)
    raise ValueError(f"unknown poset operation {op!r}")


def beat_points(X: Poset) -> list[str]:
    """Elements whose strict up-set has a minimum or strict down-set a maximum.

    In a finite poset that is the same as having exactly one upper cover or
    exactly one lower cover.
    """
    return [x for x in X.elements if len(X.upper_covers(x)) == 1 or len(X.lower_covers(x)) == 1]


def beat_point_reduce(X: Poset) -> Poset:
    while True:
        beats = beat_points(X)
        if not beats:
            return X
        X = X.subposet(x for x in X.elements if x != beats[0])
