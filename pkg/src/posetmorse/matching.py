"""Matchings on Hasse diagrams, the acyclicity test and homological admissibility.

Only homological notions are checked here: "acyclic" means every reduced
integer homology group of the order complex vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import DegenerateStage, NotACover, NotGraded, NotMorse
from .homology import poset_homology
from .poset import Cover, Poset, grading_info, interval


@dataclass(frozen=True)
class Matching:
    pairs: frozenset[Cover] = frozenset()

    @classmethod
    def of(cls, pairs: Iterable[Cover]) -> Matching:
        return cls(frozenset(tuple(p) for p in pairs))

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def up(self) -> dict[str, str]:
        """Lower element -> its matched upper element."""
        return {x: y for x, y in self.pairs}

    @property
    def down(self) -> dict[str, str]:
        return {y: x for x, y in self.pairs}

    def elements(self) -> set[str]:
        return {z for p in self.pairs for z in p}

    def without(self, pair: Cover) -> Matching:
        return Matching(self.pairs - {pair})


def hasse_digraph(X: Poset, M: Matching) -> dict[str, list[str]]:
    """H_M(X): matched covers point up, every other cover points down."""
    matched = M.pairs
    succ: dict[str, list[str]] = {x: [] for x in X.elements}
    for x, y in X.covers:
        if (x, y) in matched:
            succ[x].append(y)
        else:
            succ[y].append(x)
    for v in succ.values():
        v.sort()
    return succ


def find_cycle(succ: Mapping[str, list[str]], order: Iterable[str]) -> list[str] | None:
    """First directed cycle met by depth-first search in the given vertex order."""
    color: dict[str, int] = {}
    for root in order:
        if color.get(root):
            continue
        stack = [(root, iter(succ[root]))]
        path = [root]
        on_path = {root: 0}
        color[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                path.pop()
                del on_path[node]
                color[node] = 2
                continue
            state = color.get(nxt, 0)
            if state == 1:
                return path[on_path[nxt] :]
            if state == 0:
                color[nxt] = 1
                on_path[nxt] = len(path)
                path.append(nxt)
                stack.append((nxt, iter(succ[nxt])))
    return None


@lru_cache(maxsize=8192)
def _edge_admissible(X: Poset, w: str, x: str) -> bool:
    below = interval(X, x, "lower_open")
    rest = below.subposet(z for z in below.elements if z != w)
    return poset_homology(rest).is_acyclic()


def edge_admissible(X: Poset, edge: Cover) -> bool:
    """True iff Ût x - {w} is acyclic, for the cover ``edge = (w, x)``."""
    w, x = edge
    if not X.is_cover(w, x):
        raise NotACover(f"({w}, {x}) is not a cover")
    return _edge_admissible(X, w, x)


@dataclass(frozen=True)
class MorseReport:
    is_matching: bool
    is_acyclic: bool
    cycle_witness: tuple[str, ...] | None
    critical: tuple[str, ...] | None
    inadmissible_edges: tuple[Cover, ...]
    invalid_pairs: tuple[tuple[Cover, str], ...] = ()

    @property
    def is_morse(self) -> bool:
        return self.is_matching and self.is_acyclic

    @property
    def is_admissible_morse(self) -> bool:
        return self.is_morse and not self.inadmissible_edges

    def to_json(self) -> dict:
        return {
            "is_matching": self.is_matching,
            "is_acyclic": self.is_acyclic,
            "cycle_witness": list(self.cycle_witness) if self.cycle_witness else None,
            "critical": list(self.critical) if self.critical is not None else None,
            "inadmissible_edges": [list(e) for e in self.inadmissible_edges],
            "invalid_pairs": [{"pair": list(p), "reason": r} for p, r in self.invalid_pairs],
        }


def morse_check(X: Poset, M: Matching) -> MorseReport:
    invalid: list[tuple[Cover, str]] = []
    used: dict[str, Cover] = {}
    for pair in sorted(M.pairs):
        x, y = pair
        if x not in X or y not in X:
            missing = x if x not in X else y
            invalid.append((pair, f"unknown element {missing}"))
            continue
        if not X.is_cover(x, y):
            invalid.append((pair, f"{x} is not covered by {y}"))
            continue
        for z in pair:
            if z in used:
                invalid.append((pair, f"{z} already matched in {used[z]}"))
                break
        else:
            used[x] = used[y] = pair
    valid = Matching(frozenset(p for p in M.pairs if X.is_cover(*p)))
    cycle = find_cycle(hasse_digraph(X, valid), X.elements)
    is_matching = not invalid
    critical = tuple(z for z in X.elements if z not in used) if is_matching else None
    bad = tuple(p for p in sorted(valid.pairs) if not _edge_admissible(X, *p))
    return MorseReport(
        is_matching=is_matching,
        is_acyclic=cycle is None,
        cycle_witness=tuple(cycle) if cycle else None,
        critical=critical,
        inadmissible_edges=bad,
        invalid_pairs=tuple(invalid),
    )


def require_morse(X: Poset, M: Matching) -> MorseReport:
    report = morse_check(X, M)
    if not report.is_matching:
        raise NotMorse(f"not a matching: {report.invalid_pairs}")
    if not report.is_acyclic:
        raise NotMorse(f"H_M(X) has a cycle through {list(report.cycle_witness or ())}")
    return report


@dataclass(frozen=True)
class PosetClass:
    graded: bool
    cellular: bool
    homologically_h_regular: bool
    homologically_admissible: bool
    failing_elements: tuple[str, ...] = ()
    failing_edges: tuple[Cover, ...] = ()

    def to_json(self) -> dict:
        return {
            "graded": self.graded,
            "cellular": self.cellular,
            "homologically_h_regular": self.homologically_h_regular,
            "homologically_admissible": self.homologically_admissible,
            "failing_elements": list(self.failing_elements),
            "failing_edges": [list(e) for e in self.failing_edges],
        }


def sphere_below(X: Poset, x: str, q: int) -> bool:
    """Does Ût x have the reduced homology of a q-sphere (∅ counts as q = -1)?"""
    return poset_homology(interval(X, x, "lower_open")).is_sphere(q)


def classify_poset(X: Poset) -> PosetClass:
    info = grading_info(X)
    h = info.height_of
    failing = tuple(x for x in X.elements if not sphere_below(X, x, h[x] - 1))
    bad_edges = tuple(e for e in sorted(X.covers) if not _edge_admissible(X, *e))
    h_regular = not failing
    return PosetClass(
        graded=info.is_graded,
        # degree equals height on graded posets, so the sphere tests coincide
        cellular=info.is_graded and h_regular,
        homologically_h_regular=h_regular,
        homologically_admissible=not bad_edges,
        failing_elements=failing,
        failing_edges=bad_edges,
    )


def path_stats(X: Poset, M: Matching) -> dict[str, int]:
    """l_M(x): length of the longest Morse path x_0, y_0, x_1, ..., x_r from x."""
    require_morse(X, M)
    up = M.up
    memo: dict[str, int] = {}

    def l(x: str) -> int:
        if x in memo:
            return memo[x]
        y = up.get(x)
        best = 0
        if y is not None:
            for nxt in X.lower_covers(y):
                if nxt != x:
                    best = max(best, 1 + l(nxt))
        memo[x] = best
        return best

    return {x: l(x) for x in X.elements}


@dataclass(frozen=True)
class MorseFunction:
    values: Mapping[str, Fraction]

    def violations(self, X: Poset) -> list[str]:
        """Elements breaking either counting condition of a Morse function."""
        f = self.values
        bad = []
        for x in X.elements:
            ups = sum(1 for y in X.upper_covers(x) if f[y] <= f[x])
            downs = sum(1 for z in X.lower_covers(x) if f[z] >= f[x])
            if ups > 1 or downs > 1:
                bad.append(x)
        return bad

    def critical(self, X: Poset) -> tuple[str, ...]:
        f = self.values
        return tuple(
            x
            for x in X.elements
            if not any(f[y] <= f[x] for y in X.upper_covers(x)) and not any(f[z] >= f[x] for z in X.lower_covers(x))
        )

    def to_json(self) -> dict:
        return {x: str(v) for x, v in sorted(self.values.items())}


def morse_function(X: Poset, M: Matching) -> MorseFunction:
    """Skeleton-by-skeleton construction of a Morse function with C_f = C_M."""
    info = grading_info(X)
    if not info.is_graded:
        raise NotGraded("the Morse function construction needs a graded poset")
    lm = path_stats(X, M)
    deg = info.degree_of
    assert deg is not None
    down = M.down
    layers: dict[int, list[str]] = {}
    for x in X.elements:
        layers.setdefault(deg[x], []).append(x)
    f: dict[str, Fraction] = {x: Fraction(0) for x in layers.get(0, ())}
    for r in range(1, info.poset_height + 1):
        prev = layers.get(r - 1)
        if not prev:
            raise DegenerateStage(f"no elements of degree {r - 1} below degree {r}")
        L = max(lm[x] for x in prev)
        nxt: dict[str, Fraction] = {}
        for x, v in f.items():
            nxt[x] = v + Fraction(lm[x], L + 1) if deg[x] == r - 1 else v
        for x in layers.get(r, ()):
            w = down.get(x)
            nxt[x] = Fraction(r) if w is None else f[w] + Fraction(lm[w], L + 1)
        f = nxt
    return MorseFunction(f)


@dataclass(frozen=True)
class ImplicationCheck:
    hypothesis_holds: bool
    violations: tuple = field(default_factory=tuple)

    @property
    def holds(self) -> bool:
        """The implication: hypothesis false, or no counterexample found."""
        return not self.hypothesis_holds or not self.violations


def height_step_check(X: Poset, cls: PosetClass | None = None) -> ImplicationCheck:
    """Admissible covers in a homologically h-regular poset raise height by exactly 1."""
    cls = cls or classify_poset(X)
    h = X.heights
    bad = tuple(
        (x, y) for x, y in sorted(X.covers) if _edge_admissible(X, x, y) and h[x] != h[y] - 1
    )
    return ImplicationCheck(cls.homologically_h_regular, bad)


def reachable_max_height(X: Poset, M: Matching) -> dict[str, tuple[int, str]]:
    """For each x, the highest element reachable from x in H_M(X) (x itself included)."""
    succ = hasse_digraph(X, M)
    h = X.heights
    best: dict[str, tuple[int, str]] = {}
    state: dict[str, int] = {}

    def visit(x: str) -> tuple[int, str]:
        if x in best:
            return best[x]
        if state.get(x) == 1:
            raise NotMorse(f"H_M(X) has a cycle through {x}")
        state[x] = 1
        b = (h[x], x)
        for y in succ[x]:
            c = visit(y)
            if c[0] > b[0]:
                b = c
        best[x] = b
        return b

    for x in X.elements:
        visit(x)
    return best


def path_rise_check(X: Poset, M: Matching, cls: PosetClass | None = None) -> ImplicationCheck:
    """Directed paths of H_M(X) climb at most one height level overall."""
    report = morse_check(X, M)
    cls = cls or classify_poset(X)
    hypothesis = report.is_admissible_morse and cls.homologically_h_regular
    if not report.is_morse:
        return ImplicationCheck(False, ())
    h = X.heights
    reach = reachable_max_height(X, M)
    bad = tuple((x, reach[x][1]) for x in X.elements if reach[x][0] > h[x] + 1)
    return ImplicationCheck(hypothesis, bad)
