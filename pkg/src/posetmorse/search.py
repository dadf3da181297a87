"""Greedy search for Morse matchings, and a one-call pipeline report."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Literal

from .cellular import generator_table, skeleton_homology_scan
from .errors import PosetMorseError
from .matching import Matching, _edge_admissible, classify_poset, morse_check, morse_function
from .morse_complex import build_flow, morse_complex, morse_inequalities
from .poset import Cover, Poset, grading_info

Ordering = Literal["lexicographic", "max_degree_first"]


@dataclass(frozen=True)
class SearchPolicy:
    ordering: Ordering = "lexicographic"
    restarts: int = 16
    rng_seed: int = 0
    admissibility_filter: bool = False

    def __post_init__(self):
        if self.ordering not in ("lexicographic", "max_degree_first"):
            raise ValueError(f"unknown ordering {self.ordering!r}")
        if self.restarts < 1:
            raise ValueError("restarts must be positive")


class _OnlineOrder:
    """Topological order of H_M(X) kept up to date as covers are flipped upward.

    Reordering after an insertion follows Pearce and Kelly: only the nodes
    whose positions lie between the endpoints of the new edge move.
    """

    def __init__(self, X: Poset):
        self.succ: dict[str, set[str]] = {x: set() for x in X.elements}
        self.pred: dict[str, set[str]] = {x: set() for x in X.elements}
        for x, y in X.covers:
            self.succ[y].add(x)
            self.pred[x].add(y)
        # with every cover pointing down, top-down is a topological order
        top_down = reversed(X.linear_extension)
        self.pos = {x: i for i, x in enumerate(top_down)}

    def try_flip(self, x: str, y: str) -> bool:
        """Replace y -> x by x -> y unless that closes a cycle."""
        self.succ[y].discard(x)
        self.pred[x].discard(y)
        lo, hi = self.pos[y], self.pos[x]  # lo < hi since y -> x was an edge
        forward: list[str] = []
        seen = {y}
        stack = [y]
        while stack:
            n = stack.pop()
            forward.append(n)
            for m in self.succ[n]:
                if m == x:
                    self.succ[y].add(x)
                    self.pred[x].add(y)
                    return False
                if m not in seen and self.pos[m] < hi:
                    seen.add(m)
                    stack.append(m)
        backward: list[str] = []
        seen = {x}
        stack = [x]
        while stack:
            n = stack.pop()
            backward.append(n)
            for m in self.pred[n]:
                if m not in seen and self.pos[m] > lo:
                    seen.add(m)
                    stack.append(m)
        backward.sort(key=self.pos.__getitem__)
        forward.sort(key=self.pos.__getitem__)
        slots = sorted(self.pos[n] for n in backward + forward)
        for n, p in zip(backward + forward, slots):
            self.pos[n] = p
        self.succ[x].add(y)
        self.pred[y].add(x)
        return True


def _candidates(X: Poset, policy: SearchPolicy) -> list[Cover]:
    edges = sorted(X.covers)
    if policy.admissibility_filter:
        edges = [e for e in edges if _edge_admissible(X, *e)]
    if policy.ordering == "max_degree_first":
        h = X.heights
        edges.sort(key=lambda e: (-h[e[1]], e))
    return edges


def _greedy_pass(X: Poset, edges: list[Cover]) -> Matching:
    order = _OnlineOrder(X)
    used: set[str] = set()
    pairs = []
    for x, y in edges:
        if x in used or y in used:
            continue
        if order.try_flip(x, y):
            used.update((x, y))
            pairs.append((x, y))
    return Matching.of(pairs)


def greedy_matching(X: Poset, policy: SearchPolicy | None = None) -> Matching:
    """Best of ``policy.restarts`` greedy passes.

    Pass 0 uses the policy order as is; later passes shuffle it with a
    generator seeded once from ``rng_seed``. The winner has the fewest
    critical points, ties going to the lexicographically least pair list.
    """
    policy = policy or SearchPolicy()
    base = _candidates(X, policy)
    rng = random.Random(policy.rng_seed)
    best: tuple[int, list[Cover]] | None = None
    for k in range(policy.restarts):
        edges = base
        if k:
            edges = list(base)
            rng.shuffle(edges)
        M = _greedy_pass(X, edges)
        key = (len(X) - 2 * len(M), sorted(M.pairs))
        if best is None or key < best:
            best = key
    assert best is not None
    return Matching.of(best[1])


@dataclass
class PipelineReport:
    morse: dict
    classification: dict
    stages: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.morse["is_matching"] and self.morse["is_acyclic"]

    def to_json(self) -> dict:
        return {"morse_check": self.morse, "classification": self.classification, "stages": self.stages}


def _stage(fn, *args) -> dict:
    try:
        return {"ok": True, "result": fn(*args)}
    except PosetMorseError as exc:
        return {"ok": False, "error": type(exc).__name__, "message": str(exc)}


def verify_and_report(X: Poset, M: Matching) -> PipelineReport:
    report = morse_check(X, M)
    cls = classify_poset(X)
    out = PipelineReport(report.to_json(), cls.to_json())
    out.stages["admissibility"] = {
        "ok": not report.inadmissible_edges,
        "inadmissible_edges": [list(e) for e in report.inadmissible_edges],
    }
    if not report.is_morse:
        return out
    info = grading_info(X)
    if info.is_graded:
        out.stages["morse_function"] = _stage(lambda: morse_function(X, M).to_json())
    else:
        out.stages["morse_function"] = {"ok": False, "error": "NotGraded", "message": "poset is not graded"}

    def complex_stage():
        if not cls.cellular:
            return {"ok": False, "error": "NotCellular", "message": "poset is not cellular"}
        if report.inadmissible_edges:
            return {"ok": False, "error": "InadmissiblePair", "message": "matching uses inadmissible pairs"}
        return _stage(lambda: morse_complex(X, M, build_flow(X, M, generator_table(X, check=False))).to_json())

    out.stages["morse_complex"] = complex_stage()
    if cls.cellular:
        out.stages["skeleton_scan"] = _stage(lambda: skeleton_homology_scan(X).to_json())
    out.stages["morse_inequalities"] = _stage(lambda: morse_inequalities(X, M).to_json())
    return out
