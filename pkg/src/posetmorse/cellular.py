"""Cellular chain complex of a cellular poset.

Each element x of degree p contributes one basis vector, identified with a
chosen generator of the reduced H_{p-1} of K(Ût x). Incidence numbers come
from the Mayer-Vietoris connecting map of Ût x = (Ût x - {w}) ∪ Û w,
computed at chain level: split the generator of x into the simplices that
contain w (call it beta) and the rest, take the boundary of beta, and read
off its class against the generator of w.

Sign convention: the connecting map sends [g_x] to [boundary(beta)]. For a
degree-1 element over {w1 < w2} this yields d(x) = w1 - w2.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping

from .errors import ChainRuleViolation, NotACover, NotCellular, SolveFailure
from .homology import (
    ChainComplex,
    HomologyCoordinates,
    HomologySummary,
    Simplex,
    chain_complex,
    homology,
    order_complex,
    poset_homology,
    simplicial_boundary,
)
from .linalg import IntMatrix
from .matching import classify_poset
from .poset import Poset, grading_info, interval, skeleton


@dataclass(frozen=True)
class Generator:
    degree: int  # homological degree of the cycle, deg(x) - 1
    chain: Mapping[Simplex, int]
    complex: ChainComplex
    coords: HomologyCoordinates
    unit: int  # coordinate of ``chain`` itself, always +1 or -1

    def coordinate(self, chain: Mapping[Simplex, int]) -> int:
        try:
            vec = self.complex.chain_to_vector(self.degree, chain)
        except KeyError as exc:
            raise SolveFailure(f"chain leaves the expected subcomplex at {exc}") from None
        try:
            (a,) = self.coords.free_coordinates(vec)
        except ValueError:
            raise SolveFailure("boundary of the split chain is not a cycle") from None
        return a


@dataclass(frozen=True)
class GeneratorTable:
    poset: Poset
    degree_of: Mapping[str, int]
    generators: Mapping[str, Generator]

    def __getitem__(self, x: str) -> Generator:
        return self.generators[x]

    def flipped(self, x: str) -> GeneratorTable:
        """Same table with the generator of ``x`` negated."""
        g = self.generators[x]
        neg = replace(g, chain={s: -c for s, c in g.chain.items()}, unit=-g.unit)
        return replace(self, generators={**self.generators, x: neg})


def _generator(X: Poset, x: str, q: int) -> Generator:
    K = order_complex(interval(X, x, "lower_open"))
    C = chain_complex(K, augmented=True)
    coords = HomologyCoordinates(C, q)
    if coords.free_rank != 1 or coords.torsion:
        raise NotCellular(f"reduced H_{q} below {x} is not Z")
    vec = coords.free_generator(0)
    if next(v for v in vec if v) < 0:
        vec = [-v for v in vec]
    (unit,) = coords.free_coordinates(vec)
    return Generator(q, C.vector_to_chain(q, vec), C, coords, unit)


def generator_table(X: Poset, check: bool = True) -> GeneratorTable:
    if check:
        cls = classify_poset(X)
        if not cls.cellular:
            why = "not graded" if not cls.graded else f"sphere test fails at {list(cls.failing_elements)}"
            raise NotCellular(why)
    info = grading_info(X)
    if info.degree_of is None:
        raise NotCellular("not graded")
    deg = info.degree_of
    gens = {x: _generator(X, x, deg[x] - 1) for x in X.elements}
    return GeneratorTable(X, deg, gens)


def incidence(X: Poset, x: str, w: str, gens: GeneratorTable | None = None) -> int:
    """Incidence number ε(x, w) for a cover w ≺ x."""
    if not X.is_cover(w, x):
        raise NotACover(f"({w}, {x}) is not a cover")
    if gens is None:
        gens = generator_table(X)
    gx, gw = gens[x], gens[w]
    beta = {s: c for s, c in gx.chain.items() if w in s}
    dbeta = simplicial_boundary(beta)
    if any(w in s for s in dbeta):
        raise SolveFailure(f"boundary of the {w}-part of the generator of {x} still meets {w}")
    a = gw.coordinate(dbeta)
    if a % gw.unit:
        raise SolveFailure(f"class is not a multiple of the generator of {w}")
    return a // gw.unit


def cellular_chain_complex(X: Poset, gens: GeneratorTable | None = None, augmented: bool = False) -> ChainComplex:
    if gens is None:
        gens = generator_table(X)
    deg = gens.degree_of
    top = max(deg.values(), default=-1)
    bases: dict[int, tuple] = {p: tuple(x for x in X.elements if deg[x] == p) for p in range(top + 1)}
    diffs: dict[int, IntMatrix] = {}
    for p in range(1, top + 1):
        where = {w: i for i, w in enumerate(bases[p - 1])}
        entries = []
        for j, x in enumerate(bases[p]):
            for w in X.lower_covers(x):
                entries.append((where[w], j, incidence(X, x, w, gens)))
        diffs[p] = IntMatrix.from_entries(len(bases[p - 1]), len(bases[p]), entries)
    if augmented:
        bases[-1] = ((),)
        if 0 in bases:
            diffs[0] = IntMatrix(1, len(bases[0]), [{j: 1 for j in range(len(bases[0]))}])
    C = ChainComplex(bases, diffs, augmented)
    for p in range(1, top + 1):
        if p - 1 in diffs and (diffs[p - 1] @ diffs[p]).nnz():
            raise ChainRuleViolation(f"d_{p - 1} o d_{p} != 0")
    return C


def cellular_homology(X: Poset, reduced: bool = True) -> HomologySummary:
    return homology(cellular_chain_complex(X, augmented=reduced))


@dataclass(frozen=True)
class ScanRow:
    p: int
    r: int
    expectation: str  # "equal" for r < p, "vanish" for r > p
    ok: bool


@dataclass(frozen=True)
class SkeletonScan:
    rows: tuple[ScanRow, ...]

    @property
    def passed(self) -> bool:
        return all(row.ok for row in self.rows)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "rows": [{"p": r.p, "r": r.r, "expect": r.expectation, "ok": r.ok} for r in self.rows],
        }


def skeleton_homology_scan(X: Poset) -> SkeletonScan:
    """Low-degree homology of each skeleton matches X; high degrees vanish."""
    if not classify_poset(X).cellular:
        raise NotCellular("skeleton scan needs a cellular poset")
    full = poset_homology(X)
    n = grading_info(X).poset_height
    rows = []
    for p in range(n + 1):
        part = poset_homology(skeleton(X, p))
        for r in range(n + 1):
            if r < p:
                rows.append(ScanRow(p, r, "equal", part.group(r) == full.group(r)))
            elif r > p:
                rows.append(ScanRow(p, r, "vanish", part.group(r).trivial))
    return SkeletonScan(tuple(rows))
