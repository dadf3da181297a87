"""Discrete gradient flow and the Morse complex of a cellular poset."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .cellular import GeneratorTable, cellular_chain_complex, generator_table
from .errors import BasisDegenerate, ChainRuleViolation, InadmissiblePair, SolveFailure, StabilizationOverrun
from .homology import ChainComplex, HomologySummary, homology, poset_homology
from .linalg import IntMatrix, rank, smith_normal_form, solve_integer
from .matching import Matching, morse_check, require_morse
from .poset import Poset


@dataclass(frozen=True)
class FlowData:
    complex: ChainComplex
    V: Mapping[int, IntMatrix]  # degree p -> matrix C_p -> C_{p+1}
    phi: Mapping[int, IntMatrix]
    phi_stable: Mapping[int, IntMatrix]
    N_stable: Mapping[int, int]


def _check_admissible(X: Poset, M: Matching) -> None:
    report = require_morse(X, M)
    if report.inadmissible_edges:
        raise InadmissiblePair(f"pairs {list(report.inadmissible_edges)} are not homologically admissible")


def build_flow(X: Poset, M: Matching, gens: GeneratorTable | None = None) -> FlowData:
    if gens is None:
        gens = generator_table(X)
    _check_admissible(X, M)
    C = cellular_chain_complex(X, gens)
    deg = gens.degree_of
    where = {x: i for p in C.degrees for i, x in enumerate(C.bases[p])}
    top = max(C.degrees, default=-1)

    V: dict[int, IntMatrix] = {}
    for p in range(top):
        entries = []
        for x, y in M:
            if deg[x] == p:
                eps = C.d(p + 1)[where[x], where[y]]
                entries.append((where[y], where[x], -eps))
        V[p] = IntMatrix.from_entries(C.rank(p + 1), C.rank(p), entries)
    if top >= 0:
        V[top] = IntMatrix.zeros(0, C.rank(top))

    phi: dict[int, IntMatrix] = {}
    stable: dict[int, IntMatrix] = {}
    N: dict[int, int] = {}
    bound = len(X) ** 2
    for p in range(top + 1):
        f = IntMatrix.identity(C.rank(p))
        if p + 1 <= top:
            f = f + C.d(p + 1) @ V[p]
        if p >= 1:
            f = f + V[p - 1] @ C.d(p)
        phi[p] = f
        P, k = IntMatrix.identity(C.rank(p)), 0
        while True:
            Q = f @ P
            if Q == P:
                break
            P, k = Q, k + 1
            if k > bound:
                raise StabilizationOverrun(f"flow in degree {p} did not stabilize within {bound} steps")
        stable[p] = P
        N[p] = k
    return FlowData(C, V, phi, stable, N)


@dataclass(frozen=True)
class MorseComplexResult:
    critical_basis: Mapping[int, tuple[str, ...]]
    differential: Mapping[int, IntMatrix]
    complex: ChainComplex
    homology: HomologySummary
    morse_counts: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "critical_basis": {str(p): list(v) for p, v in sorted(self.critical_basis.items())},
            "differential": {
                str(p): [list(t) for t in d.entries()] for p, d in sorted(self.differential.items())
            },
            "homology": self.homology.to_json(),
            "morse_counts": list(self.morse_counts),
        }


def morse_complex(X: Poset, M: Matching, flow: FlowData | None = None) -> MorseComplexResult:
    """Complex of flow-invariant chains, in the basis Φ(x) for critical x."""
    if flow is None:
        flow = build_flow(X, M)
    C = flow.complex
    critical = set(morse_check(X, M).critical or ())
    degrees = C.degrees
    crit: dict[int, tuple[str, ...]] = {p: tuple(x for x in C.bases[p] if x in critical) for p in degrees}
    images: dict[int, IntMatrix] = {}
    for p in degrees:
        cols = [C.bases[p].index(x) for x in crit[p]]
        B = flow.phi_stable[p].select_columns(cols)
        if rank(B) != len(cols):
            raise BasisDegenerate(f"stable flow images of critical cells in degree {p} are dependent")
        images[p] = B

    diffs: dict[int, IntMatrix] = {}
    for p in degrees:
        if p - 1 not in crit:
            continue
        target = C.d(p) @ images[p]
        lower = images[p - 1]
        snf = smith_normal_form(lower)
        entries = []
        for j in range(target.ncols):
            try:
                y = solve_integer(lower, target.column(j), snf)
            except SolveFailure:
                raise SolveFailure(f"boundary of critical cell {crit[p][j]} is not in the Morse complex") from None
            entries.extend((i, j, v) for i, v in enumerate(y) if v)
        diffs[p] = IntMatrix.from_entries(len(crit[p - 1]), len(crit[p]), entries)

    bases: dict[int, tuple] = dict(crit)
    full = dict(diffs)
    if 0 in images:
        bases[-1] = ((),)
        B0 = images[0]
        full[0] = IntMatrix(1, B0.ncols, [{j: sum(B0.column(j)) for j in range(B0.ncols)}])
    MC = ChainComplex(bases, full, augmented=0 in images)
    for p in diffs:
        if p - 1 in full and (full[p - 1] @ full[p]).nnz():
            raise ChainRuleViolation(f"Morse differential d_{p - 1} o d_{p} != 0")
    counts = tuple(len(crit[p]) for p in degrees if p >= 0)
    return MorseComplexResult(crit, diffs, MC, homology(MC), counts)


@dataclass(frozen=True)
class InequalityReport:
    m: tuple[int, ...]
    b: tuple[int, ...]
    torsion: Mapping[int, tuple[int, ...]]
    weak: bool
    strong: bool
    euler: bool

    @property
    def perfect(self) -> bool:
        return self.m == self.b

    @property
    def passed(self) -> bool:
        return self.weak and self.strong and self.euler

    def to_json(self) -> dict:
        return {
            "m": list(self.m),
            "b": list(self.b),
            "torsion": {str(p): list(t) for p, t in sorted(self.torsion.items()) if t},
            "weak": self.weak,
            "strong": self.strong,
            "euler": self.euler,
            "perfect": self.perfect,
        }


def morse_inequalities(X: Poset, M: Matching) -> InequalityReport:
    """Weak and strong Morse inequalities and the Euler equality.

    Critical points are counted by height and compared with the unreduced
    Betti numbers of the order complex.
    """
    report = require_morse(X, M)
    h = X.heights
    top = max(h.values(), default=-1)
    m = [0] * (top + 1)
    for x in report.critical or ():
        m[h[x]] += 1
    H = poset_homology(X, reduced=False)
    b = [H.betti(p) for p in range(top + 1)]
    weak = all(mi >= bi for mi, bi in zip(m, b))
    strong = all(
        sum((-1) ** (k - i) * (m[i] - b[i]) for i in range(k + 1)) >= 0 for k in range(top + 1)
    )
    euler = sum((-1) ** p * (m[p] - b[p]) for p in range(top + 1)) == 0
    torsion = {p: H.torsion(p) for p in range(top + 1)}
    return InequalityReport(tuple(m), tuple(b), torsion, weak, strong, euler)
