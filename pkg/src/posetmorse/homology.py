"""Simplicial complexes, chain complexes and integer homology.

A simplex is a tuple of vertex names in sorted order; the boundary sign of
a face is (-1)**i for the omitted position i. Degree -1 of an augmented
complex has the single basis label ``()`` (the empty simplex).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

from .errors import EmptyComplex, NotAComplex, NotInfiniteCyclic
from .linalg import IntMatrix, invariant_factors, smith_normal_form
from .poset import Poset, build_poset

Simplex = tuple[str, ...]
Chain = dict[Hashable, int]


class SimplicialComplex:
    """Finite abstract simplicial complex given by its facets."""

    def __init__(self, vertices: Iterable[str] | None, facets: Iterable[Iterable[str]]):
        cells = set()
        for f in facets:
            f = tuple(f)
            if not f:
                continue
            if len(set(f)) != len(f):
                raise ValueError(f"facet {f!r} repeats a vertex")
            cells.add(tuple(sorted(f)))
        used = {v for f in cells for v in f}
        verts = set(vertices) if vertices is not None else set()
        if not used <= verts and vertices is not None:
            raise ValueError(f"facets use undeclared vertices {sorted(used - verts)}")
        verts |= used
        # vertices not in any listed facet are facets of their own
        cells |= {(v,) for v in verts - used}
        by_size = sorted(cells, key=len, reverse=True)
        maximal: list[Simplex] = []
        for f in by_size:
            fs = set(f)
            if not any(fs <= set(g) for g in maximal if len(g) > len(f)):
                maximal.append(f)
        self.vertices: tuple[str, ...] = tuple(sorted(verts))
        self.facets: tuple[Simplex, ...] = tuple(sorted(maximal))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self.facets == other.facets

    def __hash__(self) -> int:
        return hash((self.vertices, self.facets))

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self.facets)} facets, dim {self.dimension})"

    @property
    def dimension(self) -> int:
        return max((len(f) - 1 for f in self.facets), default=-1)

    @cached_property
    def _all(self) -> dict[int, tuple[Simplex, ...]]:
        found: set[Simplex] = set()
        for f in self.facets:
            for k in range(1, len(f) + 1):
                found.update(combinations(f, k))
        out: dict[int, list[Simplex]] = {}
        for s in found:
            out.setdefault(len(s) - 1, []).append(s)
        return {p: tuple(sorted(v)) for p, v in out.items()}

    def simplices(self, p: int) -> tuple[Simplex, ...]:
        """p-simplices in lexicographic order."""
        if p == -1:
            return ((),)
        return self._all.get(p, ())

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.simplices(p)) for p in range(self.dimension + 1))


def order_complex(X: Poset) -> SimplicialComplex:
    """Complex of nonempty chains; facets are the maximal chains."""
    facets: list[Simplex] = []

    def walk(x: str, path: list[str]) -> None:
        ups = X.upper_covers(x)
        if not ups:
            facets.append(tuple(sorted(path)))
            return
        for y in ups:
            path.append(y)
            walk(y, path)
            path.pop()

    for m in X.minimal:
        walk(m, [m])
    return SimplicialComplex(X.elements, facets)


def simplex_label(s: Simplex) -> str:
    return ".".join(s)


def face_poset(K: SimplicialComplex) -> Poset:
    """Simplices ordered by inclusion, named by their dot-joined vertices."""
    if not K.vertices:
        raise EmptyComplex("face poset of the empty complex")
    elements = []
    covers = []
    for p in range(K.dimension + 1):
        for s in K.simplices(p):
            elements.append(simplex_label(s))
            if p > 0:
                for i in range(len(s)):
                    covers.append((simplex_label(s[:i] + s[i + 1 :]), simplex_label(s)))
    return build_poset(elements, covers)


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    return order_complex(face_poset(K))


@dataclass(frozen=True)
class ChainComplex:
    """Free chain complex over ordered bases.

    ``differentials[p]`` maps degree p to degree p - 1; rows follow
    ``bases[p - 1]`` and columns ``bases[p]``.
    """

    bases: Mapping[int, tuple]
    differentials: Mapping[int, IntMatrix]
    augmented: bool = False

    def __post_init__(self) -> None:
        for p, d in self.differentials.items():
            want = (len(self.bases.get(p - 1, ())), len(self.bases.get(p, ())))
            if d.shape != want:
                raise ValueError(f"d_{p} has shape {d.shape}, bases need {want}")

    @property
    def degrees(self) -> list[int]:
        return sorted(self.bases)

    def rank(self, p: int) -> int:
        return len(self.bases.get(p, ()))

    def d(self, p: int) -> IntMatrix:
        if p in self.differentials:
            return self.differentials[p]
        return IntMatrix.zeros(self.rank(p - 1), self.rank(p))

    def check(self) -> None:
        for p in self.degrees:
            if p - 1 in self.bases and (self.d(p - 1) @ self.d(p)).nnz():
                raise NotAComplex(f"d_{p - 1} o d_{p} is not zero")

    def boundary(self, p: int, chain: Mapping[Hashable, int]) -> Chain:
        return self.vector_to_chain(p - 1, self.d(p).apply(self.chain_to_vector(p, chain)))

    def chain_to_vector(self, p: int, chain: Mapping[Hashable, int]) -> list[int]:
        where = {b: i for i, b in enumerate(self.bases.get(p, ()))}
        v = [0] * len(where)
        for label, c in chain.items():
            v[where[label]] += c
        return v

    def vector_to_chain(self, p: int, vec: Sequence[int]) -> Chain:
        return {b: c for b, c in zip(self.bases.get(p, ()), vec) if c}

    def to_json(self) -> dict:
        def name(b) -> str:
            if isinstance(b, tuple):
                return simplex_label(b) if b else "()"
            return str(b)

        return {
            "augmented": self.augmented,
            "degrees": {
                str(p): {
                    "basis": [name(b) for b in self.bases[p]],
                    "differential": [list(t) for t in self.d(p).entries()],
                }
                for p in self.degrees
            },
        }


def chain_complex(K: SimplicialComplex, augmented: bool = False) -> ChainComplex:
    bases: dict[int, tuple] = {p: K.simplices(p) for p in range(K.dimension + 1)}
    diffs: dict[int, IntMatrix] = {}
    if augmented:
        bases[-1] = ((),)
        if 0 in bases:
            diffs[0] = IntMatrix(1, len(bases[0]), [{j: 1 for j in range(len(bases[0]))}])
    for p in range(1, K.dimension + 1):
        where = {s: i for i, s in enumerate(bases[p - 1])}
        entries = []
        for j, s in enumerate(bases[p]):
            for i in range(len(s)):
                entries.append((where[s[:i] + s[i + 1 :]], j, -1 if i % 2 else 1))
        diffs[p] = IntMatrix.from_entries(len(bases[p - 1]), len(bases[p]), entries)
    return ChainComplex(bases, diffs, augmented)


def simplicial_boundary(chain: Mapping[Simplex, int]) -> dict[Simplex, int]:
    out: dict[Simplex, int] = {}
    for s, c in chain.items():
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            out[face] = out.get(face, 0) + (-c if i % 2 else c)
    return {s: c for s, c in out.items() if c}


class Group(NamedTuple):
    betti: int
    torsion: tuple[int, ...] = ()

    @property
    def trivial(self) -> bool:
        return self.betti == 0 and not self.torsion


@dataclass(frozen=True, eq=False)
class HomologySummary:
    """Homology group per degree. Equality ignores trivial groups."""

    groups: Mapping[int, Group] = field(default_factory=dict)
    reduced: bool = True

    def group(self, p: int) -> Group:
        return self.groups.get(p, Group(0, ()))

    def betti(self, p: int) -> int:
        return self.group(p).betti

    def torsion(self, p: int) -> tuple[int, ...]:
        return self.group(p).torsion

    def nontrivial(self) -> dict[int, Group]:
        return {p: g for p, g in sorted(self.groups.items()) if not g.trivial}

    def is_acyclic(self) -> bool:
        return not self.nontrivial()

    def is_sphere(self, q: int) -> bool:
        """Reduced homology of a q-sphere: Z in degree q, zero elsewhere."""
        return self.nontrivial() == {q: Group(1, ())}

    def betti_numbers(self, top: int) -> list[int]:
        return [self.betti(p) for p in range(top + 1)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomologySummary):
            return NotImplemented
        return self.reduced == other.reduced and self.nontrivial() == other.nontrivial()

    def __hash__(self) -> int:
        return hash((self.reduced, tuple(self.nontrivial().items())))

    def __repr__(self) -> str:
        body = ", ".join(
            f"H{p}=Z^{g.betti}" + "".join(f"+Z/{t}" for t in g.torsion) for p, g in self.nontrivial().items()
        )
        return f"HomologySummary({'reduced' if self.reduced else 'unreduced'}: {body or 'trivial'})"

    def to_json(self) -> dict:
        return {
            "reduced": self.reduced,
            "groups": {str(p): {"betti": g.betti, "torsion": list(g.torsion)} for p, g in sorted(self.groups.items())},
        }


def homology(C: ChainComplex) -> HomologySummary:
    C.check()
    factors = {p: invariant_factors(C.d(p)) for p in C.degrees if p - 1 in C.bases}
    groups = {}
    for p in C.degrees:
        img_rank = len(factors.get(p, ()))
        above = factors.get(p + 1, [])
        betti = C.rank(p) - img_rank - len(above)
        g = Group(betti, tuple(f for f in above if f > 1))
        if p < 0 and g.trivial:
            continue
        groups[p] = g
    return HomologySummary(groups, C.augmented)


def complex_homology(K: SimplicialComplex, reduced: bool = True) -> HomologySummary:
    return homology(chain_complex(K, augmented=reduced))


def poset_homology(X: Poset, reduced: bool = True) -> HomologySummary:
    """H_*(X) taken as the homology of the order complex."""
    return complex_homology(order_complex(X), reduced)


class HomologyCoordinates:
    """Explicit description of H_p of a chain complex.

    Cycles are written in a kernel basis, then the image of d_{p+1} is put in
    Smith form inside that basis, which splits H_p into cyclic summands.
    """

    def __init__(self, C: ChainComplex, p: int):
        self.complex = C
        self.degree = p
        A = C.d(p)
        B = C.d(p + 1)
        n = C.rank(p)
        snf_a = smith_normal_form(A)
        r = snf_a.rank
        self._kernel_rows = snf_a.right_inv[r:]
        self._kernel_cols = [[row[j] for j in range(r, n)] for row in snf_a.right]
        self._A = A
        k = n - r
        Bd = B.to_dense() if B.ncols else [[] for _ in range(n)]
        Y = [[sum(a * Bd[t][j] for t, a in enumerate(row) if a) for j in range(B.ncols)] for row in self._kernel_rows]
        snf_y = smith_normal_form(IntMatrix.from_dense(Y, B.ncols) if k else IntMatrix.zeros(0, B.ncols))
        self._snf_y = snf_y
        s = snf_y.rank
        self.kernel_rank = k
        self.free_rank = k - s
        self.torsion = tuple(d for d in snf_y.invariant_factors if d > 1)
        self._first_free = s

    def free_generator(self, i: int = 0) -> list[int]:
        """Cycle (as a vector on the degree-p basis) for the i-th free summand."""
        if not 0 <= i < self.free_rank:
            raise IndexError(i)
        col = self._first_free + i
        c = [row[col] for row in self._snf_y.left_inv]
        return [sum(kc * ci for kc, ci in zip(row, c)) for row in self._kernel_cols]

    def free_coordinates(self, z: Sequence[int]) -> list[int]:
        """Coordinates of the class of cycle ``z`` on the free summands."""
        if any(self._A.apply(list(z))):
            raise ValueError("not a cycle")
        c = [sum(a * zi for a, zi in zip(row, z)) for row in self._kernel_rows]
        u = [sum(a * ci for a, ci in zip(row, c)) for row in self._snf_y.left]
        return u[self._first_free :]


def normalize_sign(vec: list[int]) -> list[int]:
    first = next((v for v in vec if v), 0)
    return [-v for v in vec] if first < 0 else vec


def sphere_generator(K: SimplicialComplex, p: int) -> dict[Simplex, int]:
    """Generator of reduced H_p(K) = Z, sign fixed by its first nonzero coefficient."""
    C = chain_complex(K, augmented=True)
    if p not in C.bases:
        raise NotInfiniteCyclic(f"complex has no simplices of dimension {p}")
    hc = HomologyCoordinates(C, p)
    if hc.free_rank != 1 or hc.torsion:
        raise NotInfiniteCyclic(f"H_{p} has rank {hc.free_rank} and torsion {list(hc.torsion)}")
    vec = normalize_sign(hc.free_generator(0))
    return C.vector_to_chain(p, vec)
