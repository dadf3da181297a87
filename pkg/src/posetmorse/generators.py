"""Seeded random posets and simplicial complexes for tests and benchmarks."""

from __future__ import annotations

import random

from .homology import SimplicialComplex, face_poset
from .poset import Poset, _closure, _bits, build_poset


def random_complex(seed: int, dim: int, max_vertices: int = 12, max_facets: int = 6) -> SimplicialComplex:
    """A complex whose top facets have dimension ``dim``, on at most ``max_vertices`` vertices."""
    rng = random.Random(seed)
    n = rng.randint(dim + 1, max_vertices)
    names = [f"v{i:02d}" for i in range(n)]
    facets = []
    for _ in range(rng.randint(2, max_facets)):
        size = rng.randint(max(1, dim), dim + 1)
        facets.append(tuple(rng.sample(names, size)))
    facets.append(tuple(rng.sample(names, dim + 1)))
    used = sorted({v for f in facets for v in f})
    return SimplicialComplex(used, facets)


def random_face_poset(seed: int, dim: int, max_vertices: int = 12) -> Poset:
    return face_poset(random_complex(seed, dim, max_vertices))


def random_poset(seed: int, max_elements: int = 12, density: float = 0.3) -> Poset:
    """Random DAG on ``e00 < e01 < ...`` (as a linear extension), reduced to covers."""
    rng = random.Random(seed)
    n = rng.randint(1, max_elements)
    names = tuple(f"e{i:02d}" for i in range(n))
    edges = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    up, down = _closure(names, edges)
    covers = []
    for i in range(n):
        for j in _bits(up[i]):
            if not (up[i] & down[j]):
                covers.append((names[i], names[j]))
    return build_poset(list(names), covers)
