from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from posetmorse.errors import EmptyComplex, NotAComplex, NotInfiniteCyclic
from posetmorse.generators import random_complex, random_poset
from posetmorse.homology import (
    ChainComplex,
    HomologyCoordinates,
    SimplicialComplex,
    barycentric_subdivision,
    chain_complex,
    complex_homology,
    face_poset,
    order_complex,
    poset_homology,
    simplicial_boundary,
    sphere_generator,
)
from posetmorse.linalg import IntMatrix, rank, smith_normal_form
from posetmorse.poset import antichain, chain, empty_poset, grading_info, join, opposite

from oracles import brute_chains, reduced_betti

# six-vertex triangulation of the real projective plane
RP2 = [
    ("1", "2", "3"), ("1", "3", "4"), ("1", "4", "5"), ("1", "5", "6"), ("1", "2", "6"),
    ("2", "3", "5"), ("2", "4", "5"), ("2", "4", "6"), ("3", "4", "6"), ("3", "5", "6"),
]


def boundary_of_simplex(n):
    verts = [str(i) for i in range(n + 1)]
    return SimplicialComplex(verts, combinations(verts, n))


def test_point_and_empty():
    assert complex_homology(SimplicialComplex(["v"], [])).is_acyclic()
    H = poset_homology(empty_poset())
    assert H.group(-1) == (1, ())
    assert H.is_sphere(-1) and not H.is_acyclic()
    assert poset_homology(antichain(["a", "b"])).is_sphere(0)


def test_two_point_unreduced():
    H = poset_homology(antichain(["a", "b"]), reduced=False)
    assert H.betti(0) == 2


def test_projective_plane_torsion():
    H = complex_homology(SimplicialComplex(None, RP2))
    assert H.nontrivial() == {1: (0, (2,))}
    assert H.to_json()["groups"]["1"] == {"betti": 0, "torsion": [2]}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_simplex_boundaries_are_spheres(n):
    K = boundary_of_simplex(n)
    assert complex_homology(K).is_sphere(n - 1)
    assert poset_homology(face_poset(K)).is_sphere(n - 1)


def test_face_poset_counts():
    X = face_poset(SimplicialComplex(None, [("a", "b")]))
    assert X.elements == ("a", "a.b", "b") and len(X.covers) == 2
    with pytest.raises(EmptyComplex):
        face_poset(SimplicialComplex([], []))


def test_order_complex_of_fig1x(fig1x):
    K = order_complex(fig1x.poset)
    assert K.dimension == 3
    assert complex_homology(K).nontrivial() == {3: (1, ())}


def test_chain_complex_json_has_empty_simplex_label():
    C = chain_complex(SimplicialComplex(None, [("a", "b")]), augmented=True)
    data = C.to_json()["degrees"]
    assert data["-1"]["basis"] == ["()"]
    assert data["1"]["basis"] == ["a.b"]
    assert data["1"]["differential"] == [[0, 0, -1], [1, 0, 1]]


def test_non_complex_is_rejected():
    C = ChainComplex({0: ("a",), 1: ("e",), 2: ("f",)}, {1: IntMatrix.from_dense([[1]]), 2: IntMatrix.from_dense([[1]])})
    with pytest.raises(NotAComplex):
        C.check()


def test_sphere_generators():
    g = sphere_generator(SimplicialComplex(None, [("a",), ("b",)]), 0)
    assert g == {("a",): 1, ("b",): -1}
    cyc = order_complex(join(antichain(["A", "B"]), antichain(["p", "q"])))
    g = sphere_generator(cyc, 1)
    assert g == {("A", "p"): 1, ("A", "q"): -1, ("B", "p"): -1, ("B", "q"): 1}
    assert simplicial_boundary(g) == {}
    with pytest.raises(NotInfiniteCyclic):
        sphere_generator(SimplicialComplex(None, RP2), 1)


def test_coordinates_reject_non_cycles():
    K = boundary_of_simplex(2)
    C = chain_complex(K, augmented=True)
    hc = HomologyCoordinates(C, 1)
    assert hc.free_rank == 1
    z = hc.free_generator(0)
    assert hc.free_coordinates([2 * v for v in z]) == [2 * hc.free_coordinates(z)[0]]
    with pytest.raises(ValueError):
        hc.free_coordinates([1, 0, 0])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_order_complex_simplices_are_chains(seed):
    X = random_poset(seed, max_elements=10)
    K = order_complex(X)
    faces = {s for p in range(K.dimension + 1) for s in K.simplices(p)}
    assert faces == set(brute_chains(X))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([1, 2, 3]))
def test_homology_matches_field_ranks(seed, dim):
    K = random_complex(seed, dim, max_vertices=8)
    H = complex_homology(K)
    over_q = reduced_betti(K.facets)
    for q in (2, 3):
        over_fq = reduced_betti(K.facets, q)
        for p, b in enumerate(over_q):
            assert H.betti(p) == b
            # universal coefficients: torsion divisible by q shows up in degrees p and p+1
            tors = sum(1 for t in H.torsion(p) if t % q == 0) + sum(1 for t in H.torsion(p - 1) if t % q == 0)
            assert over_fq[p] == b + tors


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([1, 2]))
def test_barycentric_subdivision_keeps_homology(seed, dim):
    K = random_complex(seed, dim, max_vertices=7, max_facets=4)
    assert complex_homology(barycentric_subdivision(K)) == complex_homology(K)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_boundary_squares_to_zero(seed):
    C = chain_complex(random_complex(seed, 3, max_vertices=8), augmented=True)
    C.check()


def test_opposite_poset_has_same_homology(fig1x, fig3x):
    for fx in (fig1x, fig3x):
        assert poset_homology(opposite(fx.poset)) == poset_homology(fx.poset)


def test_documented_small_examples(fig1x):
    assert order_complex(chain(["a", "b", "c"])).facets == (("a", "b", "c"),)
    cyc = join(antichain(["A", "B"]), antichain(["p", "q"]))
    K = order_complex(cyc)
    assert len(K.facets) == 4
    d1 = chain_complex(K).d(1)
    assert d1.shape == (4, 4)
    assert rank(d1) == 3
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).diagonal == (1, 1, 1)
    maximal_chains = [c for c in brute_chains(fig1x.poset) if not any(set(c) < set(d) for d in brute_chains(fig1x.poset))]
    assert len(order_complex(fig1x.poset).facets) == len(maximal_chains)
    X = face_poset(boundary_of_simplex(3))
    assert len(X) == 14
    info = grading_info(X)
    assert info.is_graded and all(info.degree_of[x] == x.count(".") for x in X.elements)
    g = sphere_generator(boundary_of_simplex(2), 1)
    assert g == {("0", "1"): 1, ("0", "2"): -1, ("1", "2"): 1}
    assert sphere_generator(boundary_of_simplex(2), 1) == g
