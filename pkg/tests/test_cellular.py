from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from posetmorse.cellular import (
    cellular_chain_complex,
    cellular_homology,
    generator_table,
    incidence,
    skeleton_homology_scan,
)
from posetmorse.errors import NotACover, NotCellular
from posetmorse.generators import random_face_poset
from posetmorse.homology import SimplicialComplex, face_poset, poset_homology
from posetmorse.matching import edge_admissible

from oracles import all_faces, boundary_dense


def test_fig4x_differentials(fig4x):
    C = cellular_chain_complex(fig4x.poset)
    assert C.bases[1] == ("A", "B", "C") and C.bases[0] == ("p", "q", "r")
    assert C.d(1).to_dense() == [[1, 1, 0], [-1, 0, 1], [0, -1, -1]]
    assert C.d(2).to_dense() == [[1], [-1], [1]]


def test_edge_convention():
    X = face_poset(SimplicialComplex(None, [("a", "b")]))
    assert incidence(X, "a.b", "a") == 1
    assert incidence(X, "a.b", "b") == -1


def test_flipping_a_generator_flips_its_incidences(fig4x):
    X = fig4x.poset
    gens = generator_table(X)
    flipped = gens.flipped("A")
    assert incidence(X, "A", "p", flipped) == -incidence(X, "A", "p", gens)
    assert incidence(X, "T", "A", flipped) == -incidence(X, "T", "A", gens)
    assert incidence(X, "T", "B", flipped) == incidence(X, "T", "B", gens)


def test_errors(fig1x, fig4x):
    with pytest.raises(NotCellular):
        generator_table(fig1x.poset)
    with pytest.raises(NotCellular):
        skeleton_homology_scan(fig1x.poset)
    with pytest.raises(NotACover):
        incidence(fig4x.poset, "T", "p")


def test_fixture_homology_and_scan(fig3x, fig4x, sq2):
    for fx in (fig3x, fig4x, sq2):
        assert cellular_homology(fx.poset) == poset_homology(fx.poset)
        assert skeleton_homology_scan(fx.poset).passed
    assert cellular_homology(sq2.poset).nontrivial() == {2: (1, ())}


def test_hanging_edge_has_zero_incidence(sq2):
    # below P1 the edge ab dangles off the circle E1 + E2
    assert incidence(sq2.poset, "P1", "ab") == 0
    assert abs(incidence(sq2.poset, "P1", "E1")) == 1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_face_posets(seed, dim):
    X = random_face_poset(seed, dim, max_vertices=8)
    gens = generator_table(X)
    C = cellular_chain_complex(X, gens)
    C.check()
    for x, y in X.covers:
        if edge_admissible(X, (x, y)):
            assert incidence(X, y, x, gens) in (1, -1)
    assert cellular_homology(X) == poset_homology(X)
    # cells of a face poset are simplices: incidences agree with the
    # simplicial boundary up to sign
    faces = all_faces([tuple(s.split(".")) for s in X.maximal])
    for p in range(1, dim + 1):
        ref = boundary_dense(faces, p)
        assert [[abs(v) for v in row] for row in C.d(p).to_dense()] == [[abs(v) for v in row] for row in ref]


def test_documented_examples(fig3x, fig4x):
    C = cellular_chain_complex(fig3x.poset)
    assert [C.rank(p) for p in range(4)] == [4, 5, 4, 2]
    assert cellular_homology(fig3x.poset).is_acyclic()
    assert incidence(fig4x.poset, "B", "p") == 1 and incidence(fig4x.poset, "B", "r") == -1
    verts = [str(i) for i in range(4)]
    X = face_poset(SimplicialComplex(verts, combinations(verts, 3)))
    assert cellular_homology(X).nontrivial() == {2: (1, ())}
    assert skeleton_homology_scan(X).passed
    tri = face_poset(SimplicialComplex(None, [("a", "b"), ("b", "c"), ("a", "c")]))
    assert incidence(tri, "a.b", "a") in (1, -1)
    assert len(skeleton_homology_scan(fig4x.poset).rows) == 6
