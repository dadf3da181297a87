from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from posetmorse.generators import random_face_poset, random_poset
from posetmorse.homology import SimplicialComplex, face_poset, poset_homology
from posetmorse.matching import Matching, classify_poset, morse_check
from posetmorse.morse_complex import morse_inequalities
from posetmorse.poset import chain
from posetmorse.search import SearchPolicy, _OnlineOrder, greedy_matching, verify_and_report

from oracles import all_morse_matchings, hasse_succ, is_acyclic_digraph


def sphere(n):
    verts = [str(i) for i in range(n + 1)]
    return face_poset(SimplicialComplex(verts, combinations(verts, n)))


def test_chain_of_two():
    X = chain(["a", "b"])
    M = greedy_matching(X)
    assert M.pairs == {("a", "b")}
    assert morse_check(X, M).critical == ()
    # removing a from below b leaves the empty set, which is not acyclic
    assert greedy_matching(X, SearchPolicy(admissibility_filter=True)).pairs == frozenset()


def test_triangle_boundary_reaches_exhaustive_minimum():
    X = sphere(2)
    best = min(len(X) - 2 * len(m) for m in all_morse_matchings(X))
    M = greedy_matching(X)
    r = morse_check(X, M)
    assert len(r.critical) == best == 2
    assert poset_homology(X).is_sphere(1)


def test_fig1x_with_filter(fig1x):
    M = greedy_matching(fig1x.poset, SearchPolicy(admissibility_filter=True))
    r = morse_check(fig1x.poset, M)
    assert r.is_admissible_morse and len(r.critical) <= 2


def test_policy_validation():
    with pytest.raises(ValueError):
        SearchPolicy(ordering="random")
    with pytest.raises(ValueError):
        SearchPolicy(restarts=0)


def test_online_order_rejects_cycles(fig4x):
    X = fig4x.poset
    order = _OnlineOrder(X)
    assert order.try_flip("q", "A")
    assert order.try_flip("r", "C")
    assert not order.try_flip("p", "B")


def test_verify_and_report_pipeline(fig1x, fig4x):
    rep = verify_and_report(fig1x.poset, fig1x.matching).to_json()
    assert rep["morse_check"]["critical"] == ["T2", "c3"]
    assert rep["stages"]["morse_function"]["error"] == "NotGraded"
    assert rep["stages"]["morse_complex"]["error"] == "NotCellular"
    assert rep["stages"]["morse_inequalities"]["ok"]

    rep = verify_and_report(fig4x.poset, fig4x.matching).to_json()
    assert all(stage["ok"] for stage in rep["stages"].values())
    assert rep["stages"]["morse_function"]["result"]["A"] == "3/2"

    bad = verify_and_report(fig4x.poset, Matching.of([("q", "B"), ("A", "T")]))
    assert not bad.passed
    assert bad.to_json()["morse_check"]["invalid_pairs"][0]["pair"] == ["q", "B"]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 2**63 - 1), st.booleans())
def test_search_output_is_valid_and_deterministic(seed, rng_seed, filt):
    X = random_poset(seed, max_elements=10, density=0.4)
    policy = SearchPolicy(restarts=3, rng_seed=rng_seed, admissibility_filter=filt)
    M = greedy_matching(X, policy)
    r = morse_check(X, M)
    assert r.is_morse
    assert is_acyclic_digraph(hasse_succ(X, M.pairs))
    if filt:
        assert not r.inadmissible_edges
    assert greedy_matching(X, policy) == M


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["lexicographic", "max_degree_first"]))
def test_search_respects_weak_inequalities(seed, ordering):
    X = random_face_poset(seed, 2, max_vertices=8)
    assert classify_poset(X).cellular
    M = greedy_matching(X, SearchPolicy(ordering=ordering, restarts=4))
    rep = morse_inequalities(X, M)
    assert rep.weak and all(m >= b for m, b in zip(rep.m, rep.b))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_greedy_is_maximal(seed):
    # no remaining admissible cover can be added without a clash or a cycle
    X = random_poset(seed, max_elements=9, density=0.4)
    M = greedy_matching(X, SearchPolicy(restarts=1, admissibility_filter=False))
    used = M.elements()
    for x, y in X.covers:
        if x in used or y in used:
            continue
        assert not is_acyclic_digraph(hasse_succ(X, M.pairs | {(x, y)}))
