from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from nervekit import fixtures
from nervekit.complexes import (SimplicialComplex, SimplicialMap, boundary_of_simplex, component_map, components,
                                cone, intersection, is_connected, union)
from nervekit.errors import InputError
from nervekit.generate import random_complex, random_poset, rng_for
from nervekit.homology import complex_homology
from nervekit.posets import (Poset, PosetMap, barycentric_subdivision, chains, downset, face_poset, maximal_chains,
                             opposite, order_complex, poset_components, star, upset)
from nervekit.tokens import check_vertex_id, sort_tokens, token_str


@st.composite
def complexes(draw, max_vertices=7):
    nv = draw(st.integers(1, max_vertices))
    verts = [f"v{i}" for i in range(nv)]
    facets = draw(st.lists(st.lists(st.sampled_from(verts), min_size=1, max_size=4, unique=True),
                           min_size=1, max_size=6))
    return SimplicialComplex(facets)


@st.composite
def posets(draw, max_size=7):
    n = draw(st.integers(0, max_size))
    els = [f"p{i}" for i in range(n)]
    pairs = [(els[i], els[j]) for i in range(n) for j in range(i + 1, n)]
    rels = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Poset(els, rels)


# -- tokens ----------------------------------------------------------------------

def test_tokens_sort_numerically_aware_and_print_tuples():
    assert sort_tokens(["b", "a", "c"]) == ["a", "b", "c"]
    assert token_str(("u", "w")) == "(u,w)"
    with pytest.raises(InputError):
        check_vertex_id(3)
    with pytest.raises(InputError):
        check_vertex_id("")


# -- complexes -------------------------------------------------------------------

def test_complex_keeps_only_maximal_facets():
    K = SimplicialComplex([["a", "b"], ["a"], ["b", "c"], ["a", "b", "c"]])
    assert K.facets == (("a", "b", "c"),)
    assert K.f_vector() == (3, 3, 1)


def test_empty_complex_is_legal():
    K = SimplicialComplex([])
    assert K.is_empty() and K.dim == -1 and components(K) == []


@given(complexes())
def test_downward_closure(K):
    S = K.all_simplices
    for s in S:
        for r in range(1, len(s)):
            for t in combinations(s, r):
                assert t in K


@given(complexes())
def test_face_counts_match_brute_force(K):
    ref = oracles.faces_by_dim(K.facets)
    assert list(K.f_vector()) == [len(x) for x in ref]


def test_intersection_of_adjacent_edges_is_shared_vertex():
    A = SimplicialComplex([["1", "2"]])
    B = SimplicialComplex([["2", "3"]])
    assert intersection(A, B) == SimplicialComplex([["2"]])
    assert intersection(A, A) == A


@given(complexes(), complexes())
def test_intersection_and_union_form_a_lattice(A, B):
    I, U = intersection(A, B), union(A, B)
    assert I <= A and I <= B and A <= U and B <= U
    assert union(I, B) == B
    assert I.all_simplices == A.all_simplices & B.all_simplices
    assert U.all_simplices == A.all_simplices | B.all_simplices


def test_fig1_sector_intersections():
    cov = fixtures.fig1()
    assert cov.intersection(["A", "B"]) == SimplicialComplex([["c", "e3"]])
    assert cov.intersection(["A", "D+"]) == SimplicialComplex([["e1", "e2"], ["e2", "e3"]])
    assert cov.intersection(["A", "B", "C"]) == SimplicialComplex([["c"]])
    assert cov.intersection(["A", "B", "C", "D+"]).is_empty()
    hexagon = cov.intersection(["D+", "D-"])
    assert len(hexagon.simplices(1)) == 6 and len(hexagon.vertices) == 6


def test_components_and_representatives():
    K = SimplicialComplex([["a"], ["b"]])
    assert [r for r, _ in components(K)] == ["a", "b"]
    assert is_connected(boundary_of_simplex(["a", "b", "c"]))
    two = fixtures.square_circle().intersection(["u", "w"])
    assert [r for r, _ in components(two)] == ["2", "4"]


@given(complexes())
def test_components_match_brute_force(K):
    ref = sorted(sorted(b) for b in oracles.components(K.vertices, K.facets))
    got = sorted(sorted(C.vertices) for _, C in components(K))
    assert got == ref
    cm = component_map(K)
    for rep, C in components(K):
        assert rep == min(C.vertices) and all(cm[v] == rep for v in C.vertices)


@given(complexes())
def test_components_biject_with_face_poset_components(K):
    assert len(components(K)) == len(poset_components(face_poset(K)))


def test_simplicial_map_validation():
    K = SimplicialComplex([["a", "b"]])
    L = SimplicialComplex([["x"], ["y"]])
    with pytest.raises(InputError):
        SimplicialMap(K, L, {"a": "x", "b": "y"})
    f = SimplicialMap(K, L, {"a": "x", "b": "x"})
    assert f.image(("a", "b")) == ("x",)


def test_cone_is_connected_and_contains_base():
    K = SimplicialComplex([["a"], ["b"]])
    C = cone(K, "t")
    assert is_connected(C) and K <= C


# -- posets ----------------------------------------------------------------------

def test_order_complex_examples():
    assert order_complex(Poset(["a"])).facets == (("a",),)
    assert order_complex(Poset(["a", "b"])).facets == (("a",), ("b",))
    P = fixtures.square_circle_poset()
    K = order_complex(P)
    assert sorted(K.facets) == [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]
    H = complex_homology(K, "z")
    assert H.trimmed() == (1, 1)


@given(posets())
def test_order_complex_simplices_are_the_chains(P):
    ref = {frozenset(c) for c in oracles.chains_by_subsets(P.elements, P.le)}
    assert {frozenset(s) for s in order_complex(P).all_simplices} == ref
    assert {frozenset(c) for c in chains(P)} == ref
    assert {frozenset(m) for m in maximal_chains(P) if m} == {frozenset(f) for f in order_complex(P).facets}


def test_relation_cycle_is_rejected_with_the_cycle():
    with pytest.raises(InputError, match="cycle"):
        Poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])


def test_transitive_closure_from_generating_relations():
    P = Poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert P.lt("a", "c") and P.cover_relations == [("a", "b"), ("b", "c")]


def test_face_poset_and_subdivision():
    edge = SimplicialComplex([["a", "b"]])
    FP = face_poset(edge)
    assert len(FP) == 3 and len(FP.cover_relations) == 2
    tri = boundary_of_simplex(["a", "b", "c"])
    assert len(face_poset(tri)) == 6
    sd = barycentric_subdivision(tri)
    assert len(sd.vertices) == 6 and len(sd.facets) == 6


def test_poset_component_examples():
    assert len(poset_components(Poset(["a", "b", "c"]))) == 3
    assert len(poset_components(fixtures.square_circle_poset())) == 1
    assert len(poset_components(fixtures.b3())) == 1


def test_up_down_star():
    P = fixtures.chain_poset(3)
    assert set(star(P, "1").elements) == set(P.elements)
    assert set(upset(P, "0").elements) == set(P.elements)
    assert set(downset(P, "1").elements) == {"0", "1"}
    assert star(Poset(["x", "y"]), "x").elements == ("x",)
    with pytest.raises(InputError):
        upset(P, "9")


@given(posets())
def test_opposite_is_an_involution_preserving_chains(P):
    O = opposite(P)
    assert opposite(O) == P
    assert all(O.le(b, a) == P.le(a, b) for a in P.elements for b in P.elements)
    assert {frozenset(c) for c in chains(O)} == {frozenset(c) for c in chains(P)}
    top = max(order_complex(P).dim, 0)
    assert complex_homology(order_complex(O), maxdim=top).profile(top) == \
        complex_homology(order_complex(P), maxdim=top).profile(top)


def test_poset_map_must_preserve_order():
    P = fixtures.chain_poset(2)
    with pytest.raises(InputError):
        PosetMap(P, P, {"0": "1", "1": "0"})
    assert PosetMap.identity(P).is_isomorphism()


@pytest.mark.parametrize("seed", range(10))
def test_subdivision_preserves_betti_numbers(seed):
    rng = rng_for(seed)
    K = random_complex(rng, 7, 6)
    top = K.dim
    assert complex_homology(barycentric_subdivision(K), maxdim=top).profile(top) == oracles.betti(K.facets)


@pytest.mark.parametrize("seed", range(5))
def test_random_poset_order_complex_homology_matches_oracle(seed):
    P = random_poset(rng_for(seed), 7)
    K = order_complex(P)
    b, t = oracles.integer_homology(K.facets)
    H = complex_homology(K, "z")
    assert list(H.profile(K.dim)) == b
    assert [H.torsion_at(k) for k in range(K.dim + 1)] == t
