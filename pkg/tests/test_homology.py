from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import GF, QQ as SQQ, ZZ as SZZ, Matrix
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.matrices import DomainMatrix

import oracles
from nervekit import fixtures
from nervekit.complexes import SimplicialComplex, SimplicialMap, boundary_of_simplex
from nervekit.errors import InputError
from nervekit.generate import random_complex, random_simplicial_map, rng_for
from nervekit.homology import (Coefficients, acyclicity_certificate, acyclicity_level, chain_complex,
                               complex_homology, euler_characteristic, homology, induced_map,
                               normalized_chain_complex, range_compare)
from nervekit.linalg import Field, kernel_basis, rank, smith_invariants
from nervekit.ssets import DEGENERATE, SimplicialSetTrunc, from_complex, point
from test_combinat import complexes


# -- coefficients ------------------------------------------------------------------

@pytest.mark.parametrize("text,kind,p", [("q", "q", 0), ("z", "z", 0), ("f2", "fp", 2), ("fp:7", "fp", 7),
                                         ("QQ", "q", 0)])
def test_coefficient_parsing(text, kind, p):
    c = Coefficients.parse(text)
    assert (c.kind, c.p) == (kind, p)


@pytest.mark.parametrize("text", ["fp:4", "fp:x", "r", "f1"])
def test_bad_coefficients_are_input_errors(text):
    with pytest.raises(InputError):
        Coefficients.parse(text)


# -- linear algebra ----------------------------------------------------------------

int_matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


def _columns(rows):
    return [{i: rows[i][j] for i in range(len(rows)) if rows[i][j]} for j in range(len(rows[0]))]


@given(int_matrices)
def test_smith_invariants_match_sympy(rows):
    ref = sorted(abs(int(d)) for d in invariant_factors(Matrix(rows), domain=SZZ) if d != 0)
    got = smith_invariants(_columns(rows), len(rows))
    assert sorted(got.invariants) == ref
    assert all(b % a == 0 for a, b in zip(got.invariants, got.invariants[1:]))


@given(int_matrices, st.sampled_from([0, 2, 3, 5]))
def test_rank_matches_sympy(rows, p):
    dom = SQQ if p == 0 else GF(p)
    ref = DomainMatrix.from_list(rows, dom).rank()
    assert rank(_columns(rows), Field(p)) == ref


@given(int_matrices, st.sampled_from([0, 3]))
def test_kernel_basis_spans_the_kernel(rows, p):
    F = Field(p)
    cols = _columns(rows)
    ker = kernel_basis(cols, F)
    assert len(ker) == len(cols) - rank(cols, F)
    for v in ker:
        image = {}
        for j, a in v.items():
            for i, b in cols[j].items():
                image[i] = F.norm(image.get(i, 0) + a * b)
        assert all(F.norm(x) == 0 for x in image.values())


# -- chain complexes ---------------------------------------------------------------

def test_edge_boundary_orientation():
    C = chain_complex(SimplicialComplex([["a", "b"]]))
    assert C.labels[0] == (("a",), ("b",))
    assert C.boundary(1) == ({0: -1, 1: 1},)


def test_point_and_triangle_boundary():
    assert chain_complex(SimplicialComplex([["a"]])).ranks == (1,)
    C = chain_complex(boundary_of_simplex(["a", "b", "c"]))
    assert C.ranks == (3, 3) and rank(C.boundary(1), Field(0)) == 2


@given(complexes())
def test_boundary_squares_to_zero(K):
    assert chain_complex(K).square_zero_violations() == []


@given(complexes())
def test_euler_characteristic_identity(K):
    C = chain_complex(K)
    H = homology(C)
    chi = sum((-1) ** k * b for k, b in enumerate(H.betti))
    assert chi == euler_characteristic(C) == K.euler_characteristic()


@given(complexes(max_vertices=6), st.sampled_from(["q", "f2", "f3"]))
def test_field_homology_matches_oracle(K, coeffs):
    p = Coefficients.parse(coeffs).p
    H = complex_homology(K, coeffs)
    assert H.profile(K.dim) == oracles.betti(K.facets, p)
    assert all(t == () for t in H.torsion)


@given(complexes(max_vertices=6))
def test_integer_homology_matches_oracle(K):
    b, t = oracles.integer_homology(K.facets)
    H = complex_homology(K, "z")
    assert H.profile(K.dim) == b
    assert [H.torsion_at(k) for k in range(K.dim + 1)] == t


@given(complexes(max_vertices=6))
def test_rational_betti_equals_integer_betti(K):
    assert complex_homology(K, "q").betti == complex_homology(K, "z").betti


def test_sphere_and_point():
    assert complex_homology(SimplicialComplex([["a"]])).trimmed() == (1,)
    assert complex_homology(fixtures.complex_("sphere2")).trimmed() == (1, 0, 1)


def test_projective_plane_over_several_coefficients():
    K = fixtures.rp2()
    Z = complex_homology(K, "z")
    assert Z.profile(2) == [1, 0, 0] and Z.torsion_at(1) == (2,)
    assert complex_homology(K, "f2").profile(2) == [1, 1, 1]
    assert complex_homology(K, "q").profile(2) == [1, 0, 0]
    for p in (3, 5, 7):
        assert complex_homology(K, f"fp:{p}").profile(2) == [1, 0, 0]
    # universal coefficients at the dividing prime
    assert Z.mod_p_dimension(1, 2) == 1 and Z.mod_p_dimension(2, 2) + 0 == 0


def test_truncated_complex_reports_only_through_ceiling():
    K = fixtures.complex_("sphere2")
    H = homology(chain_complex(K, 1))
    assert H.profile(2) == [1, None, None]
    with pytest.raises(InputError):
        H.betti_at(1)
    H = complex_homology(K, maxdim=1)
    assert H.profile(1) == [1, 0]


def test_complete_homology_is_zero_above_dimension():
    H = complex_homology(SimplicialComplex([["a"]]), maxdim=4)
    assert H.profile(4) == [1, 0, 0, 0, 0]


# -- normalized chains -----------------------------------------------------------

def test_point_simplicial_set():
    C = normalized_chain_complex(point())
    assert C.ranks == (1,) and homology(C).trimmed() == (1,)


def test_interval_simplicial_set_is_contractible():
    S = SimplicialSetTrunc(1, (("a", "b"), ("e",)), {"a": (), "b": (), "e": ("b", "a")}, complete=True)
    assert homology(normalized_chain_complex(S)).trimmed() == (1,)


def test_degenerate_faces_contribute_nothing():
    # one-vertex loop l with a 2-simplex whose faces are l, l and a degeneracy:
    # boundary l - l = 0, so the result is a circle wedge a sphere
    S = SimplicialSetTrunc(2, (("v",), ("l",), ("t",)),
                           {"v": (), "l": ("v", "v"), "t": ("l", "l", DEGENERATE)}, complete=True)
    C = normalized_chain_complex(S)
    assert C.square_zero_violations() == []
    assert C.boundary(2) == ({},)
    assert homology(C).trimmed() == (1, 1, 1)


def test_dunce_hat_is_acyclic():
    S = SimplicialSetTrunc(2, (("v",), ("l",), ("t",)),
                           {"v": (), "l": ("v", "v"), "t": ("l", "l", "l")}, complete=True)
    assert homology(normalized_chain_complex(S), "z").trimmed() == (1,)


def test_normalized_chains_need_enough_truncation():
    with pytest.raises(InputError):
        normalized_chain_complex(point(), 1)


@given(complexes())
def test_simplicial_set_presentation_has_same_homology(K):
    a = complex_homology(K, "z")
    b = homology(normalized_chain_complex(from_complex(K)), "z")
    assert a.betti == b.betti and a.torsion == b.torsion


# -- induced maps ----------------------------------------------------------------

def test_identity_induces_isomorphisms():
    K = fixtures.rp2()
    im = induced_map(SimplicialMap.identity(K), "f2", 2)
    assert all(d.iso for d in im.degrees)


def test_constant_map_to_a_point():
    K = boundary_of_simplex(["a", "b", "c"])
    pt = SimplicialComplex([["x"]])
    im = induced_map(SimplicialMap(K, pt, {v: "x" for v in K.vertices}), "q", 1)
    assert im[0].iso
    assert im[1].rank == 0 and im[1].epi and not im[1].mono


def test_inclusion_of_circle_into_disk():
    K = boundary_of_simplex(["a", "b", "c"])
    D = SimplicialComplex([["a", "b", "c"]])
    im = induced_map(SimplicialMap(K, D, {v: v for v in K.vertices}), "q", 1)
    assert im[0].iso and im[1].epi and not im[1].iso
    assert im.is_acyclic_map(1) and not im.iso_through(1)
    assert im.first_failure(2) == (1, "iso")


def test_induced_map_rejects_integers():
    K = SimplicialComplex([["a"]])
    with pytest.raises(InputError):
        induced_map(SimplicialMap.identity(K), "z", 0)


def _matmul(A, B, F):
    n, m = len(A), len(B[0]) if B else 0
    return tuple(tuple(F.norm(sum(A[i][k] * B[k][j] for k in range(len(B)))) for j in range(m)) for i in range(n))


@pytest.mark.parametrize("seed", range(12))
@pytest.mark.parametrize("coeffs", ["q", "f2"])
def test_induced_maps_compose(seed, coeffs):
    rng = rng_for(seed)
    K = random_complex(rng, 6, 5)
    f = random_simplicial_map(rng, K, 5, "w")
    g = random_simplicial_map(rng, f.codomain, 4, "x")
    F = Coefficients.parse(coeffs).field
    D = 2
    a, b, c = induced_map(f, coeffs, D), induced_map(g, coeffs, D), induced_map(g.compose(f), coeffs, D)
    for k in range(D + 1):
        Mf, Mg, Mgf = a[k].matrix, b[k].matrix, c[k].matrix
        if not Mgf or not Mgf[0]:
            continue
        prod = _matmul(Mg, Mf, F) if Mf and Mf[0] else tuple(tuple(0 for _ in Mgf[0]) for _ in Mgf)
        assert tuple(tuple(F.norm(Fraction(x) if F.p == 0 else x) for x in r) for r in Mgf) == prod


@given(complexes())
def test_induced_map_ranks_are_consistent(K):
    im = induced_map(SimplicialMap.identity(K), "q", K.dim)
    H = complex_homology(K)
    for d in im.degrees:
        assert d.rank <= min(d.dim_source, d.dim_target)
        assert d.iso == (d.epi and d.mono)
        assert d.dim_source == H.betti_at(d.degree)


# -- certificates ----------------------------------------------------------------

def test_acyclicity_conventions():
    E = SimplicialComplex([])
    assert acyclicity_certificate(E, -2).passed
    c = acyclicity_certificate(E, -1)
    assert not c.passed and c.witness_degree == -1
    circle = boundary_of_simplex(["a", "b", "c"])
    c = acyclicity_certificate(circle, 1)
    assert not c.passed and c.witness_degree == 1
    assert acyclicity_certificate(circle, 0).passed
    two = SimplicialComplex([["a"], ["b"]])
    assert acyclicity_certificate(two, -1).passed and acyclicity_certificate(two, 0).witness_degree == 0


def test_torsion_breaks_integral_acyclicity_only():
    K = fixtures.rp2()
    assert acyclicity_certificate(K, 2, "q").passed
    assert not acyclicity_certificate(K, 1, "z").passed
    assert acyclicity_level(K, "f2") == 0


def test_acyclicity_levels():
    assert acyclicity_level(SimplicialComplex([])) == -2
    assert acyclicity_level(SimplicialComplex([["a"], ["b"]])) == -1
    assert acyclicity_level(boundary_of_simplex(["a", "b", "c", "d"])) == 1
    assert acyclicity_level(SimplicialComplex([["a", "b"]])) == float("inf")


def test_range_compare_on_the_sphere_with_disk():
    cov = fixtures.fig1()
    from nervekit.homology import poset_homology
    from nervekit.nerves import completed_nerve
    hx = complex_homology(cov.ambient, maxdim=3)
    hn = poset_homology(completed_nerve(cov), maxdim=3)
    r1 = range_compare(hx, hn, 1)
    assert r1.passed and [i.kind for i in r1.items] == ["iso", "iso", "surjectability"]
    r2 = range_compare(hx, hn, 2)
    assert not r2.passed and [i.degree for i in r2.failures()] == [2]
    assert range_compare(hx, hx, 2).passed


def test_range_compare_needs_enough_degrees():
    H = homology(chain_complex(fixtures.complex_("sphere2"), 1))
    with pytest.raises(InputError):
        range_compare(H, H, 1)


def test_range_compare_integral_checks_torsion():
    rp2 = complex_homology(fixtures.rp2(), "z", maxdim=3)
    pt = complex_homology(SimplicialComplex([["a"]]), "z", maxdim=3)
    assert not range_compare(rp2, pt, 1).passed
    assert range_compare(rp2, pt, 0).passed  # surjection onto 0 in degree 1
    assert not range_compare(pt, rp2, 0).passed  # nothing maps onto Z/2
