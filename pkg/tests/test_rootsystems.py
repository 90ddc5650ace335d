import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hallshuffle import rootsystems as rs
from hallshuffle.curvezeta import CurveData, kernel_gx, kernel_gx_twisted
from hallshuffle.exactalg import LaurentPoly
from hallshuffle.shufflecore import psi, xi_embed
from hallshuffle.thetamap import identify, q_factorial, theta_skyscraper


@pytest.mark.parametrize("name,order,N", [("A1", 2, 1), ("A2", 6, 3), ("A3", 24, 6),
                                          ("B2", 8, 4), ("G2", 12, 6)])
def test_weyl_groups(name, order, N):
    D = rs.root_datum(name)
    assert D.order == order
    assert len(D.positive_coroots) == N
    assert D.length(D.longest) == N
    assert sum(1 for w in D.weyl if D.length(w) == 1) == D.rank


def test_cartan_matrices():
    assert rs.root_datum("B2").cartan_matrix() in (((2, -2), (-1, 2)), ((2, -1), (-2, 2)))
    G = rs.root_datum("G2").cartan_matrix()
    assert sorted([G[0][1], G[1][0]]) == [-3, -1]


def test_two_rho_type_a():
    assert rs.root_datum("A2").two_rho == (-2, 0, 2)


def test_unknown_type():
    with pytest.raises(ValueError):
        rs.root_datum("E8")


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_weyl_order_polynomial(name):
    D = rs.root_datum(name)
    q = CurveData.symbolic(0).q()
    expected = {"A1": 1 + q, "A2": q_factorial(q, 3), "B2": (1 + q) * (1 + q + q * q + q ** 3)}
    assert rs.weyl_order_polynomial(D, q) == expected[name]


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
@pytest.mark.parametrize("g", [0, 1])
def test_two_symmetrization_routes(name, g):
    D = rs.root_datum(name)
    C = CurveData.symbolic(g)
    f = rs.monomial(C.ring, (1,) + (0,) * (D.dim - 1))
    K = kernel_gx(C)
    assert rs.symmetrize_kernel(D, K, f) == rs.symmetrize_direct(D, K, f)


@pytest.mark.parametrize("g", [0, 1, 2])
@pytest.mark.parametrize("lam", [(0, 0), (2, -1), (1, 1)])
def test_type_a1_matches_shuffle(g, lam):
    D = rs.root_datum("A1")
    C = CurveData.symbolic(g)
    P = LaurentPoly.monomial(C.ring, lam)
    assert rs.psi_g(D, C, lam) == psi(kernel_gx(C), P).payload
    assert rs.psi_g(D, C, lam, dotted=True) == psi(kernel_gx_twisted(C), P).payload


@pytest.mark.parametrize("g", [0, 1])
def test_type_a2_matches_shuffle(g):
    D = rs.root_datum("A2")
    C = CurveData.symbolic(g)
    lam = (1, 0, -1)
    P = LaurentPoly.monomial(C.ring, lam)
    assert rs.psi_g(D, C, lam, dotted=True) == psi(kernel_gx_twisted(C), P).payload


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
@pytest.mark.parametrize("g", [0, 1, 2])
def test_dot_shift(name, g):
    D = rs.root_datum(name)
    C = CurveData.symbolic(g)
    lam = (1,) + (0,) * (D.dim - 1)
    assert rs.psi_g(D, C, rs.dot_shift(D, g, lam)) == rs.psi_g(D, C, lam, dotted=True)


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
@pytest.mark.parametrize("g", [0, 1])
def test_nu_is_identified_dotted_psi(name, g):
    D = rs.root_datum(name)
    C = CurveData.symbolic(g)
    lam = (0,) * (D.dim - 1) + (1,)
    assert identify(rs.psi_g(D, C, lam, dotted=True)) == rs.nu_g(D, g, lam)


@pytest.mark.parametrize("g", [0, 1])
@pytest.mark.parametrize("name,lam", [("A1", (2, 0)), ("A1", (0, 1)), ("A2", (1, 0, -1))])
def test_gk_matches_fside(g, name, lam):
    D = rs.root_datum(name)
    C = CurveData.symbolic(g)
    K = kernel_gx(C)
    F = xi_embed(psi(K, LaurentPoly.monomial(C.ring, lam)), K)
    for mu in itertools.product(range(-3, 4), repeat=D.dim):
        if sum(mu) == sum(lam):
            assert F.coefficient(mu) == rs.gk_coefficient(D, C, lam, mu), mu


def test_gk_leading_term_and_restriction():
    D = rs.root_datum("B2")
    C = CurveData.symbolic(0)
    lam = (2, 1)
    assert rs.gk_coefficient(D, C, lam, lam) == C.ring.one()
    # (1, 0) is fixed by a simple reflection, which adds the constant term q of h_X
    assert rs.gk_coefficient(D, C, (1, 0), (1, 0)) == 1 + C.q()
    res = rs.gk_restriction(D, C, lam, 2)
    assert res[lam] == C.ring.one()
    assert all(not c.is_zero() for c in res.values())


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_hecke_equivariance(name):
    D = rs.root_datum(name)
    chi = {m: 1 for m in D.orbit((1,) + (0,) * (D.dim - 1))}
    assert rs.hecke_equivariance_check(D, 1, chi, (0,) * (D.dim - 1) + (2,)).holds


def test_hecke_rejects_non_invariant():
    D = rs.root_datum("A1")
    with pytest.raises(ValueError):
        rs.hecke_equivariance_check(D, 0, {(1, 0): 1}, (0, 0))


@pytest.mark.parametrize("name,r,g", [("A1", 2, 0), ("A1", 2, 1), ("A1", 2, 2),
                                      ("A2", 3, 0), ("A2", 3, 1)])
def test_skyscraper_matches_shuffle_side(name, r, g):
    img = rs.skyscraper_g(rs.root_datum(name), g)
    assert img.image == theta_skyscraper(r, g).theta_image


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_skyscraper_closed_form(name):
    D = rs.root_datum(name)
    assert rs.skyscraper_g(D, 1).image == rs.skyscraper_closed_form(D, 1)


def test_reflected_skyscraper_form_differs():
    D = rs.root_datum("A1")
    assert rs.skyscraper_g(D, 1, "reflected").image != theta_skyscraper(2, 1).theta_image


@pytest.mark.parametrize("name", ["B2", "G2"])
def test_skyscraper_genus_zero_is_one(name):
    D = rs.root_datum(name)
    assert rs.skyscraper_g(D, 0).image == LaurentPoly.one(CurveData.symbolic(0).ring, D.dim)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["A1", "A2", "B2", "G2"]), st.integers(-2, 2), st.integers(-2, 2))
def test_induction_is_invariant(name, a, b):
    D = rs.root_datum(name)
    C = CurveData.symbolic(1)
    lam = (a, b) + (0,) * (D.dim - 2)
    assert rs.is_invariant(D, rs.psi_g(D, C, lam, dotted=True))
