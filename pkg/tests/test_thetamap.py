import pytest
from hypothesis import given, settings, strategies as st

from hallshuffle.curvezeta import CurveData, kernel_k, spectral_ring
from hallshuffle.exactalg import LaurentPoly
from hallshuffle.shufflecore import psi
from hallshuffle.thetamap import (degree_one_image, identify, identify_inverse, nu_n, p,
                                  q_factorial, reverse_variables, rho2, theta_skyscraper,
                                  triv1_q_exponent, verify_triv1, x, y,
                                  zetatilde_matches_k)


@pytest.mark.parametrize("g", [1, 2])
def test_identify_dictionary(g):
    C = CurveData.symbolic(g)
    assert identify(C.q()) == p(g).inverse()
    assert identify(C.weil_numbers()[0]) == x(g, 0).inverse()
    assert x(g, 0) * y(g, 0) == p(g)


@pytest.mark.parametrize("g", [0, 1, 2])
def test_identify_round_trip(g):
    C = CurveData.symbolic(g)
    s = C.q() + C.v() ** 3 + sum(C.weil_numbers(), C.ring.zero())
    assert identify_inverse(identify(s)) == s


@pytest.mark.parametrize("g", [0, 1, 2])
def test_zetatilde_is_k(g):
    assert zetatilde_matches_k(g)


def test_rho_and_factorial():
    assert rho2(3) == (2, 0, -2)
    q = CurveData.symbolic(0).q()
    assert q_factorial(q, 3) == (1 + q) * (1 + q + q * q)
    assert triv1_q_exponent(3, 2) == 12


@pytest.mark.parametrize("r,g", [(1, 1), (2, 1), (3, 1), (2, 2)])
def test_triv1(r, g):
    res = verify_triv1(r, g)
    assert res.holds and res.middle_holds


def test_triv1_other_exponent_fails():
    assert not verify_triv1(2, 1, q_exponent=1).holds


@pytest.mark.parametrize("g", [0, 1, 2])
@pytest.mark.parametrize("d", [-2, 0, 3])
def test_degree_one_normalization(g, d):
    R = CurveData.symbolic(g).ring
    assert degree_one_image(d, g) == LaurentPoly.monomial(R, (d,))


@pytest.mark.parametrize("r,g", [(1, 1), (2, 0), (2, 1), (2, 2), (3, 1)])
def test_skyscraper_consistent(r, g):
    img = theta_skyscraper(r, g)
    assert img.consistent


def test_skyscraper_plain_variant():
    assert theta_skyscraper(2, 1, "plain").consistent


def test_reverse_variables_involution():
    R = CurveData.symbolic(0).ring
    P = LaurentPoly.monomial(R, (1, 2, 3))
    assert reverse_variables(P) == LaurentPoly.monomial(R, (3, 2, 1))
    assert reverse_variables(reverse_variables(P)) == P


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=2, max_size=3), st.integers(0, 2))
def test_nu_equals_psi_with_k(lam, g):
    P = LaurentPoly.monomial(spectral_ring(g), lam)
    assert nu_n(P, g) == psi(kernel_k(g), P).payload
