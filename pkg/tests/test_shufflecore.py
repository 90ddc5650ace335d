import pytest
from hypothesis import given, settings, strategies as st

from hallshuffle.curvezeta import CurveData, c_d, kernel_gx, kernel_hx, kernel_k
from hallshuffle.exactalg import LaurentPoly
from hallshuffle.shufflecore import (FSeriesElement, RankError, ShuffleElement,
                                     b_matrix_det, derive_division_prefactor, fcoproduct,
                                     fshuffle_mul, generator, hecke_mul, ideal_membership_probe,
                                     in_wheel_ideal, product, psi, psi_closed_form, psi_direct,
                                     shuffle_mul, twisted_bialgebra_check, twisted_mul,
                                     twisted_mul_via_twist, wheel_check, xi_embed)


def mono(C, *e):
    return LaurentPoly.monomial(C.ring, e)


@pytest.mark.parametrize("g", [0, 1, 2])
def test_division_prefactor_is_minus_q_minus_g(g):
    C = CurveData.symbolic(g)
    c, m = derive_division_prefactor(C)
    assert c == -C.q()
    assert m == -g


@pytest.mark.parametrize("g,lam", [(0, (1, -1)), (1, (2, 0, -1)), (2, (0, 1))])
def test_closed_form_matches_psi(g, lam):
    C = CurveData.symbolic(g)
    P = mono(C, *lam)
    assert psi_closed_form(C, P) == psi(kernel_gx(C), P).payload


def test_rank_one_is_identity():
    C = CurveData.symbolic(1)
    P = mono(C, 3)
    assert psi(kernel_gx(C), P).payload == P


def test_payload_symmetry_enforced():
    C = CurveData.symbolic(0)
    with pytest.raises(ValueError):
        ShuffleElement(2, mono(C, 1, 0))


@pytest.mark.parametrize("g", [0, 1])
def test_associativity_and_routes(g):
    C = CurveData.symbolic(g)
    K = kernel_gx(C)
    a, b, c = (generator(C.ring, d) for d in (1, 0, -1))
    left = shuffle_mul(K, shuffle_mul(K, a, b), c)
    right = shuffle_mul(K, a, shuffle_mul(K, b, c))
    assert left == right
    assert shuffle_mul(K, a, b, "square") == shuffle_mul(K, a, b, "direct")


@pytest.mark.parametrize("g", [0, 1, 2])
def test_twisted_product_two_routes(g):
    C = CurveData.symbolic(g)
    a, b = generator(C.ring, 1), generator(C.ring, -1)
    assert twisted_mul(C, a, b) == twisted_mul_via_twist(C, a, b)


def test_hecke_action_rank_one():
    C = CurveData.symbolic(0)
    A = generator(C.ring, 2)
    out = hecke_mul(C, 1, A)
    assert out.payload == mono(C, 3) * c_d(C, 1)


def test_rank_cap():
    C = CurveData.symbolic(0)
    with pytest.raises(RankError):
        psi(kernel_gx(C), mono(C, 0, 0, 0, 0, 0, 0))


def test_wheel_examples():
    C = CurveData.symbolic(1)
    K = kernel_gx(C)
    A = product(K, [generator(C.ring, 0)] * 3)
    assert all(wheel_check(A, C, a) for a in C.weil_numbers())
    one = ShuffleElement(3, LaurentPoly.one(C.ring, 3))
    assert not wheel_check(one, C, C.alpha(0))


def test_wheel_rank4_genus2_numeric():
    C = CurveData.random_numeric(2, 11)
    A = product(kernel_gx(C), [generator(C.ring, d) for d in (1, -1, 0, 2)])
    assert all(wheel_check(A, C, a) for a in C.weil_numbers())


def test_b_matrix_determinants():
    assert b_matrix_det(2) == (1, -1)
    s, e = b_matrix_det(3)
    assert e == -3 and s in (1, -1)
    with pytest.raises(RankError):
        b_matrix_det(4)


def test_fside_coefficients_genus_zero():
    C = CurveData.symbolic(0)
    q = C.q()
    h = kernel_hx(C)
    F = fshuffle_mul(h, FSeriesElement.monomial(C.ring, (0,)), FSeriesElement.monomial(C.ring, (0,)))
    assert F.coefficient((0, 0)) == 1 + q
    assert F.coefficient((1, -1)) == q * q - 1
    assert F.coefficient((2, -2)) == q * (q * q - 1)
    assert F.coefficient((-1, 1)).is_zero()


def test_xi_embedding_is_multiplicative():
    C = CurveData.symbolic(1)
    K = kernel_gx(C)
    h = kernel_hx(C)
    a, b = generator(C.ring, 1), generator(C.ring, -1)
    lhs = xi_embed(shuffle_mul(K, a, b), K)
    rhs = fshuffle_mul(h, xi_embed(a, K), xi_embed(b, K))
    assert lhs.coefficients(3) == rhs.coefficients(3)


def test_coproduct_splits_monomials():
    C = CurveData.symbolic(0)
    F = FSeriesElement.monomial(C.ring, (2, 3))
    assert fcoproduct(F, 1, 4) == {((2,), (3,)): C.ring.one()}


def test_twisted_bialgebra():
    C = CurveData.symbolic(0)
    res = twisted_bialgebra_check(kernel_hx(C), 0, 1, -1, 2)
    assert res == {"(1,1)": [], "(1,2)": []}


@pytest.mark.parametrize("g", [1, 2])
def test_two_paths_k_kernel(g):
    K = kernel_k(g)
    P = LaurentPoly.monomial(K.ring, (1, 0, -1))
    assert psi(K, P).payload == psi_direct(K, P)


def test_membership_probe_literal_exponent_fails_by_parity():
    C = CurveData.random_numeric(1, 5)
    rep = ideal_membership_probe(C, r=3, trials=3, seed=0)
    assert rep.exponent == 3 and rep.upper_ok
    assert not rep.lower_ok


@pytest.mark.parametrize("kw", [{"exponent": 0}, {"exponent": 2}, {"exponent": 3, "module": "lifted"}])
def test_membership_probe_corrected_forms(kw):
    C = CurveData.random_numeric(1, 5)
    rep = ideal_membership_probe(C, r=3, trials=3, seed=0, **kw)
    assert rep.ok, rep.to_json()


def test_membership_rejects_non_wheel_element():
    C = CurveData.random_numeric(1, 5)
    assert not in_wheel_ideal(LaurentPoly.one(C.ring, 3), C, 2, 0)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=2, max_size=3))
def test_two_paths_agree_random(lam):
    C = CurveData.symbolic(1)
    P = LaurentPoly.monomial(C.ring, lam)
    assert psi(kernel_gx(C), P).payload == psi_direct(kernel_gx(C), P)


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=3, max_size=3), st.integers(0, 100))
def test_random_products_satisfy_wheels(degs, seed):
    C = CurveData.random_numeric(1, seed)
    A = product(kernel_gx(C), [generator(C.ring, d) for d in degs])
    assert all(wheel_check(A, C, a) for a in C.weil_numbers())
