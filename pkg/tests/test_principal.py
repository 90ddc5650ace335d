import pytest

from hallshuffle.curvezeta import kernel_gx, xi_series
from hallshuffle.principal import (CharacterData, collapse_constant, delta,
                                   functional_equation_constant, generator_chi, is_polynomial,
                                   kernel_g_chi, principal_mul, principal_product,
                                   xi_chi_series)
from hallshuffle.shufflecore import generator, product


@pytest.mark.parametrize("g", [0, 1, 2])
def test_trivial_character_recovers_spherical_data(g):
    D = CharacterData(g)
    one = D.trivial
    assert kernel_g_chi(D, one) == kernel_gx(D.curve) * D.ring.gen("v") ** (g - 1)
    assert functional_equation_constant(D, one) == D.gamma(one).inverse()
    assert xi_chi_series(D, one, 4) == xi_series(D.curve, 4)


@pytest.mark.parametrize("factors,poly", [((2,), False), ((3,), False), ((3,), True)])
@pytest.mark.parametrize("g", [1, 2])
def test_functional_equation_constant(factors, poly, g):
    D = CharacterData(g, factors, poly)
    q = D.q()
    for chi in D.characters:
        assert D.gamma(chi) == D.gamma_from_betas(chi)
        assert functional_equation_constant(D, chi) * q ** (2 * g - 2) == D.gamma(chi)


def test_polynomial_flag():
    D = CharacterData(1, (3,), polynomial=True)
    assert not is_polynomial(D, D.trivial)
    assert all(is_polynomial(D, c) for c in D.characters if c != D.trivial)
    # a genus-one nontrivial polynomial L-function is constant, so xi^chi vanishes in degree one
    assert all(xi_chi_series(D, c, 1)[1].is_zero() for c in D.characters if c != D.trivial)


def test_genus_zero_rejects_characters():
    with pytest.raises(ValueError):
        CharacterData(0, (2,))


def test_delta_validation():
    D = CharacterData(1, (2,))
    P = generator(D.ring, 0).payload
    with pytest.raises(ValueError):
        delta(D, [(0,), (1,)], P)
    with pytest.raises(ValueError):
        delta(D, [(5,)], P)


@pytest.mark.parametrize("degs", [(0, 1), (1, -1), (1, -1, 0)])
def test_trivial_character_collapse(degs):
    D = CharacterData(1)
    one = D.trivial
    gens = [generator_chi(D, one, d) for d in degs]
    pr = principal_product(D, gens, "square")
    assert pr == principal_product(D, gens, "direct")
    sp = product(kernel_gx(D.curve), [generator(D.ring, d) for d in degs])
    n = len(degs)
    assert pr.components[(one,) * n] == sp.payload * collapse_constant(D, n * (n - 1) // 2)


def test_mixed_characters_routes_and_support():
    D = CharacterData(1, (3,))
    a, b = generator_chi(D, (0,), 1), generator_chi(D, (1,), 0)
    ab = principal_mul(D, a, b, "direct")
    assert ab == principal_mul(D, a, b, "square")
    assert ab.support() == [((0,), (1,)), ((1,), (0,))]


def test_rank_cap():
    D = CharacterData(0)
    g = generator_chi(D, D.trivial, 0)
    with pytest.raises(ValueError):
        principal_product(D, [g] * 5)
