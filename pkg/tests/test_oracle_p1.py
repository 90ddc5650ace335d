import pytest

from hallshuffle.oracle_p1 import (RING, P1Bundle, P1HallFunction, adjunction_check, at_q,
                                   automorphism_count, compare, constant_term,
                                   count_subsheaves, extension_census, green_pairing,
                                   hall_product, hecke_check, line_bundle, skyscraper,
                                   torsion_pairing_check)


def test_automorphisms_of_small_bundles():
    assert automorphism_count(2, P1Bundle(0)) == 1
    assert automorphism_count(3, P1Bundle(0, 0)) == (9 - 1) * (9 - 3)
    assert automorphism_count(2, P1Bundle(0, 1)) == 1 * 1 * 2 ** 2


def test_subsheaf_counts():
    # O(-1) -> O: nonzero sections of O(1) up to scalars, one per point of P1
    assert count_subsheaves(2, P1Bundle(0), -1, quotient="point") == 3
    assert count_subsheaves(3, P1Bundle(0), -1, quotient="point") == 4


def test_extension_census_counts():
    dim, census = extension_census(2, 2, 0)
    assert dim == 1
    assert dict(census) == {P1Bundle(2, 0): 1, P1Bundle(1, 1): 1}
    dim, census = extension_census(3, 0, 0)
    assert dim == 0 and dict(census) == {P1Bundle(0, 0): 1}


def test_pairing_of_line_bundle():
    for q in (2, 3):
        val = green_pairing(line_bundle(q, 0), line_bundle(q, 0))
        assert at_q(val - RING.one() / RING.const(q - 1), q) == (0, 0)


def test_frozen_constant_terms():
    q = 2
    u = hall_product(line_bundle(q, 0), line_bundle(q, 0))
    assert at_q(constant_term(u, 0, 0), q) == at_q(RING.const(3), q)
    assert at_q(constant_term(u, 1, -1), q) == at_q(RING.const(q * q - 1), q)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("d1,d2", [(0, 0), (1, -1), (-2, 2), (2, 1)])
def test_oracle_matches_shuffle(q, d1, d2):
    assert compare(q, d1, d2, 4) == []


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("l", [-1, 0, 1])
def test_hecke_identity(q, l):
    res = hecke_check(q, l)
    assert res["action_equals_commutator"]
    assert res["commutator_is_vector"]
    assert res["matches_eigenvalue"]


@pytest.mark.parametrize("q", [2, 3])
def test_torsion_pairing(q):
    assert torsion_pairing_check(q)["agree"]


@pytest.mark.parametrize("d1,d2", [(0, 0), (1, -1), (2, 0)])
def test_adjunction(d1, d2):
    assert adjunction_check(2, d1, d2) == []


def test_invalid_q_rejected():
    with pytest.raises(ValueError):
        line_bundle(4, 0)


def test_sheaf_invariants():
    F = P1Bundle(2, -1)
    assert F.rank == 2 and F.degree == 1 and F.is_bundle
    assert not skyscraper(0).is_bundle
    f = P1HallFunction.indicator(2, F)
    assert f(F) == RING.one()
