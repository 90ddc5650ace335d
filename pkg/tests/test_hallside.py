import math
from fractions import Fraction

import pytest

from hallshuffle.hallside import (ClassZ2, HNType, RecursionWindowError, adic_degree,
                                  buntriv_convergence, constant_term_onevec, euler_form,
                                  hn_types, payload_is_closed, rank_one_stratum_payload,
                                  recombine_onevec, semistable_1ss, semistable_payload)


def test_euler_form_values():
    a, b = ClassZ2(1, 0), ClassZ2(1, 2)
    assert euler_form(a, b, 0) == 3
    assert euler_form(a, b, 2) == 1
    form = euler_form(a, b)
    assert form.to_text() == "3 - g"
    assert euler_form(ClassZ2(0, 1), a, 5) == -1


def test_hn_type_validation():
    with pytest.raises(ValueError):
        HNType(((1, 2), (1, 0)))
    with pytest.raises(ValueError):
        HNType(((0, 0),))
    t = HNType(((1, -1), (1, 1)))
    assert t.weight == ClassZ2(2, 0)
    assert t.slopes == [Fraction(-1), Fraction(1)]
    assert t.pairing_exponent(1) == 2


def test_hn_type_enumeration():
    types = hn_types(2, 0, (-2, 2))
    # semistable plus (1,-k),(1,k) for k = 1, 2
    assert len(types) == 3
    assert all(t.weight == ClassZ2(2, 0) for t in types)


@pytest.mark.parametrize("r,d,g", [(2, 0, 0), (2, 1, 0), (2, 0, 1), (2, -1, 1)])
def test_round_trip(r, d, g):
    ss = semistable_1ss(r, d, 4, g)
    assert recombine_onevec(ss).equals(constant_term_onevec(r, d, 4, g))


@pytest.mark.parametrize("d", [-1, 1, 3])
def test_odd_degree_genus_zero_vanishes(d):
    assert not semistable_1ss(2, d, 4, 0).nonzero()


def test_even_degree_genus_zero_nonzero():
    assert semistable_1ss(2, 0, 4, 0).nonzero()


def test_narrow_window_rejected():
    with pytest.raises(RecursionWindowError) as err:
        semistable_1ss(2, 0, 4, 0, slope_window=(-1, 1))
    assert err.value.required == (Fraction(-4), Fraction(4))


def test_rank_three_recursion_unsupported():
    with pytest.raises(RecursionWindowError):
        semistable_1ss(3, 0, 2, 0)


@pytest.mark.parametrize("g", [0, 1])
def test_semistable_payload_closes(g):
    P = semistable_payload(0, g, 3)
    assert payload_is_closed(P, 0, 3)


@pytest.mark.parametrize("g", [0, 1, 2])
def test_stratum_payload_routes(g):
    assert rank_one_stratum_payload(1, -1, g, "twisted") == rank_one_stratum_payload(1, -1, g, "plain")


def test_adic_degree_of_zero():
    from hallshuffle.thetamap import p
    assert adic_degree(p(1)) == 2
    assert adic_degree(p(1) - p(1)) == math.inf


def test_convergence_strictly_increasing():
    rep = buntriv_convergence(2, 0, [0, 1, 2, 3], 1)
    assert rep.strictly_increasing
    assert rep.semistable_closed
    assert rep.to_json()["strictly_increasing"] is True
