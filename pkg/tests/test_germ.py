from fractions import Fraction as F

import pytest
from hypothesis import given

from monstertower.germ import (
    CurveGerm,
    DimensionError,
    GermError,
    NotMonomial,
    PrecisionInconclusive,
    embedding_dimension_monomial,
    is_well_parameterized,
    minimal_generators,
    mult,
    prepare,
    reparameterize,
    strip_base_powers,
)
from monstertower.series import TruncatedSeries, UnknownOrderError, compose
from oracles import binomial_root
from strategies import order_one_substitutions, polynomial_germs


def germ(*polys, precision=None):
    return CurveGerm.from_polynomials(list(polys), precision)


def test_construction_rules():
    with pytest.raises(DimensionError):
        germ({2: 1})
    with pytest.raises(GermError):
        CurveGerm((TruncatedSeries({0: 1, 1: 1}, 5), TruncatedSeries({2: 1}, 5)))
    with pytest.raises(UnknownOrderError):
        germ({}, {})


def test_exactness_and_retruncation():
    g = germ({2: 1}, {3: 1})
    assert g.exact and g.precision == 4
    assert g.at_precision(20).exact
    h = germ({2: 1}, {3: 1}, precision=3)
    assert not h.exact


@pytest.mark.parametrize("exps, m", [((1, 0, 0), 1), ((2, 3, 0), 2)])
def test_mult_monomials(exps, m):
    assert mult(CurveGerm.monomial(exps)) == m


def test_mult_minimum():
    assert mult(germ({3: 1}, {4: 1, 5: 1}, {7: 1})) == 3


def test_prepare_identity_on_prepared():
    p = prepare(germ({3: 1}, {4: 1}))
    assert p.transform_log.reparam is None
    assert p.orders == (3, 4)
    assert [c.coeffs for c in p.germ.coords] == [{3: 1}, {4: 1}]


def test_prepare_reparameterizes_first_coordinate():
    g = germ({4: 1, 5: 1}, {6: 1}, precision=30)
    p = prepare(g)
    assert p.germ.coords[0].coeffs == {4: 1}
    # oracle: s = t (1 + t)^(1/4) turns the prepared second coordinate back into t^6
    root = binomial_root(30, F(1, 4))
    sigma = TruncatedSeries({e + 1: c for e, c in enumerate(root)}, 30)
    back = compose(p.germ.coords[1], sigma)
    assert back.agrees_with(TruncatedSeries({6: 1}, back.precision))
    assert back.precision > 6


def test_prepare_breaks_order_ties():
    p = prepare(germ({3: 1, 4: 1}, {3: 1}, precision=20))
    assert p.mult == 3
    assert p.orders == (3, 4)


def test_prepare_zero_coordinates_last():
    p = prepare(germ({}, {5: 1}, {7: 2}))
    assert p.orders == (5, 7)
    assert p.germ.coords[2].is_zero()


def test_strip_base_powers():
    p = strip_base_powers(prepare(germ({3: 1}, {6: 5, 7: 1}, {9: 1, 11: 2})))
    assert [c.coeffs for c in p.germ.coords] == [{3: 1}, {7: 1}, {11: 2}]


@pytest.mark.parametrize(
    "polys, expected",
    [
        (({2: 1}, {3: 1}), True),
        (({2: 1}, {4: 1}), False),
        (({4: 1}, {6: 1}, {7: 1}), True),
        (({2: 1, 4: 1}, {6: 1}), False),
        (({3: 1, 10: -3}, {}), False),
        (({}, {5: 1, 6: -3}, {7: 1}), True),
        (({1: 1, 2: 1}, {}), True),
    ],
)
def test_well_parameterized(polys, expected):
    assert is_well_parameterized(germ(*polys)) is expected


def test_well_parameterized_inconclusive_on_truncated_germs():
    g = CurveGerm((TruncatedSeries({2: 1}, 8), TruncatedSeries({4: 1}, 8)))
    assert not g.exact
    with pytest.raises(PrecisionInconclusive):
        is_well_parameterized(g)


@pytest.mark.parametrize("exps, d", [((2, 3), 2), ((3, 4, 5), 3), ((2, 4), 1), ((4, 6, 7), 3)])
def test_embedding_dimension(exps, d):
    assert embedding_dimension_monomial(CurveGerm.monomial(exps)) == d


def test_embedding_dimension_needs_monomials():
    with pytest.raises(NotMonomial):
        embedding_dimension_monomial(germ({2: 1}, {3: 1, 4: 1}))


def test_minimal_generators():
    assert minimal_generators([3, 10, 11, 14]) == [3, 10, 11]
    assert minimal_generators([4, 6, 7, 8]) == [4, 6, 7]


@given(polynomial_germs())
def test_prepare_invariants(g):
    p = prepare(g.at_precision(g.degree() + 12))
    assert p.mult == mult(g)
    known = [o for o in p.orders]
    assert known == sorted(set(known))
    assert p.germ.coords[0].coeffs == {p.mult: 1}
    replay = p.transform_log.replay(g.at_precision(g.degree() + 12))
    for a, b in zip(replay.coords, p.germ.coords):
        assert a.agrees_with(b)
    again = prepare(p.germ)
    assert again.transform_log.reparam is None
    assert [c.coeffs for c in again.germ.coords] == [c.coeffs for c in p.germ.coords]


@given(polynomial_germs(max_degree=7), order_one_substitutions())
def test_reparameterization_invariance(g, tau):
    h = reparameterize(g, TruncatedSeries(tau, 100), tau_exact=True)
    assert h.exact
    assert mult(h) == mult(g)
    try:
        expected = is_well_parameterized(g)
    except PrecisionInconclusive:
        return
    assert is_well_parameterized(h) == expected
