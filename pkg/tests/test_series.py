from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from monstertower.series import (
    UNKNOWN_ORDER,
    InvalidSubstitution,
    NotAUnit,
    OrderViolation,
    PrecisionExhausted,
    TruncatedSeries,
    UnknownOrderError,
    arith,
    compose,
    derivative,
    inverse_unit,
    nth_root_unit,
    order,
    order_exceeds,
    ratio_d,
    reversion,
)
from oracles import binomial_root, dense_compose, dense_inverse, dense_mul
from strategies import nonzero_rationals, series, units


def S(coeffs, prec):
    return TruncatedSeries(coeffs, prec)


def dense(s, n=None):
    n = s.precision if n is None else n
    return [s.coeffs.get(e, F(0)) for e in range(n)]


def all_fractions(s):
    return all(type(v) is F for v in s.coeffs.values())


class TestOrder:
    def test_examples(self):
        assert order(S({3: 1, 5: 1}, 10)) == 3
        assert order(S({}, 10)) is UNKNOWN_ORDER
        assert order(S({1: F(3, 2)}, 8)) == 1

    def test_invariants_enforced(self):
        s = S({0: 0, 2: F(1, 2), 9: 4}, 5)
        assert s.coeffs == {2: F(1, 2)}
        assert s.precision == 5

    def test_order_exceeds_certified(self):
        assert order_exceeds(S({}, 10), 8)
        with pytest.raises(UnknownOrderError):
            order_exceeds(S({}, 5), 4)
        assert not order_exceeds(S({3: 1}, 10), 3)

    def test_coefficient_past_precision(self):
        with pytest.raises(PrecisionExhausted):
            S({1: 1}, 4)[4]


class TestArith:
    def test_examples(self):
        a, b = S({2: 1}, 10), S({3: 1}, 10)
        assert (a + b).coeffs == {2: 1, 3: 1}
        assert (a * b).coeffs == {5: 1}
        one_plus, one_minus = S({0: 1, 1: 1}, 10), S({0: 1, 1: -1}, 10)
        assert (one_plus * one_minus).coeffs == {0: 1, 2: -1}

    def test_precision_rules(self):
        a, b = S({2: 1}, 6), S({3: 1}, 9)
        assert (a + b).precision == 6
        assert (a * b).precision == min(6 + 3, 9 + 2)

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            arith(S({}, 2), S({}, 2), "div")

    @given(series(), series(), series())
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        left = a * (b + c)
        right = a * b + a * c
        assert left.agrees_with(right)

    @given(series(), series())
    def test_mul_matches_dense(self, a, b):
        p = a * b
        assert dense(p) == dense_mul(dense(a, p.precision), dense(b, p.precision), p.precision)
        assert all_fractions(p)


class TestDerivative:
    def test_examples(self):
        assert derivative(S({3: 1}, 10)).coeffs == {2: 3}
        assert derivative(S({2: 1, 7: 1}, 10)).coeffs == {1: 2, 6: 7}
        d = derivative(S({0: 5}, 4))
        assert d.is_zero() and d.precision == 3

    def test_exhausted(self):
        with pytest.raises(PrecisionExhausted):
            derivative(S({0: 1}, 1))


class TestRatio:
    def test_examples(self):
        assert ratio_d(S({3: 1}, 12), S({2: 1}, 12)).coeffs == {1: F(3, 2)}
        alpha, a = F(5, 7), F(-2, 3)
        got = ratio_d(S({3: alpha, 4: a}, 12), S({2: 1}, 12))
        assert got.coeffs == {1: 3 * alpha / 2, 2: 2 * a}
        # 7 t^6 / 4 t^3, frozen from the oracle's symbolic quotient
        assert ratio_d(S({7: 1}, 20), S({4: 1}, 20)).coeffs == {3: F(7, 4)}

    def test_precision_formula(self):
        f, g = S({5: 1}, 12), S({2: 1, 3: 1}, 9)
        assert ratio_d(f, g).precision == min(11, 8) - 1

    def test_errors(self):
        with pytest.raises(OrderViolation):
            ratio_d(S({2: 1}, 10), S({3: 1}, 10))
        with pytest.raises(UnknownOrderError):
            ratio_d(S({2: 1}, 10), S({}, 10))
        with pytest.raises(PrecisionExhausted):
            ratio_d(S({}, 3), S({4: 1}, 10))

    @given(series(max_prec=12), series(max_prec=12, min_order=1), st.integers(1, 4))
    def test_times_dg_gives_df(self, f, g, shift):
        g = g + S({shift: 1}, g.precision) if g.precision > shift else g
        dg = derivative(g) if g.precision > 1 else None
        assume(dg is not None and dg.order is not UNKNOWN_ORDER)
        df = derivative(f) if f.precision > 1 else None
        assume(df is not None)
        assume(df.order is UNKNOWN_ORDER or df.order >= dg.order)
        try:
            r = ratio_d(f, g)
        except PrecisionExhausted:
            return
        assert (r * dg).agrees_with(df, r.precision + dg.order)


class TestInverseAndRoot:
    @given(units())
    def test_inverse(self, u):
        inv = inverse_unit(u)
        assert (u * inv).agrees_with(S({0: 1}, u.precision))
        assert dense(inv) == dense_inverse(dense(u), u.precision)

    def test_inverse_not_unit(self):
        with pytest.raises(NotAUnit):
            inverse_unit(S({1: 1}, 5))

    def test_root_examples(self):
        assert nth_root_unit(S({0: 1}, 6), 4).coeffs == {0: 1}
        r = nth_root_unit(S({0: 1, 1: 1}, 6), 2)
        assert dense(r) == binomial_root(6, F(1, 2))
        assert dense(r)[:3] == [1, F(1, 2), F(-1, 8)]
        assert nth_root_unit(S({0: 1, 1: 2, 2: 1}, 8), 2).coeffs == {0: 1, 1: 1}

    def test_root_not_unit(self):
        with pytest.raises(NotAUnit):
            nth_root_unit(S({0: 2}, 5), 2)

    @given(series(max_prec=10), st.integers(2, 5))
    def test_root_power(self, s, m):
        u = S({**s.coeffs, 0: 1}, s.precision)
        r = nth_root_unit(u, m)
        assert (r ** m).agrees_with(u)
        assert all_fractions(r)


class TestCompose:
    def test_examples(self):
        assert compose(S({2: 1}, 10), S({1: 2}, 10)).coeffs == {2: 4}
        assert compose(S({3: 1}, 10), S({1: 1, 2: 1}, 10)).coeffs == {3: 1, 4: 3, 5: 3, 6: 1}
        tau = S({1: 3, 4: F(1, 2)}, 9)
        assert compose(S({1: 1}, 9), tau) == tau

    def test_constant_term_rejected(self):
        with pytest.raises(InvalidSubstitution):
            compose(S({1: 1}, 5), S({0: 1, 1: 1}, 5))

    @given(series(max_prec=8), series(max_prec=8, min_order=1))
    def test_matches_dense(self, s, tau):
        assume(tau.order is not UNKNOWN_ORDER)
        c = compose(s, tau)
        n = c.precision
        assert dense(c) == dense_compose(dense(s, n), dense(tau, n), n)

    @given(series(max_prec=8), nonzero_rationals, series(max_prec=8, min_order=2),
           nonzero_rationals, series(max_prec=8, min_order=2))
    def test_associative(self, s, c1, h1, c2, h2):
        t1 = h1 + S({1: c1}, h1.precision)
        t2 = h2 + S({1: c2}, h2.precision)
        left = compose(compose(s, t1), t2)
        right = compose(s, compose(t1, t2))
        assert left.agrees_with(right)

    @given(series(max_prec=9), nonzero_rationals, series(max_prec=9, min_order=2))
    def test_chain_rule(self, s, c1, h):
        tau = h + S({1: c1}, h.precision)
        assume(s.precision > 1 and tau.precision > 1)
        left = derivative(compose(s, tau))
        right = compose(derivative(s), tau) * derivative(tau)
        assert left.agrees_with(right)

    @given(nonzero_rationals, series(max_prec=9, min_order=2))
    def test_reversion(self, c1, h):
        sigma = h + S({1: c1}, h.precision)
        tau = reversion(sigma)
        assert compose(sigma, tau).agrees_with(S({1: 1}, sigma.precision))


def test_render():
    assert S({1: F(3, 2)}, 8).render() == "3/2*t + O(t^8)"
    assert S({}, 3).render() == "0 + O(t^3)"
    assert S({0: 1, 2: -1}, 4).render() == "1 - t^2 + O(t^4)"
