"""Seeded random germ corpora for the invariant and Enriques experiments."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .classify import A2K, RSVL, RSVRMV, RSVT, RSVV, SingularityClass, normal_form
from .germ import CurveGerm
from .series import TruncatedSeries

__all__ = [
    "random_polynomial_germ",
    "random_monomial_germ",
    "random_order_one_substitution",
    "normal_form_generators",
    "a2k_germs",
]


def _rational(rng: random.Random, size: int = 3) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def random_polynomial_germ(rng: random.Random, max_dim: int = 4, max_mult: int = 5,
                           max_degree: int = 12) -> CurveGerm:
    """A germ whose multiplicity is attained by a random coordinate."""
    n = rng.randint(2, max_dim)
    m = rng.randint(1, max_mult)
    polys = []
    for _ in range(n):
        p = {}
        for _ in range(rng.randint(0, 3)):
            p[rng.randint(m, max_degree)] = _rational(rng)
        polys.append({e: v for e, v in p.items() if v})
    lead = polys[rng.randrange(n)]
    lead[m] = Fraction(rng.choice([1, -1, 2, -3])) / rng.choice([1, 2])
    return CurveGerm.from_polynomials(polys)


def random_monomial_germ(rng: random.Random, max_dim: int = 4, max_mult: int = 6,
                         max_exponent: int = 16) -> CurveGerm:
    """A well-parameterized monomial germ ``(t^m, t^a, ...)``: exponents have gcd 1."""
    while True:
        n = rng.randint(2, max_dim)
        m = rng.randint(1, max_mult)
        exps = [m] + [rng.choice([0] + list(range(m + 1, max_exponent + 1))) for _ in range(n - 1)]
        g = 0
        for e in exps:
            g = gcd(g, e)
        if g == 1:
            return CurveGerm.monomial(exps)


def random_order_one_substitution(rng: random.Random, precision: int = 100) -> TruncatedSeries:
    """``tau = c1 t + c2 t^2 + c3 t^3`` with ``c1`` a nonzero rational."""
    c1 = Fraction(0)
    while not c1:
        c1 = _rational(rng)
    return TruncatedSeries({1: c1, 2: _rational(rng), 3: _rational(rng, 2)}, precision)


def normal_form_generators(params=(1, 2, 3), trailing=(0,), dims=(3,)):
    """``(class, germ)`` for every codimension-two family plus RsVL."""
    for fam in (RSVT, RSVV, RSVL, RSVRMV):
        for s in params:
            for m in (params if fam == RSVRMV else (None,)):
                for q in trailing:
                    for n in dims:
                        if fam == RSVL and n < 3:
                            continue
                        c = SingularityClass.make(fam, s=s, m=m, trailing_R=q)
                        yield c, normal_form(c, n)


def a2k_germs(max_k: int = 5, n: int = 3):
    for k in range(1, max_k + 1):
        yield k, normal_form(SingularityClass.make(A2K, k=k), n)
