"""Curve germs in C^n with rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from .series import (
    UNKNOWN_ORDER,
    PrecisionExhausted,
    TruncatedSeries,
    UnknownOrderError,
    compose,
    nth_root_unit,
    reversion,
)

__all__ = [
    "CurveGerm",
    "PreparedGerm",
    "TransformLog",
    "GermError",
    "DimensionError",
    "NotMonomial",
    "NotWellParameterized",
    "PrecisionInconclusive",
    "mult",
    "prepare",
    "strip_base_powers",
    "is_well_parameterized",
    "embedding_dimension_monomial",
    "minimal_generators",
    "reparameterize",
]


class GermError(ValueError):
    pass


class DimensionError(GermError):
    pass


class NotMonomial(GermError):
    pass


class NotWellParameterized(GermError):
    pass


class PrecisionInconclusive(GermError):
    pass


@dataclass(frozen=True)
class CurveGerm:
    """An n-tuple of series vanishing at ``t = 0``.

    ``exact`` marks germs whose coordinates are polynomials with every term
    stored; such germs can be re-truncated at any precision.
    """

    coords: tuple
    exact: bool = False

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) < 2:
            raise DimensionError(f"a curve germ needs at least 2 coordinates, got {len(coords)}")
        for i, c in enumerate(coords):
            if not isinstance(c, TruncatedSeries):
                raise TypeError(f"coordinate {i} is not a TruncatedSeries")
            if c.coeffs.get(0):
                raise GermError(f"coordinate {i} has nonzero constant term")
        if all(c.is_zero() for c in coords):
            raise UnknownOrderError("germ is constant to its precision")

    @classmethod
    def from_polynomials(cls, polys: Sequence, precision: int | None = None) -> "CurveGerm":
        """Build an exact germ from ``{exponent: coefficient}`` maps."""
        polys = [{int(e): Fraction(v) for e, v in p.items() if v} for p in polys]
        top = max((max(p) for p in polys if p), default=0)
        if precision is None:
            precision = top + 1
        exact = precision > top
        return cls(tuple(TruncatedSeries(p, precision) for p in polys), exact=exact)

    @classmethod
    def monomial(cls, exponents: Sequence, precision: int | None = None) -> "CurveGerm":
        """``(t^e1, t^e2, ...)``; an exponent of ``None`` or 0 gives a zero coordinate."""
        return cls.from_polynomials([{e: 1} if e else {} for e in exponents], precision)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def precision(self) -> int:
        return min(c.precision for c in self.coords)

    def degree(self) -> int:
        return max((max(c.support()) for c in self.coords if not c.is_zero()), default=0)

    def at_precision(self, precision: int) -> "CurveGerm":
        """Re-truncate; raising precision is only possible for exact germs."""
        if self.exact:
            return CurveGerm(tuple(TruncatedSeries(c.coeffs, precision) for c in self.coords),
                             exact=precision > self.degree())
        if precision > self.precision:
            raise PrecisionExhausted(
                f"germ known to precision {self.precision}; {precision} requested")
        return CurveGerm(tuple(c.truncate(precision) for c in self.coords))

    def polynomials(self) -> list:
        return [c.coeffs for c in self.coords]

    def render(self) -> str:
        from .cli import render_germ

        return render_germ(self)


def mult(g: CurveGerm) -> int:
    """Minimum of the coordinate orders."""
    orders = [c.order for c in g.coords if c.order is not UNKNOWN_ORDER]
    if not orders:
        raise UnknownOrderError("all coordinates vanish to precision")
    m = min(orders)
    for c in g.coords:
        if c.order is UNKNOWN_ORDER and c.precision <= m:
            raise UnknownOrderError(
                f"a zero-to-precision coordinate (precision {c.precision}) may have order below {m}")
    return m


@dataclass(frozen=True)
class TransformLog:
    """Replay data for :func:`prepare`.

    ``matrix[i]`` expresses prepared coordinate ``i`` as a rational linear
    combination of the original coordinates; ``reparam`` is ``t`` as a series
    in the new parameter (``None`` when no reparameterization was needed).
    """

    matrix: tuple
    reparam: TruncatedSeries | None = None
    steps: tuple = ()

    def replay(self, g: CurveGerm) -> CurveGerm:
        coords = []
        for row in self.matrix:
            acc = TruncatedSeries.zero(g.precision)
            for a, c in zip(row, g.coords):
                if a:
                    acc = acc + c.scale(a)
            coords.append(acc)
        if self.reparam is not None:
            coords = [compose(c, self.reparam) for c in coords]
        return CurveGerm(tuple(coords))


@dataclass(frozen=True)
class PreparedGerm:
    germ: CurveGerm
    mult: int
    orders: tuple
    transform_log: TransformLog = field(compare=False)


def _echelon(coords: list, rows: list, steps: list) -> tuple:
    """Strictly increasing orders by subtracting multiples of pivots."""
    remaining = list(range(len(coords)))
    out = []
    while remaining:
        known = [i for i in remaining if coords[i].order is not UNKNOWN_ORDER]
        if not known:
            out.extend(remaining)
            break
        o = min(coords[i].order for i in known)
        ties = [i for i in known if coords[i].order == o]
        p = ties[0]
        lead = coords[p][o]
        for j in ties[1:]:
            f = coords[j][o] / lead
            coords[j] = coords[j] - coords[p].scale(f)
            rows[j] = [a - f * b for a, b in zip(rows[j], rows[p])]
            steps.append(("subtract", j, p, f))
        out.append(p)
        remaining.remove(p)
    return out


def _linear_part(g: CurveGerm, steps: list, strip: bool = False):
    n = g.dim
    coords = list(g.coords)
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    perm = _echelon(coords, rows, steps)
    coords = [coords[i] for i in perm]
    rows = [rows[i] for i in perm]
    if perm != list(range(n)):
        steps.append(("permute", tuple(perm)))
    m = coords[0].order
    lead = coords[0][m]
    if lead != 1:
        coords[0] = coords[0].scale(1 / lead)
        rows[0] = [a / lead for a in rows[0]]
        steps.append(("scale", 0, 1 / lead))
    return coords, rows, m


def prepare(g: CurveGerm) -> PreparedGerm:
    """Coordinates with strictly increasing orders and first coordinate ``t^m``."""
    steps: list = []
    coords, rows, m = _linear_part(g, steps)
    x1 = coords[0]
    unit = x1.shift_down(m)
    reparam = None
    exact = g.exact
    if not (unit.coeffs == {0: 1}):
        if unit.precision < 2:
            raise PrecisionExhausted("first coordinate too short to reparameterize")
        w = nth_root_unit(unit, m)
        sigma = w.shift_up(1)
        reparam = reversion(sigma)
        coords = [compose(c, reparam) for c in coords]
        steps.append(("reparameterize", reparam))
        exact = False
    p1 = coords[0].precision
    if p1 <= m:
        raise PrecisionExhausted("reparameterized first coordinate is not known to its leading term")
    first = TruncatedSeries.monomial(1, m, p1)
    if not coords[0].agrees_with(first):
        raise PrecisionExhausted("reparameterization did not produce a monomial first coordinate")
    coords[0] = first
    germ = CurveGerm(tuple(coords), exact=exact and all(c.precision == g.precision for c in coords))
    orders = tuple(c.order for c in coords if c.order is not UNKNOWN_ORDER)
    log = TransformLog(tuple(tuple(r) for r in rows), reparam, tuple(steps))
    return PreparedGerm(germ, m, orders, log)


def strip_base_powers(p: PreparedGerm) -> PreparedGerm:
    """Remove from coordinates 2..n every term ``t^(k m)``, then re-echelon.

    Subtracting a polynomial in the first coordinate ``x = t^m`` is an
    analytic change of coordinates, so the result realizes the same tower
    points while its orders obey the formulas ``ord(d^s y/dx^s) = ord(y) - s m``.
    """
    m = p.mult
    coords = [p.germ.coords[0]]
    for c in p.germ.coords[1:]:
        coords.append(TruncatedSeries({e: v for e, v in c.coeffs.items() if e % m}, c.precision))
    rest = coords[1:]
    steps = list(p.transform_log.steps) + [("strip", m)]
    rows = [[Fraction(int(i == j)) for j in range(len(rest))] for i in range(len(rest))]
    if rest:
        perm = _echelon(rest, rows, steps)
        rest = [rest[i] for i in perm]
    germ = CurveGerm(tuple([coords[0]] + rest), exact=p.germ.exact)
    orders = tuple(c.order for c in germ.coords if c.order is not UNKNOWN_ORDER)
    return PreparedGerm(germ, m, orders, p.transform_log)


def support_gcd(g: CurveGerm) -> int:
    return reduce(gcd, (e for c in g.coords for e in c.support()), 0)


def _double_point_free(g: CurveGerm) -> bool:
    """Exact injectivity test near 0 for polynomial germs.

    ``g(t) = g(s)`` with ``t != s`` near the origin happens along a curve
    through ``(0, 0)`` exactly when the difference quotients
    ``(g_i(t) - g_i(s)) / (t - s)`` share a factor vanishing there.
    """
    import sympy as sp

    t, s = sp.symbols("t s")
    common = None
    for c in g.coords:
        if c.is_zero():
            continue
        poly = sum(sp.Rational(v.numerator, v.denominator) * t**e for e, v in c.coeffs.items())
        quotient = sp.Poly(sp.cancel((poly - poly.subs(t, s)) / (t - s)), t, s, domain="QQ")
        common = quotient if common is None else sp.gcd(common, quotient)
    return common.as_expr().subs({t: 0, s: 0}) != 0


def is_well_parameterized(g: CurveGerm) -> bool:
    """Injectivity of ``t -> g(t)`` near 0.

    Certified shortcuts come first: the support gcd of the prepared germ
    being 1 proves injectivity, and an exact germ whose exponents share a
    factor ``d`` factors through ``t^d``.  Exact germs the gcd cannot settle
    go to :func:`_double_point_free`; truncated ones raise
    :class:`PrecisionInconclusive`.
    """
    if g.exact:
        if support_gcd(g) > 1:
            return False
        coords, _, m = _linear_part(g, [])
        if all(c.is_zero() for c in coords[1:]):
            # the image is a line, covered m times
            return m == 1
        try:
            p = prepare(g.at_precision(g.degree() + m + 1))
        except (PrecisionExhausted, UnknownOrderError):
            return _double_point_free(g)
        d = support_gcd(p.germ)
        if d == 1:
            return True
        return False if p.germ.exact else _double_point_free(g)
    p = prepare(g)
    d = support_gcd(p.germ)
    if d == 1:
        return True
    raise PrecisionInconclusive(
        f"all known exponents share the factor {d} up to precision {p.germ.precision}")


def minimal_generators(exponents) -> list:
    """Minimal generating set of the additive monoid spanned by ``exponents``."""
    gens = []
    for e in sorted(set(exponents)):
        reach = [False] * (e + 1)
        reach[0] = True
        for k in range(1, e + 1):
            reach[k] = any(k >= a and reach[k - a] for a in gens)
        if not reach[e]:
            gens.append(e)
    return gens


def embedding_dimension_monomial(g: CurveGerm) -> int:
    p = prepare(g)
    exps = []
    for c in p.germ.coords:
        sup = c.support()
        if len(sup) > 1:
            raise NotMonomial(f"prepared coordinate {c.render()} is not a monomial")
        exps.extend(sup)
    return len(minimal_generators(exps))


def reparameterize(g: CurveGerm, tau: TruncatedSeries, *, tau_exact: bool = False) -> CurveGerm:
    """``g(tau(t))``.  Exact germs composed with an exact polynomial stay exact."""
    if g.exact and tau_exact:
        top = g.degree() * max(tau.support())
        big = top + 1
        tau_big = TruncatedSeries(tau.coeffs, big)
        coords = [compose(TruncatedSeries(c.coeffs, big), tau_big) for c in g.coords]
        assert all(c.precision >= big for c in coords)
        return CurveGerm(tuple(TruncatedSeries(c.coeffs, big) for c in coords), exact=True)
    return CurveGerm(tuple(compose(c, tau) for c in g.coords))
