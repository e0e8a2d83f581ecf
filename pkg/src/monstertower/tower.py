"""Prolongation of curve germs up the Monster tower in Kumpera-Ruiz charts.

At level ``k`` the curve ``gamma^k`` is represented by an *active tuple*
``(g, u_1, ..., u_{n-1})`` of chart coordinates restricted to the curve:
``g`` is the chart denominator (its differential cuts out the vertical
hyperplane) and the ``u_j`` are the fiber-affine coordinates.  One step of
prolongation picks the coordinate whose derivative has minimal order as the
next denominator and forms ``df/dg`` for every other member of the tuple.

Critical hyperplanes other than the vertical one are tracked as
``{dc = 0}`` for a fiber coordinate ``c``: a plane survives a step when the
curve's direction lies in it and is then replaced by ``{d(dc/dg) = 0}``;
a vertical step spawns ``{d(df/dg) = 0}`` for the outgoing denominator ``f``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .germ import CurveGerm, NotWellParameterized, is_well_parameterized, mult
from .series import (
    UNKNOWN_ORDER,
    PrecisionExhausted,
    TruncatedSeries,
    UnknownOrderError,
    derivative,
    inverse_unit,
    order_exceeds,
    ratio_d,
)
from .words import RvtCode

__all__ = [
    "BaseCoord",
    "Ratio",
    "ChartCoord",
    "CriticalPlane",
    "LevelRecord",
    "TowerTrace",
    "PointRecord",
    "AmbiguousOrder",
    "HorizonExceeded",
    "InternalInconsistency",
    "default_precision",
    "start_trace",
    "prolong_step",
    "prolong",
    "rvt_code",
    "multiplicity_sequence",
    "regularization_level",
    "point_of",
    "trace_violations",
]

VERTICAL = "vertical"
TANGENCY = "tangency"


class AmbiguousOrder(UnknownOrderError):
    pass


class HorizonExceeded(RuntimeError):
    pass


class InternalInconsistency(AssertionError):
    pass


@dataclass(frozen=True)
class BaseCoord:
    index: int


@dataclass(frozen=True)
class Ratio:
    numerator: int
    denominator: int


@dataclass(frozen=True)
class ChartCoord:
    id: int
    birth_level: int
    series: TruncatedSeries = field(repr=False)
    provenance: object
    name: str


@dataclass(frozen=True)
class CriticalPlane:
    covector_coord: int
    birth_level: int
    kind: str


@dataclass(frozen=True)
class LevelRecord:
    level: int
    active_coords: tuple
    denominator: int | None
    tangency_planes: tuple
    letter: str | None
    letter_planes: tuple
    multiplicity: int
    point_coords: tuple

    @property
    def vertical_plane(self) -> CriticalPlane | None:
        if self.denominator is None:
            return None
        return CriticalPlane(self.denominator, self.level, VERTICAL)

    @property
    def critical_planes(self) -> tuple:
        v = self.vertical_plane
        return ((v,) if v else ()) + self.tangency_planes

    @property
    def fiber_values(self) -> tuple:
        return self.point_coords[1:] if self.level else ()


@dataclass(frozen=True)
class TowerTrace:
    germ: CurveGerm
    records: tuple
    coords: dict = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.germ.dim

    @property
    def levels(self) -> int:
        return len(self.records) - 1

    @property
    def letters(self) -> str:
        return "".join(r.letter for r in self.records[1:])

    @property
    def multiplicities(self) -> list:
        return [r.multiplicity for r in self.records]

    def coord(self, cid: int) -> ChartCoord:
        return self.coords[cid]

    def code(self) -> RvtCode:
        ann = tuple(tuple((p.kind, p.birth_level) for p in r.letter_planes)
                    for r in self.records[1:])
        return RvtCode(self.letters, ann)


@dataclass(frozen=True)
class PointRecord:
    level: int
    chart_path: tuple
    coords: tuple

    @property
    def fiber(self) -> tuple:
        return tuple(v for _, v in self.coords[1:]) if self.level else ()


def default_precision(levels: int, multiplicity: int) -> int:
    return 2 * (levels + 2) * multiplicity + 8


def _certified_min_order(series_list) -> tuple:
    """Minimal order over ``series_list`` and the indices attaining it."""
    known = [s.order for s in series_list if s.order is not UNKNOWN_ORDER]
    if not known:
        raise AmbiguousOrder("every derivative in the chart vanishes to precision")
    d = min(known)
    attains = [i for i, s in enumerate(series_list) if s.order == d]
    for s in series_list:
        if s.order is UNKNOWN_ORDER:
            try:
                order_exceeds(s, d)
            except UnknownOrderError as exc:
                raise AmbiguousOrder(str(exc)) from None
    return d, attains


def _exceeds(s: TruncatedSeries, d: int) -> bool:
    try:
        return order_exceeds(s, d)
    except UnknownOrderError as exc:
        raise AmbiguousOrder(str(exc)) from None


def _point_values(active) -> tuple:
    return tuple(c.series.value_at_zero() for c in active)


def start_trace(g: CurveGerm) -> TowerTrace:
    names = ["x", "y", "z"] if g.dim <= 3 else [f"x{i + 1}" for i in range(g.dim)]
    active = tuple(ChartCoord(i, 0, s, BaseCoord(i), names[i]) for i, s in enumerate(g.coords))
    rec = LevelRecord(0, active, None, (), None, (), mult(g), _point_values(active))
    return TowerTrace(g, (rec,), {c.id: c for c in active})


def prolong_step(trace: TowerTrace) -> TowerTrace:
    """Append the next level to ``trace``."""
    last = trace.records[-1]
    k = last.level
    active = last.active_coords
    derivs = [derivative(c.series) for c in active]
    d, attains = _certified_min_order(derivs)

    if k >= 1 and 0 in attains:
        gi, vertical = 0, False
    else:
        gi = min(attains, key=lambda i: active[i].id)
        vertical = k >= 1

    pos = {c.id: i for i, c in enumerate(active)}
    in_planes = []
    for plane in last.tangency_planes:
        if plane.covector_coord in pos:
            dc = derivs[pos[plane.covector_coord]]
        else:
            dc = derivative(trace.coords[plane.covector_coord].series)
        if _exceeds(dc, d):
            in_planes.append(plane)

    if vertical:
        letter = "L" if in_planes else "V"
    else:
        letter = "T" if in_planes else "R"
    letter_planes = ((last.vertical_plane,) if vertical else ()) + tuple(in_planes)

    g = active[gi]
    dg = derivs[gi]
    others = [c for i, c in enumerate(active) if i != gi]
    inv_prec = dg.precision - d
    if inv_prec < 1:
        raise PrecisionExhausted(f"denominator {g.name} exhausted at level {k}")
    inv = inverse_unit(dg.shift_down(d))

    level = k + 1
    next_id = max(trace.coords) + 1
    coords = dict(trace.coords)
    fibers = []
    made = {}
    for j, c in enumerate(others):
        s = ratio_d(c.series, g.series, dg=dg, dg_unit_inverse=inv)
        nc = ChartCoord(next_id, level, s, Ratio(c.id, g.id), f"u{level}_{j + 1}")
        next_id += 1
        coords[nc.id] = nc
        fibers.append(nc)
        made[c.id] = nc.id

    planes = [CriticalPlane(made[p.covector_coord], p.birth_level, TANGENCY) for p in in_planes]
    if vertical:
        planes.append(CriticalPlane(made[active[0].id], k, TANGENCY))

    new_active = (g,) + tuple(fibers)
    disp = [c.series.displacement() for c in new_active]
    m, _ = _certified_min_order(disp)

    if k >= 1:
        drop = last.multiplicity < trace.records[-2].multiplicity
        if drop != vertical:
            raise InternalInconsistency(
                f"level {level}: vertical={vertical} but multiplicity drop={drop}")

    rec = LevelRecord(
        level=level,
        active_coords=new_active,
        denominator=g.id,
        tangency_planes=tuple(planes),
        letter=letter,
        letter_planes=letter_planes,
        multiplicity=m,
        point_coords=_point_values(new_active),
    )
    return TowerTrace(trace.germ, trace.records + (rec,), coords)


def _prolong_fixed(g: CurveGerm, k: int) -> TowerTrace:
    trace = start_trace(g)
    for level in range(k):
        try:
            trace = prolong_step(trace)
        except (PrecisionExhausted, UnknownOrderError) as exc:
            exc.level = level + 1
            raise
    return trace


def prolong(g: CurveGerm, k: int, precision: int | None = None,
            adaptive: bool = True) -> TowerTrace:
    """Prolong ``g`` through ``k`` levels.

    For exact (polynomial) germs without an explicit ``precision`` the run
    starts at a modest precision and doubles on failure, up to four times
    :func:`default_precision`.  Every decision is certified, so any run that
    completes is exact.
    """
    if k < 0:
        raise ValueError("levels must be non-negative")
    if precision is not None:
        return _prolong_fixed(g.at_precision(precision) if g.exact or precision < g.precision else g, k)
    if not g.exact:
        return _prolong_fixed(g, k)
    m = mult(g)
    cap = 4 * default_precision(k, m)
    p = (k + 2) * m + 8 if adaptive else default_precision(k, m)
    while True:
        try:
            return _prolong_fixed(g.at_precision(p), k)
        except (PrecisionExhausted, UnknownOrderError):
            if p >= cap:
                raise
            p = min(2 * p, cap)


def rvt_code(g: CurveGerm, k: int, **kw) -> RvtCode:
    return prolong(g, k, **kw).code()


def multiplicity_sequence(g: CurveGerm, k: int, **kw) -> list:
    return prolong(g, k, **kw).multiplicities


def _regular_from(trace: TowerTrace):
    recs = trace.records
    for r in range(len(recs) - 1):
        if recs[r].multiplicity == 1 and all(x.letter == "R" for x in recs[r + 1:]):
            return r
    return None


def regularization_level(g: CurveGerm, horizon: int = 64) -> int:
    """First level from which the prolonged curve is immersed and stays regular."""
    if not is_well_parameterized(g):
        raise NotWellParameterized("germ factors through a non-invertible reparameterization")
    k = min(8, horizon)
    while True:
        try:
            trace = prolong(g, k)
        except (PrecisionExhausted, UnknownOrderError) as exc:
            raise HorizonExceeded(f"precision ran out before level {k}: {exc}") from exc
        r = _regular_from(trace)
        if r is not None:
            return r
        if k >= horizon:
            raise HorizonExceeded(f"no all-R tail within {horizon} levels")
        k = min(2 * k, horizon)


def point_of(trace: TowerTrace, level: int) -> PointRecord:
    rec = trace.records[level]
    path = tuple(trace.coord(r.denominator).name for r in trace.records[1:level + 1])
    coords = tuple((c.name, v) for c, v in zip(rec.active_coords, rec.point_coords))
    return PointRecord(level, path, coords)


def critical_tail(letters: str) -> int:
    n = 0
    for ch in reversed(letters):
        if ch == "R":
            break
        n += 1
    return n


def trace_violations(trace: TowerTrace) -> list:
    """Structural invariants of a trace; an empty list means all hold."""
    out = []
    n = trace.dim
    recs = trace.records
    letters = trace.letters
    if letters and letters[0] != "R":
        out.append("first letter is not R")
    for i in range(1, len(letters)):
        if letters[i] in "TL" and letters[i - 1] == "R":
            out.append(f"{letters[i]} immediately after R at position {i + 1}")
    for r in recs:
        planes = r.critical_planes
        if len(planes) > n:
            out.append(f"level {r.level}: {len(planes)} critical planes > n={n}")
        if r.level and len(planes) > 1 + critical_tail(letters[:r.level]):
            out.append(f"level {r.level}: plane count exceeds 1 + critical tail")
        ids = [p.covector_coord for p in planes]
        if len(set(ids)) != len(ids):
            out.append(f"level {r.level}: repeated plane covector")
        if r.level and sum(p.kind == VERTICAL for p in planes) != 1:
            out.append(f"level {r.level}: vertical plane count != 1")
    for i in range(1, len(recs)):
        if recs[i].multiplicity > recs[i - 1].multiplicity:
            out.append(f"multiplicity increases at level {i}")
    for i in range(2, len(recs)):
        vert = recs[i].letter in "VL"
        drop = recs[i - 1].multiplicity < recs[i - 2].multiplicity
        if vert != drop:
            out.append(f"level {i}: vertical letter and multiplicity drop disagree")
    return out


def fraction_str(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
