"""Singularity classes of tower points through codimension two (plus RVL)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .germ import (
    CurveGerm,
    NotWellParameterized,
    is_well_parameterized,
    prepare,
    strip_base_powers,
)
from .series import UNKNOWN_ORDER
from .tower import rvt_code
from .words import RvtCode, SpellingError, codim, validate_code

__all__ = [
    "CARTAN", "A2K", "RSVT", "RSVV", "RSVL", "RSVRMV", "UNCLASSIFIED",
    "SingularityClass",
    "OrderCheck",
    "ConsistencyReport",
    "UnsupportedFamily",
    "WrongClass",
    "RvtCode",
    "SpellingError",
    "validate_code",
    "codim",
    "classify_code",
    "normal_form",
    "normal_form_jet_order",
    "classify_germ",
    "spatial_test",
    "ExponentPattern",
    "stable_orbit_census",
]

CARTAN = "Cartan"
A2K = "A2k"
RSVT = "RsVT"
RSVV = "RsVV_minus_L"
RSVL = "RsVL"
RSVRMV = "RsVRmV"
UNCLASSIFIED = "Unclassified"

PURELY_SPATIAL = "purely_spatial"
PLANAR = "planar"
INCONCLUSIVE = "inconclusive"


class UnsupportedFamily(ValueError):
    pass


class WrongClass(ValueError):
    pass


_SIMPLE = {
    CARTAN: "yes",
    A2K: "yes",
    RSVT: "yes",
    RSVV: "yes",
    RSVL: "conditional(s=1)",
    RSVRMV: "conditional(s=1)",
}


@dataclass(frozen=True)
class SingularityClass:
    family: str
    k: int | None = None
    s: int | None = None
    m: int | None = None
    trailing_R: int = 0
    codim: int = 0
    word: str = ""

    @classmethod
    def make(cls, family: str, *, k=None, s=None, m=None, trailing_R: int = 0) -> "SingularityClass":
        w = _word(family, k, s, m, trailing_R)
        return cls(family, k, s, m, trailing_R, codim(w), w)

    @property
    def simple(self) -> str | None:
        return _SIMPLE.get(self.family)

    def simplicity_readings(self) -> dict:
        """Both readings of the simplicity claim for the multiplicity-4 classes.

        One reading makes these classes simple only for ``s = 0``, the other
        exactly when ``s = 1``. They disagree for every admissible ``s >= 1``,
        so both are kept.
        """
        if self.family in (RSVL, RSVRMV):
            return {"simple_iff_s0": self.s == 0, "simple_iff_s1": self.s == 1, "discrepancy": True}
        if self.family == UNCLASSIFIED:
            return {"simple_iff_s0": None, "simple_iff_s1": None, "discrepancy": False}
        return {"simple_iff_s0": True, "simple_iff_s1": True, "discrepancy": False}

    @property
    def multiplicity(self) -> int | None:
        return {CARTAN: 1, A2K: 2, RSVT: 3, RSVV: 3, RSVL: 4, RSVRMV: 4}.get(self.family)

    def params(self) -> dict:
        return {name: v for name, v in (("k", self.k), ("s", self.s), ("m", self.m)) if v is not None}

    def __str__(self):
        p = ", ".join(f"{a}={b}" for a, b in self.params().items())
        return f"{self.family}({p}) R^{self.trailing_R} [codim {self.codim}]"


def _word(family, k, s, m, q) -> str:
    if family == CARTAN:
        return "R" * k
    if family == A2K:
        return "R" * k + "V" + "R" * q
    if family == RSVT:
        return "R" * s + "VT" + "R" * q
    if family == RSVV:
        return "R" * s + "VV" + "R" * q
    if family == RSVL:
        return "R" * s + "VL" + "R" * q
    if family == RSVRMV:
        return "R" * s + "V" + "R" * m + "V" + "R" * q
    raise UnsupportedFamily(family)


_PATTERNS = [
    (re.compile(r"^(R+)$"), CARTAN),
    (re.compile(r"^(R+)V(R*)$"), A2K),
    (re.compile(r"^(R+)VT(R*)$"), RSVT),
    (re.compile(r"^(R+)VV(R*)$"), RSVV),
    (re.compile(r"^(R+)VL(R*)$"), RSVL),
    (re.compile(r"^(R+)V(R+)V(R*)$"), RSVRMV),
]


def classify_code(w) -> SingularityClass:
    letters = w.letters if isinstance(w, RvtCode) else str(w)
    validate_code(letters)
    for pat, family in _PATTERNS:
        hit = pat.match(letters)
        if not hit:
            continue
        g = hit.groups()
        if family == CARTAN:
            return SingularityClass.make(CARTAN, k=len(g[0]))
        if family == A2K:
            return SingularityClass.make(A2K, k=len(g[0]), trailing_R=len(g[1]))
        if family == RSVRMV:
            return SingularityClass.make(RSVRMV, s=len(g[0]), m=len(g[1]), trailing_R=len(g[2]))
        return SingularityClass.make(family, s=len(g[0]), trailing_R=len(g[1]))
    return SingularityClass(UNCLASSIFIED, trailing_R=len(letters) - len(letters.rstrip("R")),
                            codim=codim(letters), word=letters)


def _generator(c: SingularityClass) -> list:
    f, k, s, m = c.family, c.k, c.s, c.m
    if f == CARTAN:
        return [{1: 1}]
    if f == A2K:
        return [{2: 1}, {2 * k + 1: 1}]
    if f == RSVT:
        return [{3: 1}, {3 * s + 1: 1}]
    if f == RSVV:
        return [{3: 1}, {3 * s + 2: 1}]
    if f == RSVRMV:
        return [{4: 1}, {4 * s + 2: 1, 4 * s + 2 * m + 1: 1}]
    if f == RSVL:
        return [{4: 1}, {4 * s + 2: 1}, {4 * s + 3: 1}]
    raise UnsupportedFamily(f"no normal form for {f}")


def normal_form_jet_order(c: SingularityClass) -> int | None:
    """The ``O(t^N)`` order printed next to the normal form (None if exact)."""
    return {
        RSVT: lambda: 3 * c.s + 2,
        RSVV: lambda: 3 * c.s + 4,
        RSVRMV: lambda: 4 * c.s + 3,
        RSVL: lambda: 4 * c.s + 4,
    }.get(c.family, lambda: None)()


def normal_form(c: SingularityClass, n: int) -> CurveGerm:
    """The normal-form generator in C^n as an exact polynomial germ."""
    polys = _generator(c)
    if n < max(len(polys), 2):
        raise UnsupportedFamily(f"{c.family} needs dimension at least {len(polys)}; got n={n}")
    polys = polys + [{}] * (n - len(polys))
    return CurveGerm.from_polynomials(polys)


@dataclass(frozen=True)
class OrderCheck:
    name: str
    expected: int | None
    actual: object
    ok: bool


@dataclass(frozen=True)
class ConsistencyReport:
    code: str
    prepared_orders: tuple
    checks: tuple
    notes: tuple = ()

    @property
    def consistent(self) -> bool:
        return all(c.ok for c in self.checks)


def _reduced(g: CurveGerm, min_precision: int = 0):
    if g.exact:
        g = g.at_precision(max(g.degree() + 1, min_precision) + 8)
    return strip_base_powers(prepare(g))


def _first_exponent_not_divisible(coords, d: int):
    best = None
    for i, c in enumerate(coords):
        for e in c.support():
            if e % d and (best is None or e < best[0]):
                best = (e, i)
    return best


def classify_germ(g: CurveGerm, level: int, **kw):
    """Classify the point ``g^level(0)`` and re-derive the orders its class forces."""
    if not is_well_parameterized(g):
        raise NotWellParameterized("classify_germ needs a well-parameterized germ")
    code = rvt_code(g, level, **kw)
    cls = classify_code(code)
    p = _reduced(g)
    orders = tuple(c.order for c in p.germ.coords)
    checks = []
    notes = []

    def check(name, expected, actual):
        checks.append(OrderCheck(name, expected, actual, expected == actual))

    def ord_at(i):
        if i >= len(orders) or orders[i] is UNKNOWN_ORDER:
            return None
        return orders[i]

    f = cls.family
    if f == CARTAN:
        check("mult", 1, p.mult)
    elif f == A2K:
        check("mult", 2, p.mult)
        check("ord(x2)", 2 * cls.k + 1, ord_at(1))
    elif f == RSVT:
        check("mult", 3, p.mult)
        check("ord(x2)", 3 * cls.s + 1, ord_at(1))
    elif f == RSVV:
        check("mult", 3, p.mult)
        check("ord(x2)", 3 * cls.s + 2, ord_at(1))
    elif f == RSVL:
        check("mult", 4, p.mult)
        check("ord(x2)", 4 * cls.s + 2, ord_at(1))
        check("ord(x3)", 4 * cls.s + 3, ord_at(2))
    elif f == RSVRMV:
        check("mult", 4, p.mult)
        check("ord(x2)", 4 * cls.s + 2, ord_at(1))
        odd = _first_exponent_not_divisible(p.germ.coords, 2)
        if odd is None:
            check("first odd exponent", 4 * cls.s + 2 * cls.m + 1, None)
        elif odd[1] == 1:
            check("first odd exponent", 4 * cls.s + 2 * cls.m + 1, odd[0])
        else:
            notes.append(f"first odd exponent {odd[0]} lies in coordinate {odd[1] + 1}; "
                         "its position is not fixed by the class")
    else:
        notes.append("unclassified code: no order equations")
    report = ConsistencyReport(code.letters, orders, tuple(checks), tuple(notes))
    return cls, report


def spatial_test(g: CurveGerm, c: SingularityClass) -> str:
    """Decide whether the point realized by ``g`` in class ``c`` is purely spatial."""
    if c.family not in (RSVT, RSVV, RSVL):
        raise WrongClass(f"spatial_test is defined for RsVT, RsVV and RsVL, not {c.family}")
    got, _ = classify_germ(g, len(c.word))
    if (got.family, got.s) != (c.family, c.s):
        raise WrongClass(f"germ realizes {got}, not {c}")
    if c.family == RSVL:
        return PURELY_SPATIAL
    decisive = 3 * c.s + 2 if c.family == RSVT else 3 * c.s + 4
    p = _reduced(g, decisive + 1)
    known = True
    for coord in p.germ.coords[2:]:
        if coord.precision <= decisive:
            known = False
            continue
        if coord[decisive]:
            return PURELY_SPATIAL
    return PLANAR if known else INCONCLUSIVE


@dataclass(frozen=True)
class ExponentPattern:
    """Exponent data ``(a, b + c, d)`` meaning the germ ``(t^a, t^b + t^c, t^d)``."""

    coords: tuple

    @property
    def spatial(self) -> bool:
        return len(self.coords) >= 3

    def render(self) -> str:
        return "(" + ",".join("+".join(map(str, c)) for c in self.coords) + ")"

    def to_germ(self, n: int | None = None) -> CurveGerm:
        polys = [{e: 1 for e in c} for c in self.coords]
        if n is not None:
            polys += [{}] * (n - len(polys))
        return CurveGerm.from_polynomials(polys)

    def __str__(self):
        return self.render()


def stable_orbit_census(c: SingularityClass, q: int) -> list:
    """Exponent normal forms refining the leading jet of ``c`` inside the q-window.

    With leading jet ``(3, b)`` the refinements use the gaps ``g`` of the
    semigroup ``<3, b>`` above ``b``: planar forms ``(3, b)`` and
    ``(3, b + g)``, spatial forms ``(3, b, d)`` and ``(3, b + g, d)`` with
    ``g < d``.  Only exponents up to ``b + q`` are visible.
    """
    if c.family == RSVT:
        b = 3 * c.s + 1
    elif c.family == RSVV:
        b = 3 * c.s + 2
    else:
        raise UnsupportedFamily(f"census defined for {RSVT} and {RSVV}, not {c.family}")
    window = b + q
    conductor = 2 * (b - 1)
    semigroup = {3 * i + b * j for i in range(conductor) for j in range(3)}
    gaps = [e for e in range(b + 1, conductor) if e not in semigroup and e <= window]
    out = [ExponentPattern(((3,), (b,)))]
    out += [ExponentPattern(((3,), (b, g))) for g in gaps]
    for d in gaps:
        out.append(ExponentPattern(((3,), (b,), (d,))))
        out += [ExponentPattern(((3,), (b, g), (d,))) for g in gaps if g < d]
    return out
