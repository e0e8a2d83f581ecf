"""Exact truncated power series in one variable ``t`` over the rationals.

A :class:`TruncatedSeries` is a sparse map ``exponent -> Fraction`` together
with a precision ``N``: the series is known modulo ``O(t^N)``.  Every operation
propagates precision conservatively and fails with :class:`PrecisionExhausted`
rather than returning an answer it cannot certify.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Rat = Fraction
Number = Union[int, Fraction]

__all__ = [
    "Rat",
    "TruncatedSeries",
    "UNKNOWN_ORDER",
    "SeriesError",
    "PrecisionExhausted",
    "OrderViolation",
    "UnknownOrderError",
    "NotAUnit",
    "InvalidSubstitution",
    "order",
    "order_exceeds",
    "arith",
    "derivative",
    "ratio_d",
    "inverse_unit",
    "nth_root_unit",
    "compose",
    "reversion",
]


class SeriesError(ArithmeticError):
    """Base class for series failures."""


class PrecisionExhausted(SeriesError):
    pass


class OrderViolation(SeriesError):
    pass


class UnknownOrderError(SeriesError):
    pass


class NotAUnit(SeriesError):
    pass


class InvalidSubstitution(SeriesError):
    pass


class _UnknownOrder:
    """Order of a series that vanishes to its precision."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNKNOWN_ORDER"

    def __reduce__(self):
        return (_UnknownOrder, ())


UNKNOWN_ORDER = _UnknownOrder()


class TruncatedSeries:
    """Sparse exact series known modulo ``t**precision``.

    Instances are immutable; arithmetic returns new series.
    """

    __slots__ = ("_c", "_prec", "_hash")

    def __init__(self, coeffs: Mapping[int, Number] | None = None, precision: int = 1):
        if precision < 1:
            raise PrecisionExhausted(f"precision must be positive, got {precision}")
        c = {}
        for e, v in (coeffs or {}).items():
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            if e >= precision:
                continue
            v = Fraction(v)
            if v:
                c[e] = v
        self._c = c
        self._prec = precision
        self._hash = None

    @classmethod
    def _raw(cls, c: dict, precision: int) -> "TruncatedSeries":
        # trusted constructor: c already clean (Fractions, nonzero, < precision)
        s = object.__new__(cls)
        s._c = c
        s._prec = precision
        s._hash = None
        return s

    @classmethod
    def monomial(cls, coeff: Number, exponent: int, precision: int) -> "TruncatedSeries":
        return cls({exponent: coeff}, precision)

    @classmethod
    def constant(cls, value: Number, precision: int) -> "TruncatedSeries":
        return cls({0: value}, precision)

    @classmethod
    def zero(cls, precision: int) -> "TruncatedSeries":
        return cls._raw({}, precision)

    @classmethod
    def from_list(cls, coeffs: Iterable[Number], precision: int | None = None) -> "TruncatedSeries":
        coeffs = list(coeffs)
        if precision is None:
            precision = len(coeffs)
        return cls(dict(enumerate(coeffs)), precision)

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    @property
    def precision(self) -> int:
        return self._prec

    def __getitem__(self, e: int) -> Fraction:
        if e >= self._prec:
            raise PrecisionExhausted(f"coefficient of t^{e} unknown at precision {self._prec}")
        return self._c.get(e, Fraction(0))

    def items(self):
        return sorted(self._c.items())

    def support(self) -> list:
        return sorted(self._c)

    @property
    def order(self):
        return min(self._c) if self._c else UNKNOWN_ORDER

    def is_zero(self) -> bool:
        """True when the series vanishes to its precision."""
        return not self._c

    def value_at_zero(self) -> Fraction:
        return self[0]

    def displacement(self) -> "TruncatedSeries":
        """The series minus its constant term."""
        c = {e: v for e, v in self._c.items() if e}
        return TruncatedSeries._raw(c, self._prec)

    def truncate(self, precision: int) -> "TruncatedSeries":
        if precision > self._prec:
            raise PrecisionExhausted(f"cannot raise precision {self._prec} to {precision}")
        if precision < 1:
            raise PrecisionExhausted("truncation to non-positive precision")
        return TruncatedSeries._raw({e: v for e, v in self._c.items() if e < precision}, precision)

    def shift_down(self, d: int) -> "TruncatedSeries":
        """Divide by ``t**d``; every stored exponent must be at least ``d``."""
        if d == 0:
            return self
        if any(e < d for e in self._c):
            raise OrderViolation(f"series has terms below t^{d}")
        if self._prec - d < 1:
            raise PrecisionExhausted(f"dividing by t^{d} leaves no known terms")
        return TruncatedSeries._raw({e - d: v for e, v in self._c.items()}, self._prec - d)

    def shift_up(self, d: int) -> "TruncatedSeries":
        return TruncatedSeries._raw({e + d: v for e, v in self._c.items()}, self._prec + d)

    def scale(self, k: Number) -> "TruncatedSeries":
        k = Fraction(k)
        if not k:
            return TruncatedSeries.zero(self._prec)
        return TruncatedSeries._raw({e: v * k for e, v in self._c.items()}, self._prec)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(other, self._prec)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return arith(self, other, "add")

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(other, self._prec)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return arith(self, other, "sub")

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return arith(self, other, "mul")

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = TruncatedSeries.constant(1, self._prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._prec == other._prec and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._prec, tuple(sorted(self._c.items()))))
        return self._hash

    def agrees_with(self, other: "TruncatedSeries", precision: int | None = None) -> bool:
        """Equality of the coefficients both series know (or up to ``precision``)."""
        p = min(self._prec, other._prec)
        if precision is not None:
            p = min(p, precision)
        return all(self._c.get(e, 0) == other._c.get(e, 0)
                   for e in set(self._c) | set(other._c) if e < p)

    def __repr__(self):
        return f"TruncatedSeries({self.render()})"

    def render(self, var: str = "t") -> str:
        terms = []
        for e, v in self.items():
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
            if not mono:
                terms.append(str(v))
            elif v == 1:
                terms.append(mono)
            elif v == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{v}*{mono}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O({var}^{self._prec})"


def order(s: TruncatedSeries):
    """Smallest exponent with nonzero coefficient, or ``UNKNOWN_ORDER``."""
    return s.order


def order_exceeds(s: TruncatedSeries, d: int) -> bool:
    """Certified test ``ord(s) > d``.

    Raises :class:`UnknownOrderError` when ``s`` vanishes to a precision that
    does not reach beyond ``d``.
    """
    o = s.order
    if o is UNKNOWN_ORDER:
        if s.precision > d + 1:
            return True
        raise UnknownOrderError(
            f"series vanishes to precision {s.precision}; cannot compare its order with {d}")
    return o > d


def _mul_prec(a: TruncatedSeries, b: TruncatedSeries) -> int:
    oa = a.order if a._c else a._prec
    ob = b.order if b._c else b._prec
    return min(a._prec + ob, b._prec + oa)


def arith(a: TruncatedSeries, b: TruncatedSeries, op: str) -> TruncatedSeries:
    if op == "add" or op == "sub":
        p = min(a._prec, b._prec)
        c = {e: v for e, v in a._c.items() if e < p}
        sign = 1 if op == "add" else -1
        for e, v in b._c.items():
            if e >= p:
                continue
            w = c.get(e, 0) + sign * v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        return TruncatedSeries._raw(c, p)
    if op == "mul":
        p = _mul_prec(a, b)
        c = {}
        bi = sorted(b._c.items())
        for e1, v1 in a._c.items():
            lim = p - e1
            for e2, v2 in bi:
                if e2 >= lim:
                    break
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return TruncatedSeries._raw({e: v for e, v in c.items() if v}, p)
    raise ValueError(f"unknown op {op!r}")


def derivative(s: TruncatedSeries) -> TruncatedSeries:
    if s._prec <= 1:
        raise PrecisionExhausted("derivative of a series known only to O(t)")
    return TruncatedSeries._raw({e - 1: v * e for e, v in s._c.items() if e}, s._prec - 1)


def inverse_unit(s: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with nonzero constant term."""
    a0 = s._c.get(0)
    if not a0:
        raise NotAUnit("series has zero constant term")
    p = s._prec
    inv0 = 1 / a0
    items = sorted((e, v) for e, v in s._c.items() if e)
    b = [Fraction(0)] * p
    b[0] = inv0
    for k in range(1, p):
        acc = Fraction(0)
        for e, v in items:
            if e > k:
                break
            acc += v * b[k - e]
        b[k] = -acc * inv0
    return TruncatedSeries._raw({e: v for e, v in enumerate(b) if v}, p)


def ratio_d(f: TruncatedSeries, g: TruncatedSeries, *, dg: TruncatedSeries | None = None,
            dg_unit_inverse: TruncatedSeries | None = None) -> TruncatedSeries:
    """The series ``df/dg = f'(t) / g'(t)``.

    ``t^ord(g')`` is factored from both derivatives and the remaining unit
    is inverted.  ``dg`` and ``dg_unit_inverse`` may be passed to reuse work
    when several numerators share one denominator.
    """
    fp = derivative(f)
    gp = dg if dg is not None else derivative(g)
    d = gp.order
    if d is UNKNOWN_ORDER:
        raise UnknownOrderError("denominator derivative vanishes to precision")
    fo = fp.order
    if fo is not UNKNOWN_ORDER and fo < d:
        raise OrderViolation(f"ord(f')={fo} < ord(g')={d}: quotient is not a power series")
    prec = min(fp._prec, gp._prec) - d
    if prec <= 0:
        raise PrecisionExhausted("quotient has no certified terms")
    if dg_unit_inverse is None:
        dg_unit_inverse = inverse_unit(gp.shift_down(d).truncate(prec))
    num = TruncatedSeries._raw({e - d: v for e, v in fp._c.items() if e < d + prec}, prec)
    out = arith(num, dg_unit_inverse, "mul")
    return out if out._prec == prec else out.truncate(min(out._prec, prec))


def nth_root_unit(s: TruncatedSeries, m: int) -> TruncatedSeries:
    """The ``m``-th root with constant term 1 of a series ``1 + O(t)``."""
    if m < 1:
        raise ValueError("root index must be positive")
    if s._c.get(0) != 1:
        raise NotAUnit("nth_root_unit needs constant term exactly 1")
    p = s._prec
    alpha = Fraction(1, m)
    items = sorted((e, v) for e, v in s._c.items() if e)
    # b = a^alpha, a_0 = 1:  n b_n = sum_k ((alpha + 1) k - n) a_k b_{n-k}
    b = [Fraction(0)] * p
    b[0] = Fraction(1)
    for n in range(1, p):
        acc = Fraction(0)
        for k, a in items:
            if k > n:
                break
            acc += ((alpha + 1) * k - n) * a * b[n - k]
        b[n] = acc / n
    return TruncatedSeries._raw({e: v for e, v in enumerate(b) if v}, p)


def compose(s: TruncatedSeries, tau: TruncatedSeries) -> TruncatedSeries:
    """``s(tau(t))`` for ``tau`` without constant term."""
    if tau._c.get(0):
        raise InvalidSubstitution("substituted series has a nonzero constant term")
    ot = tau.order if tau._c else tau._prec
    # truncation of s contributes O(t^(prec_s * ord tau))
    p = s._prec * ot
    if s._c:
        top = max(s._c)
        # error in tau^e is O(t^(prec_tau + (e-1) ord tau)) for e >= 1
        low = [e for e in s._c if e >= 1]
        if low:
            p = min(p, tau._prec + (min(low) - 1) * ot)
    else:
        top = 0
    result = {}
    power = TruncatedSeries.constant(1, p)
    for e in range(0, top + 1):
        if e:
            power = arith(power, tau, "mul")
            if power._prec < p:
                p = power._prec
        v = s._c.get(e)
        if v:
            for k, w in power._c.items():
                if k < p:
                    result[k] = result.get(k, 0) + v * w
    return TruncatedSeries._raw({e: v for e, v in result.items() if v and e < p}, p)


def reversion(sigma: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of ``sigma = c t + O(t^2)``, ``c != 0``.

    Newton steps ``tau <- tau - (sigma(tau) - t) / sigma'(tau)`` double the
    number of correct terms; the result is checked by composing back.
    """
    c1 = sigma._c.get(1)
    if sigma._c.get(0) or not c1:
        raise InvalidSubstitution("reversion needs a series of the form c*t + O(t^2) with c != 0")
    p = sigma._prec
    dsigma = derivative(sigma)
    coeffs = {1: 1 / c1}
    known = 2
    while known < p:
        known = min(2 * known, p)
        tau = TruncatedSeries._raw({e: v for e, v in coeffs.items() if e < known}, known)
        resid = compose(sigma.truncate(known), tau) - TruncatedSeries.monomial(1, 1, known)
        slope = compose(dsigma.truncate(known - 1), tau)
        step = resid * inverse_unit(slope)
        coeffs = (tau - step).coeffs
    tau = TruncatedSeries._raw({e: v for e, v in coeffs.items() if e < p}, p)
    if not compose(sigma, tau).agrees_with(TruncatedSeries.monomial(1, 1, p)):
        raise PrecisionExhausted("reversion did not converge to the available precision")
    return tau
