"""Scalar arithmetic in three interchangeable modes.

``f64``
    Python floats.
``rational``
    :class:`fractions.Fraction` (arbitrary precision, always in lowest terms).
``symbolic``
    :class:`RationalFunction`, a ratio of two polynomials in a single
    indeterminate ``t`` with rational coefficients.

The solvers are written against ordinary Python operators, so any of the
three value types can flow through them.  Fractions promote to rational
functions automatically (the rationals embed in Q(t)); floats never mix with
either exact type.

A zero pivot met in rational or symbolic mode is replaced by ``t``; all later
arithmetic happens in Q(t) and final results are evaluated at ``t = 0``.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Tuple, Union

from .counting import Counted
from .errors import (
    BreakdownInFloatMode,
    DegreeOverflow,
    DivisionByZero,
    ModeMismatch,
    PoleAtZero,
)

__all__ = [
    "Mode",
    "ZeroTest",
    "RationalFunction",
    "T",
    "DEGREE_CAP",
    "mode_of",
    "common_mode",
    "coerce",
    "zero",
    "one",
    "is_zero",
    "substitute_t",
    "eval_at_zero",
    "add",
    "sub",
    "mul",
    "div",
    "neg",
    "format_rational",
    "parse_rational",
]

DEGREE_CAP = int(os.environ.get("HEPTAX_DEGREE_CAP", "64"))

Poly = Tuple[Fraction, ...]


class Mode(str, enum.Enum):
    F64 = "f64"
    RATIONAL = "rational"
    SYMBOLIC = "symbolic"


@dataclass(frozen=True)
class ZeroTest:
    """Zero test used for pivots and small determinants.

    Only float64 values consult ``tolerance``; exact values are compared with
    zero exactly.
    """

    tolerance: float = 0.0

    def __post_init__(self):
        if not self.tolerance >= 0.0:
            raise ValueError(f"tolerance must be nonnegative, got {self.tolerance!r}")


EXACT = ZeroTest()


# -- dense polynomials over Q, coefficients stored low order first ----------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def _psub(p, q):
    out = list(p) + [Fraction(0)] * (len(q) - len(p))
    for i, c in enumerate(q):
        out[i] -= c
    return _trim(out)


def _pmul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _pscale(p, c):
    return tuple(a * c for a in p)


def _pdivmod(p, q):
    if not q:
        raise DivisionByZero("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = rem[k + dq] / lead
        quot[k] = c
        if c:
            for j in range(dq + 1):
                rem[k + j] -= c * q[j]
    return _trim(quot), _trim(rem[:dq])


def _pgcd(p, q):
    while q:
        p, q = q, _pdivmod(p, q)[1]
    if not p:
        return (Fraction(1),)
    return _pscale(p, 1 / p[-1])


def _format_poly(p):
    if not p:
        return "0"
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = "t" if k == 1 else f"t^{k}"
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
    return " + ".join(terms).replace("+ -", "- ")


class RationalFunction:
    """Element of Q(t) kept in canonical form.

    Numerator and denominator are coprime and the lowest-order nonzero
    coefficient of the denominator is 1, so two equal functions always have
    identical representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=(), den=(Fraction(1),)):
        num = _trim(Fraction(c) for c in num)
        den = _trim(Fraction(c) for c in den)
        if not den:
            raise DivisionByZero("rational function with zero denominator")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        c = Fraction(c)
        return cls._raw((c,) if c else (), (Fraction(1),))

    @property
    def degree(self) -> int:
        return max(len(self.num), len(self.den)) - 1

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ModeMismatch(f"{self} depends on t")
        return self.num[0] if self.num else Fraction(0)

    def evaluate(self, x) -> Fraction:
        """Value at ``t = x`` (exact)."""
        x = Fraction(x)
        n = sum(c * x**k for k, c in enumerate(self.num))
        d = sum(c * x**k for k, c in enumerate(self.den))
        if d == 0:
            raise PoleAtZero(f"{self} has a pole at t = {x}")
        return Fraction(n) / d

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return RationalFunction.constant(other)
        if isinstance(other, (float, Counted)):
            raise ModeMismatch("cannot mix float64 and symbolic scalars")
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return _make(_padd(self.num, other.num), self.den)
        return _make(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(tuple(-c for c in self.num), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return RationalFunction._raw((), (Fraction(1),))
        return _make(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise DivisionByZero(f"division of {self} by zero")
        return _make(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except ModeMismatch:
            return False
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"

    def __str__(self):
        if self.den == (Fraction(1),):
            return _format_poly(self.num)
        return f"({_format_poly(self.num)})/({_format_poly(self.den)})"


def _normalize(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if not num:
        return (), (Fraction(1),)
    if len(num) == 1 and len(den) == 1:
        return (num[0] / den[0],), (Fraction(1),)
    if len(den) > 1:
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
    low = next(c for c in den if c != 0)
    if low != 1:
        inv = 1 / low
        num = _pscale(num, inv)
        den = _pscale(den, inv)
    if max(len(num), len(den)) - 1 > DEGREE_CAP:
        raise DegreeOverflow(
            f"degree {max(len(num), len(den)) - 1} exceeds ceiling {DEGREE_CAP}"
        )
    return num, den


def _make(num, den):
    num, den = _normalize(num, den)
    return RationalFunction._raw(num, den)


T = RationalFunction._raw((Fraction(0), Fraction(1)), (Fraction(1),))

Scalar = Union[float, Fraction, RationalFunction]


def mode_of(x) -> Mode:
    if isinstance(x, Counted):
        x = x.value
    if isinstance(x, RationalFunction):
        return Mode.SYMBOLIC
    if isinstance(x, float):
        return Mode.F64
    if isinstance(x, (int, Fraction)):
        return Mode.RATIONAL
    raise ModeMismatch(f"not a scalar: {x!r}")


def common_mode(a: Mode, b: Mode) -> Mode:
    """Mode of a computation combining ``a`` and ``b``.

    Rational promotes to symbolic; float64 combines only with itself.
    """
    if a == b:
        return a
    if {a, b} == {Mode.RATIONAL, Mode.SYMBOLIC}:
        return Mode.SYMBOLIC
    raise ModeMismatch(f"cannot combine {a.value} and {b.value} scalars")


def coerce(x, mode: Mode):
    """Convert a number (int, float, Fraction, constant function) to ``mode``."""
    mode = Mode(mode)
    if isinstance(x, Counted):
        x = x.value
    if isinstance(x, RationalFunction):
        if mode is Mode.SYMBOLIC:
            return x
        x = x.constant_value()
    if isinstance(x, bool):
        x = int(x)
    if mode is Mode.F64:
        return float(x)
    if isinstance(x, float):
        x = Fraction(x)
    x = Fraction(x)
    if mode is Mode.RATIONAL:
        return x
    return RationalFunction.constant(x)


def zero(mode: Mode):
    return coerce(0, mode)


def one(mode: Mode):
    return coerce(1, mode)


def is_zero(a, zt: ZeroTest = EXACT) -> bool:
    if isinstance(a, Counted):
        a = a.value
    if isinstance(a, float):
        return abs(a) <= zt.tolerance
    return a == 0


def substitute_t(mode: Mode, index=None) -> RationalFunction:
    """The indeterminate ``t`` that stands in for a vanished pivot.

    Raises :class:`BreakdownInFloatMode` in float64 mode, where no symbolic
    recovery is possible.
    """
    if Mode(mode) is Mode.F64:
        raise BreakdownInFloatMode(index)
    return T


def eval_at_zero(a):
    """Limit of ``a`` at ``t = 0``; non-symbolic values pass through."""
    if not isinstance(a, RationalFunction):
        return a
    num, den = a.num, a.den
    if den[0] == 0:
        raise PoleAtZero(f"{a} has a pole at t = 0")
    return (num[0] if num else Fraction(0)) / den[0]


def _check(a, b):
    common_mode(mode_of(a), mode_of(b))


def add(a, b):
    _check(a, b)
    return a + b


def sub(a, b):
    _check(a, b)
    return a - b


def mul(a, b):
    _check(a, b)
    return a * b


def div(a, b):
    _check(a, b)
    if not isinstance(b, float) and b == 0:
        raise DivisionByZero(f"division of {a} by zero")
    try:
        return a / b
    except ZeroDivisionError as exc:
        raise DivisionByZero(str(exc)) from None


def neg(a):
    mode_of(a)
    return -a


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` (or a plain integer/decimal) into a Fraction."""
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise DivisionByZero(f"zero denominator in {text!r}") from None
