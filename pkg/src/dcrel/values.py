"""Arithmetic modes for reliability values.

Every quantity the engine manipulates is a probability built from link
reliabilities using only ``a + b``, ``a * b`` and ``1 - a``.  Three value
domains are closed under those operations:

* ``float``: IEEE double, fast and approximate;
* ``rational``: :class:`fractions.Fraction`, exact;
* ``poly``: :class:`Poly`, a univariate polynomial in the symbol ``p`` with
  exact rational coefficients, for instances whose links all carry the same
  symbolic reliability (or the constants 0/1).

Algorithms stay mode-agnostic by using plain operators; ``Poly`` implements
enough of the number protocol for ``1 - value`` and friends to work.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Union


class Mode(str, Enum):
    FLOAT = "float"
    RATIONAL = "rational"
    POLY = "poly"


class Poly:
    """Immutable dense polynomial over ``Fraction``, lowest degree first."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; the zero polynomial reports -1."""
        return len(self._coeffs) - 1

    def is_constant(self) -> bool:
        return len(self._coeffs) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant polynomial")
        return self._coeffs[0] if self._coeffs else Fraction(0)

    def evaluate(self, x):
        """Horner evaluation; exact when ``x`` is a Fraction or int."""
        acc = x * 0
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    @staticmethod
    def _coerce(other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._coeffs, o._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self._coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._coeffs, o._coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        acc = Poly((1,))
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._coeffs == o._coeffs

    def __hash__(self):
        # Constants hash like the underlying number so Poly((x,)) == x
        # stays usable as a dict key alongside plain Fractions.
        if len(self._coeffs) <= 1:
            return hash(self._coeffs[0] if self._coeffs else Fraction(0))
        return hash(self._coeffs)

    def __repr__(self):
        return f"Poly({list(self._coeffs)!r})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self._coeffs):
            if c == 0:
                continue
            if k == 0:
                term = str(c)
            else:
                mag = abs(c)
                base = "p" if k == 1 else f"p^{k}"
                term = base if mag == 1 else f"{mag}*{base}"
                if c < 0:
                    term = "-" + term
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out


#: The symbolic link reliability.
P_SYMBOL = Poly((0, 1))

Value = Union[float, Fraction, Poly]


def zero(mode: Mode) -> Value:
    if mode is Mode.FLOAT:
        return 0.0
    if mode is Mode.RATIONAL:
        return Fraction(0)
    return Poly()


def one(mode: Mode) -> Value:
    if mode is Mode.FLOAT:
        return 1.0
    if mode is Mode.RATIONAL:
        return Fraction(1)
    return Poly((1,))


def from_fraction(q: Fraction, mode: Mode) -> Value:
    """Embed an exact rational constant into the given mode."""
    if mode is Mode.FLOAT:
        return float(q)
    if mode is Mode.RATIONAL:
        return Fraction(q)
    return Poly((q,))


def is_zero(value: Value) -> bool:
    return value == 0


def is_one(value: Value) -> bool:
    return value == 1


def check_mode(value: Value, mode: Mode) -> None:
    """Reject values that do not belong to the mode's domain."""
    if mode is Mode.POLY:
        if not isinstance(value, Poly):
            raise TypeError(f"polynomial mode requires Poly values, got {value!r}")
        return
    expected = float if mode is Mode.FLOAT else Fraction
    if not isinstance(value, expected):
        raise TypeError(f"{mode.value} mode requires {expected.__name__} values, got {value!r}")
    if not 0 <= value <= 1:
        raise ValueError(f"reliability {value!r} outside [0, 1]")


def value_str(value: Value) -> str:
    """Compact human-readable form, used in messages and traces."""
    if isinstance(value, Poly):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    return format(value, ".17g")


def _fraction_json(q: Fraction):
    return int(q) if q.denominator == 1 else str(q)


def value_to_json(value: Value):
    """JSON encoding: float as number, rational as ``num/den`` string (plain
    integer when the denominator is 1), polynomial as a coefficient list,
    lowest degree first, with exact rational entries."""
    if isinstance(value, Poly):
        return [_fraction_json(c) for c in value.coeffs]
    if isinstance(value, Fraction):
        return str(value)
    return value
