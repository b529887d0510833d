"""Ground fields: exact rationals and small prime fields.

Scalars of both fields support the usual arithmetic operators, so the rest of
the package is written once against plain ``+ - * /`` and ``== 0``.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import ParseError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Rationals:
    """The field of rational numbers, scalars are ``Fraction``."""

    characteristic = 0
    name = "QQ"

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, FpElement):
            raise TypeError("cannot coerce a prime field element into QQ")
        return Fraction(x)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {text!r}") from exc

    def format(self, x) -> str:
        return str(Fraction(x))

    def to_int(self, x) -> int:
        """Integer image used by the modular rank certificates."""
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError("non-integral rational")
        return x.numerator

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("QQ")

    def __repr__(self) -> str:
        return "QQ"


class FpElement:
    """Element of the prime field of order ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise TypeError("mixing different prime fields")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return FpElement(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FpElement(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return FpElement(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return FpElement(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other) % self.p
        if o == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return FpElement(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return FpElement(o, self.p) / self

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __pos__(self):
        return self

    def __eq__(self, other) -> bool:
        if isinstance(other, FpElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.v, self.p))

    def __bool__(self) -> bool:
        return self.v != 0

    def __int__(self) -> int:
        return self.v

    def __repr__(self) -> str:
        return f"{self.v} mod {self.p}"

    def __str__(self) -> str:
        return str(self.v)


class PrimeField:
    """The field with ``p`` elements, ``p`` prime and below 2**31."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p) or p >= 2**31:
            raise ValueError(f"{p} is not a prime below 2**31")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x) -> FpElement:
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise TypeError("mixing different prime fields")
            return x
        if isinstance(x, Fraction):
            return FpElement(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return FpElement(int(x), self.p)

    @property
    def zero(self) -> FpElement:
        return FpElement(0, self.p)

    @property
    def one(self) -> FpElement:
        return FpElement(1, self.p)

    def parse(self, text: str) -> FpElement:
        try:
            return self(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not an element of {self.name}: {text!r}") from exc

    def format(self, x) -> str:
        return str(self(x).v)

    def to_int(self, x) -> int:
        return self(x).v

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __repr__(self) -> str:
        return self.name


QQ = Rationals()


def field_from_spec(spec: str | None):
    """``None``/``"QQ"`` for rationals, ``"p"`` or ``"GF(p)"`` for a prime field."""
    if spec is None or spec.strip().upper() in ("QQ", "Q", "RATIONALS"):
        return QQ
    text = spec.strip().upper()
    if text.startswith("GF(") and text.endswith(")"):
        text = text[3:-1]
    try:
        return PrimeField(int(text))
    except ValueError as exc:
        raise ParseError(f"bad field specification {spec!r}: {exc}") from exc
