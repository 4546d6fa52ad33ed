"""Base fields: the rationals and prime fields GF(p).

Rational elements are plain :class:`fractions.Fraction` values.  Elements of
GF(p) are :class:`ModP` instances, which mix freely with Python ints.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class ModP:
    """Residue class modulo a prime ``p``; immutable."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "v", v % p)

    def __setattr__(self, name, value):
        raise AttributeError("ModP is immutable")

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return ModP(pow(self.v, -1, self.p), self.p) ** (-e)
        return ModP(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (ModP, int, Fraction)) else NotImplemented
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class FieldDesc:
    """A base field: ``kind`` is ``"QQ"`` or ``"GF"`` (then ``p`` is prime)."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("QQ", "GF"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "GF" and not _is_prime(self.p):
            raise ValueError(f"GF({self.p}): modulus is not prime")
        if self.kind == "QQ" and self.p != 0:
            raise ValueError("QQ takes no modulus")

    @property
    def char(self) -> int:
        return self.p

    @property
    def tag(self) -> str:
        return "QQ" if self.kind == "QQ" else f"GF({self.p})"

    def __str__(self):
        return self.tag

    def __call__(self, value):
        """Coerce an int, Fraction, ModP or numeric string into this field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if self.kind == "QQ":
            if isinstance(value, ModP):
                raise TypeError("cannot coerce a GF(p) element into QQ")
            return Fraction(value)
        if isinstance(value, ModP):
            if value.p != self.p:
                raise ValueError(f"GF({value.p}) element in GF({self.p})")
            return value
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in GF({self.p})")
            return ModP(value.numerator * pow(value.denominator, -1, self.p), self.p)
        return ModP(int(value), self.p)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def elements(self):
        """All elements of a prime field (used by brute-force oracles)."""
        if self.kind != "GF":
            raise ValueError("QQ is infinite")
        return [ModP(v, self.p) for v in range(self.p)]

    def to_json(self, value) -> str:
        return str(value)


QQ = FieldDesc("QQ")


def GF(p: int) -> FieldDesc:
    return FieldDesc("GF", p)


_TAG = re.compile(r"^\s*(?:QQ|GF\(\s*(\d+)\s*\))\s*$")


def parse_field(tag: str) -> FieldDesc:
    """Parse a field tag: ``QQ`` or ``GF(p)``."""
    m = _TAG.match(tag)
    if not m:
        raise ValueError(f"bad field tag {tag!r}; expected QQ or GF(p)")
    return QQ if m.group(1) is None else GF(int(m.group(1)))
