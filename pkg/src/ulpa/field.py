"""Exact coefficient fields: the rationals (default) and prime fields GF(p)."""

from __future__ import annotations

from fractions import Fraction


class Fp:
    """An element of GF(p). Immutable; supports the usual arithmetic operators."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        if isinstance(other, Fraction):
            return Fp(other.numerator, self.p) / Fp(other.denominator, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(self.v * pow(o.v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o.v

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Field:
    """Coefficient field. ``Field()`` is the rationals, ``Field(p)`` is GF(p)."""

    def __init__(self, prime: int | None = None):
        if prime is not None:
            if prime < 2 or any(prime % d == 0 for d in range(2, int(prime**0.5) + 1)):
                raise ValueError(f"{prime} is not prime")
        self.prime = prime

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``q`` or ``fp:<prime>``."""
        t = text.strip().lower()
        if t in ("q", "qq", "rational"):
            return cls()
        if t.startswith("fp:") and t[3:].isdigit():
            return cls(int(t[3:]))
        raise ValueError(f"unknown field {text!r}")

    def __call__(self, x):
        if self.prime is None:
            if isinstance(x, Fp):
                raise TypeError("cannot coerce a GF(p) element into Q")
            return Fraction(x)
        if isinstance(x, Fp):
            return Fp(x.v, self.prime)
        x = Fraction(x)
        return Fp(x.numerator, self.prime) / Fp(x.denominator, self.prime)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def format(self, c) -> str:
        return str(c)

    def __eq__(self, other):
        return isinstance(other, Field) and other.prime == self.prime

    def __hash__(self):
        return hash(("Field", self.prime))

    def __repr__(self):
        return "Field(Q)" if self.prime is None else f"Field(GF({self.prime}))"


QQ = Field()
