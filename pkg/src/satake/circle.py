"""Exact model of the divisible value group for unramified characters.

An element represents q^a * exp(2*pi*i*b) with a rational and b rational
modulo 1, stored as the pair (a, b).  Here q is a formal symbol (in
applications, the residue field cardinality); the group law is
componentwise addition of exponents.  The group is divisible, which is
what makes restriction of characters along subgroup inclusions onto.

>>> z = ExactCircle(1, Fraction(3, 8))
>>> (z * z.inverse()).is_identity()
True
>>> z.nth_root(2) ** 2 == z
True
"""

from __future__ import annotations

from fractions import Fraction


class ExactCircle:
    """q^a * e(b) with a in Q, b in Q/Z; canonical representative 0 <= b < 1."""

    __slots__ = ("q_exponent", "argument")

    def __init__(self, q_exponent=0, argument=0):
        self.q_exponent = Fraction(q_exponent)
        self.argument = Fraction(argument) % 1

    @classmethod
    def one(cls):
        return cls(0, 0)

    @classmethod
    def root_of_unity(cls, numerator, denominator):
        return cls(0, Fraction(numerator, denominator))

    def __mul__(self, other):
        return ExactCircle(self.q_exponent + other.q_exponent,
                           self.argument + other.argument)

    def inverse(self):
        return ExactCircle(-self.q_exponent, -self.argument)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k):
        k = int(k)
        return ExactCircle(k * self.q_exponent, k * self.argument)

    def nth_root(self, n):
        """The canonical n-th root: divide both exponents, b taken in [0, 1)."""
        n = int(n)
        if n <= 0:
            raise ValueError("root index must be positive")
        return ExactCircle(self.q_exponent / n, self.argument / n)

    def is_identity(self):
        return self.q_exponent == 0 and self.argument == 0

    def order(self):
        """Order in the group, or None when infinite."""
        if self.q_exponent != 0:
            return None
        return self.argument.denominator

    def sort_key(self):
        return (self.q_exponent, self.argument)

    def __eq__(self, other):
        return (isinstance(other, ExactCircle)
                and self.q_exponent == other.q_exponent
                and self.argument == other.argument)

    def __hash__(self):
        return hash((self.q_exponent, self.argument))

    def __repr__(self):
        return f"ExactCircle({self.q_exponent!r}, {self.argument!r})"

    def render(self):
        """Deterministic display form, e.g. 'q^-1/2 e(3/8)' or '1'."""
        parts = []
        if self.q_exponent != 0:
            parts.append(f"q^{self.q_exponent}")
        if self.argument != 0:
            parts.append(f"e({self.argument})")
        return " ".join(parts) if parts else "1"


ONE = ExactCircle(0, 0)
