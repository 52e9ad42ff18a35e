"""Coefficient fields for representation matrices.

Scalars are plain Python numbers: ``Fraction``/``int`` over the rationals,
canonical residues in ``[0, p)`` over a prime field.  Ring arithmetic on
scalars is ordinary ``+``/``*`` followed by :meth:`Field.reduce`; only the
linear algebra kernels need to know the field beyond that.
"""

from __future__ import annotations

from fractions import Fraction


class RationalField:
    """The field of rational numbers."""

    p = None
    name = "QQ"

    def coerce(self, x):
        return Fraction(x)

    def reduce(self, x):
        return x

    def is_zero(self, x):
        return x == 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("ddisc.QQ")


class PrimeField:
    """The prime field with ``p`` elements, ``p`` an odd prime."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"

    def coerce(self, x):
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def reduce(self, x):
        return x % self.p

    def is_zero(self, x):
        return x % self.p == 0

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("ddisc.GF", self.p))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)
