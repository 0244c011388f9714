"""Coefficient fields, monomial orders and ring descriptors.

Everything here is immutable; rings are compared structurally so that two
independently parsed descriptions of the same ring are interchangeable.
"""

from dataclasses import dataclass, field
from fractions import Fraction


class RingError(Exception):
    pass


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class CoefficientField:
    """The rationals or a prime field F_p, with exact arithmetic only."""

    __slots__ = ("p",)

    def __init__(self, p=None):
        if p is not None and not _is_prime(p):
            raise RingError(f"modulus {p} is not prime")
        self.p = p

    @property
    def kind(self):
        return "QQ" if self.p is None else "FF"

    def coerce(self, v):
        if self.p is None:
            if isinstance(v, (int, Fraction)):
                return Fraction(v)
            raise RingError(f"cannot coerce {v!r} into QQ")
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise RingError(f"denominator divisible by {self.p}")
            return v.numerator * self.inv(v.denominator % self.p) % self.p
        return int(v) % self.p

    def inv(self, a):
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError("inverse of 0")
            return Fraction(1) / Fraction(a)
        a = a % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        # Fermat: a^(p-2); pow() uses the same exponentiation the tests
        # cross-check against extended Euclid.
        return pow(a, self.p - 2, self.p)

    def inv_euclid(self, a):
        if self.p is None:
            return self.inv(a)
        a = a % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        old_r, r = a, self.p
        old_s, s = 1, 0
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
        return old_s % self.p

    def __eq__(self, other):
        return isinstance(other, CoefficientField) and self.p == other.p

    def __hash__(self):
        return hash(("field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"FF({self.p})"


QQ = CoefficientField()


def GF(p):
    return CoefficientField(p)


def _grevlex_key(mono):
    total = 0
    for e in mono:
        total += e
    return (total, tuple(-e for e in reversed(mono)))


@dataclass(frozen=True)
class MonomialOrder:
    """A total multiplicative monomial order given as a sort key.

    kind is one of grevlex, lex, eliminate (first `block` variables form the
    dominant block) and paramlast (geometric variables first under grevlex,
    the trailing parameter compared last).
    """

    kind: str
    block: int = 0

    def key(self, mono):
        if self.kind == "grevlex":
            return _grevlex_key(mono)
        if self.kind == "lex":
            return tuple(mono)
        if self.kind == "eliminate":
            k = self.block
            return (_grevlex_key(mono[:k]), _grevlex_key(mono[k:]))
        if self.kind == "paramlast":
            return (_grevlex_key(mono[:-1]), mono[-1])
        raise RingError(f"unknown order {self.kind}")

    def is_graded(self):
        return self.kind == "grevlex"

    def compare(self, m1, m2):
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def __str__(self):
        if self.kind == "eliminate":
            return f"eliminate {self.block}"
        return self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def eliminate_order(k):
    return MonomialOrder("eliminate", k)


@dataclass(frozen=True)
class RingDescriptor:
    """A polynomial ring: named variables, coefficient field, monomial order.

    The optional deformation parameter sits in the last exponent slot; it is
    a genuine ring variable but flagged so family code can find it.
    """

    variables: tuple
    fld: CoefficientField = QQ
    order: MonomialOrder = GREVLEX
    parameter: str = None

    def __post_init__(self):
        names = list(self.variables) + ([self.parameter] if self.parameter else [])
        if len(set(names)) != len(names):
            raise RingError(f"duplicate variable names in {names}")

    @property
    def all_vars(self):
        if self.parameter:
            return self.variables + (self.parameter,)
        return self.variables

    @property
    def nvars(self):
        return len(self.all_vars)

    def var_index(self, name):
        try:
            return self.all_vars.index(name)
        except ValueError:
            raise RingError(f"unknown variable {name!r} in ring {self}") from None

    def with_order(self, order):
        return RingDescriptor(self.variables, self.fld, order, self.parameter)

    def drop_vars(self, names):
        keep = [v for v in self.variables if v not in names]
        param = self.parameter if self.parameter not in (names or ()) else None
        return RingDescriptor(tuple(keep), self.fld, self.order, param)

    def extend_front(self, names, order=None):
        """New ring with extra variables prepended (used for eliminations)."""
        return RingDescriptor(
            tuple(names) + self.variables,
            self.fld,
            order or self.order,
            self.parameter,
        )

    def extend_back(self, names, order=None):
        return RingDescriptor(
            self.variables + tuple(names),
            self.fld,
            order or self.order,
            self.parameter,
        )

    def __str__(self):
        parts = ["vars " + ",".join(self.variables)]
        if self.parameter:
            parts.append(f"param {self.parameter}")
        parts.append("over " + ("QQ" if self.fld.p is None else f"FF {self.fld.p}"))
        parts.append(f"order {self.order}")
        return " ".join(parts)


def mono_mul(m1, m2):
    return tuple(a + b for a, b in zip(m1, m2))


def mono_div(m1, m2):
    """m1 / m2 or None when not divisible."""
    out = []
    for a, b in zip(m1, m2):
        if a < b:
            return None
        out.append(a - b)
    return tuple(out)


def mono_lcm(m1, m2):
    return tuple(a if a > b else b for a, b in zip(m1, m2))


def mono_deg(m):
    return sum(m)


MAX_EXPONENT = 2 ** 20


def mono_check(m):
    for e in m:
        if e < 0 or e > MAX_EXPONENT:
            raise RingError(f"exponent out of range in {m}")
    return m
