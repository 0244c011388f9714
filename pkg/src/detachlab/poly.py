"""Sparse multivariate polynomials over an exact coefficient field."""

from fractions import Fraction

from .ring import (
    RingError,
    RingDescriptor,
    mono_mul,
    mono_deg,
    mono_check,
)


class Polynomial:
    """Immutable sparse polynomial tied to a RingDescriptor.

    Terms map exponent tuples to nonzero field elements.  All arithmetic is
    exact; a zero polynomial has an empty term map.
    """

    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring, terms):
        self.ring = ring
        fld = ring.fld
        clean = {}
        for m, c in terms.items():
            c = fld.coerce(c)
            if c != 0:
                clean[mono_check(m)] = c
        self.terms = clean
        self._lead = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(ring):
        return Polynomial(ring, {})

    @staticmethod
    def const(ring, c):
        return Polynomial(ring, {(0,) * ring.nvars: c})

    @staticmethod
    def var(ring, name, power=1):
        i = ring.var_index(name)
        m = [0] * ring.nvars
        m[i] = power
        return Polynomial(ring, {tuple(m): 1})

    @staticmethod
    def monomial(ring, mono, c=1):
        return Polynomial(ring, {tuple(mono): c})

    # -- basic queries -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_deg(m) for m in self.terms)

    def is_homogeneous(self, weights=None):
        if not self.terms:
            return True
        if weights is None:
            degs = {mono_deg(m) for m in self.terms}
        else:
            degs = {sum(e * w for e, w in zip(m, weights)) for m in self.terms}
        return len(degs) == 1

    def lead_monomial(self, order=None):
        order = order or self.ring.order
        if not self.terms:
            return None
        return max(self.terms, key=order.key)

    def lead_coeff(self, order=None):
        lm = self.lead_monomial(order)
        return None if lm is None else self.terms[lm]

    def coeff(self, mono):
        return self.terms.get(tuple(mono), 0)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    # -- arithmetic ----------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingError("polynomials live in different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.ring, other)
        self._check_ring(other)
        fld = self.ring.fld
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if fld.p is not None:
                s %= fld.p
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        fld = self.ring.fld
        if fld.p is None:
            return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})
        return Polynomial(self.ring, {m: (-c) % fld.p for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.ring, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_ring(other)
        fld = self.ring.fld
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if fld.p is not None:
                    s %= fld.p
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c):
        c = self.ring.fld.coerce(c)
        if c == 0:
            return Polynomial.zero(self.ring)
        fld = self.ring.fld
        if fld.p is None:
            return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})
        return Polynomial(self.ring, {m: (v * c) % fld.p for m, v in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise RingError("exponent must be a non-negative integer")
        result = Polynomial.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def monic(self, order=None):
        lc = self.lead_coeff(order)
        if lc is None:
            return self
        return self.scale(self.ring.fld.inv(lc))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                other = Polynomial.const(self.ring, other)
            else:
                return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- substitution and ring maps -------------------------------------

    def substitute(self, assignments):
        """Evaluate some variables at field constants; the ring shrinks."""
        ring = self.ring
        idx = {ring.var_index(name): ring.fld.coerce(v) for name, v in assignments.items()}
        new_ring = ring.drop_vars(set(assignments))
        keep = [i for i in range(ring.nvars) if i not in idx]
        out = {}
        fld = ring.fld
        for m, c in self.terms.items():
            val = c
            for i, cval in idx.items():
                if m[i]:
                    val = val * cval ** m[i]
            if fld.p is not None:
                val %= fld.p
            if val == 0:
                continue
            nm = tuple(m[i] for i in keep)
            s = out.get(nm, 0) + val
            if fld.p is not None:
                s %= fld.p
            if s:
                out[nm] = s
            elif nm in out:
                del out[nm]
        return Polynomial(new_ring, out)

    def map_ring(self, new_ring, var_map=None):
        """Reinterpret in new_ring; var_map sends old index -> new index.

        Variables of the old ring that do not occur in any term need no
        slot in the new ring.
        """
        n = new_ring.nvars
        if var_map is None:
            new_names = set(new_ring.all_vars)
            var_map = {
                i: (new_ring.var_index(v) if v in new_names else None)
                for i, v in enumerate(self.ring.all_vars)
            }
        out = {}
        for m, c in self.terms.items():
            nm = [0] * n
            for i, e in enumerate(m):
                if e:
                    j = var_map[i]
                    if j is None:
                        raise RingError(
                            f"variable {self.ring.all_vars[i]!r} has no image in the target ring"
                        )
                    nm[j] = e
            out[tuple(nm)] = c
        return Polynomial(new_ring, out)

    def shift(self, point):
        """Substitute var_i -> var_i + point_i (translation of coordinates)."""
        ring = self.ring
        if len(point) != ring.nvars:
            raise RingError("point length does not match ring")
        result = Polynomial.zero(ring)
        one = Polynomial.const(ring, 1)
        for m, c in self.terms.items():
            term = Polynomial.const(ring, c)
            for i, e in enumerate(m):
                if e:
                    base = Polynomial.var(ring, ring.all_vars[i]) + point[i]
                    term = term * base ** e
            result = result + term
        return result

    def evaluate(self, point):
        """Value at a full point (tuple of field elements)."""
        fld = self.ring.fld
        total = 0
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                if e:
                    v = v * point[i] ** e
            total += v
        return fld.coerce(total)

    def homogenize_terms(self, new_ring, pos, target_deg=None):
        """Multiply each term by the pos-th variable of new_ring up to equal degree."""
        d = target_deg if target_deg is not None else self.degree()
        out = {}
        for m, c in self.terms.items():
            nm = [0] * new_ring.nvars
            j = 0
            for i in range(new_ring.nvars):
                if i == pos:
                    continue
                nm[i] = m[j]
                j += 1
            nm[pos] = d - mono_deg(m)
            out[tuple(nm)] = c
        return Polynomial(new_ring, out)

    # -- printing --------------------------------------------------------

    def sorted_terms(self, order=None):
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.all_vars
        chunks = []
        for m, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono_str = "*".join(factors)
            if isinstance(c, Fraction) and c.denominator == 1:
                c = c.numerator
            neg = c < 0
            mag = -c if neg else c
            if mono_str:
                if mag == 1:
                    body = mono_str
                else:
                    body = f"{mag}*{mono_str}"
            else:
                body = f"{mag}"
            if not chunks:
                chunks.append(("-" if neg else "") + body)
            else:
                chunks.append(("- " if neg else "+ ") + body)
        return " ".join(chunks)

    def __repr__(self):
        return f"<poly {self}>"
