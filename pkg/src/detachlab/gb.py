"""Groebner engine for ideals and submodules of free modules.

The internal arithmetic is fraction-free: over QQ every vector is scaled to
a primitive integer form and reductions cross-multiply, clearing content as
they go.  Over a prime field coefficients stay reduced mod p.  The public
surface hands out monic polynomials with exact rational coefficients.

Module elements are dicts keyed by (position, monomial); ideals are the
rank-1 case.  The module order is position-over-term, which is what the
syzygy extraction by position elimination needs.
"""

from fractions import Fraction
from math import gcd

from .ring import (
    RingError,
    RingDescriptor,
    eliminate_order,
    mono_mul,
    mono_div,
    mono_lcm,
    mono_deg,
)
from .poly import Polynomial


class GBError(Exception):
    pass


# ---------------------------------------------------------------------------
# raw vectors


class RawVec:
    __slots__ = ("t", "lt", "sugar")

    def __init__(self, terms, lt, sugar):
        self.t = terms
        self.lt = lt
        self.sugar = sugar


def _term_key(order):
    okey = order.key

    def key(term):
        return (-term[0], okey(term[1]))

    return key


def _content_clear(terms):
    g = 0
    for c in terms.values():
        g = gcd(g, abs(c))
        if g == 1:
            return terms
    if g > 1:
        return {t: c // g for t, c in terms.items()}
    return terms


def _normalize(terms, order, p):
    """Primitive integer form (QQ) or monic form (FF); returns RawVec."""
    if p is not None:
        terms = {t: c % p for t, c in terms.items() if c % p}
    else:
        terms = {t: c for t, c in terms.items() if c}
    if not terms:
        return None
    key = _term_key(order)
    lt = max(terms, key=key)
    if p is None:
        terms = _content_clear(terms)
        if terms[lt] < 0:
            terms = {t: -c for t, c in terms.items()}
    else:
        inv = pow(terms[lt], p - 2, p)
        if inv != 1:
            terms = {t: (c * inv) % p for t, c in terms.items()}
    sugar = max(mono_deg(t[1]) for t in terms)
    return RawVec(terms, lt, sugar)


def _raw_from_poly(f, position=0, order=None, shift=0):
    """Integer raw vector from a Polynomial (denominators cleared)."""
    p = f.ring.fld.p
    order = order or f.ring.order
    if p is None:
        den = 1
        for c in f.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        terms = {(position, m): int(c * den) for m, c in f.terms.items()}
    else:
        terms = {(position, m): c for m, c in f.terms.items()}
    v = _normalize(terms, order, p)
    if v is not None and shift:
        v.sugar = max(mono_deg(t[1]) + shift for t in v.t)
    return v


def _raw_to_poly(v, ring, monic=True):
    """Rank-1 raw vector back to a (monic) Polynomial."""
    if v is None:
        return Polynomial.zero(ring)
    if ring.fld.p is None:
        lc = v.t[v.lt]
        if monic:
            return Polynomial(ring, {m: Fraction(c, lc) for (_, m), c in v.t.items()})
        return Polynomial(ring, {m: Fraction(c) for (_, m), c in v.t.items()})
    return Polynomial(ring, {m: c for (_, m), c in v.t.items()})


def _raw_components(v, ring, rank):
    """Split a raw vector into Polynomial components (not monic)."""
    comps = [dict() for _ in range(rank)]
    for (pos, m), c in v.t.items():
        comps[pos][m] = c
    return [Polynomial(ring, d) for d in comps]


# ---------------------------------------------------------------------------
# reduction


def _reduce_full(v, basis, order, p, want_scale=False):
    """Full normal form of raw vector v against a list of RawVec.

    Returns (terms, scale): scale is the rational multiplier lambda with
    terms == lambda * (v reduced); callers needing the exact remainder divide
    it out, membership tests ignore it.
    """
    key = _term_key(order)
    work = dict(v.t)
    result = {}
    scale_num, scale_den = 1, 1
    steps = 0
    while work:
        t = max(work, key=key)
        c = work.pop(t)
        if c == 0:
            continue
        pos, mono = t
        red = None
        q = None
        for g in basis:
            gpos, gmono = g.lt
            if gpos != pos:
                continue
            q = mono_div(mono, gmono)
            if q is not None:
                red = g
                break
        if red is None:
            result[t] = c
            continue
        lc = red.t[red.lt]
        if p is not None:
            f = (c * pow(lc, p - 2, p)) % p
            for (gp, gm), gc in red.t.items():
                tt = (gp, mono_mul(gm, q))
                s = (work.get(tt, result.get(tt, 0)) - f * gc) % p
                if tt == t:
                    continue
                if tt in result:
                    if s:
                        result[tt] = s
                    else:
                        del result[tt]
                else:
                    if s:
                        work[tt] = s
                    elif tt in work:
                        del work[tt]
        else:
            d = gcd(abs(c), abs(lc))
            a = lc // d
            b = c // d
            if a < 0:
                a, b = -a, -b
            if a != 1:
                for k in work:
                    work[k] *= a
                for k in result:
                    result[k] *= a
                scale_num *= a
            for (gp, gm), gc in red.t.items():
                tt = (gp, mono_mul(gm, q))
                if tt == t:
                    continue
                s = (work.get(tt, 0) if tt not in result else result[tt]) - b * gc
                if tt in result:
                    if s:
                        result[tt] = s
                    else:
                        del result[tt]
                else:
                    if s:
                        work[tt] = s
                    elif tt in work:
                        del work[tt]
            steps += 1
            if steps % 16 == 0 and (work or result):
                g0 = 0
                for cc in work.values():
                    g0 = gcd(g0, abs(cc))
                    if g0 == 1:
                        break
                if g0 != 1:
                    for cc in result.values():
                        g0 = gcd(g0, abs(cc))
                        if g0 == 1:
                            break
                if g0 > 1:
                    for k in work:
                        work[k] //= g0
                    for k in result:
                        result[k] //= g0
                    scale_den *= g0
    if want_scale:
        return result, Fraction(scale_num, scale_den)
    return result


def _spoly(f, g, order, p):
    """S-vector of two raw vectors with lead terms in the same position."""
    pos = f.lt[0]
    mf, mg = f.lt[1], g.lt[1]
    L = mono_lcm(mf, mg)
    qf = mono_div(L, mf)
    qg = mono_div(L, mg)
    cf = f.t[f.lt]
    cg = g.t[g.lt]
    if p is not None:
        af, ag = cg, cf
    else:
        d = gcd(abs(cf), abs(cg))
        af, ag = cg // d, cf // d
    terms = {}
    for (tp, tm), c in f.t.items():
        tt = (tp, mono_mul(tm, qf))
        terms[tt] = terms.get(tt, 0) + af * c
    for (tp, tm), c in g.t.items():
        tt = (tp, mono_mul(tm, qg))
        terms[tt] = terms.get(tt, 0) - ag * c
    if p is not None:
        terms = {t: c % p for t, c in terms.items() if c % p}
    else:
        terms = {t: c for t, c in terms.items() if c}
    sugar = max(
        f.sugar + mono_deg(qf),
        g.sugar + mono_deg(qg),
    )
    return terms, sugar


# ---------------------------------------------------------------------------
# Buchberger


def _buchberger(vecs, order, p, rank=1):
    """Reduced Groebner basis of the submodule generated by raw vectors.

    Sugar-degree selection, FIFO tie-break, product criterion (rank one
    only) and chain criterion.  Deterministic for a fixed input order.
    """
    G = []
    pairs = {}
    fifo = [0]

    def add_pairs(j):
        gj = G[j]
        for i in range(j):
            gi = G[i]
            if gi is None or gi.lt[0] != gj.lt[0]:
                continue
            mi, mj = gi.lt[1], gj.lt[1]
            if rank == 1 and mono_lcm(mi, mj) == mono_mul(mi, mj):
                continue  # coprime leads: S-pair reduces to zero
            L = mono_lcm(mi, mj)
            sugar = max(
                gi.sugar + mono_deg(L) - mono_deg(mi),
                gj.sugar + mono_deg(L) - mono_deg(mj),
            )
            pairs[(i, j)] = (sugar, fifo[0])
            fifo[0] += 1

    for v in vecs:
        if v is None:
            continue
        w = _normalize(dict(v.t), order, p)
        if w is None:
            continue
        w.sugar = v.sugar
        G.append(w)
        add_pairs(len(G) - 1)

    while pairs:
        (i, j) = min(pairs, key=lambda ij: (pairs[ij][0], pairs[ij][1]))
        del pairs[(i, j)]
        gi, gj = G[i], G[j]
        if gi is None or gj is None:
            continue
        L = mono_lcm(gi.lt[1], gj.lt[1])
        pos = gi.lt[0]
        # chain criterion
        skip = False
        for k, gk in enumerate(G):
            if gk is None or k == i or k == j or gk.lt[0] != pos:
                continue
            if mono_div(L, gk.lt[1]) is not None:
                a, b = (i, k) if i < k else (k, i)
                c, d = (j, k) if j < k else (k, j)
                if (a, b) not in pairs and (c, d) not in pairs:
                    skip = True
                    break
        if skip:
            continue
        sterms, sugar = _spoly(gi, gj, order, p)
        if not sterms:
            continue
        sv = RawVec(sterms, None, sugar)
        red = _reduce_full(sv, [g for g in G if g is not None], order, p)
        w = _normalize(red, order, p)
        if w is None:
            continue
        w.sugar = max(sugar, w.sugar)
        G.append(w)
        add_pairs(len(G) - 1)

    basis = [g for g in G if g is not None]
    return _interreduce(basis, order, p)


def _interreduce(basis, order, p):
    # minimalize: drop vectors whose lead is divisible by another lead
    basis = sorted(basis, key=lambda g: _term_key(order)(g.lt))
    keep = []
    for i, g in enumerate(basis):
        lm = g.lt
        redundant = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            if h.lt[0] == lm[0] and mono_div(lm[1], h.lt[1]) is not None:
                if mono_div(h.lt[1], lm[1]) is not None and j > i:
                    continue  # equal leads: keep the first
                redundant = True
                break
        if not redundant:
            keep.append(g)
    # tail-reduce each against the others
    changed = True
    while changed:
        changed = False
        out = []
        for i, g in enumerate(keep):
            others = [h for j, h in enumerate(keep) if j != i]
            red = _reduce_full(g, others, order, p)
            w = _normalize(red, order, p)
            if w is None:
                changed = True
                continue
            if w.t != g.t:
                changed = True
            w.sugar = g.sugar
            out.append(w)
        keep = out
    return sorted(keep, key=lambda g: _term_key(order)(g.lt), reverse=True)


# ---------------------------------------------------------------------------
# public ideal layer


class Ideal:
    """Finitely generated ideal with cached reduced Groebner bases."""

    def __init__(self, ring, gens):
        self.ring = ring
        self.gens = tuple(g for g in gens if not g.is_zero())
        for g in self.gens:
            if g.ring != ring:
                raise RingError("generator in wrong ring")
        self._gb = {}

    @staticmethod
    def of(ring, *gens):
        return Ideal(ring, list(gens))

    def is_zero(self):
        return not self.gens

    def groebner(self, order=None):
        """The unique reduced, monic Groebner basis for the given order."""
        order = order or self.ring.order
        if order in self._gb:
            return self._gb[order]
        p = self.ring.fld.p
        raws = [_raw_from_poly(g, 0, order) for g in self.gens]
        basis = _buchberger(raws, order, p)
        polys = tuple(_raw_to_poly(v, self.ring) for v in basis)
        self._gb[order] = polys
        return polys

    def normal_form(self, f, order=None):
        order = order or self.ring.order
        if f.ring != self.ring:
            raise RingError("polynomial in wrong ring")
        basis = self.groebner(order)
        p = self.ring.fld.p
        raws = [_raw_from_poly(g, 0, order) for g in basis]
        if f.is_zero():
            return Polynomial.zero(self.ring)
        if p is None:
            den = 1
            for c in f.terms.values():
                den = den * c.denominator // gcd(den, c.denominator)
            terms = {(0, m): int(c * den) for m, c in f.terms.items()}
        else:
            den = 1
            terms = {(0, m): c for m, c in f.terms.items()}
        v = RawVec(terms, None, 0)
        red, scale = _reduce_full(v, raws, order, p, want_scale=True)
        if not red:
            return Polynomial.zero(self.ring)
        if p is None:
            factor = Fraction(1) / (scale * den)
            return Polynomial(
                self.ring, {m: Fraction(c) * factor for (_, m), c in red.items()}
            )
        return Polynomial(self.ring, {m: c for (_, m), c in red.items()})

    def contains(self, f, order=None):
        return self.normal_form(f, order).is_zero()

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.gens)

    def lead_monomials(self, order=None):
        order = order or self.ring.order
        return tuple(g.lead_monomial(order) for g in self.groebner(order))

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.groebner())

    def equals(self, other):
        if self.ring != other.ring:
            other = map_to_ring(other, self.ring)
        return self.groebner() == other.groebner()

    def __str__(self):
        return ", ".join(str(g) for g in self.gens) if self.gens else "0"

    def __repr__(self):
        return f"<ideal {self}>"


def map_to_ring(I, ring):
    """Reinterpret an ideal in a ring with the same variable names."""
    return Ideal(ring, [g.map_ring(ring) for g in I.gens])


def syzygy_matrix(gens, shifts=None):
    """Rows generating the first syzygy module of a list of polynomials."""
    return module_syzygies([[g] for g in gens], rank=1, shifts=shifts)


def module_syzygies(vectors, rank, shifts=None):
    """Syzygies of vectors in R^rank, each vector a list of Polynomials.

    Computed by a position-over-term Groebner basis of the vectors augmented
    with unit tags and extraction of the relations whose lead falls in the
    tag block.  Rows are returned as lists of Polynomials and multiply out
    to zero against the input.
    """
    if not vectors:
        return []
    ring = None
    for vec in vectors:
        for c in vec:
            ring = c.ring
            break
        if ring:
            break
    if ring is None:
        raise GBError("no nonzero vector")
    order = ring.order
    p = ring.fld.p
    m = len(vectors)
    raws = []
    for i, vec in enumerate(vectors):
        terms = {}
        den = 1
        if p is None:
            for comp in vec:
                for c in comp.terms.values():
                    den = den * c.denominator // gcd(den, c.denominator)
        for pos, comp in enumerate(vec):
            for mono, c in comp.terms.items():
                terms[(pos, mono)] = int(c * den) if p is None else c
        unit = (0,) * ring.nvars
        terms[(rank + i, unit)] = den if p is None else 1
        v = _normalize(terms, order, p)
        if shifts:
            v.sugar = max(
                mono_deg(t[1]) + (shifts[t[0] - rank] if t[0] >= rank else 0)
                for t in v.t
            )
        raws.append(v)
    basis = _buchberger(raws, order, p, rank=rank + m)
    rows = []
    for v in basis:
        if v.lt[0] < rank:
            continue
        comps = [dict() for _ in range(m)]
        for (pos, mono), c in v.t.items():
            comps[pos - rank][mono] = c
        rows.append([Polynomial(ring, d) for d in comps])
    return rows


def module_groebner(vectors, rank):
    """Reduced position-over-term Groebner basis of a submodule of R^rank."""
    ring = None
    for vec in vectors:
        for c in vec:
            if not c.is_zero():
                ring = c.ring
                break
        if ring:
            break
    if ring is None:
        return []
    order = ring.order
    p = ring.fld.p
    raws = []
    for vec in vectors:
        terms = {}
        den = 1
        if p is None:
            for comp in vec:
                for c in comp.terms.values():
                    den = den * c.denominator // gcd(den, c.denominator)
        for pos, comp in enumerate(vec):
            for mono, c in comp.terms.items():
                terms[(pos, mono)] = int(c * den) if p is None else c
        raws.append(_normalize(terms, order, p))
    basis = _buchberger([r for r in raws if r], order, p, rank=rank)
    return basis


def module_normal_form(vector, basis_raw, ring, rank):
    """Normal form of a vector (list of Polynomials) against a raw module GB."""
    order = ring.order
    p = ring.fld.p
    terms = {}
    den = 1
    if p is None:
        for comp in vector:
            for c in comp.terms.values():
                den = den * c.denominator // gcd(den, c.denominator)
    for pos, comp in enumerate(vector):
        for mono, c in comp.terms.items():
            terms[(pos, mono)] = int(c * den) if p is None else c
    if not terms:
        return [Polynomial.zero(ring) for _ in range(rank)]
    v = RawVec(terms, None, 0)
    red, scale = _reduce_full(v, basis_raw, order, p, want_scale=True)
    comps = [dict() for _ in range(rank)]
    if p is None:
        factor = Fraction(1) / (scale * den)
        for (pos, mono), c in red.items():
            comps[pos][mono] = Fraction(c) * factor
    else:
        for (pos, mono), c in red.items():
            comps[pos][mono] = c
    return [Polynomial(ring, d) for d in comps]


# ---------------------------------------------------------------------------
# ideal operations


def ideal_sum(A, B):
    return Ideal(A.ring, list(A.gens) + list(map_to_ring(B, A.ring).gens))


def ideal_product(A, B):
    B = map_to_ring(B, A.ring)
    return Ideal(A.ring, [a * b for a in A.gens for b in B.gens])


def _fresh_name(ring, stem):
    used = set(ring.all_vars)
    if stem not in used:
        return stem
    i = 0
    while f"{stem}{i}" in used:
        i += 1
    return f"{stem}{i}"


def ideal_intersect(A, *others):
    """Intersection via one auxiliary scalar per step, eliminated again."""
    result = A
    for B in others:
        B = map_to_ring(B, result.ring)
        ring = result.ring
        u = _fresh_name(ring, "u@")
        work = RingDescriptor(
            (u,) + ring.all_vars, ring.fld, eliminate_order(1), None
        )
        var_map = {i: i + 1 for i in range(ring.nvars)}
        up = Polynomial.var(work, u)
        one = Polynomial.const(work, 1)
        gens = [up * g.map_ring(work, var_map) for g in result.gens]
        gens += [(one - up) * g.map_ring(work, var_map) for g in B.gens]
        J = Ideal(work, gens)
        kept = []
        for g in J.groebner():
            if all(m[0] == 0 for m in g.terms):
                back = {i + 1: i for i in range(ring.nvars)}
                kept.append(g.map_ring(ring, back))
        result = Ideal(ring, kept)
    return result


def exact_divide(f, b):
    """f / b when the division is exact; raises GBError otherwise."""
    ring = f.ring
    order = ring.order
    q = Polynomial.zero(ring)
    r = f
    lm_b = b.lead_monomial(order)
    lc_b = b.lead_coeff(order)
    while not r.is_zero():
        lm = r.lead_monomial(order)
        quot = mono_div(lm, lm_b)
        if quot is None:
            raise GBError("division is not exact")
        c = r.terms[lm] * ring.fld.inv(lc_b)
        qt = Polynomial.monomial(ring, quot, c)
        q = q + qt
        r = r - qt * b
    return q


def ideal_quotient(A, B):
    """A : B, the ideal of f with f*B inside A."""
    B = map_to_ring(B, A.ring)
    result = None
    for b in B.gens:
        inter = ideal_intersect(A, Ideal(A.ring, [b]))
        gens = [exact_divide(g, b) for g in inter.gens]
        Q = Ideal(A.ring, gens)
        result = Q if result is None else ideal_intersect(result, Q)
    if result is None:
        raise GBError("quotient by the zero ideal")
    return result


def ideal_saturate(A, B):
    """A : B^infinity by iterated quotient with stabilization detection."""
    current = A
    current_gb = current.groebner()
    for _ in range(200):
        nxt = ideal_quotient(current, B)
        nxt_gb = nxt.groebner()
        if nxt_gb == current_gb:
            return Ideal(current.ring, list(current_gb))
        current, current_gb = nxt, nxt_gb
    raise GBError("saturation did not stabilize")


def ideal_eliminate(A, names):
    """A intersected with the subring omitting the named variables."""
    ring = A.ring
    names = tuple(names)
    for n in names:
        ring.var_index(n)
    rest = [v for v in ring.all_vars if v not in names]
    work = RingDescriptor(
        tuple(names) + tuple(rest), ring.fld, eliminate_order(len(names)), None
    )
    var_map = {ring.var_index(v): work.var_index(v) for v in ring.all_vars}
    J = Ideal(work, [g.map_ring(work, var_map) for g in A.gens])
    k = len(names)
    target = ring.drop_vars(set(names))
    kept = []
    for g in J.groebner():
        if all(all(m[i] == 0 for i in range(k)) for m in g.terms):
            back = {work.var_index(v): target.var_index(v) for v in rest}
            kept.append(g.map_ring(target, back))
    return Ideal(target, kept)


def ideal_specialize(A, assignments):
    """Evaluate variables at field elements; the ring shrinks."""
    gens = [g.substitute(assignments) for g in A.gens]
    if gens:
        return Ideal(gens[0].ring, gens)
    return Ideal(A.ring.drop_vars(set(assignments)), [])


def translate_ideal(A, point):
    """Move the given point to the origin: substitute x -> x + p."""
    pt = [A.ring.fld.coerce(c) for c in point]
    return Ideal(A.ring, [g.shift(pt) for g in A.gens])


def homogenize_ideal(A, hvar="h"):
    """Projective closure: homogenize a degree-compatible Groebner basis."""
    ring = A.ring
    if ring.parameter:
        raise GBError("homogenization with a parameter present is not supported")
    hname = _fresh_name(ring, hvar)
    new_ring = ring.extend_back((hname,))
    pos = new_ring.var_index(hname)
    gens = [g.homogenize_terms(new_ring, pos) for g in A.groebner()]
    return Ideal(new_ring, gens)


def dehomogenize_ideal(A, var, value=1):
    return ideal_specialize(A, {var: value})


def irrelevant_ideal(ring):
    return Ideal(ring, [Polynomial.var(ring, v) for v in ring.variables])


def saturate_irrelevant(A):
    """Saturation by the irrelevant maximal ideal; returns (ideal, changed)."""
    sat = ideal_saturate(A, irrelevant_ideal(A.ring))
    changed = sat.groebner() != A.groebner()
    return sat, changed


# ---------------------------------------------------------------------------
# counting helpers


def _std_count_upto(lead_monos, nvars, dmax):
    """Number of standard monomials of degree <= d for d = 0..dmax."""
    mins = []
    for m in sorted(set(lead_monos), key=mono_deg):
        if all(mono_div(m, o) is None for o in mins):
            mins.append(m)
    counts = [0] * (dmax + 1)

    def rec(i, mono, deg):
        if i == nvars:
            if all(mono_div(mono, m) is None for m in mins):
                counts[deg] += 1
            return
        for e in range(dmax - deg + 1):
            rec(i + 1, mono + (e,), deg + e)

    rec(0, (), 0)
    out = []
    total = 0
    for d in range(dmax + 1):
        total += counts[d]
        out.append(total)
    return out


def std_monomial_counts(A, dmax, order=None):
    """Cumulative counts of standard monomials of A up to each degree."""
    order = order or A.ring.order
    leads = A.lead_monomials(order)
    return _std_count_upto(list(leads), A.ring.nvars, dmax)


def colength(sub, sup, dmax=40, check_containment=True):
    """dim_k(sup/sub) for nested ideals with finite quotient.

    Counted degreewise through stabilization over nvars consecutive degrees;
    both ideals may be inhomogeneous (grevlex filtration is used).
    """
    if check_containment and not sup.contains_ideal(sub):
        raise GBError("colength of non-nested ideals")
    from .ring import GREVLEX

    n = sub.ring.nvars
    window = max(n, 2)
    top = max(
        [g.degree() for g in sub.groebner(GREVLEX)]
        + [g.degree() for g in sup.groebner(GREVLEX)]
        + [1]
    )
    d = top + window
    while d <= dmax:
        c_sub = std_monomial_counts(sub, d, GREVLEX)
        c_sup = std_monomial_counts(sup, d, GREVLEX)
        diffs = [a - b for a, b in zip(c_sub, c_sup)]
        tail = diffs[-window:]
        if all(x == tail[0] for x in tail):
            return tail[0]
        d += window
    raise GBError("colength did not stabilize; quotient may be infinite")


def graded_piece_rows(gens, degree):
    """Row vectors spanning the degree-d piece of a homogeneous ideal.

    Pure linear algebra over the monomial basis, independent of any
    Groebner computation; serves as the degreewise oracle.
    """
    if not gens:
        return [], []
    ring = gens[0].ring
    monos = _monomials_of_degree(ring.nvars, degree)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in gens:
        dg = g.degree()
        if dg > degree or dg < 0:
            continue
        if not g.is_homogeneous():
            raise GBError("graded oracle needs homogeneous generators")
        for m in _monomials_of_degree(ring.nvars, degree - dg):
            row = [0] * len(monos)
            for gm, c in g.terms.items():
                row[index[mono_mul(gm, m)]] = c
            rows.append(row)
    return rows, monos


def _monomials_of_degree(nvars, degree):
    if degree < 0:
        return []
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []

    def rec(i, left, acc):
        if i == nvars - 1:
            out.append(tuple(acc + [left]))
            return
        for e in range(left + 1):
            rec(i + 1, left - e, acc + [e])

    rec(0, degree, [])
    return out


def monomials_of_degree(nvars, degree):
    return _monomials_of_degree(nvars, degree)
