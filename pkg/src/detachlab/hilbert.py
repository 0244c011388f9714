"""Hilbert series, Hilbert polynomials and geometric invariants.

The series numerator is computed from the grevlex lead-term ideal by
recursive pivot splitting.  The Hilbert polynomial is interpolated from
consecutive Hilbert function values and accepted once it matches the
function on a further window of nvars degrees; no regularity bound is
computed.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .ring import GREVLEX, mono_div, mono_deg
from .gb import Ideal, saturate_irrelevant, GBError


class HilbertError(Exception):
    pass


# ---------------------------------------------------------------------------
# polynomials in one variable z, held as coefficient tuples


def poly1_eval(coeffs, z):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def poly1_deg(coeffs):
    d = len(coeffs) - 1
    while d >= 0 and coeffs[d] == 0:
        d -= 1
    return d


def poly1_str(coeffs, var="z"):
    d = poly1_deg(coeffs)
    if d < 0:
        return "0"
    chunks = []
    for i in range(d, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if isinstance(c, Fraction) and c.denominator == 1:
            c = c.numerator
        neg = c < 0
        mag = -c if neg else c
        if i == 0:
            body = str(mag)
        elif i == 1:
            body = var if mag == 1 else f"{mag}*{var}"
        else:
            body = f"{var}^{i}" if mag == 1 else f"{mag}*{var}^{i}"
        if isinstance(mag, Fraction):
            body = f"({mag})" + ("" if i == 0 else f"*{var}" + ("" if i == 1 else f"^{i}"))
        if not chunks:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append(("- " if neg else "+ ") + body)
    return " ".join(chunks)


def poly1_equal(a, b):
    da, db = poly1_deg(a), poly1_deg(b)
    if da != db:
        return False
    return all(Fraction(a[i]) == Fraction(b[i]) for i in range(da + 1))


def _binomial_poly(i):
    """Coefficients of C(z, i) as a polynomial in z."""
    coeffs = [Fraction(1)]
    for k in range(i):
        # multiply by (z - k)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j + 1] += c
            nxt[j] -= c * k
        coeffs = nxt
    inv = Fraction(1)
    for k in range(1, i + 1):
        inv /= k
    return [c * inv for c in coeffs]


def interpolate_binomial(start, values):
    """Polynomial through (start+j, values[j]) in the binomial basis."""
    diffs = [Fraction(v) for v in values]
    coeffs_binom = []
    for _ in range(len(values)):
        coeffs_binom.append(diffs[0])
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    out = [Fraction(0)]
    for i, c in enumerate(coeffs_binom):
        # c * C(z - start, i)
        base = _binomial_poly(i)
        shifted = _compose_shift(base, -start)
        out = _poly1_add(out, [c * x for x in shifted])
    return out


def _poly1_add(a, b):
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    ]


def _compose_shift(coeffs, shift):
    """coeffs(z + shift) expanded."""
    out = [Fraction(0)] * len(coeffs)
    for i in range(len(coeffs) - 1, -1, -1):
        # out = out * (z + shift) + coeffs[i]
        nxt = [Fraction(0)] * (len(coeffs))
        for j in range(len(out) - 1):
            nxt[j + 1] += out[j]
        for j in range(len(out)):
            nxt[j] += out[j] * shift
        nxt[0] += coeffs[i]
        out = nxt
    return out


# ---------------------------------------------------------------------------
# numerator of the Hilbert series of a monomial ideal


def _minimalize_monos(monos):
    mins = []
    for m in sorted(set(monos), key=mono_deg):
        if all(mono_div(m, o) is None for o in mins):
            mins.append(m)
    return mins


def series_numerator(lead_monos, nvars):
    """Coefficients of N(T) with sum dim (S/I)_d T^d = N(T)/(1-T)^nvars."""

    def rec(gens):
        gens = _minimalize_monos(gens)
        if not gens:
            return {0: 1}
        if any(mono_deg(m) == 0 for m in gens):
            return {}
        # pairwise coprime generators form a monomial complete intersection
        coprime = True
        for i, a in enumerate(gens):
            for b in gens[i + 1 :]:
                if any(x > 0 and y > 0 for x, y in zip(a, b)):
                    coprime = False
                    break
            if not coprime:
                break
        if coprime:
            out = {0: 1}
            for m in gens:
                d = mono_deg(m)
                nxt = {}
                for k, c in out.items():
                    nxt[k] = nxt.get(k, 0) + c
                    nxt[k + d] = nxt.get(k + d, 0) - c
                out = {k: c for k, c in nxt.items() if c}
            return out
        # pivot on the most frequent variable
        counts = [0] * nvars
        for m in gens:
            for i, e in enumerate(m):
                if e:
                    counts[i] += 1
        v = max(range(nvars), key=lambda i: counts[i])
        pivot = tuple(1 if i == v else 0 for i in range(nvars))
        plus = rec(gens + [pivot])
        colon = rec([tuple(max(e - p, 0) for e, p in zip(m, pivot)) for m in gens])
        out = dict(plus)
        for k, c in colon.items():
            out[k + 1] = out.get(k + 1, 0) + c
        return {k: c for k, c in out.items() if c}

    table = rec(list(lead_monos))
    if not table:
        return (0,)
    top = max(table)
    return tuple(table.get(k, 0) for k in range(top + 1))


def hilbert_series_numerator(I, order=GREVLEX):
    """Numerator for a homogeneous ideal; raises on non-homogeneous input."""
    for g in I.gens:
        if not g.is_homogeneous():
            raise HilbertError("hilbert series needs a homogeneous ideal")
    return series_numerator(I.lead_monomials(order), I.ring.nvars)


def hf_from_numerator(numerator, nvars, dmax):
    """Hilbert function values dim (S/I)_d for d = 0..dmax."""
    vals = []
    for d in range(dmax + 1):
        total = 0
        for k, c in enumerate(numerator):
            if c and d - k >= 0:
                total += c * comb(d - k + nvars - 1, nvars - 1)
        vals.append(total)
    return vals


# ---------------------------------------------------------------------------
# Hilbert polynomial with windowed stabilization


@dataclass
class HilbertData:
    numerator: tuple
    polynomial: tuple  # coefficients in z
    dim: int
    degree: int
    genus: object  # int for curves, None otherwise
    saturated_input: bool
    stabilized_at: int

    def polynomial_str(self):
        return poly1_str(self.polynomial)

    def to_json(self):
        return {
            "hilbert_polynomial": self.polynomial_str(),
            "dim": self.dim,
            "degree": self.degree,
            "genus": self.genus,
            "saturated_input": self.saturated_input,
        }


def _detect_polynomial(values, nvars, start_cap=80):
    """Interpolate nvars+1 values and demand nvars more degrees of agreement."""
    need = 2 * nvars + 1
    start = 0
    while start + need <= len(values) or start + need <= start_cap:
        if start + need > len(values):
            raise HilbertError("not enough Hilbert function values")
        window = values[start : start + nvars + 1]
        cand = interpolate_binomial(start, window)
        ok = all(
            poly1_eval(cand, start + nvars + 1 + j) == values[start + nvars + 1 + j]
            for j in range(nvars)
        )
        if ok:
            return cand, start
        start += 1
    raise HilbertError("Hilbert function did not stabilize")


def _invariants(coeffs):
    d = poly1_deg(coeffs)
    if d < 0:
        return -1, 0, None
    dim = d
    lead = Fraction(coeffs[d])
    degree = lead
    for k in range(1, d + 1):
        degree *= k
    if degree.denominator != 1:
        raise HilbertError("leading coefficient does not give an integer degree")
    genus = None
    if d == 1:
        g = 1 - poly1_eval(coeffs, 0)
        if Fraction(g).denominator == 1:
            genus = int(g)
    return dim, int(degree), genus


def hilbert_polynomial(I, saturate=True):
    """Projective Hilbert polynomial of a homogeneous ideal.

    The input is saturated with respect to the irrelevant ideal first; the
    returned record notes whether that changed anything.
    """
    work = I
    changed = False
    if saturate and not I.is_zero():
        work, changed = saturate_irrelevant(I)
    numer = hilbert_series_numerator(work)
    n = work.ring.nvars
    extra = len(numer) + 2 * n + 4
    values = hf_from_numerator(numer, n, extra)
    coeffs, start = _detect_polynomial(values, n)
    dim, degree, genus = _invariants(coeffs)
    return HilbertData(numer, tuple(coeffs), dim, degree, genus, not changed, start)


def affine_hilbert_polynomial(I):
    """Hilbert polynomial of the projective closure, from the affine filtration.

    Counts standard monomials of degree <= d (a grevlex lead ideal gives the
    dimension of the degree filtration), so no homogenization is needed.
    """
    numer = series_numerator(I.lead_monomials(GREVLEX), I.ring.nvars)
    n = I.ring.nvars
    extra = len(numer) + 2 * (n + 1) + 4
    vals = hf_from_numerator(numer, n, extra)
    cumulative = []
    total = 0
    for v in vals:
        total += v
        cumulative.append(total)
    coeffs, start = _detect_polynomial(cumulative, n + 1)
    dim, degree, genus = _invariants(coeffs)
    return HilbertData(numer, tuple(coeffs), dim, degree, genus, True, start)


def hilbert_data(I, projective=None):
    """Dispatch on homogeneity: projective polynomial or affine filtration."""
    if projective is None:
        projective = all(g.is_homogeneous() for g in I.gens)
    if projective:
        return hilbert_polynomial(I)
    return affine_hilbert_polynomial(I)


def geometric_invariants(I):
    """(dim, degree, genus) of a nonzero homogeneous ideal."""
    if I.is_zero():
        raise HilbertError("zero ideal: invariants of the whole space are not reported")
    hd = hilbert_polynomial(I)
    return hd.dim, hd.degree, hd.genus


def hilbert_function(I, dmax, saturate=False):
    """Raw Hilbert function values of S/I for homogeneous I."""
    work = I
    if saturate:
        work, _ = saturate_irrelevant(I)
    numer = hilbert_series_numerator(work)
    return hf_from_numerator(numer, work.ring.nvars, dmax)
