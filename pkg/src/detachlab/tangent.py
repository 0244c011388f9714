"""Tangent-space linear algebra: Hom(I, S/I) in degree zero and module
endomorphism algebras.

hom_dim solves the finite linear system cutting out degree-preserving
homomorphisms from a homogeneous saturated ideal to its quotient ring:
one unknown block per minimal generator, one constraint block per syzygy
row.  end_dim computes the commutant of the multiplication action on a
finite-length module.
"""

import random
from dataclasses import dataclass

from .ring import mono_deg, mono_mul
from .poly import Polynomial
from .gb import Ideal, syzygy_matrix, monomials_of_degree, mono_div
from . import linalg


class TangentError(Exception):
    pass


def minimal_generators(I):
    """Trim a homogeneous generating set to a minimal one (graded Nakayama)."""
    gens = sorted(I.gens, key=lambda g: (g.degree(), str(g)))
    keep = list(gens)
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(keep):
            rest = keep[:i] + keep[i + 1 :]
            if rest and Ideal(I.ring, rest).contains(g):
                keep = rest
                changed = True
                break
    return keep


def _std_monomials_of_degree(I, degree):
    leads = I.lead_monomials()
    out = []
    for m in monomials_of_degree(I.ring.nvars, degree):
        if all(mono_div(m, lm) is None for lm in leads):
            out.append(m)
    return out


def _graded_components(row, gens_degs):
    """Split a syzygy row into homogeneous components of the shifted grading."""
    buckets = {}
    for j, comp in enumerate(row):
        for m, c in comp.terms.items():
            e = mono_deg(m) + gens_degs[j]
            buckets.setdefault(e, [dict() for _ in row])[j][m] = c
    ring = row[0].ring
    return [
        (e, [Polynomial(ring, d) for d in comps]) for e, comps in sorted(buckets.items())
    ]


@dataclass
class HomSpace:
    dimension: int
    basis: list  # one tuple of generator-image Polynomials per basis vector
    generators: int
    syzygy_rows: int
    window_degree: int

    def to_json(self):
        return {
            "hom_dim": self.dimension,
            "generators": self.generators,
            "syzygy_rows": self.syzygy_rows,
            "window_degree": self.window_degree,
        }


def hom_dim(I, check_saturated=False):
    """dim Hom(I, S/I) in degree zero, with an explicit basis.

    The ideal must be homogeneous (and saturated for the tangent-space
    reading).  Unknowns are the images of the minimal generators in the
    matching graded pieces of S/I; every syzygy row imposes the relations
    that make the images a well-defined homomorphism.
    """
    if I.is_zero():
        raise TangentError("hom of the zero ideal")
    for g in I.gens:
        if not g.is_homogeneous():
            raise TangentError("hom_dim needs a homogeneous ideal")
    gens = minimal_generators(I)
    degs = [g.degree() for g in gens]
    rows = syzygy_matrix(gens)
    split_rows = []
    for row in rows:
        split_rows.extend(comps for _, comps in _graded_components(row, degs))

    # unknown layout: coordinates of u_j on the standard monomials of (S/I)_{d_j}
    std = {}
    for d in set(degs):
        std[d] = _std_monomials_of_degree(I, d)
    offsets = []
    total = 0
    for j, d in enumerate(degs):
        offsets.append(total)
        total += len(std[d])

    constraints = []
    window = 0
    for comps in split_rows:
        e = None
        for j, comp in enumerate(comps):
            if not comp.is_zero():
                e = comp.degree() + degs[j]
                break
        if e is None:
            continue
        window = max(window, e)
        target = _std_monomials_of_degree(I, e)
        tindex = {m: i for i, m in enumerate(target)}
        block = [[0] * total for _ in range(len(target))]
        for j, comp in enumerate(comps):
            if comp.is_zero():
                continue
            for k, um in enumerate(std[degs[j]]):
                prod = comp * Polynomial.monomial(I.ring, um, 1)
                nf = I.normal_form(prod)
                for m, c in nf.terms.items():
                    block[tindex[m]][offsets[j] + k] += c
        constraints.extend(block)

    null = linalg.nullspace(constraints, total, I.ring.fld.p)
    basis = []
    for vec in null:
        images = []
        for j, d in enumerate(degs):
            terms = {}
            for k, um in enumerate(std[d]):
                c = vec[offsets[j] + k]
                if c:
                    terms[um] = c
            images.append(Polynomial(I.ring, terms))
        basis.append(tuple(images))
    return HomSpace(len(null), basis, len(gens), len(split_rows), window)


def hom_certificate(I, hom):
    """Check each basis homomorphism against every syzygy row."""
    gens = minimal_generators(I)
    degs = [g.degree() for g in gens]
    rows = syzygy_matrix(gens)
    for images in hom.basis:
        for row in rows:
            acc = Polynomial.zero(I.ring)
            for comp, img in zip(row, images):
                acc = acc + comp * img
            if not I.normal_form(acc).is_zero():
                return False
    return True


@dataclass
class EndSpace:
    dimension: int
    basis: list  # square matrices over the coefficient field
    invertible_witness: bool

    def to_json(self):
        return {"end_dim": self.dimension, "invertible_witness": self.invertible_witness}


def end_dim(M, seed=20110):
    """Endomorphism algebra of a finite-length module.

    Endomorphisms are the k-linear maps on the normal-form basis commuting
    with multiplication by every variable; the report includes whether a
    random element of the space is invertible (so the automorphisms are
    dense in it).
    """
    L = M.length
    mats = list(M.actions().values())
    p = M.ring.fld.p
    # unknowns T[i][j]; constraints T X - X T = 0 for each action matrix X
    rows = []
    for X in mats:
        for i in range(L):
            for j in range(L):
                row = [0] * (L * L)
                for k in range(L):
                    row[i * L + k] += X[k][j]
                    row[k * L + j] -= X[i][k]
                rows.append(row)
    null = linalg.nullspace(rows, L * L, p)
    basis = []
    for vec in null:
        basis.append([[vec[i * L + j] for j in range(L)] for i in range(L)])
    rng = random.Random(seed)
    witness = False
    for _ in range(8):
        coeffs = [rng.randint(-9, 9) for _ in basis]
        T = [[sum(c * B[i][j] for c, B in zip(coeffs, basis)) for j in range(L)] for i in range(L)]
        d = linalg.det(T, p)
        if d != 0:
            witness = True
            break
    return EndSpace(len(null), basis, witness)


def identity_in_span(end_space):
    L = len(end_space.basis[0]) if end_space.basis else 0
    if L == 0:
        return False
    ident = [[1 if i == j else 0 for j in range(L)] for i in range(L)]
    rows = [[B[i][j] for B in end_space.basis] for i in range(L) for j in range(L)]
    rhs = [ident[i][j] for i in range(L) for j in range(L)]
    return linalg.solve(rows, rhs, len(end_space.basis)) is not None
