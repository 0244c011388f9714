"""Standalone property suites: basis uniqueness, graded-piece equivalence,
colength additivity and limit-oracle agreement across the census objects."""

import random

import pytest

from detachlab.parser import parse_source
from detachlab.ring import RingDescriptor
from detachlab.poly import Polynomial
from detachlab import linalg
from detachlab.gb import Ideal, graded_piece_rows, colength
from detachlab.hilbert import (
    hilbert_series_numerator,
    hf_from_numerator,
    affine_hilbert_polynomial,
    poly1_equal,
    _poly1_add,
)
from detachlab.structures import spec_for_case, kernel_ideal
from detachlab.families import detach_family, ci_limit_family, flat_limit, limit_oracle_agrees


def _random_poly(ring, rng, deg, terms):
    p = Polynomial.zero(ring)
    for _ in range(terms):
        mono = [0] * ring.nvars
        for _ in range(rng.randint(0, deg)):
            mono[rng.randrange(ring.nvars)] += 1
        p = p + Polynomial.monomial(ring, tuple(mono), rng.randint(-3, 3))
    return p


def test_reduced_basis_unique_under_permutation():
    rng = random.Random(20110)
    cases = 0
    while cases < 100:
        nvars = rng.randint(2, 4)
        ring = RingDescriptor(tuple("abcd"[:nvars]))
        gens = [_random_poly(ring, rng, 3, rng.randint(1, 3)) for _ in range(rng.randint(2, 4))]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        reference = Ideal(ring, gens).groebner()
        for _ in range(3):
            shuffled = list(gens)
            rng.shuffle(shuffled)
            assert Ideal(ring, shuffled).groebner() == reference
        cases += 1


CENSUS_HOMOGENEOUS = """
ring P3 vars x,y,z,w over QQ order grevlex;
ideal TC = x*z - y^2, x*w - y*z, y*w - z^2;
ideal SQ = x^2, y^2;
ideal IE = y^2, x^3, x^2*y, x^2*z;
ideal FAT = x^2, x*y, y^2;
ideal AXES = x*y, x*z, y*z;
ideal ID4 = x*z, y*z, z^2, x^4 + y^4;
"""


def test_degreewise_gb_vs_linear_algebra():
    doc = parse_source(CENSUS_HOMOGENEOUS)
    for name, I in doc.ideals.items():
        numer = hilbert_series_numerator(I)
        hf = hf_from_numerator(numer, I.ring.nvars, 8)
        for d in range(9):
            rows, monos = graded_piece_rows(list(I.gens), d)
            rank = linalg.rank(rows, len(monos)) if rows else 0
            assert rank == len(monos) - hf[d], (name, d)


def test_colength_additivity_for_census_structures():
    doc = parse_source(
        """
        ring A3 vars x,y,z over QQ order grevlex;
        ideal IZ2 = x^2, y, z;
        ideal IZ3LINE = y, z, x^3;
        ideal IZ3CONIC = y - x^2, z, x^3;
        ideal IZ3FAT = x^2, x*y, y^2, z;
        """
    )
    R = doc.rings["A3"]
    x, y, z = (Polynomial.var(R, v) for v in "xyz")
    f, g = x ** 2, y ** 2
    base = Ideal(R, [f, g])
    base_hp = affine_hilbert_polynomial(base).polynomial
    for case, iz in [
        ("mult1", None), ("2a", None), ("2b", "IZ2"), ("3a", "IZ2"),
        ("3b", "IZ3LINE"), ("3c", "IZ3CONIC"), ("3d", "IZ3FAT"), ("3e", None),
    ]:
        spec = spec_for_case(R, case, f, g, doc.ideals[iz] if iz else None)
        IY = kernel_ideal(spec)
        length = spec.module.length
        assert colength(IY, base) == length
        hp = affine_hilbert_polynomial(IY).polynomial
        assert poly1_equal(hp, _poly1_add(list(base_hp), [length])), case


def _census_families():
    doc = parse_source(
        """
        ring Rt vars x,y,z param t over QQ order grevlex;
        ideal IX = x^2, y^2;
        ideal IY1 = y, x^2, x*z;
        ideal IZFAT = x^2, x*y, y^2, z;
        """
    )
    Rt = doc.rings["Rt"]
    t = Polynomial.var(Rt, "t")
    x, y, z = (Polynomial.var(Rt, v) for v in "xyz")
    fams = {
        "pullone": (detach_family("pullone", Rt, base=doc.ideals["IY1"], path=(0, t, 0)), 6),
        "curvilinear-2": (detach_family("curvilinear", Rt, base=doc.ideals["IX"],
                                        paths=((t, 0, 0), (-t, 0, 0))), 6),
        "curvilinear-1": (detach_family("curvilinear", Rt, base=doc.ideals["IX"],
                                        paths=((t, 0, 0),)), 6),
        "case-e": (detach_family("case-e", Rt, f=x ** 2, g=y ** 2, path=(0, t, t, 0)), 5),
        "case-e-swapped": (detach_family("case-e", Rt, f=y ** 2, g=x ** 2,
                                         path=(t, 0, 0, t)), 5),
        "case-e-degenerate": (detach_family("case-e", Rt, f=x ** 2, g=y * z,
                                            path=(0, t, 0, 2 * t)), 5),
        "hypersurface": (detach_family("hypersurface", Rt, f=z,
                                       subscheme=doc.ideals["IZFAT"], shift=(0, 0, t)), 5),
    }
    d2 = parse_source("ring H2 vars x,y param t over QQ order grevlex;")
    t2 = Polynomial.var(d2.rings["H2"], "t")
    fams["case-d"] = (detach_family("case-d", d2.rings["H2"], path=(t2 ** 2, t2)), 8)
    d3 = parse_source(
        """
        ring Pt vars x,y,z,w param t over QQ order grevlex;
        matrix PSI0 = [[y, 0], [-x, y], [0, -x]];
        matrix PSI1 = [[x, y], [y, z], [z, w]];
        ideal TRIPLE = x^2, x*y, y^2;
        """
    )
    Pt = d3.rings["Pt"]
    tt = Polynomial.var(Pt, "t")
    ww = Polynomial.var(Pt, "w")
    fams["tripleline-ci"] = (
        ci_limit_family(Pt, d3.matrices["PSI0"], d3.matrices["PSI1"],
                        lift=(ww ** 2, Polynomial.zero(Pt), Polynomial.zero(Pt)),
                        path=(0, 0, tt, 1), base=d3.ideals["TRIPLE"]),
        3,
    )
    return fams


def test_limit_oracle_agreement_for_census_families():
    for name, (fam, dmax) in _census_families().items():
        limit = flat_limit(fam)
        assert limit_oracle_agrees(fam, limit, dmax=dmax), name


def test_flat_limit_idempotent_for_census_families():
    from detachlab.families import t_saturated, FamilyOverLine

    for name, (fam, _d) in _census_families().items():
        sat = t_saturated(fam)
        again = t_saturated(FamilyOverLine(sat, fam.parameter, fam.provenance))
        assert sat.groebner() == again.groebner(), name
