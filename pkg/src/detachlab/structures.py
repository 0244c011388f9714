"""Finite-length quotient modules and embedded point structure ideals.

A FiniteModule is presented by labeled generators and relations over the
chart ring; its finite monomial basis, multiplication action and invariants
(minimal generators, socle, linear span of the support) drive the
classification into the multiplicity <= 3 cases.  kernel_ideal computes the
embedded structure ideal from a surjection of the base ideal onto the
module; closed_form_ideal builds the same ideals from the published local
equations, and each serves as the other's oracle.
"""

from dataclasses import dataclass, field

from .poly import Polynomial
from .gb import (
    Ideal,
    GBError,
    syzygy_matrix,
    module_groebner,
    module_normal_form,
    module_syzygies,
    colength,
    graded_piece_rows,
    monomials_of_degree,
)
from .ring import mono_div, mono_deg, mono_mul
from . import linalg


class StructureError(Exception):
    pass


BASIS_CAP = 4096


class FiniteModule:
    """Finite-length module over the chart ring, given by relations."""

    def __init__(self, ring, generator_names, relations, support=None, label=""):
        self.ring = ring
        self.generators = tuple(generator_names)
        self.rank = len(self.generators)
        self.relations = [list(r) for r in relations]
        self.support = tuple(support) if support else tuple(0 for _ in range(ring.nvars))
        self.label = label
        self._gb = None
        self._basis = None
        self._actions = None

    def relation_gb(self):
        if self._gb is None:
            self._gb = module_groebner(self.relations, self.rank)
        return self._gb

    def basis(self):
        """Standard monomial basis [(position, monomial)] of the quotient."""
        if self._basis is not None:
            return self._basis
        leads = [g.lt for g in self.relation_gb()]
        n = self.ring.nvars
        basis = []
        for pos in range(self.rank):
            pos_leads = [m for (p, m) in leads if p == pos]
            frontier = [(0,) * n]
            seen = {(0,) * n}
            while frontier:
                mono = frontier.pop()
                if any(mono_div(mono, lm) is not None for lm in pos_leads):
                    continue
                basis.append((pos, mono))
                if len(basis) > BASIS_CAP:
                    raise StructureError("module does not have finite length")
                for i in range(n):
                    nxt = tuple(e + (1 if j == i else 0) for j, e in enumerate(mono))
                    if nxt not in seen:
                        seen.add(nxt)
                        frontier.append(nxt)
        basis.sort(key=lambda t: (mono_deg(t[1]), t[0], t[1]))
        self._basis = basis
        return basis

    @property
    def length(self):
        return len(self.basis())

    def coords(self, vector):
        """k-coordinates of a vector of polynomials on the monomial basis."""
        nf = module_normal_form(vector, self.relation_gb(), self.ring, self.rank)
        index = {bm: i for i, bm in enumerate(self.basis())}
        out = [0] * len(index)
        for pos, comp in enumerate(nf):
            for mono, c in comp.terms.items():
                key = (pos, mono)
                if key not in index:
                    raise StructureError("normal form left the standard basis")
                out[index[key]] = c
        return out

    def element(self, pos, mono=None):
        n = self.ring.nvars
        mono = mono or (0,) * n
        vec = [Polynomial.zero(self.ring) for _ in range(self.rank)]
        vec[pos] = Polynomial.monomial(self.ring, mono, 1)
        return vec

    def actions(self):
        """Multiplication matrices of each ring variable on the basis."""
        if self._actions is not None:
            return self._actions
        basis = self.basis()
        mats = {}
        for vi, vname in enumerate(self.ring.all_vars):
            mat = []
            for (pos, mono) in basis:
                bumped = tuple(e + (1 if j == vi else 0) for j, e in enumerate(mono))
                vec = self.element(pos, bumped)
                mat.append(self.coords(vec))
            # rows indexed by source basis element; transpose to columns
            mats[vname] = [[mat[b][i] for b in range(len(basis))] for i in range(len(basis))]
        self._actions = mats
        return mats

    # -- invariants ------------------------------------------------------

    def min_generators(self):
        """dim K/mK, the minimal number of module generators (Nakayama)."""
        L = self.length
        cols = []
        for mat in self.actions().values():
            for b in range(L):
                cols.append([mat[i][b] for i in range(L)])
        mk = linalg.rank(cols, L, self.ring.fld.p)
        return L - mk

    def socle_dimension(self):
        """dim of the annihilator of the maximal ideal inside the module."""
        L = self.length
        rows = []
        for mat in self.actions().values():
            for i in range(L):
                rows.append([mat[i][b] for b in range(L)])
        return len(linalg.nullspace(rows, L, self.ring.fld.p))

    def m_graded_dims(self):
        """(dim mK/m^2K, dim mK): filtration of the maximal-ideal action."""
        L = self.length
        p = self.ring.fld.p
        mats = list(self.actions().values())
        mk_cols = []
        for mat in mats:
            for b in range(L):
                mk_cols.append([mat[i][b] for i in range(L)])
        dim_mk = linalg.rank(mk_cols, L, p)
        m2_cols = []
        for m1 in mats:
            for m2 in mats:
                for b in range(L):
                    col = [m2[i][b] for i in range(L)]
                    col2 = [sum(m1[i][j] * col[j] for j in range(L)) for i in range(L)]
                    m2_cols.append(col2)
        dim_m2 = linalg.rank(m2_cols, L, p)
        return dim_mk - dim_m2, dim_mk

    def annihilating_linear_forms(self):
        """Basis of {(c_i) : sum c_i x_i kills the module}."""
        L = self.length
        names = self.ring.all_vars
        mats = [self.actions()[v] for v in names]
        rows = []
        for i in range(L):
            for b in range(L):
                rows.append([mats[k][i][b] for k in range(len(names))])
        return linalg.nullspace(rows, len(names), self.ring.fld.p)

    def graded_dimensions(self):
        """Vector space dimension of each monomial-degree layer of the basis."""
        out = {}
        for pos, mono in self.basis():
            out[mono_deg(mono)] = out.get(mono_deg(mono), 0) + 1
        return out


# ---------------------------------------------------------------------------
# constructors


def build_module(ring, kind, data=None, support=None):
    """Construct one of the recognized finite-length module types.

    kinds: skyscraper, cyclic (data: ideal), sum (data: pair of modules),
    dualfat (the rank-2 dual of the planar fat point), bowtie.
    """
    data = data or {}
    n = ring.nvars
    names = ring.all_vars

    def var(v):
        return Polynomial.var(ring, v)

    if kind == "skyscraper":
        rels = [[var(v)] for v in names]
        return FiniteModule(ring, ("e",), rels, support, "skyscraper")
    if kind == "cyclic":
        IZ = data["ideal"]
        if IZ.ring != ring:
            raise StructureError("cyclic module ideal lives in the wrong ring")
        rels = [[g] for g in IZ.gens]
        M = FiniteModule(ring, ("e",), rels, support, "cyclic")
        M.length  # force the finite-length check
        return M
    if kind == "sum":
        A, B = data["parts"]
        gens = tuple(f"a{i}" for i in range(A.rank)) + tuple(f"b{i}" for i in range(B.rank))
        rels = []
        zero = Polynomial.zero(ring)
        for r in A.relations:
            rels.append(list(r) + [zero] * B.rank)
        for r in B.relations:
            rels.append([zero] * A.rank + list(r))
        return FiniteModule(ring, gens, rels, support, "sum")
    if kind == "dualfat":
        # dual of the planar fat point: generators a, b with x*a = y*b the
        # common socle and everything else annihilating
        if n < 2:
            raise StructureError("dualfat needs at least two variables")
        x, y = var(names[0]), var(names[1])
        zero = Polynomial.zero(ring)
        rels = [[y, zero], [zero, x], [x, -y]]
        for v in names[2:]:
            rels.append([var(v), zero])
            rels.append([zero, var(v)])
        return FiniteModule(ring, ("a", "b"), rels, support, "dualfat")
    if kind == "bowtie":
        if n < 4:
            raise StructureError("bowtie needs four variables")
        x, y, z, w = (var(v) for v in names[:4])
        zero = Polynomial.zero(ring)
        rels = [
            [z, zero],
            [w, zero],
            [zero, x],
            [zero, y],
            [x, -z],
            [y, -w],
        ]
        for v in names[4:]:
            rels.append([var(v), zero])
            rels.append([zero, var(v)])
        return FiniteModule(ring, ("a", "b"), rels, support, "bowtie")
    raise StructureError(f"unrecognized module kind {kind!r}")


# ---------------------------------------------------------------------------
# classification


CASE_LABELS = ("mult1", "2a", "2b", "3a", "3b", "3c", "3d", "3e")


def classify_module(M):
    """Case label of a module of length <= 3 (quotient of a rank-2 ideal)."""
    L = M.length
    if L > 3:
        raise StructureError("classification only covers length <= 3")
    if L == 0:
        raise StructureError("zero module")
    r = M.min_generators()
    if L == 1:
        return "mult1"
    if L == 2:
        return "2b" if r == 1 else "2a"
    # length 3
    if r == 3:
        raise StructureError("three generators: not a quotient of a rank-2 ideal")
    if r == 1:
        lead, _ = M.m_graded_dims()
        if lead == 2:
            return "3d"
        # curvilinear: decide line versus smooth conic by the linear span
        span_codim = len(M.annihilating_linear_forms())
        span_dim = M.ring.nvars - span_codim
        if span_dim == 1:
            return "3b"
        if span_dim == 2:
            return "3c"
        raise StructureError("curvilinear triple point spans a 3-space")
    socle = M.socle_dimension()
    if socle == 2:
        return "3a"
    if socle == 1:
        return "3e"
    raise StructureError("unexpected socle dimension for a length-3 module")


# ---------------------------------------------------------------------------
# structure specs and kernels


@dataclass
class PointStructureSpec:
    base: Ideal
    module: FiniteModule
    phi: list  # one vector (list of Polynomial, length module.rank) per base generator
    label: str = ""

    def validate(self):
        M = self.module
        if len(self.phi) != len(self.base.gens):
            raise StructureError("phi must give one image per base generator")
        # well-defined: base syzygies map to zero in the module
        rows = syzygy_matrix(list(self.base.gens))
        for row in rows:
            vec = [Polynomial.zero(M.ring) for _ in range(M.rank)]
            for coef, img in zip(row, self.phi):
                for pos in range(M.rank):
                    vec[pos] = vec[pos] + coef * img[pos]
            if any(c != 0 for c in M.coords(vec)):
                raise StructureError("phi is not well defined: a base relation survives")
        # surjective: images generate modulo mK (Nakayama)
        L = M.length
        cols = [M.coords(img) for img in self.phi]
        cols = [list(c) for c in cols]
        for mat in M.actions().values():
            for b in range(L):
                cols.append([mat[i][b] for i in range(L)])
        if linalg.rank(cols, L, M.ring.fld.p) != L:
            raise StructureError("phi is not surjective")
        return True


def kernel_ideal(spec, validate=True):
    """The embedded structure ideal: combinations of base generators that
    phi sends to zero, computed by module syzygies."""
    if validate:
        spec.validate()
    M = spec.module
    base_gens = list(spec.base.gens)
    r = len(base_gens)
    vectors = [list(img) for img in spec.phi] + [list(rel) for rel in M.relations]
    rows = module_syzygies(vectors, M.rank)
    ring = spec.base.ring
    gens = []
    for row in rows:
        combo = Polynomial.zero(ring)
        for a, g in zip(row[:r], base_gens):
            combo = combo + a * g
        if not combo.is_zero():
            gens.append(combo)
    IY = Ideal(ring, gens)
    IY = Ideal(ring, list(IY.groebner()))
    if not spec.base.contains_ideal(IY):
        raise StructureError("kernel ideal escaped the base ideal")
    return IY


def structure_colength(spec, IY=None):
    IY = IY if IY is not None else kernel_ideal(spec)
    return colength(IY, spec.base)


# ---------------------------------------------------------------------------
# closed forms


def _mp_ideal(ring):
    return Ideal(ring, [Polynomial.var(ring, v) for v in ring.all_vars])


def closed_form_ideal(ring, case, f, g, IZ=None, phi_images=None):
    """Published local equations of the embedded structure for each case.

    f, g generate the base complete intersection; IZ is the auxiliary
    finite subscheme for the cases that need one.  For case 3e the general
    position images ((a,b,c),(d,e,f)) may be supplied; the coordinate change
    X = a*y - b*x, Y = e*x - d*y is applied after the nondegeneracy check.
    """
    mp = _mp_ideal(ring)
    names = ring.all_vars

    def check_member(poly, J, what):
        if not J.contains(poly):
            raise StructureError(f"{what} must lie in the auxiliary ideal for case {case}")

    if case == "mult1":
        return Ideal(ring, [m * f for m in mp.gens] + [g])
    if case == "2a":
        return Ideal(ring, [m * h for m in mp.gens for h in (f, g)])
    if case == "2b":
        if IZ is None:
            raise StructureError("case 2b needs the length-2 subscheme ideal")
        check_member(g, IZ, "the second generator")
        return Ideal(ring, [g] + [f * h for h in IZ.gens])
    if case == "3a":
        if IZ is None:
            raise StructureError("case 3a needs the double point ideal")
        check_member(f, IZ, "the first generator")
        return Ideal(ring, [f * m for m in mp.gens] + [g * h for h in IZ.gens])
    if case in ("3b", "3c", "3d"):
        if IZ is None:
            raise StructureError(f"case {case} needs the triple point ideal")
        check_member(g, IZ, "the second generator")
        return Ideal(ring, [f * h for h in IZ.gens] + [g])
    if case == "3e":
        if len(names) < 3:
            raise StructureError("case 3e needs an ambient of dimension >= 3")
        xv = Polynomial.var(ring, names[0])
        yv = Polynomial.var(ring, names[1])
        if phi_images is None:
            X, Y = yv, xv
        else:
            (a, b, _c), (d, e, _f) = phi_images
            fld = ring.fld
            a, b, d, e = (fld.coerce(v) for v in (a, b, d, e))
            if a * e - b * d == 0:
                raise StructureError("degenerate images: a*e - b*d = 0 is not a 3e surjection")
            X = yv.scale(a) - xv.scale(b)
            Y = xv.scale(e) - yv.scale(d)
        rest = [Polynomial.var(ring, v) for v in names[2:]]
        gens = [X * f, Y * g, Y * f - X * g]
        for zv in rest:
            gens += [zv * f, zv * g]
        return Ideal(ring, gens)
    if case == "hypersurface":
        if IZ is None:
            raise StructureError("the hypersurface case needs the finite subscheme ideal")
        return Ideal(ring, [f * h for h in IZ.gens])
    raise StructureError(f"unknown case label {case!r}")


# ---------------------------------------------------------------------------
# standard specs used by the census (base at the origin of a chart)


def spec_for_case(ring, case, f, g, IZ=None, support=None):
    """PointStructureSpec matching closed_form_ideal's conventions."""
    base = Ideal(ring, [f, g])
    names = ring.all_vars

    if case == "mult1":
        M = build_module(ring, "skyscraper", support=support)
        phi = [M.element(0), _zero_vec(M)]
    elif case == "2a":
        S = build_module(ring, "skyscraper", support=support)
        M = build_module(ring, "sum", {"parts": (S, S)}, support=support)
        phi = [M.element(0), M.element(1)]
    elif case in ("2b", "3b", "3c", "3d"):
        M = build_module(ring, "cyclic", {"ideal": IZ}, support=support)
        if M.length != {"2b": 2, "3b": 3, "3c": 3, "3d": 3}[case]:
            raise StructureError(f"auxiliary subscheme has the wrong length for {case}")
        phi = [M.element(0), _zero_vec(M)]
    elif case == "3a":
        S = build_module(ring, "skyscraper", support=support)
        Z = build_module(ring, "cyclic", {"ideal": IZ}, support=support)
        if Z.length != 2:
            raise StructureError("case 3a needs a length-2 subscheme")
        M = build_module(ring, "sum", {"parts": (S, Z)}, support=support)
        phi = [M.element(0), M.element(1)]
    elif case == "3e":
        M = build_module(ring, "dualfat", support=support)
        phi = [M.element(0), M.element(1)]
    else:
        raise StructureError(f"no standard spec for case {case!r}")
    return PointStructureSpec(Ideal(ring, [f, g]), M, phi, label=case)


def _zero_vec(M):
    return [Polynomial.zero(M.ring) for _ in range(M.rank)]


# ---------------------------------------------------------------------------
# degree-bounded linear-algebra kernel oracle


def _pad_mono(m, extra):
    return m + (extra,)


def _homogenize_terms(poly, target_deg):
    """Terms of the polynomial padded with a homogenizing exponent."""
    out = {}
    for m, c in poly.terms.items():
        out[_pad_mono(m, target_deg - mono_deg(m))] = c
    return out


def kernel_oracle_agrees(spec, IY, dmax=8):
    """Check I_Y against a degree-bounded pure linear-algebra kernel.

    Works on the homogenized filtration: degree by degree the oracle solves
    for bounded-degree combinations of the base generators whose phi-image
    lies in the span of bounded relation multiples, with a homogenizing
    slot absorbing inhomogeneity.  The accumulated combination span must
    match the degree filtration of I_Y (standard monomial count) at every
    degree through dmax, and every oracle element must reduce to zero
    against I_Y.  No Groebner data enters the oracle side.
    """
    M = spec.module
    ring = spec.base.ring
    p = ring.fld.p
    n = ring.nvars
    base = list(spec.base.gens)
    base_deg = [gpoly.degree() for gpoly in base]
    # uniform shift of the surjection: deg phi(g_i) - deg g_i
    shift = None
    for i, img in enumerate(spec.phi):
        degs = {mono_deg(m) for comp in img for m in comp.terms}
        for dd in degs:
            s = dd - base_deg[i]
            if shift is None:
                shift = s
            elif s != shift:
                raise StructureError("phi images are not uniformly graded; oracle unavailable")
    if shift is None:
        raise StructureError("phi is identically zero")
    rel_data = []
    for rel in M.relations:
        rd = max((c.degree() for c in rel if not c.is_zero()), default=-1)
        if rd >= 0:
            rel_data.append((rel, rd))

    from .gb import std_monomial_counts

    # inhomogeneous data can produce a low-degree combination only at a
    # higher homogenized stage, so accumulate past dmax before checking
    slack = 0
    for rel, _ in rel_data:
        degs = [mono_deg(m) for comp in rel for m in comp.terms]
        if degs:
            slack = max(slack, max(degs) - min(degs))
    for gpoly in base:
        degs = [mono_deg(m) for m in gpoly.terms]
        slack = max(slack, max(degs) - min(degs))
    top = dmax + 2 * slack + 1

    std_counts = std_monomial_counts(IY, dmax)
    mono_counts = []
    total = 0
    for d in range(dmax + 1):
        total += len(monomials_of_degree(n, d))
        mono_counts.append(total)

    all_monos = []
    mono_index = {}
    for d in range(top + 1):
        for m in monomials_of_degree(n, d):
            mono_index[m] = len(all_monos)
            all_monos.append(m)
    accumulated = []

    for d in range(top + 1):
        target = {}

        def fkey(key):
            if key not in target:
                target[key] = len(target)
            return target[key]

        images = []
        for i, gpoly in enumerate(base):
            dd = d - base_deg[i]
            if dd < 0:
                continue
            hphi = [
                _homogenize_terms(comp, base_deg[i] + shift)
                if not comp.is_zero()
                else {}
                for comp in spec.phi[i]
            ]
            for mono in monomials_of_degree(n + 1, dd):
                img = {}
                for pos, terms in enumerate(hphi):
                    for cm, cc in terms.items():
                        key = fkey((pos, tuple(a + b for a, b in zip(cm, mono))))
                        img[key] = img.get(key, 0) + cc
                images.append(((i, mono), img))
        rel_cols = []
        for rel, rd in rel_data:
            dd = d + shift - rd
            if dd < 0:
                continue
            hrel = [
                _homogenize_terms(comp, rd) if not comp.is_zero() else {}
                for comp in rel
            ]
            for mono in monomials_of_degree(n + 1, dd):
                img = {}
                for pos, terms in enumerate(hrel):
                    for cm, cc in terms.items():
                        key = fkey((pos, tuple(a + b for a, b in zip(cm, mono))))
                        img[key] = img.get(key, 0) + cc
                rel_cols.append(img)
        ncols = len(images) + len(rel_cols)
        if ncols == 0:
            continue
        matrix = [[0] * ncols for _ in range(len(target))]
        for j, (_, img) in enumerate(images):
            for key, c in img.items():
                matrix[key][j] = c
        for j, img in enumerate(rel_cols):
            for key, c in img.items():
                matrix[key][len(images) + j] = c
        null = linalg.nullspace(matrix, ncols, p)
        hbase = [_homogenize_terms(gpoly, base_deg[i]) for i, gpoly in enumerate(base)]
        for vec in null:
            row = [0] * len(all_monos)
            nonzero = False
            for j, ((i, mono), _) in enumerate(images):
                c = vec[j]
                if c == 0:
                    continue
                for hm, gc in hbase[i].items():
                    full = tuple(a + b for a, b in zip(hm, mono))
                    dehom = full[:-1]  # drop the homogenizing exponent
                    row[mono_index[dehom]] += c * gc
                    nonzero = True
            if nonzero and any(row):
                accumulated.append(row)
    # Echelonize with columns in descending degree: a row whose pivot sits
    # in degree <= d is supported entirely in degrees <= d, so pivot degrees
    # count the filtration dimensions.
    ncols_all = len(all_monos)
    reversed_rows = [list(reversed(r)) for r in accumulated]
    _, pivots = linalg.echelon(reversed_rows, ncols_all, p)
    pivot_degs = sorted(mono_deg(all_monos[ncols_all - 1 - c]) for c in pivots)
    for d in range(dmax + 1):
        oracle_dim = sum(1 for pd in pivot_degs if pd <= d)
        gb_dim = mono_counts[d] - std_counts[d]
        if oracle_dim != gb_dim:
            return False
    # every oracle element must lie in I_Y
    for row in accumulated:
        poly = Polynomial(ring, {all_monos[k]: c for k, c in enumerate(row) if c})
        if not IY.contains(poly):
            return False
    return True
