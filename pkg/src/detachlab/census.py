"""Named-example registry: every concrete claim is bound to an executable check.

Each example is a plain-text source file in the registry directory using the
workbench grammar plus check statements.  A check carries a provenance tag
(cited / derived / direct) and, when cited, a reference label; the registry
is linted for those labels.  run_example executes every check and reports
computed-versus-expected per check; any failure is a nonzero outcome, never
silently passed.
"""

import importlib.resources
from dataclasses import dataclass, field

from .ring import RingDescriptor, CoefficientField, mono_deg
from .poly import Polynomial
from .parser import parse_source, Name, ParseError
from .gb import (
    Ideal,
    GBError,
    map_to_ring,
    colength,
    ideal_intersect,
    saturate_irrelevant,
)
from .hilbert import hilbert_polynomial, affine_hilbert_polynomial, hilbert_function
from . import structures as structures_mod
from . import families as families_mod
from . import tangent as tangent_mod
from . import localgeom as localgeom_mod


class CensusError(Exception):
    pass


VALID_TAGS = ("cited", "derived", "direct")


@dataclass
class CheckResult:
    name: str
    kind: str
    expected: str
    computed: str
    passed: bool
    tag: str
    ref: str

    def to_json(self):
        return {
            "check": self.name,
            "kind": self.kind,
            "expected": self.expected,
            "computed": self.computed,
            "passed": self.passed,
            "tag": self.tag,
            "ref": self.ref,
        }


@dataclass
class ExampleReport:
    name: str
    results: list
    error: str = ""
    figures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.error and all(r.passed for r in self.results)

    def to_json(self):
        return {
            "example": self.name,
            "passed": self.passed,
            "error": self.error,
            "checks": [r.to_json() for r in self.results],
        }


def registry_dir():
    return importlib.resources.files("detachlab") / "registry"


def list_examples():
    """Stable listing of registered example names with their sources."""
    out = []
    for entry in sorted(registry_dir().iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".dls"):
            out.append(entry.name[: -len(".dls")])
    return out


def example_source(name):
    path = registry_dir() / (name + ".dls")
    try:
        return path.read_text()
    except FileNotFoundError:
        raise CensusError(f"unknown example {name!r}")


def lint_registry():
    """Every cited check must carry a reference label; tags must be known."""
    problems = []
    for name in list_examples():
        doc = parse_source(example_source(name))
        for chk in doc.checks:
            if chk.tag not in VALID_TAGS:
                problems.append(f"{name}:{chk.name}: unknown tag {chk.tag!r}")
            if chk.tag == "cited" and not chk.ref:
                problems.append(f"{name}:{chk.name}: cited check without a reference label")
    return problems


# ---------------------------------------------------------------------------
# evaluation


class _Context:
    def __init__(self, doc, seed=families_mod.DEFAULT_SEED, field_override=None):
        self.doc = doc
        self.seed = seed
        self._structures = {}
        self._kernels = {}
        self._modules = {}
        self._families = {}
        self._figure_data = []

    # -- resolution helpers ---------------------------------------------

    def ideal(self, v):
        if isinstance(v, Name):
            obj = self.doc.ideals.get(v.text)
            if obj is None:
                raise CensusError(f"unknown ideal {v.text!r}")
            return obj
        if isinstance(v, Ideal):
            return v
        raise CensusError(f"expected an ideal, got {v!r}")

    def point(self, v):
        if isinstance(v, Name):
            obj = self.doc.points.get(v.text)
            if obj is None:
                raise CensusError(f"unknown point {v.text!r}")
            return obj
        if isinstance(v, tuple):
            return tuple(_as_const(c) for c in v)
        raise CensusError(f"expected a point, got {v!r}")

    def integer(self, v):
        if isinstance(v, int):
            return v
        if isinstance(v, Polynomial):
            if v.degree() <= 0:
                c = v.constant_term()
                return int(c)
        raise CensusError(f"expected an integer, got {v!r}")

    def module(self, v):
        name = v.text if isinstance(v, Name) else v
        if name in self._modules:
            return self._modules[name]
        decl = self.doc.modules.get(name)
        if decl is None:
            raise CensusError(f"unknown module {name!r}")
        ring = decl.ring
        if decl.kind == "skyscraper":
            M = structures_mod.build_module(ring, "skyscraper")
        elif decl.kind == "cyclic":
            IZ = self.ideal(decl.args[0])
            M = structures_mod.build_module(ring, "cyclic", {"ideal": IZ})
        elif decl.kind == "sum":
            parts = tuple(self.module(a) for a in decl.args)
            M = structures_mod.build_module(ring, "sum", {"parts": parts})
        elif decl.kind in ("dualfat", "bowtie"):
            M = structures_mod.build_module(ring, decl.kind)
        else:
            raise CensusError(f"unknown module kind {decl.kind!r}")
        self._modules[name] = M
        return M

    def structure(self, v):
        name = v.text if isinstance(v, Name) else v
        if name in self._structures:
            return self._structures[name]
        decl = self.doc.structures.get(name)
        if decl is None:
            raise CensusError(f"unknown structure {name!r}")
        ring = decl.ring
        base = self.doc.ideals[decl.base]
        case = decl.case
        if case == "custom":
            M = self.module(decl.data["K"])
            images = decl.data["images"]
            phi = []
            for img in images:
                if isinstance(img, tuple):
                    vec = [_as_poly(ring, comp) for comp in img]
                else:
                    vec = [_as_poly(ring, img)]
                phi.append(vec)
            spec = structures_mod.PointStructureSpec(base, M, phi, label=name)
        else:
            f = _as_poly(ring, decl.data["f"])
            g = _as_poly(ring, decl.data["g"])
            IZ = self.ideal(decl.data["Z"]) if "Z" in decl.data else None
            spec = structures_mod.spec_for_case(ring, case, f, g, IZ)
            spec.label = name
        self._structures[name] = spec
        return spec

    def kernel(self, v):
        name = v.text if isinstance(v, Name) else v
        if name not in self._kernels:
            self._kernels[name] = structures_mod.kernel_ideal(self.structure(v))
        return self._kernels[name]

    def closed_form(self, v):
        decl = self.doc.structures[v.text if isinstance(v, Name) else v]
        ring = decl.ring
        if decl.case == "custom":
            raise CensusError("custom structures have no closed form")
        f = _as_poly(ring, decl.data["f"])
        g = _as_poly(ring, decl.data["g"])
        IZ = self.ideal(decl.data["Z"]) if "Z" in decl.data else None
        return structures_mod.closed_form_ideal(ring, decl.case, f, g, IZ)

    def family(self, v):
        name = v.text if isinstance(v, Name) else v
        if name in self._families:
            return self._families[name]
        decl = self.doc.families.get(name)
        if decl is None:
            raise CensusError(f"unknown family {name!r}")
        ring = decl.ring
        cl = decl.clauses
        if decl.kind == "raw":
            fam = families_mod.family_from_ideal(Ideal(ring, cl["gens"]))
        elif decl.kind == "cilimit":
            fam = families_mod.ci_limit_family(
                ring,
                self.doc.matrices[cl["psi0"].text],
                self.doc.matrices[cl["psi1"].text],
                lift=[_as_poly(ring, e) for e in cl["lift"]],
                path=[_as_poly(ring, e) for e in cl["path"]],
                base=self.ideal(cl["base"]) if "base" in cl else None,
            )
        else:
            data = {}
            if "on" in cl:
                data["base"] = self.ideal(cl["on"])
            if "f" in cl:
                data["f"] = _as_poly(ring, cl["f"])
            if "g" in cl:
                data["g"] = _as_poly(ring, cl["g"])
            if "Z" in cl:
                data["subscheme"] = self.ideal(cl["Z"])
            if "path" in cl:
                data["path"] = [_as_poly(ring, e) for e in cl["path"]]
            if "paths" in cl:
                data["paths"] = [
                    [_as_poly(ring, e) for e in path] for path in cl["paths"]
                ]
            if "shift" in cl:
                data["shift"] = [_as_poly(ring, e) for e in cl["shift"]]
            fam = families_mod.detach_family(decl.kind, ring, **data)
        self._families[name] = fam
        return fam

    # -- check dispatch ---------------------------------------------------

    def evaluate(self, chk):
        handler = getattr(self, "check_" + chk.kind, None)
        if handler is None:
            raise CensusError(f"unknown check kind {chk.kind!r}")
        computed = handler(chk.args)
        expected = chk.expected
        if chk.comparator == "==":
            passed = _values_equal(computed, expected)
        elif chk.comparator == ">":
            passed = computed > self.integer(expected)
        else:
            passed = computed >= self.integer(expected)
        return computed, passed

    def check_hilbert(self, args):
        I = self.ideal(args[0])
        hd = hilbert_polynomial(I)
        window = range(max(0, hd.stabilized_at), hd.stabilized_at + 2 * I.ring.nvars)
        sat, _ = saturate_irrelevant(I)
        values = hilbert_function(sat, window.stop)
        self._figure_data.append({
            "ideal": str(args[0].text if isinstance(args[0], Name) else args[0]),
            "hf": list(values),
            "hp": list(hd.polynomial),
            "label": hd.polynomial_str(),
        })
        return hd.polynomial_str()

    def check_affine_hilbert(self, args):
        return affine_hilbert_polynomial(self.ideal(args[0])).polynomial_str()

    def check_dim(self, args):
        return hilbert_polynomial(self.ideal(args[0])).dim

    def check_degree(self, args):
        return hilbert_polynomial(self.ideal(args[0])).degree

    def check_genus(self, args):
        return hilbert_polynomial(self.ideal(args[0])).genus

    def check_gb_size(self, args):
        return len(self.ideal(args[0]).groebner())

    def check_nf_zero(self, args):
        f, I = args
        I = self.ideal(I)
        f = _as_poly(I.ring, f)
        return I.normal_form(f).is_zero()

    def check_gb_equal(self, args):
        A, B = (self.ideal(a) for a in args)
        return A.equals(B)

    def check_distinct(self, args):
        ideals = [self.kernel_or_ideal(a) for a in args]
        for i in range(len(ideals)):
            for j in range(i + 1, len(ideals)):
                if ideals[i].equals(ideals[j]):
                    return False
        return True

    def kernel_or_ideal(self, v):
        if isinstance(v, Name) and v.text in self.doc.structures:
            return self.kernel(v)
        return self.ideal(v)

    def check_kernel(self, args):
        IY = self.kernel(args[0])
        expected = self.ideal(args[1]) if len(args) > 1 else None
        if expected is not None:
            return IY.equals(expected)
        return ", ".join(str(g) for g in IY.groebner())

    def check_kernel_equals(self, args):
        return self.kernel(args[0]).equals(self.ideal(args[1]))

    def check_closed_equals(self, args):
        return self.closed_form(args[0]).equals(self.ideal(args[1]))

    def check_kernel_equals_closed(self, args):
        return self.kernel(args[0]).equals(self.closed_form(args[0]))

    def check_oracle(self, args):
        spec = self.structure(args[0])
        dmax = self.integer(args[1]) if len(args) > 1 else 8
        return structures_mod.kernel_oracle_agrees(spec, self.kernel(args[0]), dmax)

    def check_colength(self, args):
        sub = self.kernel_or_ideal(args[0])
        sup = self.kernel_or_ideal(args[1])
        return colength(sub, sup)

    def check_structure_colength(self, args):
        spec = self.structure(args[0])
        return colength(self.kernel(args[0]), spec.base)

    def check_length(self, args):
        if isinstance(args[0], Name) and args[0].text in self.doc.structures:
            return self.structure(args[0]).module.length
        return self.module(args[0]).length

    def check_classify(self, args):
        if isinstance(args[0], Name) and args[0].text in self.doc.structures:
            return structures_mod.classify_module(self.structure(args[0]).module)
        return structures_mod.classify_module(self.module(args[0]))

    def check_graded_dims(self, args):
        M = self.module(args[0])
        dims = M.graded_dimensions()
        return tuple(dims.get(d, 0) for d in range(max(dims) + 1))

    def check_end(self, args):
        M = self.module(args[0])
        return tangent_mod.end_dim(M, seed=self.seed).dimension

    def check_end_invertible(self, args):
        M = self.module(args[0])
        e = tangent_mod.end_dim(M, seed=self.seed)
        return e.invertible_witness and tangent_mod.identity_in_span(e)

    def check_local_gens(self, args):
        I = self.ideal(args[0])
        pt = self.point(args[1])
        PI = localgeom_mod.PointedIdeal.at(I, pt)
        return localgeom_mod.local_min_gens(PI)

    def check_fiber(self, args):
        I = self.ideal(args[0])
        pt = self.point(args[1])
        PI = localgeom_mod.PointedIdeal.at(I, pt, require_on_scheme=False)
        return localgeom_mod.blowup_fiber(PI).label

    def check_detachable(self, args):
        I = self.ideal(args[0])
        pt = self.point(args[1])
        N = self.integer(args[2]) if len(args) > 2 else None
        PI = localgeom_mod.PointedIdeal.at(I, pt)
        return localgeom_mod.detachability_criterion(PI, N).detachable

    def check_flat_limit(self, args):
        fam = self.family(args[0])
        limit = families_mod.flat_limit(fam)
        target = self.ideal(args[1])
        return limit.equals(map_to_ring(target, limit.ring) if target.ring != limit.ring else target)

    def check_flat(self, args):
        fam = self.family(args[0])
        return families_mod.flatness_check(fam, seed=self.seed).verdict

    def check_fiber_hp(self, args):
        fam = self.family(args[0])
        cert = families_mod.flatness_check(fam, seed=self.seed)
        from .hilbert import poly1_str

        return poly1_str(cert.special_hp)

    def check_verify(self, args):
        fam = self.family(args[0])
        target = self.ideal(args[1])
        expected_points = self.integer(args[2]) if len(args) > 2 else None
        rep = families_mod.verify_detachment(
            fam, target, expected_points=expected_points, seed=self.seed
        )
        return rep.verdict

    def check_local_lengths(self, args):
        fam = self.family(args[0])
        target = self.ideal(args[1])
        rep = families_mod.verify_detachment(fam, target, seed=self.seed)
        if rep.fiber_matches:
            # distinct reduced points: each contributes one unit of colength
            return tuple(sorted([1] * rep.points_off_base))
        return tuple(sorted(rep.local_colengths))

    def check_limit_oracle(self, args):
        fam = self.family(args[0])
        dmax = self.integer(args[1]) if len(args) > 1 else 6
        limit = families_mod.flat_limit(fam)
        return families_mod.limit_oracle_agrees(fam, limit, dmax=dmax)

    def check_hom(self, args):
        I = self.ideal(args[0])
        sat, _ = saturate_irrelevant(I)
        return tangent_mod.hom_dim(sat).dimension

    def check_hom_certificate(self, args):
        I = self.ideal(args[0])
        sat, _ = saturate_irrelevant(I)
        hom = tangent_mod.hom_dim(sat)
        return tangent_mod.hom_certificate(sat, hom)

    def check_min_gens(self, args):
        I = self.ideal(args[0])
        return len(tangent_mod.minimal_generators(I))

    def check_calc(self, args):
        return self.integer(args[0])

    def check_intersection(self, args):
        """intersection(A, B, ..., TARGET): the intersection equals TARGET."""
        pieces = [self.ideal(a) for a in args[:-1]]
        target = self.ideal(args[-1])
        inter = ideal_intersect(*pieces)
        return inter.equals(target)

    def check_hilbert_intersection(self, args):
        """Hilbert polynomial of the intersection of the named ideals."""
        pieces = [self.ideal(a) for a in args]
        inter = ideal_intersect(*pieces)
        hd = hilbert_polynomial(inter)
        return hd.polynomial_str()

    def check_hom_union(self, args):
        """hom dimension at the saturated union of the named subschemes."""
        pieces = [self.ideal(a) for a in args]
        inter = ideal_intersect(*pieces)
        sat, _ = saturate_irrelevant(inter)
        return tangent_mod.hom_dim(sat).dimension

    def check_ci_generic_fiber(self, args):
        """The sampled fiber of a ci family is the moving curve union the
        moving point, the point is off the curve, and the curve has the
        stated Hilbert polynomial."""
        import random as _random
        from .gb import ideal_specialize

        fam = self.family(args[0])
        expected_hp = args[1]
        rng = _random.Random(self.seed + 7)
        c = rng.randint(2, 499)
        psit = fam.provenance["moving_base_matrix"]
        Xc = ideal_specialize(Ideal(fam.ring, families_mod.signed_minors(psit)), {fam.parameter: c})
        hp = hilbert_polynomial(Xc).polynomial_str()
        if hp.replace(" ", "") != str(expected_hp).replace(" ", ""):
            return f"moving base has Hilbert polynomial {hp}"
        path = fam.provenance["paths"][0]
        values = tuple(families_mod._path_value(fam.ring, e, fam.parameter, c) for e in path)
        if all(g.evaluate(values) == 0 for g in Xc.gens):
            return "moving point lies on the moving base"
        fib = fam.fiber(c)
        pt = families_mod._projective_point_at(Xc.ring, values)
        union = ideal_intersect(Xc, pt)
        if not fib.equals(union):
            return "fiber differs from base union point"
        return True


def _as_poly(ring, v):
    if isinstance(v, Polynomial):
        return v.map_ring(ring) if v.ring != ring else v
    if isinstance(v, int):
        return Polynomial.const(ring, v)
    if isinstance(v, Name):
        return Polynomial.var(ring, v.text)
    raise CensusError(f"expected a polynomial, got {v!r}")


def _as_const(v):
    if isinstance(v, Polynomial):
        return v.constant_term()
    return v


def _values_equal(computed, expected):
    if isinstance(computed, bool) or isinstance(expected, bool):
        return bool(computed) == bool(expected)
    if isinstance(computed, str) and isinstance(expected, str):
        return computed.replace(" ", "") == expected.replace(" ", "")
    if isinstance(computed, tuple) and isinstance(expected, tuple):
        return tuple(computed) == tuple(int(_as_const(e)) for e in expected)
    if isinstance(computed, int):
        return computed == (_as_const(expected) if not isinstance(expected, int) else expected)
    return computed == expected


def run_example(name, seed=families_mod.DEFAULT_SEED, field_override=None):
    """Execute every check of a registered example."""
    text = example_source(name)
    if field_override is not None:
        text = _override_field(text, field_override)
    try:
        doc = parse_source(text)
    except ParseError as e:
        return ExampleReport(name, [], error=f"parse error: {e}")
    ctx = _Context(doc, seed=seed)
    results = []
    for chk in doc.checks:
        try:
            computed, passed = ctx.evaluate(chk)
        except Exception as e:  # deliberate: a crashed check is a failed check
            results.append(
                CheckResult(chk.name, chk.kind, _fmt(chk.expected), f"error: {e}", False, chk.tag, chk.ref)
            )
            continue
        results.append(
            CheckResult(chk.name, chk.kind, _fmt(chk.expected), _fmt(computed), passed, chk.tag, chk.ref)
        )
    report = ExampleReport(name, results)
    report.figures = ctx._figure_data
    return report


def _override_field(text, field_spec):
    """Swap `over QQ` for a prime field in a registry source."""
    if field_spec.strip() in ("QQ", "qq"):
        return text
    spec = field_spec.replace("FF:", "FF ").replace("ff:", "FF ")
    return text.replace("over QQ", f"over {spec}")


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Name):
        return v.text
    if isinstance(v, tuple):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    if isinstance(v, Polynomial):
        return str(v)
    return str(v)


def run_all(seed=families_mod.DEFAULT_SEED, field_override=None, names=None):
    reports = []
    for name in names or list_examples():
        reports.append(run_example(name, seed=seed, field_override=field_override))
    return reports
