"""Local criteria at a point: minimal generators, blow-up fibers, detachability.

Points are always translated to the origin of an affine chart before any
local computation; the translation is recorded in the report.
"""

from dataclasses import dataclass

from .ring import RingDescriptor, eliminate_order
from .poly import Polynomial
from .gb import (
    Ideal,
    GBError,
    syzygy_matrix,
    ideal_specialize,
    ideal_saturate,
    translate_ideal,
)
from . import linalg
from .hilbert import hilbert_polynomial, HilbertError


class LocalGeomError(Exception):
    pass


@dataclass
class PointedIdeal:
    """An affine ideal with a chosen point moved to the origin."""

    ideal: Ideal
    point: tuple
    chart: str = None

    @staticmethod
    def at(I, point, chart=None, require_on_scheme=True):
        pt = [I.ring.fld.coerce(c) for c in point]
        if require_on_scheme:
            for g in I.gens:
                if g.evaluate(pt) != 0:
                    raise LocalGeomError(f"point {tuple(point)} is not on the scheme")
        moved = translate_ideal(I, pt)
        return PointedIdeal(moved, tuple(pt), chart)

    def chart_label(self):
        return self.chart if self.chart else "affine"


def local_min_gens(PI):
    """Minimal number of generators of the ideal at the (translated) point.

    Computed as the generator count minus the rank of the syzygy matrix
    evaluated at the origin.
    """
    gens = PI.ideal.gens
    if not gens:
        raise LocalGeomError("zero ideal has no local generators")
    rows = syzygy_matrix(list(gens))
    p = PI.ideal.ring.fld.p
    origin = tuple(0 for _ in range(PI.ideal.ring.nvars))
    matrix = [[c.evaluate(origin) for c in row] for row in rows]
    rk = linalg.rank(matrix, len(gens), p)
    return len(gens) - rk


@dataclass
class BlowupFiber:
    fiber_ideal: Ideal
    r: int
    is_projective_space: bool
    label: str

    def to_json(self, extra=None):
        out = {"r": self.r, "fiber": self.label,
               "projective_space": self.is_projective_space}
        if extra:
            out.update(extra)
        return out


def rees_ideal(I, fiber_vars=None):
    """Defining ideal of the Rees algebra in the fiber variables.

    Kernel of y_i -> s*g_i computed by eliminating the auxiliary s from
    the ideal (y_i - s*g_i).
    """
    gens = I.gens
    r = len(gens)
    if r == 0:
        raise LocalGeomError("Rees ideal of the zero ideal")
    ring = I.ring
    names = fiber_vars or tuple(f"Y{i}" for i in range(r))
    work = RingDescriptor(
        ("s@",) + ring.all_vars + tuple(names),
        ring.fld,
        eliminate_order(1),
        None,
    )
    var_map = {i: i + 1 for i in range(ring.nvars)}
    s = Polynomial.var(work, "s@")
    rel = []
    for i, g in enumerate(gens):
        yi = Polynomial.var(work, names[i])
        rel.append(yi - s * g.map_ring(work, var_map))
    J = Ideal(work, rel)
    mixed_ring = RingDescriptor(ring.all_vars + tuple(names), ring.fld, ring.order, None)
    kept = []
    for g in J.groebner():
        if all(m[0] == 0 for m in g.terms):
            back = {i + 1: i for i in range(mixed_ring.nvars)}
            kept.append(g.map_ring(mixed_ring, back))
    return Ideal(mixed_ring, kept), names


def blowup_fiber(PI):
    """Fiber of the blow-up over the (translated) point.

    The Rees ideal is specialized at the origin; the fiber is a projective
    space exactly when the specialized ideal saturates to zero.
    """
    I = PI.ideal
    r = len(I.gens)
    rees, names = rees_ideal(I)
    assignments = {v: 0 for v in I.ring.all_vars}
    fiber = ideal_specialize(rees, assignments)
    fring = fiber.ring
    if fiber.is_zero():
        return BlowupFiber(fiber, r, True, f"P^{r - 1}")
    yall = Ideal(fring, [Polynomial.var(fring, v) for v in names])
    sat = ideal_saturate(fiber, yall)
    if sat.is_zero():
        return BlowupFiber(fiber, r, True, f"P^{r - 1}")
    if all(sat.contains(Polynomial.var(fring, v)) for v in names):
        return BlowupFiber(fiber, r, False, "empty")
    label = "proper subscheme"
    try:
        hd = hilbert_polynomial(sat, saturate=False)
        if hd.dim == 1 and hd.degree == r - 1 and hd.genus == 0:
            # Hilbert polynomial of a rational normal curve in P^{r-1}
            label = "P^1"
        elif hd.dim == 0 and hd.degree == 1:
            label = "point"
        else:
            label = f"dim {hd.dim} degree {hd.degree} subscheme of P^{r - 1}"
    except (HilbertError, GBError):
        pass
    return BlowupFiber(sat, r, False, label)


@dataclass
class DetachabilityReport:
    r: int
    ambient_dim: int
    fiber: BlowupFiber
    detachable: bool
    point: tuple
    chart: str

    def to_json(self):
        return {
            "r": self.r,
            "fiber": self.fiber.label,
            "detachable": self.detachable,
            "chart": self.chart or "affine",
            "point": [str(c) for c in self.point],
        }


def detachability_criterion(PI, ambient_dim=None):
    """Can every single embedded point at this point be detached?

    True exactly when the ideal has r <= N minimal local generators and the
    blow-up fiber over the point is P^{r-1}.
    """
    N = ambient_dim if ambient_dim is not None else len(PI.ideal.ring.variables)
    r = local_min_gens(PI)
    work = PI
    if r != len(PI.ideal.gens):
        trimmed = _trim_global(PI.ideal)
        if len(trimmed.gens) == r:
            work = PointedIdeal(trimmed, PI.point, PI.chart)
    fiber = blowup_fiber(work)
    ok = r <= N and fiber.is_projective_space and fiber.r == r
    return DetachabilityReport(r, N, fiber, ok, PI.point, PI.chart)


def _trim_global(I):
    gens = list(I.gens)
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(gens):
            rest = gens[:i] + gens[i + 1 :]
            if rest and Ideal(I.ring, rest).contains(g):
                gens = rest
                changed = True
                break
    return Ideal(I.ring, gens)
