import random

import pytest

from detachlab.ring import QQ, GF, RingDescriptor, RingError
from detachlab.poly import Polynomial


R = RingDescriptor(("x", "y", "z"))
x, y, z = (Polynomial.var(R, v) for v in "xyz")


def random_poly(ring, rng, deg=3, terms=4):
    p = Polynomial.zero(ring)
    for _ in range(terms):
        mono = [0] * ring.nvars
        for _ in range(rng.randint(0, deg)):
            mono[rng.randrange(ring.nvars)] += 1
        p = p + Polynomial.monomial(ring, tuple(mono), rng.randint(-5, 5))
    return p


@pytest.mark.parametrize("fld", [QQ, GF(32003)])
def test_commutative_ring_axioms(fld):
    ring = RingDescriptor(("x", "y", "z"), fld)
    rng = random.Random(11)
    for _ in range(40):
        a = random_poly(ring, rng)
        b = random_poly(ring, rng)
        c = random_poly(ring, rng)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_additive_inverse():
    assert (x + (-x)).is_zero()


def test_difference_of_squares():
    assert (x + y) * (x - y) == x ** 2 - y ** 2


def test_parameter_square():
    Rt = RingDescriptor(("x", "y"), parameter="t")
    xt, yt, t = (Polynomial.var(Rt, v) for v in ("x", "y", "t"))
    p = (xt - t * yt) ** 2
    assert p == xt ** 2 - 2 * t * xt * yt + t ** 2 * yt ** 2


def test_ring_mismatch_raises():
    S = RingDescriptor(("u", "v"))
    u = Polynomial.var(S, "u")
    with pytest.raises(RingError):
        _ = x + u


def test_substitute_shrinks_ring():
    p = x ** 2 + y * z
    q = p.substitute({"z": 2})
    assert q.ring.all_vars == ("x", "y")
    assert q == Polynomial.var(q.ring, "x") ** 2 + Polynomial.var(q.ring, "y") * 2


def test_shift_translation():
    p = x ** 2
    q = p.shift([1, 0, 0])
    assert q == x ** 2 + 2 * x + 1


def test_homogeneous_flag():
    assert (x * y + z ** 2).is_homogeneous()
    assert not (x + y ** 2).is_homogeneous()
    # weighted: the parameter counts zero
    Rt = RingDescriptor(("x", "y"), parameter="t")
    xt, yt, t = (Polynomial.var(Rt, v) for v in ("x", "y", "t"))
    assert (xt - t * yt).is_homogeneous(weights=[1, 1, 0])


def test_power_binomial():
    assert (x + 1) ** 3 == x ** 3 + 3 * x ** 2 + 3 * x + 1
