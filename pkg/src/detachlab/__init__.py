"""detachlab: exact computer algebra for embedded point structures and flat limits."""

__version__ = "0.1.0"

from .ring import QQ, GF, GREVLEX, LEX, RingDescriptor, MonomialOrder, eliminate_order
from .poly import Polynomial
from .gb import Ideal

__all__ = [
    "QQ",
    "GF",
    "GREVLEX",
    "LEX",
    "RingDescriptor",
    "MonomialOrder",
    "eliminate_order",
    "Polynomial",
    "Ideal",
]
