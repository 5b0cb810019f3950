from .cyclotomic import CycNumber, cyc_solve, is_algebraic_integer, lies_in_conductor, zeta
from .finite_field import GF, FFElem, get_field, teichmueller_lift
from .galois_ring import GaloisRing, GaloisRingElem

__all__ = [
    "CycNumber",
    "cyc_solve",
    "is_algebraic_integer",
    "lies_in_conductor",
    "zeta",
    "GF",
    "FFElem",
    "get_field",
    "teichmueller_lift",
    "GaloisRing",
    "GaloisRingElem",
]
