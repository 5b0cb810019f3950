"""Tame 2-blocks: height-one census, Galois orbits, maximally ordinary characters
and the shape of the universal deformation ring of the maximally ordinary module.

The ring-theoretic part is a report, not a computation: the 3-tube dichotomy
is read off from the defect group (dihedral: present, quaternion: absent,
semidihedral: caller-supplied), and the polynomial q_n is described by its
degree and mod-2 reduction only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blocks import Block, BlockSystem, blocks
from .chartable import character_table, galois_orbits_padic, restrict_p_regular
from .decomp import GenDecompositionTable, character_height, generalized_decomposition
from .errors import CensusViolation, InputError, MissingThreeTubeFlag, NotApplicable, NotTameBlock, OrbitViolation
from .exact.cyclotomic import CycNumber
from .groups import Group

TAME_SHAPES = ("dihedral", "semidihedral", "quaternion")

MOD2_EXPONENT_NOTE = (
    "mod-2 exponents follow the theorem statement (2^(n-2)-1 and 2^(n-2)); "
    "the accompanying proof sketch writes n-2-1 and n-2"
)


def _tame_parameters(B: Block) -> tuple[int, str]:
    if B.p != 2:
        raise NotTameBlock("tame blocks live in characteristic 2")
    D = B.defect_group
    if D is None:
        raise NotTameBlock("block has no defect group")
    shape = B.defect_shape
    if shape == "klein-four":
        raise NotTameBlock("Klein-four defect groups are excluded from the tame report")
    if shape not in TAME_SHAPES:
        raise NotTameBlock(f"defect group of shape {shape!r} is not dihedral, semidihedral or quaternion")
    return D.order.bit_length() - 1, shape


def expected_height_one_counts(n: int) -> tuple[int, ...]:
    if n == 2:
        return (0,)
    if n == 3:
        return (1, 3)
    return (2 ** (n - 2) - 1,)


def height_one_census(G: Group, B: Block) -> list[int]:
    """Characters of height 1 in a tame 2-block, with the count law enforced."""
    n, _ = _tame_parameters(B)
    found = [mu for mu in B.characters if character_height(G, mu, B) == 1]
    if len(found) not in expected_height_one_counts(n):
        raise CensusViolation(f"{len(found)} characters of height 1 for n = {n}; expected {expected_height_one_counts(n)}")
    if n >= 4:
        chars = character_table(G)
        restr = [restrict_p_regular(G, chars[mu], 2) for mu in found]
        if any(r != restr[0] for r in restr[1:]):
            raise CensusViolation("height-1 characters restrict to different 2-modular characters")
    return found


def galois_orbit_structure(G: Group, height_one: list[int], n: int) -> list[list[int]]:
    """Orbits of the height-1 characters under the 2-adic Galois action."""
    chars = character_table(G)
    orbits = galois_orbits_padic(G, chars, 2, members=height_one)
    sizes = sorted(len(o) for o in orbits)
    expected = [2**j for j in range(n - 2)]
    if sizes != expected:
        raise OrbitViolation(f"orbit sizes {sizes}, expected {expected}")
    return sorted(orbits, key=lambda o: (len(o), o[0]))


def _maximal_order_frame_rows(G: Group, table: GenDecompositionTable, B: Block) -> list[int]:
    """Slices whose u is G-conjugate to an element of maximal order in D."""
    D = B.defect_group
    top = int(max(D.element_orders))
    cls = G.classes.class_of
    target = {int(cls[D.parent_indices[g]]) for g in range(D.order) if int(D.element_orders[g]) == top}
    return [i for i, sl in enumerate(table.slices) if int(cls[sl.u]) in target]


def _outside_units(x: CycNumber) -> bool:
    return not (x.is_zero() or x == CycNumber.rational(1) or x == CycNumber.rational(-1))


def maximally_ordinary_characters(
    G: Group, B: Block, table: GenDecompositionTable, height_one: list[int] | None = None
) -> list[int]:
    """Characters of B with some generalized decomposition number outside {0, +-1}
    at every maximal-order element of D."""
    n, _ = _tame_parameters(B)
    rows = _maximal_order_frame_rows(G, table, B)
    if not rows:
        raise CensusViolation("no frame element is conjugate to a maximal-order element of the defect group")
    out = []
    for mu in B.characters:
        if all(any(_outside_units(d) for d in table.slices[i].entries[mu]) for i in rows):
            out.append(mu)
    if n >= 4:
        h1 = height_one_census(G, B) if height_one is None else height_one
        orbits = galois_orbit_structure(G, h1, n)
        rational = orbits[0][0]
        expected = sorted(mu for mu in h1 if mu != rational)
        if out != expected or len(out) != 2 ** (n - 2) - 2:
            raise CensusViolation(f"maximally ordinary characters {out}, expected {expected}")
    return out


@dataclass
class TameBlockReport:
    group: str
    block: int
    n: int
    defect_shape: str
    height_one: list[int]
    orbit_sizes: list[int]
    rational_character: int
    maximally_ordinary: list[int]
    case: str  # "i", "ii" or "undetermined"
    three_tubes: bool | None
    three_tubes_source: str
    presentation: list[str]
    mod2_ring: list[str]
    complete_intersection: bool | None
    deg_qn: int
    brauer_character: list[CycNumber]
    qn_check: dict | None = None
    metadata: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "block": self.block,
            "n": self.n,
            "defect_group_order": 2**self.n,
            "defect_shape": self.defect_shape,
            "height_one_characters": self.height_one,
            "height_one_count": len(self.height_one),
            "galois_orbit_sizes": self.orbit_sizes,
            "rational_character": self.rational_character,
            "maximally_ordinary_characters": self.maximally_ordinary,
            "maximally_ordinary_count": len(self.maximally_ordinary),
            "case": self.case,
            "three_tubes": self.three_tubes,
            "three_tubes_source": self.three_tubes_source,
            "presentation": self.presentation,
            "mod2_ring": self.mod2_ring,
            "complete_intersection": self.complete_intersection,
            "deg_qn": self.deg_qn,
            "qn_monic": True,
            "brauer_character": self.brauer_character,
            "qn_check": self.qn_check,
            "metadata": self.metadata,
        }


CASE_I = ("W[[t]]/(q_{n}(t))", "k[[t]]/(t^{e1})")
CASE_II = ("W[[t]]/(t*q_{n}(t), 2*q_{n}(t))", "k[[t]]/(t^{e2})")


def _case_strings(case: str, n: int) -> tuple[str, str]:
    e1, e2 = 2 ** (n - 2) - 1, 2 ** (n - 2)
    tmpl = CASE_I if case == "i" else CASE_II
    return tmpl[0].format(n=n), tmpl[1].format(e1=e1, e2=e2)


def check_qn(coeffs: list[int], n: int) -> dict:
    """Constraints on an externally supplied q_n (integer coefficients, constant term first)."""
    deg = 2 ** (n - 2) - 1
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    degree_ok = len(coeffs) - 1 == deg
    monic = bool(coeffs) and coeffs[-1] == 1
    mod2 = [c % 2 for c in coeffs]
    mod2_ok = mod2 == [0] * deg + [1]
    return {"coefficients": coeffs, "degree_ok": degree_ok, "monic": monic, "mod2_is_t_power": mod2_ok, "ok": degree_ok and monic and mod2_ok}


def deformation_ring_report(
    G: Group,
    B: Block | int = 0,
    three_tubes: bool | None = None,
    qn: list[int] | None = None,
    seed: int = 0,
    require_flag: bool = False,
    table: GenDecompositionTable | None = None,
) -> TameBlockReport:
    """Case (i)/(ii) report for the maximally ordinary module of a tame 2-block with n >= 4.

    For semidihedral defect groups the 3-tube flag must come from the caller;
    without it the case is "undetermined" and both candidates are listed
    (or MissingThreeTubeFlag is raised when ``require_flag``).
    """
    if isinstance(B, int):
        system: BlockSystem = blocks(G, 2, seed)
        if not 0 <= B < len(system):
            raise InputError(f"block index {B} out of range (0..{len(system) - 1})")
        B = system[B]
    n, shape = _tame_parameters(B)
    if n <= 3:
        raise NotApplicable(f"defect group of order 2^{n}: the report needs n >= 4")
    h1 = height_one_census(G, B)
    orbits = galois_orbit_structure(G, h1, n)
    table = generalized_decomposition(G, 2, seed) if table is None else table
    mo = maximally_ordinary_characters(G, B, table, h1)
    if shape == "dihedral":
        tubes, source = True, "dihedral defect group: 3-tubes always present"
        if three_tubes is False:
            raise InputError("dihedral defect groups always have 3-tubes")
    elif shape == "quaternion":
        tubes, source = False, "quaternion defect group: 3-tubes never present"
        if three_tubes is True:
            raise InputError("quaternion defect groups never have 3-tubes")
    else:
        tubes, source = three_tubes, "caller-supplied flag" if three_tubes is not None else "not supplied"
        if tubes is None and require_flag:
            raise MissingThreeTubeFlag("semidihedral defect group: supply the 3-tube flag")
    if tubes is None:
        case = "undetermined"
        pres_i, mod_i = _case_strings("i", n)
        pres_ii, mod_ii = _case_strings("ii", n)
        presentation, mod2, ci = [pres_i, pres_ii], [mod_i, mod_ii], None
    else:
        case = "ii" if tubes else "i"
        p, m = _case_strings(case, n)
        presentation, mod2, ci = [p], [m], case == "i"
    chars = character_table(G)
    brauer = list(restrict_p_regular(G, chars[h1[0]], 2).values())
    return TameBlockReport(
        group=G.name,
        block=B.index,
        n=n,
        defect_shape=shape,
        height_one=h1,
        orbit_sizes=[len(o) for o in orbits],
        rational_character=orbits[0][0],
        maximally_ordinary=mo,
        case=case,
        three_tubes=tubes,
        three_tubes_source=source,
        presentation=presentation,
        mod2_ring=mod2,
        complete_intersection=ci,
        deg_qn=2 ** (n - 2) - 1,
        brauer_character=brauer,
        qn_check=check_qn(list(qn), n) if qn is not None else None,
        metadata={
            "exponent_note": MOD2_EXPONENT_NOTE,
            "qn_coefficients": "not computed; supply q_n to check degree, monicity and mod-2 reduction",
            "subquotient_claim": "R(G,V) is a subquotient ring of WD (informational, not computed)",
        },
    )
