from __future__ import annotations

import pytest

from modrep.blocks import blocks
from modrep.chartable import character_table
from modrep.corpus import dihedral, quaternion, semidihedral
from modrep.decomp import generalized_decomposition
from modrep.errors import MissingThreeTubeFlag, NotApplicable, NotTameBlock
from modrep.exact import CycNumber
from modrep.groups import build_group
from modrep.tame import (
    check_qn,
    deformation_ring_report,
    expected_height_one_counts,
    galois_orbit_structure,
    height_one_census,
    maximally_ordinary_characters,
)

ORDER32 = {
    "D32": (dihedral(32), 16, "dihedral"),
    "Q32": (quaternion(32), 32, "quaternion"),
    "SD32": (semidihedral(32), 16, "semidihedral"),
}


@pytest.fixture(scope="module")
def sl27_report():
    from modrep.corpus import named_group

    return deformation_ring_report(named_group("SL(2,7)"))


def test_count_law_table():
    assert expected_height_one_counts(2) == (0,)
    assert expected_height_one_counts(4) == (3,)
    assert expected_height_one_counts(5) == (7,)


def test_dihedral_order_eight_census(group):
    S4 = group("S4")
    B = blocks(S4, 2).principal
    h1 = height_one_census(S4, B)
    assert len(h1) == 1 and character_table(S4)[h1[0]].degree == 2
    with pytest.raises(NotApplicable):
        deformation_ring_report(S4)


def test_klein_four_refused(group):
    with pytest.raises(NotTameBlock):
        deformation_ring_report(group("A5"))
    with pytest.raises(NotTameBlock):
        deformation_ring_report(group("C2xC2"))


def test_sl27_quaternion_case(sl27_report):
    r = sl27_report
    assert (r.n, r.defect_shape) == (4, "quaternion")
    assert len(r.height_one) == 3 and r.orbit_sizes == [1, 2]
    assert len(r.maximally_ordinary) == 2 and r.rational_character not in r.maximally_ordinary
    assert r.case == "i" and r.mod2_ring == ["k[[t]]/(t^3)"] and r.complete_intersection is True
    assert r.deg_qn == 3 and r.presentation == ["W[[t]]/(q_4(t))"]


def test_sl27_maximally_ordinary_entries(group, sl27_report):
    G = group("SL(2,7)")
    T = generalized_decomposition(G, 2)
    B = blocks(G, 2).principal
    top = max(int(o) for o in B.defect_group.element_orders)
    rows = [sl for sl in T.slices if int(G.element_orders[sl.u]) == top]
    for mu in sl27_report.maximally_ordinary:
        vals = [d for sl in rows for d in sl.entries[mu]]
        assert any(not (d.is_zero() or d == 1 or d == -1) for d in vals)
        assert all(d.canonical().M in (1, 2, 4, 8) for d in vals)
    assert maximally_ordinary_characters(G, B, T) == sl27_report.maximally_ordinary


def test_rational_height_one_character_is_rational_at_two_elements(group, sl27_report):
    G = group("SL(2,7)")
    chi = character_table(G)[sl27_report.rational_character]
    for c, cc in enumerate(G.classes.classes):
        if cc.element_order & (cc.element_order - 1) == 0:
            assert chi[c].is_rational()


def test_pgl27_dihedral_case(group):
    r = deformation_ring_report(group("PGL(2,7)"))
    assert (r.n, r.defect_shape) == (4, "dihedral")
    assert len(r.height_one) == 3 and r.orbit_sizes == [1, 2] and len(r.maximally_ordinary) == 2
    assert r.case == "ii" and r.mod2_ring == ["k[[t]]/(t^4)"] and r.complete_intersection is False
    assert r.presentation == ["W[[t]]/(t*q_4(t), 2*q_4(t))"]
    with pytest.raises(Exception):
        deformation_ring_report(group("PGL(2,7)"), three_tubes=False)


@pytest.mark.parametrize("name,shape,case", [("Q16", "quaternion", "i"), ("D16", "dihedral", "ii")])
def test_order_sixteen_2groups(group, name, shape, case):
    r = deformation_ring_report(group(name))
    assert r.defect_shape == shape and r.case == case and r.orbit_sizes == [1, 2]


def test_semidihedral_needs_flag(group):
    G = group("SD16")
    r = deformation_ring_report(G)
    assert r.case == "undetermined" and len(r.presentation) == 2 and r.complete_intersection is None
    with pytest.raises(MissingThreeTubeFlag):
        deformation_ring_report(G, require_flag=True)
    assert deformation_ring_report(G, three_tubes=True).case == "ii"
    assert deformation_ring_report(G, three_tubes=False).case == "i"


@pytest.mark.parametrize("name", list(ORDER32))
def test_n5_orbit_sizes(name):
    gens, deg, shape = ORDER32[name]
    G = build_group(gens, degree=deg, name=name)
    B = blocks(G, 2).principal
    assert B.defect_shape == shape
    h1 = height_one_census(G, B)
    assert len(h1) == 7
    assert [len(o) for o in galois_orbit_structure(G, h1, 5)] == [1, 2, 4]
    r = deformation_ring_report(G, three_tubes=True if shape == "semidihedral" else None)
    assert len(r.maximally_ordinary) == 6 and r.deg_qn == 7


def test_check_qn():
    assert check_qn([0, 0, 0, 1], 4)["ok"]
    assert check_qn([2, 4, 2, 1], 4)["ok"]
    bad = check_qn([1, 0, 0, 1], 4)
    assert bad["degree_ok"] and not bad["mod2_is_t_power"] and not bad["ok"]
    assert not check_qn([0, 0, 1], 4)["degree_ok"]
    assert not check_qn([0, 0, 0, 3], 4)["monic"]


def test_height_one_degrees_and_brauer_character(group, sl27_report):
    chars = character_table(group("SL(2,7)"))
    # height 1 in a block of full defect 4: the 2-part of the degree is 2
    assert [chars[mu].degree for mu in sl27_report.height_one] == [6, 6, 6]
    d = sl27_report.as_dict()
    assert all(isinstance(v, CycNumber) for v in d["brauer_character"])
    assert d["brauer_character"][0] == 6
