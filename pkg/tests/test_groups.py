from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modrep.blocks import classify_2group
from modrep.corpus import CORPUS, cyclic
from modrep.errors import GroupTooLarge, InputError
from modrep.groups import (
    build_group,
    centralizer,
    cycle_string,
    p_part_decomposition,
    p_singular_frame,
    sylow,
)

ORDERS = {
    "trivial": 1, "C2": 2, "C3": 3, "C4": 4, "C6": 6, "C8": 8, "C2xC2": 4, "S3": 6, "D8": 8, "Q8": 8,
    "D12": 12, "Q16": 16, "D16": 16, "SD16": 16, "S4": 24, "A4": 12, "SL(2,3)": 24, "A5": 60,
    "SL(2,7)": 336, "PGL(2,7)": 336,
}
CLASS_COUNTS = {"C2": 2, "S3": 3, "D8": 5, "Q8": 5, "S4": 5, "A4": 4, "SL(2,3)": 7, "A5": 5, "SL(2,7)": 11, "PGL(2,7)": 9}
SMALL = [n for n in ORDERS if ORDERS[n] <= 24]


@pytest.mark.parametrize("name", list(ORDERS))
def test_corpus_orders(group, name):
    assert group(name).order == ORDERS[name]


@pytest.mark.parametrize("name", list(CLASS_COUNTS))
def test_class_counts_and_class_equation(group, name):
    G = group(name)
    assert len(G.classes) == CLASS_COUNTS[name]
    assert sum(c.size for c in G.classes.classes) == G.order
    for c in G.classes.classes:
        assert c.size * c.centralizer_order == G.order


@pytest.mark.parametrize("name", SMALL)
def test_classes_are_exact_conjugacy_orbits(group, name):
    G = group(name)
    for c in G.classes.classes:
        orbit = {G.conj(h, c.rep) for h in range(G.order)}
        assert orbit == set(c.members)


@pytest.mark.parametrize("name", SMALL)
def test_multiplication_is_associative_with_inverses(group, name):
    G = group(name)
    elems = range(G.order)
    for g, h, k in itertools.islice(itertools.product(elems, repeat=3), 2000):
        assert G.mul(G.mul(g, h), k) == G.mul(g, G.mul(h, k))
    for g in elems:
        assert G.mul(g, G.inv(g)) == 0


def test_build_group_examples():
    G = build_group([[1, 0]], degree=2)
    assert G.order == 2 and len(G.classes) == 2
    S4 = build_group([[1, 0, 2, 3], [1, 2, 3, 0]], degree=4)
    assert S4.order == 24 and len(S4.classes) == 5
    T = build_group([], degree=1)
    assert T.order == 1


def test_build_group_rejects_non_permutations_and_caps():
    with pytest.raises(InputError):
        build_group([[0, 0, 1]], degree=3)
    with pytest.raises(GroupTooLarge):
        build_group(cyclic(12), degree=12, order_cap=10)


def test_p_part_decomposition():
    G = build_group(cyclic(6), degree=6)
    g = G.generator_indices[0]
    assert p_part_decomposition(G, G.power(g, 3), 2) == (G.power(g, 3), 0)
    assert p_part_decomposition(G, G.power(g, 2), 2) == (0, G.power(g, 2))
    u, v = p_part_decomposition(G, g, 2)
    assert (u, v) == (G.power(g, 3), G.power(g, 4))
    assert G.mul(u, v) == g


@pytest.mark.parametrize("name,p", [("S4", 2), ("S4", 3), ("A5", 5), ("SL(2,3)", 2), ("D12", 3)])
def test_p_part_decomposition_properties(group, name, p):
    G = group(name)
    orders = G.element_orders
    for g in range(G.order):
        u, v = p_part_decomposition(G, g, p)
        assert G.mul(u, v) == g and G.mul(v, u) == g
        assert orders[v] % p != 0
        ou = int(orders[u])
        assert ou & (ou - 1) == 0 if p == 2 else ou in (1, p, p * p)


def test_sylow_and_centralizer(group):
    C6 = group("C6")
    assert sylow(C6, 2).order == 2
    P = sylow(group("S4"), 2)
    assert P.order == 8 and classify_2group(P) == "dihedral"
    assert classify_2group(sylow(group("SL(2,3)"), 2)) == "quaternion"
    S3 = group("S3")
    g = S3.index_of([1, 2, 0])
    C = centralizer(S3, g)
    assert C.order == 3
    assert set(C.parent_indices) == {h for h in range(6) if S3.mul(g, h) == S3.mul(h, g)}


@pytest.mark.parametrize("name,p", [("SL(2,7)", 2), ("A5", 2), ("A5", 5), ("S4", 3), ("PGL(2,7)", 2)])
def test_sylow_order(group, name, p):
    G = group(name)
    P = sylow(G, p)
    n = G.order
    while n % p == 0:
        n //= p
    assert P.order * n == G.order


@pytest.mark.parametrize("name,tag", [("C4", "cyclic"), ("C2xC2", "klein-four"), ("D8", "dihedral"), ("Q8", "quaternion"),
                                      ("D16", "dihedral"), ("Q16", "quaternion"), ("SD16", "semidihedral"), ("C8", "cyclic")])
def test_classify_2group(group, name, tag):
    assert classify_2group(group(name)) == tag


@pytest.mark.parametrize("name,p,pairs", [("C2", 2, 2), ("C4", 2, 4), ("S4", 2, 5), ("A5", 5, 5), ("SL(2,3)", 2, 7)])
def test_frame_bijection(group, name, p, pairs):
    G = group(name)
    fr = p_singular_frame(G, p)
    covered = fr.pair_of_class()
    assert len(covered) == pairs == len(G.classes)
    assert sum(ent.ell for ent in fr.entries) == len(G.classes)
    assert fr.entries[0].u == 0
    for ent in fr.entries:
        assert G.element_orders[ent.u] in {p**k for k in range(8)}


def test_frame_c2():
    G = build_group(cyclic(2), degree=2)
    fr = p_singular_frame(G, 2)
    assert [ent.ell for ent in fr.entries] == [1, 1]


@given(st.permutations(list(range(6))))
def test_cycle_string_roundtrip(perm):
    from modrep.io import parse_group_text

    text = f"domain 6\ngen {cycle_string(perm)}\n"
    assert parse_group_text(text).generators == [list(perm)]
