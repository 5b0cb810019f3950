from __future__ import annotations

import pytest

from modrep.blocks import blocks
from modrep.chartable import character_table
from modrep.decomp import (
    block_diagonal,
    character_height,
    decomposition_matrix,
    generalized_decomposition,
    reconstruction_holds,
    reduce_and_chop_oracle,
    verify_block_vanishing,
)
from modrep.exact import CycNumber, is_algebraic_integer, lies_in_conductor, zeta


@pytest.mark.parametrize("name,p", [("C2", 2), ("S3", 3), ("S3", 2), ("S4", 2), ("A4", 2), ("A5", 5), ("D8", 2)])
def test_decomposition_matches_reduce_and_chop(group, name, p):
    G = group(name)
    assert decomposition_matrix(G, p).entries == reduce_and_chop_oracle(G, p)


def test_examples(group):
    assert decomposition_matrix(group("C2"), 2).entries == [[1], [1]]
    S3 = decomposition_matrix(group("S3"), 3)
    assert S3.entries == [[1, 0], [0, 1], [1, 1]]
    ident = decomposition_matrix(group("S3"), 5).entries
    assert ident == [[int(i == j) for j in range(3)] for i in range(3)]


@pytest.mark.parametrize("name,p", [("S4", 2), ("A5", 2), ("A5", 5), ("SL(2,3)", 2)])
def test_decomposition_consistency(group, name, p):
    G = group(name)
    D = decomposition_matrix(G, p)
    chars = character_table(G)
    # degrees: chi(1) = sum_j d_ij phi_j(1)
    for i, ch in enumerate(chars):
        assert ch.degree == sum(d * phi.degree for d, phi in zip(D.entries[i], D.brauer))
    # Cartan matrix is symmetric with determinant a power of p
    C = D.cartan()
    assert all(C[i][j] == C[j][i] for i in range(len(C)) for j in range(len(C)))
    assert block_diagonal(D, blocks(G, p))


@pytest.mark.parametrize("name,p", [("C4", 2), ("Q8", 2), ("D8", 2), ("S4", 2), ("SL(2,3)", 2), ("A5", 2), ("A5", 5)])
def test_generalized_decomposition(group, name, p):
    G = group(name)
    T = generalized_decomposition(G, p)
    assert reconstruction_holds(T)
    assert verify_block_vanishing(T).ok
    D = decomposition_matrix(G, p)
    assert [[int(x.rational_value()) for x in row] for row in T.slices[0].entries] == D.entries
    for sl in T.slices:
        order = int(G.element_orders[sl.u])
        for row in sl.entries:
            for x in row:
                assert is_algebraic_integer(x)
                assert lies_in_conductor(x, order)


def test_c2_and_c4_columns(group):
    T = generalized_decomposition(group("C2"), 2)
    assert [row[0] for row in T.slices[1].entries] == [1, -1]
    C4 = group("C4")
    T4 = generalized_decomposition(C4, 2)
    sl = next(s for s in T4.slices if C4.element_orders[s.u] == 4)
    col = [row[0] for row in sl.entries]
    assert sorted(map(str, col)) == sorted(map(str, [CycNumber.rational(1), zeta(4), CycNumber.rational(-1), -zeta(4)]))
    assert any(not x.is_rational() for x in col)


def test_heights(group):
    S4 = group("S4")
    B = blocks(S4, 2).principal
    chars = character_table(S4)
    heights = {chars[mu].degree: character_height(S4, mu, B) for mu in B.characters}
    assert heights[2] == 1 and heights[1] == 0 and heights[3] == 0
    A5 = group("A5")
    for B in blocks(A5, 5):
        if B.defect == 0:
            assert character_height(A5, B.characters[0], B) == 0


def test_vanishing_with_two_blocks(group):
    rep = verify_block_vanishing(generalized_decomposition(group("A5"), 5))
    assert rep.ok and rep.checked
