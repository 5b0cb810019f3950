from __future__ import annotations

import numpy as np
import pytest

from modrep.deform.cohomology import (
    BarComplex,
    adjoint_matrices,
    cochain_to_functions,
    cohomology_dims,
    functions_to_cochain,
)
from modrep.errors import BarComplexBudgetExceeded
from modrep.exact import get_field
from modrep.reps import ext_dimensions, hom_dimension, simples, syzygy, trivial_module

from small_reps import small_reps


def test_examples(group):
    F2 = get_field(2)
    assert cohomology_dims(trivial_module(group("trivial"), F2, 2)).dims == (4, 0, 0)
    assert cohomology_dims(trivial_module(group("C2"), F2)).dims == (1, 1, 1)
    assert cohomology_dims(trivial_module(group("C2xC2"), F2)).h1 == 2
    assert cohomology_dims(trivial_module(group("C3"), F2)).dims == (1, 0, 0)


@pytest.mark.parametrize("name", ["C2", "C4", "C2xC2", "S3", "D8", "Q8"])
def test_generator_rows_agree_with_full_d2(group, name):
    V = trivial_module(group(name), get_field(2))
    assert cohomology_dims(V).dims == cohomology_dims(V, full=True).dims


@pytest.mark.parametrize("case", [("C2", 2, 1, 2), ("C4", 2, 1, 2), ("S3", 2, 2, 2)])
def test_h0_is_endomorphisms_and_h_ext(case):
    """h^0 = dim End_G(V); h^i = dim Ext^i(V, V) via syzygies."""
    for V in small_reps(*case):
        rep = cohomology_dims(V)
        assert rep.h0 == hom_dimension(V, V)
        assert [rep.h1, rep.h2] == ext_dimensions(V, V, 2)


def test_differentials_compose_to_zero(group):
    V = simples(group("S3"), 2).modules[1]
    rep = cohomology_dims(V)
    F = V.field
    assert not np.any(F.matmul(rep.d1, rep.d0))
    bar = BarComplex(V, adjoint_matrices(V))
    d2, _ = bar.d2_row_space(full=True)
    assert not np.any(F.matmul(d2, rep.d1))
    # every listed H^1 and H^2 representative is a cocycle
    assert not np.any(F.matmul(rep.d1, rep.H1.classes.T))
    assert not np.any(F.matmul(d2, rep.H2.classes.T))


def test_cochain_roundtrip(group):
    V = trivial_module(group("S3"), get_field(3), 2)
    rng = np.random.default_rng(0)
    v = rng.integers(0, 3, (5 * 5) * 4)
    f = cochain_to_functions(v, V, 2)
    assert np.array_equal(functions_to_cochain(lambda g, h: f[(g, h)], V, 2), v)


def test_budget(group):
    V = trivial_module(group("SL(2,7)"), get_field(2))
    with pytest.raises(BarComplexBudgetExceeded):
        cohomology_dims(V)
