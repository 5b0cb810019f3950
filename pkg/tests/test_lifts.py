from __future__ import annotations

import numpy as np
import pytest

from modrep.deform import (
    SmallExtension,
    cohomology_dims,
    dual_numbers,
    enumerate_lifts,
    lift_from_generators,
    lifts_isomorphic,
    lifts_plainly_isomorphic,
    obstruction_class,
    residue_field,
    search_lift,
    square_zero,
    swapped_identification_pair,
    tangent_correspondence,
    trivial_lift,
    truncated_polynomial,
    witt_truncated,
)
from modrep.errors import OracleBudgetExceeded
from modrep.exact import get_field
from modrep.reps import MatRep, stable_end, trivial_module

from small_reps import small_reps


def _rep(group, name, mats, p=2):
    return MatRep.from_generators(group(name), get_field(p), [np.array(m) for m in mats])


def test_enumeration_counts(group):
    k = trivial_module(group("C2"), get_field(2))
    assert len(enumerate_lifts(k, residue_field(2))) == 1
    assert len(enumerate_lifts(k, dual_numbers(2))) == 2
    assert len(enumerate_lifts(k, witt_truncated(2, 2))) == 2  # x = 1, 3
    assert len(enumerate_lifts(k, witt_truncated(2, 3))) == 4  # x^2 = 1 in Z/8
    assert len(enumerate_lifts(k, truncated_polynomial(2, 3))) == 2


def test_z4_lifts_are_square_roots_of_one(group):
    k = trivial_module(group("C2"), get_field(2))
    vals = sorted(int(c.representative.gens[0, 0, 0, 0]) for c in enumerate_lifts(k, witt_truncated(2, 2)))
    assert vals == [1, 3]


@pytest.mark.parametrize("case", [("C2", 2, 1, 2), ("C4", 2, 2, 1), ("S3", 2, 1, 2)])
def test_tangent_correspondence_is_bijective(case):
    for rho in small_reps(*case):
        tc = tangent_correspondence(rho)
        classes = enumerate_lifts(rho, tc.ring)
        assert len(classes) == rho.field.q**tc.dimension
        coords = {tuple(tc.forward(c.representative).tolist()) for c in classes}
        assert len(coords) == len(classes)
        for L in tc.all_classes():
            assert L.is_homomorphism() and L.reduces_to_residual()
            assert tuple(tc.forward(L).tolist()) in coords


def test_extension_modules_realize_classes(group):
    rho = trivial_module(group("C2"), get_field(2))
    tc = tangent_correspondence(rho)
    split = tc.extension_module([0])
    nonsplit = tc.extension_module([1])
    assert stable_end(split) == 4 and stable_end(nonsplit) == 0


def test_obstruction_vanishes_for_jordan_block_over_z4(group):
    rho = _rep(group, "C2", [[[1, 1], [0, 1]]])
    Z4 = witt_truncated(2, 2)
    ext = SmallExtension.from_ideal(Z4, [Z4.from_int(2)])
    rho0 = trivial_lift(rho, ext.R0)
    ob = obstruction_class(rho0, ext)
    assert ob.vanishes
    L = ob.lift
    assert L.is_homomorphism() and L.reduces_to_residual()
    X = L.gens[0]
    assert np.array_equal(Z4.matmul(X, X), Z4.mat_identity(2))
    assert search_lift(rho0, ext) is not None
    # the class does not depend on the set-theoretic lift
    for seed in range(4):
        again = obstruction_class(rho0, ext, rng=np.random.default_rng(seed))
        assert again.vanishes and again.lift.is_homomorphism()


def test_permutation_matrices_lift_canonically(group):
    rho = _rep(group, "C2", [[[0, 1], [1, 0]]])
    k2 = dual_numbers(2)
    ext = SmallExtension.from_ideal(k2, [k2.basis_element(1)])
    ob = obstruction_class(trivial_lift(rho, ext.R0), ext)
    assert ob.vanishes and ob.lift.is_homomorphism()


def test_split_extension_has_zero_class(group):
    rho = trivial_module(group("C4"), get_field(2))
    R = witt_truncated(2, 2)
    ext = SmallExtension.from_rings(R, R)
    L = trivial_lift(rho, R)
    ob = obstruction_class(L, ext)
    assert ob.vanishes and np.array_equal(ob.lift.gens, L.gens)


def test_nonvanishing_obstruction(group):
    """1 + t over k[t]/t^2 does not lift to an involution over k[t]/t^3."""
    rho = trivial_module(group("C2"), get_field(2))
    k3 = truncated_polynomial(2, 3)
    t = k3.basis_element(1)
    ext = SmallExtension.from_ideal(k3, [k3.mul(t, t)])
    gens = np.array([[[k3.add(k3.one(), t)]]])
    rho0 = lift_from_generators(rho, ext.R0, gens)
    ob = obstruction_class(rho0, ext)
    assert not ob.vanishes and ob.lift is None
    assert search_lift(rho0, ext) is None


def test_square_zero_extension(group):
    rho = trivial_module(group("C2"), get_field(2))
    sq = square_zero(2)
    ext = SmallExtension.from_ideal(sq, [sq.basis_element(1), sq.basis_element(2)])
    ob = obstruction_class(trivial_lift(rho, ext.R0), ext)
    assert ob.vanishes and ob.coordinates.shape == (2, cohomology_dims(rho).h2)


@pytest.mark.parametrize("p", [2, 3])
def test_swapped_identifications(p):
    L1, L2 = swapped_identification_pair(p)
    assert L1.is_homomorphism() and L2.is_homomorphism()
    assert lifts_isomorphic(L1, L1)
    assert not lifts_isomorphic(L1, L2)
    assert lifts_plainly_isomorphic(L1, L2)
    assert stable_end(L1.residual) == 4


def test_conjugate_lifts_are_isomorphic(group):
    rho = _rep(group, "C2", [[[1, 1], [0, 1]]])
    Z4 = witt_truncated(2, 2)
    X = np.array([[[1], [1]], [[0], [3]]])  # [[1, 1], [0, -1]]
    L1 = lift_from_generators(rho, Z4, X[None])
    P = Z4.mat_lift(np.array([[1, 0], [0, 1]])) + np.array([[[0], [2]], [[0], [0]]])  # 1 + 2 E_12
    P = Z4.reduce(P)
    conj = Z4.matmul(Z4.matmul(P, L1.gens[0]), Z4.mat_inverse(P))
    L2 = lift_from_generators(rho, Z4, conj[None])
    assert lifts_isomorphic(L1, L2)


def test_oracle_caps(group):
    rho = trivial_module(group("S4"), get_field(2))
    with pytest.raises(OracleBudgetExceeded):
        enumerate_lifts(rho, dual_numbers(2))
