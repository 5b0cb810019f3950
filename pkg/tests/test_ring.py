from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modrep.deform.ring import (
    SmallExtension,
    dual_numbers,
    _pivots,
    howell_form,
    howell_reduce,
    power_series_truncated,
    residue_field,
    square_zero,
    truncated_polynomial,
    witt_truncated,
)
from modrep.errors import InputError
from modrep.exact.galois_ring import get_galois_ring


def _elem(R, coords):
    return R.reduce(np.array(coords, dtype=np.int64))


@given(st.integers(0, 63), st.integers(0, 63))
def test_witt_vectors_are_integers_mod_p_power(a, b):
    R = witt_truncated(2, 3)
    x, y = R.from_int(a), R.from_int(b)
    assert np.array_equal(R.mul(x, y), R.from_int(a * b))
    assert np.array_equal(R.add(x, y), R.from_int(a + b))


@given(st.lists(st.integers(0, 3), min_size=2, max_size=2), st.lists(st.integers(0, 3), min_size=2, max_size=2))
def test_galois_ring_matches_independent_implementation(a, b):
    R = witt_truncated(2, 2, 2)
    GR = get_galois_ring(2, 2, 2)
    x, y = _elem(R, a), _elem(R, b)
    prod = GR(a) * GR(b)
    assert [int(c) for c in R.mul(x, y)] == list(prod.coeffs)


@given(st.lists(st.integers(0, 1), min_size=3, max_size=3), st.lists(st.integers(0, 1), min_size=3, max_size=3))
def test_truncated_polynomial_product(a, b):
    R = truncated_polynomial(2, 3)
    want = [0, 0, 0]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j < 3:
                want[i + j] = (want[i + j] + x * y) % 2
    assert list(R.mul(_elem(R, a), _elem(R, b))) == want


@pytest.mark.parametrize(
    "R,size,nil,torsion",
    [
        (residue_field(2), 2, 1, 1),
        (residue_field(2, 2), 4, 1, 1),
        (dual_numbers(2), 4, 2, 1),
        (dual_numbers(3), 9, 2, 1),
        (truncated_polynomial(2, 3), 8, 3, 1),
        (square_zero(2), 8, 2, 1),
        (witt_truncated(2, 2), 4, 2, 2),
        (witt_truncated(2, 3), 8, 3, 3),
        (witt_truncated(3, 2, 2), 81, 2, 2),
    ],
)
def test_ring_invariants(R, size, nil, torsion):
    assert R.size == size
    assert len(R.elements()) == size
    assert R.nilpotency == nil
    assert R.p_torsion_exponent() == torsion
    assert len(R.maximal_ideal) * R.field.q == size


def test_power_series_truncation():
    S = power_series_truncated(2, 1, 3, 2)
    # W[[t]]/(m^3, 4): 1 mod 4, t mod 4, t^2 mod 2
    assert S.size == 4 * 4 * 2
    t = S.basis_element(1)
    assert not np.any(S.mul(S.mul(t, t), t))
    assert not np.any(S.mul(S.from_int(2), S.mul(t, t)))
    assert S.monomials == [(0,), (1,), (2,)]


@given(st.integers(0, 2**31), st.sampled_from([(2, 3), (3, 2), (2, 4)]))
def test_reduce_is_canonical(seed, pm):
    p, m = pm
    S = power_series_truncated(p, 2, 3, m)
    rng = np.random.default_rng(seed)
    x = rng.integers(0, p**m, S.B)
    rel = S.relations[rng.integers(0, S.relations.shape[0])] if S.relations.shape[0] else np.zeros(S.B, dtype=np.int64)
    assert np.array_equal(S.reduce(x), S.reduce(x + rng.integers(1, 5) * rel))
    assert np.array_equal(S.reduce(S.reduce(x)), S.reduce(x))


@given(st.integers(0, 2**31))
def test_quotient_is_ring_hom(seed):
    S = power_series_truncated(2, 1, 4, 3)
    Q = S.quotient([S.add(S.mul(S.basis_element(1), S.basis_element(1)), S.mul(S.from_int(2), S.basis_element(1)))])
    rng = np.random.default_rng(seed)
    x, y = S.reduce(rng.integers(0, 8, S.B)), S.reduce(rng.integers(0, 8, S.B))
    assert np.array_equal(Q.reduce(S.mul(x, y)), Q.mul(Q.reduce(x), Q.reduce(y)))


def test_howell_form_spans_submodule():
    rows = np.array([[2, 4], [0, 3]])
    H = howell_form(rows, 2, 3)
    piv = _pivots(H, 2, 3)
    for v in ([2, 4], [0, 6], [4, 0], [0, 1]):
        assert not np.any(howell_reduce(np.array(v), H, piv, 2, 3))


@pytest.mark.parametrize("R", [witt_truncated(2, 3), truncated_polynomial(3, 3), witt_truncated(2, 2, 2)])
def test_matrix_inverse(R):
    rng = np.random.default_rng(5)
    F = R.field
    for _ in range(10):
        while True:
            A = F.random_matrix(rng, (3, 3))
            if F.rank(A) == 3:
                break
        X = R.mat_lift(A)
        X = R.reduce(X + R.mul(R.maximal_ideal[rng.integers(0, len(R.maximal_ideal), (3, 3))], R.one()))
        assert np.array_equal(R.matmul(X, R.mat_inverse(X)), R.mat_identity(3))


def test_small_extensions():
    Z4 = witt_truncated(2, 2)
    ext = SmallExtension.from_ideal(Z4, [Z4.from_int(2)])
    assert ext.kernel_dimension == 1 and ext.R0.size == 2
    k3 = truncated_polynomial(2, 3)
    t2 = k3.mul(k3.basis_element(1), k3.basis_element(1))
    ext = SmallExtension.from_ideal(k3, [t2])
    assert ext.R0.size == 4
    sq = square_zero(2)
    ext = SmallExtension.from_ideal(sq, [sq.basis_element(1), sq.basis_element(2)])
    assert ext.kernel_dimension == 2 and ext.R0.size == 2
    Z8 = witt_truncated(2, 3)
    with pytest.raises(InputError):
        SmallExtension.from_ideal(Z8, [Z8.from_int(2)])  # 2 * 2 != 0
    same = SmallExtension.from_rings(Z4, Z4)
    assert same.kernel_dimension == 0
