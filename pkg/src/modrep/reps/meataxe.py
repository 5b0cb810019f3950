"""MeatAxe-style chopping of modules into composition factors.

Internally vectors are rows and a module element v is moved by v @ rho(g)^T,
which is the transpose of the column convention used by ``MatRep``.
"""

from __future__ import annotations

import numpy as np

from ..errors import ChopBudgetExceeded
from ..exact.finite_field import GF
from .matrep import MatRep

DEFAULT_BUDGET = 200


def spin(F: GF, seeds: np.ndarray, mats: list[np.ndarray]) -> tuple[np.ndarray, list[int]]:
    """RREF basis of the smallest subspace containing the seed rows and stable under v -> v M."""
    seeds = np.atleast_2d(np.asarray(seeds, dtype=np.int64))
    R, piv = F.rref(seeds)
    new = R
    n = seeds.shape[1]
    while new.shape[0] and len(piv) < n:
        imgs = np.vstack([F.matmul(new, M) for M in mats]) if mats else np.zeros((0, n), dtype=np.int64)
        red = F.reduce_rows(R, piv, imgs)
        red = red[np.any(red != 0, axis=1)]
        if red.shape[0] == 0:
            break
        new, _ = F.rref(red)
        R, piv = F.rref(np.vstack([R, new]))
    return R, piv


def _random_algebra_element(F: GF, mats: list[np.ndarray], rng: np.random.Generator) -> np.ndarray:
    n = mats[0].shape[0]
    theta = np.zeros((n, n), dtype=np.int64)
    for _ in range(6):
        length = int(rng.integers(1, 4))
        word = mats[int(rng.integers(len(mats)))]
        for _ in range(length - 1):
            word = F.matmul(word, mats[int(rng.integers(len(mats)))])
        c = int(rng.integers(1, F.q))
        theta = F.add(theta, F.scale(c, word))
    return theta


def find_submodule(V: MatRep, rng: np.random.Generator, budget: int = DEFAULT_BUDGET) -> np.ndarray | None:
    """A proper nonzero submodule (as RREF row basis), or None once irreducibility is proven.

    Irreducibility is certified by Norton's test: a kernel vector of
    theta - lambda with one-dimensional kernel spins to the whole space, and
    so does a kernel vector of the transposed element under the dual action.
    """
    F = V.field
    n = V.dim
    if n <= 1:
        return None
    if not V.gens:
        return np.eye(n, dtype=np.int64)[:1]
    rows_act = [m.T.copy() for m in V.gens]
    cols_act = [m.copy() for m in V.gens]
    eye = F.identity(n)
    for _ in range(budget):
        theta = _random_algebra_element(F, rows_act, rng)
        for lam in F.roots(F.charpoly(theta)):
            shifted = F.sub(theta, F.scale(lam, eye))
            ker = F.nullspace(shifted.T)
            for v in ker[:3]:
                R, piv = spin(F, v, rows_act)
                if len(piv) < n:
                    return R
            if ker.shape[0] != 1:
                continue
            w = F.nullspace(shifted)[0]
            U, upiv = spin(F, w, cols_act)
            if len(upiv) < n:
                return F.rref(F.nullspace(U))[0]
            return None
    raise ChopBudgetExceeded(f"no irreducibility certificate after {budget} random algebra elements")


def is_irreducible(V: MatRep, seed: int = 0, budget: int = DEFAULT_BUDGET) -> bool:
    return find_submodule(V, np.random.default_rng(seed), budget) is None


def composition_factors(V: MatRep, seed: int = 0, budget: int = DEFAULT_BUDGET) -> list[MatRep]:
    """All composition factors (with repetition) in a seed-determined order."""
    rng = np.random.default_rng(seed)
    stack = [V]
    factors = []
    while stack:
        M = stack.pop()
        if M.dim == 0:
            continue
        sub = find_submodule(M, rng, budget)
        if sub is None:
            factors.append(M)
        else:
            stack.append(M.quotient(sub))
            stack.append(M.submodule(sub))
    return factors


def chop(V: MatRep, seed: int = 0, budget: int = DEFAULT_BUDGET) -> list[tuple[MatRep, int]]:
    """Composition factors grouped up to isomorphism, with multiplicities.

    Isomorphism between irreducibles is decided exactly by a nonzero
    equivariant map (Schur's lemma).
    """
    from .homs import hom_dimension

    groups: list[list] = []
    for S in composition_factors(V, seed, budget):
        for entry in groups:
            T = entry[0]
            if T.dim == S.dim and hom_dimension(T, S) > 0:
                entry[1] += 1
                break
        else:
            groups.append([S, 1])
    groups.sort(key=lambda e: e[0].dim)
    return [(S, m) for S, m in groups]
