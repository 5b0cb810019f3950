"""Equivariant maps, trace maps, stable endomorphisms, projective covers and syzygies."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ProjectiveCoverBudgetExceeded
from ..exact.finite_field import GF
from .matrep import MatRep, regular_module
from .meataxe import spin

PROJECTIVE_COVER_BUDGET = 1200
PROJECTIVE_TRIALS = 48


def _equivariance_system(V: MatRep, W: MatRep) -> np.ndarray:
    """Rows of the linear system rho_W(s) X - X rho_V(s) = 0 in row-major vec(X)."""
    F = V.field
    n, m = V.dim, W.dim
    blocks = []
    for A, B in zip(V.gens, W.gens):
        left = F.kron(B, F.identity(n))
        right = F.kron(F.identity(m), A.T)
        blocks.append(F.sub(left, right))
    if not blocks:
        return np.zeros((0, n * m), dtype=np.int64)
    return np.vstack(blocks)


def hom_space(V: MatRep, W: MatRep) -> list[np.ndarray]:
    """Basis of Hom_G(V, W) as dim W x dim V matrices."""
    F = V.field
    n, m = V.dim, W.dim
    if n == 0 or m == 0:
        return []
    null = F.nullspace(_equivariance_system(V, W))
    return [row.reshape(m, n) for row in null]


def hom_dimension(V: MatRep, W: MatRep) -> int:
    n, m = V.dim, W.dim
    if n == 0 or m == 0:
        return 0
    return n * m - V.field.rank(_equivariance_system(V, W))


def end_ring(V: MatRep) -> list[np.ndarray]:
    return hom_space(V, V)


def trace_map(V: MatRep, W: MatRep, X: np.ndarray) -> np.ndarray:
    """sum_g rho_W(g) X rho_V(g)^-1 for X in Hom_k(V, W)."""
    F = V.field
    G = V.group
    inv = G.inverses
    IV, IW = V.images, W.images
    acc = np.zeros((W.dim, V.dim), dtype=np.int64)
    for g in range(G.order):
        acc = F.add(acc, F.matmul(F.matmul(IW[g], X), IV[int(inv[g])]))
    return acc


def projective_homs(V: MatRep, W: MatRep) -> np.ndarray:
    """RREF basis (rows = row-major matrices) of the maps V -> W factoring through a projective."""
    F = V.field
    n, m = V.dim, W.dim
    rows = []
    for i in range(m):
        for j in range(n):
            X = np.zeros((m, n), dtype=np.int64)
            X[i, j] = 1
            rows.append(trace_map(V, W, X).reshape(-1))
    if not rows:
        return np.zeros((0, n * m), dtype=np.int64)
    return F.row_space(np.array(rows))[0]


def stable_hom_dimension(V: MatRep, W: MatRep) -> int:
    return hom_dimension(V, W) - projective_homs(V, W).shape[0]


def stable_end(V: MatRep) -> int:
    """dim End_G(V) - dim s_G . End_k(V)."""
    return stable_hom_dimension(V, V)


# -- projective covers ---------------------------------------------------------


def _generators(V: MatRep) -> list[np.ndarray]:
    """A small generating set of V as a module, as column vectors."""
    F = V.field
    n = V.dim
    rows_act = [m.T.copy() for m in V.gens]
    gens: list[np.ndarray] = []
    R = np.zeros((0, n), dtype=np.int64)
    piv: list[int] = []
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        if R.shape[0] and not np.any(F.reduce_rows(R, piv, e[None, :])):
            continue
        gens.append(e)
        R, piv = spin(F, np.vstack([R, e[None, :]]), rows_act)
        if len(piv) == n:
            break
    return gens


def _power_image(F: GF, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Image and kernel (row bases) of f^N for N large (Fitting decomposition)."""
    n = f.shape[0]
    P = f
    rank = F.rank(P)
    while True:
        Q = F.matmul(P, P)
        r = F.rank(Q)
        P = Q
        if r == rank:
            break
        rank = r
    image = F.rref(P.T)[0]  # columns of P span the image
    kernel = F.nullspace(P)
    return image, kernel


def strip_projective_summands(K: MatRep, seed: int = 0, trials: int = PROJECTIVE_TRIALS) -> tuple[np.ndarray, np.ndarray]:
    """Split K = Q + L with Q projective and L free of projective summands.

    Returns (Q basis, L basis) as row bases in K's coordinates.  A random
    trace element s_G . X that is not nilpotent exposes a projective summand
    as the image of its Fitting power; when every trial is nilpotent the
    module has no projective summand except with probability below 2^-trials.
    """
    F = K.field
    rng = np.random.default_rng(seed)
    n = K.dim
    q_rows = np.zeros((0, n), dtype=np.int64)
    current = K
    embed = np.eye(n, dtype=np.int64)  # rows: basis of current in K coordinates
    failures = 0
    while current.dim and failures < trials:
        X = F.random_matrix(rng, (current.dim, current.dim))
        f = trace_map(current, current, X)
        image, kernel = _power_image(F, f)
        if image.shape[0] == 0:
            failures += 1
            continue
        failures = 0
        q_rows = np.vstack([q_rows, F.matmul(image, embed)])
        if kernel.shape[0] == 0:
            current = None
            embed = np.zeros((0, n), dtype=np.int64)
            break
        sub = current.submodule(kernel)
        kernel_rref = F.rref(kernel)[0]
        embed = F.matmul(kernel_rref, embed)
        current = sub
    return q_rows, embed


@dataclass
class ProjectiveCover:
    module: MatRep
    projective: MatRep
    surjection: np.ndarray  # dim V x dim P
    syzygy: MatRep
    syzygy_embedding: np.ndarray  # rows: basis of the syzygy inside P


def projective_cover(V: MatRep, seed: int = 0, budget: int = PROJECTIVE_COVER_BUDGET) -> ProjectiveCover:
    F = V.field
    G = V.group
    n = V.dim
    if n == 0:
        zero = MatRep(G, F, [np.zeros((0, 0), dtype=np.int64) for _ in V.gens], n=0)
        return ProjectiveCover(V, zero, np.zeros((0, 0), dtype=np.int64), zero, np.zeros((0, 0), dtype=np.int64))
    gens = _generators(V)
    r = len(gens)
    N = G.order
    if r * N > budget:
        raise ProjectiveCoverBudgetExceeded(f"free cover of dimension {r * N} exceeds the budget {budget}")
    reg = regular_module(G, F)
    free = reg
    for _ in range(r - 1):
        free = free.direct_sum(reg)
    # pi(e_{k, x}) = rho_V(x) v_k
    imgs = V.images
    pi = np.zeros((n, r * N), dtype=np.int64)
    for k, v in enumerate(gens):
        pi[:, k * N : (k + 1) * N] = np.stack([F.matvec(imgs[x], v) for x in range(N)], axis=1)
    ker_rows = F.rref(F.nullspace(pi))[0]
    K = free.submodule(ker_rows)
    q_rows, omega_rows = strip_projective_summands(K, seed)
    # translate into the free module's coordinates
    q_free = F.matmul(q_rows, ker_rows) if q_rows.shape[0] else q_rows.reshape(0, r * N)
    omega_free = F.matmul(omega_rows, ker_rows) if omega_rows.shape[0] else np.zeros((0, r * N), dtype=np.int64)
    if q_free.shape[0]:
        P = free.quotient(q_free)
        Rq, qpiv = F.rref(q_free)
        keep = [c for c in range(r * N) if c not in set(qpiv)]
        pi_P = pi[:, keep]
        omega_P = F.reduce_rows(Rq, qpiv, omega_free)[:, keep] if omega_free.shape[0] else np.zeros((0, len(keep)), dtype=np.int64)
    else:
        P = free
        pi_P = pi
        omega_P = omega_free
    omega = P.submodule(omega_P) if omega_P.shape[0] else MatRep(G, F, [np.zeros((0, 0), dtype=np.int64) for _ in V.gens], n=0)
    return ProjectiveCover(V, P, pi_P, omega, F.rref(omega_P)[0] if omega_P.shape[0] else omega_P)


def syzygy(V: MatRep, seed: int = 0) -> MatRep:
    return projective_cover(V, seed).syzygy


def ext_dimensions(V: MatRep, W: MatRep, degrees: int = 2, seed: int = 0) -> list[int]:
    """dim Ext^i_G(V, W) for i = 1..degrees via stable Hom(Omega^i V, W)."""
    out = []
    X = V
    for _ in range(degrees):
        X = syzygy(X, seed)
        out.append(stable_hom_dimension(X, W) if X.dim else 0)
    return out


def is_projective(V: MatRep, seed: int = 0) -> bool:
    return V.dim == 0 or syzygy(V, seed).dim == 0
