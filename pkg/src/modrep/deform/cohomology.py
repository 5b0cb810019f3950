"""Group cohomology H^i(G, ad rho) from the normalized inhomogeneous bar complex.

Cochains in degree i are functions (G \\ 1)^i -> M_n(k), stored as flat
vectors indexed by the tuple of non-identity elements (lexicographic) and
then the matrix entry (row-major).  G acts on M_n(k) by conjugation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..errors import BarComplexBudgetExceeded
from ..exact.finite_field import GF
from ..reps.matrep import MatRep

BAR_BUDGET = 10_000  # cap on |G|^2 n^2


def adjoint_matrices(rho: MatRep) -> np.ndarray:
    """Ad(g) acting on row-major vec(X) by X -> rho(g) X rho(g)^-1."""
    F = rho.field
    imgs = rho.images
    out = []
    for A in imgs:
        out.append(F.kron(A, F.inverse(A).T))
    return np.array(out, dtype=np.int64)


@dataclass
class QuotientBasis:
    """A complement basis for Z/B with coordinates of classes."""

    field: GF
    boundaries: np.ndarray  # RREF rows of B
    boundary_pivots: list[int]
    classes: np.ndarray  # rows: cocycles whose classes form a basis of Z/B

    @property
    def dim(self) -> int:
        return self.classes.shape[0]

    def canonical(self, v) -> np.ndarray:
        """Normal form of a cocycle modulo coboundaries."""
        v = np.asarray(v, dtype=np.int64).reshape(1, -1)
        return self.field.reduce_rows(self.boundaries, self.boundary_pivots, v)[0]

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of the class of a cocycle in the chosen basis."""
        F = self.field
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        A = np.vstack([self.classes, self.boundaries]).T
        x = F.solve(A, np.asarray(v, dtype=np.int64))
        if x is None:
            raise ValueError("vector is not a cocycle")
        return x[: self.dim]

    def coboundary_solution(self, v, d_prev: np.ndarray) -> np.ndarray | None:
        """Some cochain c with d c = v, or None when the class is nonzero."""
        return self.field.solve(d_prev, np.asarray(v, dtype=np.int64))


def _complement(F: GF, Z: np.ndarray, B: np.ndarray, Bpiv: list[int]) -> np.ndarray:
    rows = []
    basis, piv = B, list(Bpiv)
    for z in Z:
        r = F.reduce_rows(basis, piv, z[None, :])
        if np.any(r):
            rows.append(z)
            basis, piv = F.rref(np.vstack([basis, z[None, :]]))
    width = Z.shape[1] if Z.ndim == 2 else B.shape[1]
    return np.array(rows, dtype=np.int64).reshape(-1, width)


@dataclass
class BarComplex:
    rho: MatRep
    ad: np.ndarray = field(repr=False)

    @property
    def group(self):
        return self.rho.group

    @property
    def field(self) -> GF:
        return self.rho.field

    @property
    def n2(self) -> int:
        return self.rho.dim ** 2

    @property
    def m(self) -> int:
        return self.group.order - 1

    def _neg_eye(self) -> np.ndarray:
        F = self.field
        return F.scale(int(F.neg(1)), np.eye(self.n2, dtype=np.int64))

    def d0(self) -> np.ndarray:
        F = self.field
        n2, m = self.n2, self.m
        out = np.zeros((m * n2, n2), dtype=np.int64)
        eye = np.eye(n2, dtype=np.int64)
        for g in range(1, m + 1):
            out[(g - 1) * n2 : g * n2] = F.sub(self.ad[g], eye)
        return out

    def d1(self) -> np.ndarray:
        F, G = self.field, self.group
        n2, m = self.n2, self.m
        out = np.zeros((m * m * n2, m * n2), dtype=np.int64)
        eye = np.eye(n2, dtype=np.int64)
        neg = self._neg_eye()
        for g in range(1, m + 1):
            for h in range(1, m + 1):
                r = ((g - 1) * m + (h - 1)) * n2
                rows = out[r : r + n2]
                rows[:, (h - 1) * n2 : h * n2] = F.add(rows[:, (h - 1) * n2 : h * n2], self.ad[g])
                gh = G.mul(g, h)
                if gh:
                    rows[:, (gh - 1) * n2 : gh * n2] = F.add(rows[:, (gh - 1) * n2 : gh * n2], neg)
                rows[:, (g - 1) * n2 : g * n2] = F.add(rows[:, (g - 1) * n2 : g * n2], eye)
        return out

    def d2_rows(self, g: int) -> np.ndarray:
        """Rows of d2 for cochain arguments (g, *, *)."""
        F, G = self.field, self.group
        n2, m = self.n2, self.m
        out = np.zeros((m * m * n2, m * m * n2), dtype=np.int64)
        eye = np.eye(n2, dtype=np.int64)
        neg = self._neg_eye()

        def blk(a: int, b: int) -> slice:
            s = ((a - 1) * m + (b - 1)) * n2
            return slice(s, s + n2)

        for h in range(1, m + 1):
            gh = G.mul(g, h)
            for l in range(1, m + 1):
                r = ((h - 1) * m + (l - 1)) * n2
                rows = out[r : r + n2]
                c = blk(h, l)
                rows[:, c] = F.add(rows[:, c], self.ad[g])
                if gh:
                    c = blk(gh, l)
                    rows[:, c] = F.add(rows[:, c], neg)
                hl = G.mul(h, l)
                if hl:
                    c = blk(g, hl)
                    rows[:, c] = F.add(rows[:, c], eye)
                c = blk(g, h)
                rows[:, c] = F.add(rows[:, c], neg)
        return out

    def d2_row_space(self, full: bool = False) -> tuple[np.ndarray, list[int]]:
        """Row space of the 2-cocycle conditions.

        A normalized 2-cochain c is a cocycle iff (m, g)(m', h) = (m + g m' + c(g, h), gh)
        is associative on M x G, and associativity for all first factors follows
        from associativity for the generators (0, s) and for (m, 1), which is
        automatic.  So the rows with g a generator cut out the same kernel;
        ``full`` uses every row instead.
        """
        F = self.field
        width = self.m * self.m * self.n2
        basis = np.zeros((0, width), dtype=np.int64)
        piv: list[int] = []
        firsts = range(1, self.m + 1) if full else sorted(set(self.group.generator_indices) - {0})
        for g in firsts:
            block = F.reduce_rows(basis, piv, self.d2_rows(g))
            block = block[np.any(block != 0, axis=1)]
            if block.shape[0]:
                nb, npv = F.row_space(block)
                basis, piv = F.rref(np.vstack([basis, nb]))
        return basis, piv


@dataclass
class CohomologyReport:
    h0: int
    h1: int
    h2: int
    complex: BarComplex = field(repr=False)
    d0: np.ndarray = field(repr=False)
    d1: np.ndarray = field(repr=False)
    Z1: np.ndarray = field(repr=False)
    B1: np.ndarray = field(repr=False)
    Z2: np.ndarray = field(repr=False)
    B2: np.ndarray = field(repr=False)
    H1: QuotientBasis = field(repr=False)
    H2: QuotientBasis = field(repr=False)

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.h0, self.h1, self.h2)

    @property
    def r(self) -> int:
        return self.h1

    @property
    def s(self) -> int:
        return self.h2

    def as_dict(self) -> dict:
        return {"h0": self.h0, "h1": self.h1, "h2": self.h2}


def check_budget(rho: MatRep, budget: int = BAR_BUDGET) -> None:
    size = rho.group.order ** 2 * rho.dim ** 2
    if size > budget:
        raise BarComplexBudgetExceeded(f"|G|^2 n^2 = {size} exceeds the bar-complex budget {budget}")


def cohomology_dims(rho: MatRep, budget: int = BAR_BUDGET, full: bool = False) -> CohomologyReport:
    """h^0, h^1, h^2 of G with coefficients in ad rho, with explicit (co)cycle bases."""
    check_budget(rho, budget)
    F = rho.field
    bar = BarComplex(rho, adjoint_matrices(rho))
    n2, m = bar.n2, bar.m
    d0 = bar.d0()
    d1 = bar.d1()
    if m == 0:
        Z1 = np.zeros((0, 0), dtype=np.int64)
        empty = QuotientBasis(F, np.zeros((0, 0), dtype=np.int64), [], np.zeros((0, 0), dtype=np.int64))
        return CohomologyReport(n2, 0, 0, bar, d0, d1, Z1, Z1, Z1, Z1, empty, empty)
    B1, B1piv = F.rref(d0.T) if d0.size else (np.zeros((0, m * n2), dtype=np.int64), [])
    Z1 = F.nullspace(d1)
    B2, B2piv = F.rref(d1.T)
    d2basis, _ = bar.d2_row_space(full)
    Z2 = F.nullspace(d2basis) if d2basis.shape[0] else np.eye(m * m * n2, dtype=np.int64)
    rank0 = B1.shape[0]
    rank1 = B2.shape[0]
    h0 = n2 - rank0
    h1 = Z1.shape[0] - rank0
    h2 = Z2.shape[0] - rank1
    H1 = QuotientBasis(F, B1, B1piv, _complement(F, Z1, B1, B1piv))
    H2 = QuotientBasis(F, B2, B2piv, _complement(F, Z2, B2, B2piv))
    if H1.dim != h1 or H2.dim != h2:
        raise AssertionError("complement bases disagree with the rank computation")
    return CohomologyReport(h0, h1, h2, bar, d0, d1, Z1, B1, Z2, B2, H1, H2)


def cochain_to_functions(v: np.ndarray, rho: MatRep, degree: int) -> dict:
    """Unflatten a cochain into {tuple of elements: n x n matrix}."""
    G = rho.group
    n = rho.dim
    m = G.order - 1
    out = {}
    for idx, args in enumerate(itertools.product(range(1, m + 1), repeat=degree)):
        out[args] = v[idx * n * n : (idx + 1) * n * n].reshape(n, n)
    return out


def functions_to_cochain(f, rho: MatRep, degree: int) -> np.ndarray:
    G = rho.group
    n = rho.dim
    m = G.order - 1
    out = np.zeros((m**degree) * n * n, dtype=np.int64)
    for idx, args in enumerate(itertools.product(range(1, m + 1), repeat=degree)):
        out[idx * n * n : (idx + 1) * n * n] = np.asarray(f(*args), dtype=np.int64).reshape(-1)
    return out
