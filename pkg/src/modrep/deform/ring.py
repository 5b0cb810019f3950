"""Finite commutative local rings with residue field GF(p^e).

A ring is a free Z/p^M-module on a finite basis (basis element 0 is 1),
with integer structure constants, modulo a submodule of relations kept in
Howell form.  Howell form makes reduction canonical, so elements are
compared as reduced coordinate vectors and quotients by ideals are just
extra relations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from ..errors import InputError
from ..exact.finite_field import GF, get_field


# -- Howell form over Z/p^M ----------------------------------------------------------


def _val(x: int, p: int, M: int) -> int:
    if x == 0:
        return M
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def howell_form(rows, p: int, M: int) -> np.ndarray:
    """Howell basis of the Z/p^M-span of the rows.

    Rows are returned in echelon order with pivot entries p^v.  For every row
    the multiple killing its pivot is added back before later columns are
    processed, which gives the Howell property: a vector lies in the span iff
    it reduces to zero against the basis.
    """
    p, M = int(p), int(M)
    N = p**M
    rows = np.asarray(rows, dtype=np.int64)
    if rows.ndim == 1:
        rows = rows[None, :]
    ncols = rows.shape[1]
    work = [r % N for r in rows if np.any(r % N)]
    out: list[np.ndarray] = []
    pivots: list[tuple[int, int]] = []
    for c in range(ncols):
        cand = [i for i, r in enumerate(work) if r[c] % N]
        if not cand:
            continue
        i0 = min(cand, key=lambda i: _val(int(work[i][c]), p, M))
        r0 = work.pop(i0)
        v = _val(int(r0[c]), p, M)
        unit = int(r0[c]) // p**v
        r0 = (r0 * pow(unit, -1, N)) % N
        pv = p**v
        new_work = []
        for r in work:
            if r[c]:
                r = (r - (int(r[c]) // pv) * r0) % N
            if np.any(r):
                new_work.append(r)
        killer = (r0 * p ** (M - v)) % N
        if np.any(killer):
            new_work.append(killer)
        work = new_work
        out.append(r0)
        pivots.append((c, v))
    # reduce entries above later pivots
    for j in range(len(out)):
        cj, vj = pivots[j]
        pv = p**vj
        for i in range(j):
            x = int(out[i][cj])
            if x >= pv:
                out[i] = (out[i] - (x // pv) * out[j]) % N
    if not out:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def _pivots(H: np.ndarray, p: int, M: int) -> list[tuple[int, int]]:
    out = []
    for r in H:
        c = int(np.flatnonzero(r)[0])
        out.append((c, _val(int(r[c]), p, M)))
    return out


def howell_reduce(x: np.ndarray, H: np.ndarray, piv: Sequence[tuple[int, int]], p: int, M: int) -> np.ndarray:
    """Canonical representative of x (shape (..., ncols)) modulo the span of H."""
    N = p**M
    x = np.asarray(x, dtype=np.int64) % N
    for row, (c, v) in zip(H, piv):
        q = x[..., c] // p**v
        if np.any(q):
            x = (x - q[..., None] * row) % N
    return x


# -- local algebras --------------------------------------------------------------------


@dataclass(eq=False)
class LocalAlgebra:
    p: int
    M: int  # ambient precision: coordinates live in Z/p^M
    labels: tuple[str, ...]
    table: np.ndarray  # (B, B, B) structure constants
    relations: np.ndarray  # Howell basis of the relation submodule
    e: int  # residue field GF(p^e)
    residue_matrix: np.ndarray  # (B, e): residue digits of each basis element
    section_matrix: np.ndarray  # (e, B): elements reducing to x^i
    name: str = ""
    _piv: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        self._piv = _pivots(self.relations, self.p, self.M)

    def __repr__(self) -> str:
        return f"<LocalAlgebra {self.name or '?'} of order {self.size}>"

    # -- basic data --------------------------------------------------------------------
    @property
    def B(self) -> int:
        return len(self.labels)

    @property
    def N(self) -> int:
        return self.p**self.M

    @cached_property
    def field(self) -> GF:
        return get_field(self.p, self.e)

    @cached_property
    def coordinate_ranges(self) -> list[int]:
        """Number of canonical values of each coordinate."""
        ranges = [self.N] * self.B
        for c, v in self._piv:
            ranges[c] = self.p**v
        return ranges

    @cached_property
    def size(self) -> int:
        out = 1
        for r in self.coordinate_ranges:
            out *= r
        return out

    def key(self) -> tuple:
        return (self.p, self.M, self.table.tobytes(), self.relations.tobytes(), self.e)

    # -- element arithmetic (arrays of shape (..., B)) ---------------------------------------
    def reduce(self, x) -> np.ndarray:
        return howell_reduce(x, self.relations, self._piv, self.p, self.M)

    def zero(self) -> np.ndarray:
        return np.zeros(self.B, dtype=np.int64)

    def one(self) -> np.ndarray:
        x = self.zero()
        x[0] = 1
        return self.reduce(x)

    def from_int(self, n: int) -> np.ndarray:
        return self.reduce(self.one() * n)

    def basis_element(self, i: int) -> np.ndarray:
        x = self.zero()
        x[i] = 1
        return self.reduce(x)

    def add(self, x, y) -> np.ndarray:
        return self.reduce(np.asarray(x) + np.asarray(y))

    def sub(self, x, y) -> np.ndarray:
        return self.reduce(np.asarray(x) - np.asarray(y))

    def neg(self, x) -> np.ndarray:
        return self.reduce(-np.asarray(x))

    def mul(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        prod = np.einsum("...i,...j,ijk->...k", x, y, self.table) % self.N
        return self.reduce(prod)

    def equal(self, x, y) -> bool:
        return bool(np.array_equal(self.reduce(x), self.reduce(y)))

    def is_zero(self, x) -> bool:
        return not np.any(self.reduce(x))

    # -- residue field ------------------------------------------------------------------
    def residue(self, x) -> np.ndarray:
        """GF(p^e) codes of the residues of x (shape (...,))."""
        x = np.asarray(x, dtype=np.int64)
        digits = (x @ self.residue_matrix) % self.p
        return digits @ self.field.place

    def lift_residue(self, codes) -> np.ndarray:
        """Set-theoretic coefficient lift of residue codes into the ring."""
        codes = np.asarray(codes, dtype=np.int64)
        digits = self.field.digits[codes]
        return self.reduce(digits @ self.section_matrix)

    def is_unit(self, x) -> bool:
        return int(self.residue(x)) != 0

    @cached_property
    def maximal_ideal_generators(self) -> np.ndarray:
        """Additive generators of m_R: b - s(pi(b)) and p s(x^i)."""
        gens = []
        for i in range(self.B):
            b = self.basis_element(i)
            gens.append(self.sub(b, self.lift_residue(self.residue(b))))
        for i in range(self.e):
            gens.append(self.reduce(self.p * self.section_matrix[i]))
        gens = [g for g in gens if np.any(g)]
        return np.array(gens, dtype=np.int64).reshape(-1, self.B)

    def elements(self, limit: int = 1 << 16) -> np.ndarray:
        """All canonical elements, in lexicographic coordinate order."""
        if self.size > limit:
            raise InputError(f"ring of order {self.size} is too large to enumerate")
        grids = [np.arange(r, dtype=np.int64) for r in self.coordinate_ranges]
        mesh = np.array(list(itertools.product(*grids)), dtype=np.int64).reshape(-1, self.B)
        return mesh

    @cached_property
    def maximal_ideal(self) -> np.ndarray:
        els = self.elements()
        return els[self.residue(els) == 0]

    @cached_property
    def nilpotency(self) -> int:
        """Least D with m_R^D = 0."""
        gens = self.maximal_ideal_generators
        if gens.shape[0] == 0:
            return 1
        span = gens
        D = 1
        while span.shape[0]:
            D += 1
            prods = self.mul(span[:, None, :], gens[None, :, :]).reshape(-1, self.B)
            prods = prods[np.any(prods, axis=1)]
            span = howell_form(prods, self.p, self.M) if prods.shape[0] else prods
            if D > 64:
                raise InputError("maximal ideal is not nilpotent")
        return D

    def p_torsion_exponent(self) -> int:
        """Least m with p^m R = 0."""
        m = 0
        while np.any(self.reduce(self.one() * self.p**m)):
            m += 1
        return m

    # -- ideals and quotients ---------------------------------------------------------------
    def ideal_span(self, gens) -> np.ndarray:
        """Howell basis (in ambient coordinates, including relations) of the ideal generated by gens."""
        gens = np.asarray(gens, dtype=np.int64).reshape(-1, self.B)
        basis = np.eye(self.B, dtype=np.int64)
        prods = np.einsum("gi,bj,ijk->gbk", gens, basis, self.table).reshape(-1, self.B) % self.N
        return howell_form(np.vstack([prods, self.relations]), self.p, self.M)

    def quotient(self, gens, name: str = "") -> "LocalAlgebra":
        rel = self.ideal_span(gens)
        return LocalAlgebra(
            self.p, self.M, self.labels, self.table, rel, self.e, self.residue_matrix, self.section_matrix, name or f"{self.name}/J"
        )

    def contains_ideal(self, rel_other: np.ndarray) -> bool:
        """True when every row of rel_other reduces to zero here."""
        return not np.any(self.reduce(rel_other))

    # -- matrices (arrays of shape (n, n, B)) -------------------------------------------------
    def mat_identity(self, n: int) -> np.ndarray:
        out = np.zeros((n, n, self.B), dtype=np.int64)
        for i in range(n):
            out[i, i] = self.one()
        return out

    def matmul(self, X, Y) -> np.ndarray:
        prod = np.einsum("...abi,...bcj,ijk->...ack", X, Y, self.table) % self.N
        return self.reduce(prod)

    def mat_residue(self, X) -> np.ndarray:
        return self.residue(X)

    def mat_lift(self, A) -> np.ndarray:
        return self.lift_residue(A)

    def mat_inverse(self, X) -> np.ndarray:
        """Inverse of a matrix with invertible residue, by Newton iteration."""
        X = np.asarray(X, dtype=np.int64)
        F = self.field
        n = X.shape[-2]
        res = self.mat_residue(X)
        if X.ndim == 3:
            Y = self.mat_lift(F.inverse(res))
        else:
            Y = np.stack([self.mat_lift(F.inverse(r)) for r in res])
        two = self.mat_identity(n) * 2
        for _ in range(64):
            Y_new = self.matmul(Y, self.reduce(two - self.matmul(X, Y)))
            if np.array_equal(Y_new, Y):
                return Y
            Y = Y_new
        raise InputError("Newton inversion did not converge")

    def mat_sub(self, X, Y) -> np.ndarray:
        return self.reduce(np.asarray(X) - np.asarray(Y))

    def mat_add(self, X, Y) -> np.ndarray:
        return self.reduce(np.asarray(X) + np.asarray(Y))

    def scalar_matrix_mul(self, c, X) -> np.ndarray:
        """c * X for a ring element c."""
        c = np.asarray(c, dtype=np.int64)
        return self.mul(np.broadcast_to(c, X.shape), X)

    def format_element(self, x) -> str:
        x = self.reduce(x)
        terms = []
        for i, c in enumerate(x):
            if c:
                lab = self.labels[i]
                terms.append(str(int(c)) if lab == "1" else (lab if c == 1 else f"{int(c)}*{lab}"))
        return " + ".join(terms) if terms else "0"


# -- constructors ------------------------------------------------------------------------


def _field_algebra_data(p: int, e: int) -> tuple[np.ndarray, np.ndarray]:
    """Structure constants of GF(p^e) on the basis x^i, plus residue digits."""
    F = get_field(p, e)
    table = np.zeros((e, e, e), dtype=np.int64)
    for i in range(e):
        for j in range(e):
            table[i, j] = F.digits[int(F.mul(p**i, p**j))]
    return table, np.eye(e, dtype=np.int64)


def _combine(p: int, M: int, e: int, mono_labels: list[str], mono_mul, rel_rows, name: str, galois: bool = False) -> LocalAlgebra:
    """Tensor the residue structure (GF(p^e) or GR(p^M, e)) with a monomial algebra.

    mono_mul(a, b) returns the index of the product monomial or None (zero).
    """
    if galois:
        from ..exact.finite_field import canonical_polynomial

        low = canonical_polynomial(p, e)[:-1]
        ftab = np.zeros((e, e, e), dtype=np.int64)
        N = p**M
        for i in range(e):
            for j in range(e):
                prod = [0] * (2 * e - 1)
                prod[i + j] = 1
                for s in range(2 * e - 2, e - 1, -1):
                    t = prod[s]
                    if t:
                        for k, c in enumerate(low):
                            prod[s - e + k] -= c * t
                ftab[i, j] = [c % N for c in prod[:e]]
    else:
        ftab, _ = _field_algebra_data(p, e)
    m = len(mono_labels)
    B = e * m
    labels = []
    for a in range(m):
        for i in range(e):
            xi = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            la = mono_labels[a]
            if la == "1":
                labels.append(xi or "1")
            else:
                labels.append(f"{xi}*{la}" if xi else la)
    table = np.zeros((B, B, B), dtype=np.int64)
    for a in range(m):
        for b in range(m):
            c = mono_mul(a, b)
            if c is None:
                continue
            for i in range(e):
                for j in range(e):
                    table[a * e + i, b * e + j, c * e : (c + 1) * e] = ftab[i, j]
    residue = np.zeros((B, e), dtype=np.int64)
    residue[:e] = np.eye(e, dtype=np.int64)
    section = np.zeros((e, B), dtype=np.int64)
    section[:, :e] = np.eye(e, dtype=np.int64)
    rel_full = []
    for row in rel_rows:
        # row over monomials -> each field coordinate
        for i in range(e):
            r = np.zeros(B, dtype=np.int64)
            for a, c in enumerate(row):
                r[a * e + i] = c
            rel_full.append(r)
    # precision relations p^M are implicit in Z/p^M; residue-field rings use M = 1
    rel = howell_form(np.array(rel_full, dtype=np.int64).reshape(-1, B), p, M)
    return LocalAlgebra(p, M, tuple(labels), table, rel, e, residue, section, name)


def residue_field(p: int, e: int = 1) -> LocalAlgebra:
    return _combine(p, 1, e, ["1"], lambda a, b: 0, [], f"GF({p}^{e})" if e > 1 else f"GF({p})")


def dual_numbers(p: int, e: int = 1) -> LocalAlgebra:
    k = f"GF({p}^{e})" if e > 1 else f"GF({p})"
    return _combine(p, 1, e, ["1", "eps"], lambda a, b: (a + b) if a + b < 2 else None, [], f"{k}[eps]")


def truncated_polynomial(p: int, length: int, e: int = 1) -> LocalAlgebra:
    """GF(p^e)[t]/(t^length)."""
    labels = ["1"] + [("t" if i == 1 else f"t^{i}") for i in range(1, length)]
    k = f"GF({p}^{e})" if e > 1 else f"GF({p})"
    return _combine(p, 1, e, labels, lambda a, b: (a + b) if a + b < length else None, [], f"{k}[t]/(t^{length})")


def square_zero(p: int, variables: int = 2, e: int = 1) -> LocalAlgebra:
    """GF(p^e)[x_1..x_v]/(x_1..x_v)^2."""
    names = ["x", "y", "z", "w"][:variables] if variables <= 4 else [f"x{i}" for i in range(variables)]
    labels = ["1"] + names

    def mono(a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        return None

    k = f"GF({p}^{e})" if e > 1 else f"GF({p})"
    return _combine(p, 1, e, labels, mono, [], f"{k}[{','.join(names)}]/({','.join(names)})^2")


def witt_truncated(p: int, m: int, e: int = 1) -> LocalAlgebra:
    """W(GF(p^e))/p^m, i.e. Z/p^m for e = 1 and the Galois ring GR(p^m, e) otherwise."""
    name = f"Z/{p**m}" if e == 1 else f"GR({p}^{m},{e})"
    return _combine(p, m, e, ["1"], lambda a, b: 0, [], name, galois=True)


def monomials(r: int, degree_cap: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree < degree_cap, graded then lexicographic (descending)."""
    out = []
    for d in range(degree_cap):
        level = [a for a in itertools.product(range(d + 1), repeat=r) if sum(a) == d]
        level.sort(reverse=True)
        out.extend(level)
    return out


def power_series_truncated(p: int, r: int, degree_cap: int, precision: int) -> LocalAlgebra:
    """W[[t_1..t_r]]/(m^D, p^m) over W = Z_p, with m = (p, t)."""
    monos = monomials(r, degree_cap)
    index = {a: i for i, a in enumerate(monos)}
    if r == 0:
        labels = ["1"]
    else:
        names = ["t"] if r == 1 else [f"t{i + 1}" for i in range(r)]
        labels = []
        for a in monos:
            parts = []
            for nm, k in zip(names, a):
                if k == 1:
                    parts.append(nm)
                elif k > 1:
                    parts.append(f"{nm}^{k}")
            labels.append("*".join(parts) or "1")

    def mono(a, b):
        s = tuple(x + y for x, y in zip(monos[a], monos[b]))
        return index.get(s) if sum(s) < degree_cap else None

    rel_rows = []
    for a in monos:
        k = degree_cap - sum(a)
        if k < precision:
            row = [0] * len(monos)
            row[index[a]] = p**k
            rel_rows.append(row)
    R = _combine(p, precision, 1, labels, mono, rel_rows, f"W[[t]]/(m^{degree_cap}, {p}^{precision})", galois=True)
    R.monomials = monos
    return R


# -- small extensions ----------------------------------------------------------------------


@dataclass
class SmallExtension:
    """The surjection R1 -> R0 = R1/I with I . m_R1 = 0.

    Both rings share R1's ambient coordinates, so the map is reduction and
    canonical representatives in R0 serve as the set-theoretic section.
    """

    R1: LocalAlgebra
    R0: LocalAlgebra
    kernel_gens: np.ndarray

    @classmethod
    def from_ideal(cls, R1: LocalAlgebra, gens, name: str = "") -> "SmallExtension":
        gens = R1.reduce(np.asarray(gens, dtype=np.int64).reshape(-1, R1.B))
        R0 = R1.quotient(gens, name=name)
        ext = cls(R1, R0, gens)
        ext.check()
        return ext

    @classmethod
    def from_rings(cls, R1: LocalAlgebra, R0: LocalAlgebra) -> "SmallExtension":
        """R0 must be a quotient of R1 on the same ambient basis."""
        if R1.labels != R0.labels or R1.M != R0.M or not np.array_equal(R1.table, R0.table):
            raise InputError("small extensions are formed between quotients on a common basis")
        if not R0.contains_ideal(R1.relations):
            raise InputError("R0 is not a quotient of R1")
        gens = R1.reduce(R0.relations)
        gens = gens[np.any(gens, axis=1)]
        ext = cls(R1, R0, gens)
        ext.check()
        return ext

    def check(self) -> None:
        R1 = self.R1
        m = R1.maximal_ideal_generators
        if self.kernel_gens.shape[0] and m.shape[0]:
            prods = R1.mul(self.kernel_gens[:, None, :], m[None, :, :])
            if np.any(prods):
                raise InputError("kernel is not annihilated by the maximal ideal")

    def alpha(self, x) -> np.ndarray:
        return self.R0.reduce(x)

    def section(self, x) -> np.ndarray:
        return self.R0.reduce(x)

    @cached_property
    def kernel_coordinates(self) -> tuple[np.ndarray, dict]:
        """A k-basis of I and a lookup table from canonical R1 vectors to k-coordinates."""
        R1 = self.R1
        F = R1.field
        # additive generators of I: kernel generators times basis elements
        cands = []
        for g in self.kernel_gens:
            for i in range(R1.B):
                cands.append(R1.mul(g, R1.basis_element(i)))
        scalars = [R1.lift_residue(c) for c in range(F.q)]
        basis: list[np.ndarray] = []
        span = {tuple(R1.zero().tolist()): ()}
        for y in cands:
            if tuple(y.tolist()) in span:
                continue
            basis.append(y)
            new = {}
            for key, coeffs in span.items():
                base = np.array(key, dtype=np.int64)
                for c in range(F.q):
                    v = R1.add(base, R1.mul(scalars[c], y))
                    new[tuple(v.tolist())] = coeffs + (c,)
            span = new
            if len(span) > 1 << 16:
                raise InputError("kernel of the small extension is too large")
        t = len(basis)
        table = {key: list(coeffs) + [0] * (t - len(coeffs)) for key, coeffs in span.items()}
        return np.array(basis, dtype=np.int64).reshape(-1, R1.B), table

    @property
    def kernel_dimension(self) -> int:
        return self.kernel_coordinates[0].shape[0]
