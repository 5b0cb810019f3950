"""Finite fields GF(p^e) with vectorised arithmetic and linear algebra.

Elements are encoded as integers ``sum c_i p^i`` where ``c_i`` are the
coefficients of the residue polynomial.  Every array-level operation takes
and returns numpy ``int64`` arrays of such codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cyclotomic import CycNumber, zeta

MAX_FIELD_ORDER = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _powers_of_x(p: int, e: int, low: list[int]) -> list[tuple[int, ...]] | None:
    """Successive powers of x modulo the monic polynomial x^e + sum low[i] x^i.

    Returns the list [x^0, ..., x^(q-2)] when x has multiplicative order
    q - 1 (i.e. the polynomial is primitive), otherwise None.
    """
    q = p**e
    cur = [0] * e
    cur[0] = 1
    seen = []
    for k in range(q - 1):
        t = tuple(cur)
        if k > 0 and t == seen[0]:
            return None
        seen.append(t)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [(c - top * l) % p for c, l in zip(cur, low)]
    if tuple(cur) != seen[0]:
        return None
    return seen


@lru_cache(maxsize=None)
def canonical_polynomial(p: int, e: int) -> tuple[int, ...]:
    """Least primitive monic polynomial of degree e over GF(p).

    Candidates are ordered by the integer sum c_i p^i of their non-leading
    coefficients.  Returned lowest degree first, including the leading 1.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be positive")
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        if low[0] == 0:
            continue
        if _powers_of_x(p, e, low) is not None:
            return tuple(low) + (1,)
    raise AssertionError("no primitive polynomial found")


class GF:
    """The field GF(p^e) built on the canonical primitive polynomial."""

    def __init__(self, p: int, e: int = 1):
        q = p**e
        if q > MAX_FIELD_ORDER:
            raise ValueError(f"GF({p}^{e}) exceeds the supported field size")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = canonical_polynomial(p, e)
        powers = _powers_of_x(p, e, list(self.modulus[:-1]))
        codes = [sum(c * p**i for i, c in enumerate(t)) for t in powers]
        self.exp = np.array(codes + codes, dtype=np.int64)
        self.log = np.zeros(q, dtype=np.int64)
        self.log[np.array(codes, dtype=np.int64)] = np.arange(q - 1)
        self.generator = int(codes[1 % (q - 1)])
        self.digits = np.array([[(c // p**i) % p for i in range(e)] for c in range(q)], dtype=np.int64)
        self.place = np.array([p**i for i in range(e)], dtype=np.int64)
        if e > 1 and p > 2:
            d = self.digits
            s = (d[:, None, :] + d[None, :, :]) % p
            self.add_table = (s * self.place).sum(axis=2)
            self.neg_table = (((-d) % p) * self.place).sum(axis=1)
        self.inv_table = np.zeros(q, dtype=np.int64)
        nz = np.arange(1, q)
        self.inv_table[nz] = self.exp[(-self.log[nz]) % (q - 1)]

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self) -> int:
        return hash((self.p, self.e))

    # -- elementwise ---------------------------------------------------------
    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.add_table[a, b]

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a * b) % self.p
        r = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.inv_table[a]

    def power(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k > 0 else 1
        return int(self.exp[(int(self.log[a]) * k) % (self.q - 1)])

    def from_int(self, n: int) -> int:
        return int(n % self.p)

    def element_order(self, a: int) -> int:
        from math import gcd

        return (self.q - 1) // gcd(int(self.log[a]), self.q - 1)

    def roots_of_unity(self, m: int) -> list[int]:
        """All x with x^m = 1, ordered by discrete logarithm."""
        from math import gcd

        g = gcd(m, self.q - 1)
        step = (self.q - 1) // g
        return [int(self.exp[step * k]) for k in range(g)]

    # -- matrices ------------------------------------------------------------
    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def matmul(self, A, B) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if A.shape[-1] == 0 or A.shape[0] == 0 or B.shape[-1] == 0:
            return np.zeros((A.shape[0], B.shape[-1]), dtype=np.int64)
        if self.e == 1:
            return _exact_matmul(A, B, self.p) % self.p
        p, e = self.p, self.e
        Ad = self.digits[A]
        Bd = self.digits[B]
        prod = [None] * (2 * e - 1)
        for i in range(e):
            Ai = Ad[..., i]
            if not Ai.any():
                continue
            for j in range(e):
                t = _exact_matmul(Ai, Bd[..., j], p)
                prod[i + j] = t if prod[i + j] is None else prod[i + j] + t
        shape = (A.shape[0], B.shape[1])
        prod = [np.zeros(shape, dtype=np.int64) if x is None else x % p for x in prod]
        low = self.modulus[:-1]
        for s in range(2 * e - 2, e - 1, -1):
            top = prod[s]
            if top.any():
                for i, c in enumerate(low):
                    if c:
                        prod[s - e + i] = (prod[s - e + i] - c * top) % p
        out = np.zeros(shape, dtype=np.int64)
        for i in range(e):
            out += prod[i] * self.place[i]
        return out

    def matvec(self, A, v) -> np.ndarray:
        return self.matmul(A, np.asarray(v, dtype=np.int64).reshape(-1, 1)).reshape(-1)

    def scale(self, c: int, A) -> np.ndarray:
        return self.mul(np.full(np.shape(A), c, dtype=np.int64), A)

    def rref(self, A) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and pivot columns."""
        R = np.array(A, dtype=np.int64, copy=True)
        if R.ndim != 2:
            raise ValueError("rref expects a matrix")
        rows, cols = R.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(R[r:, c])
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                R[[r, i]] = R[[i, r]]
            lead = int(R[r, c])
            if lead != 1:
                R[r, c:] = self.mul(R[r, c:], int(self.inv(lead)))
            col = R[:, c].copy()
            col[r] = 0
            others = np.flatnonzero(col)
            if others.size:
                # the pivot row vanishes left of c, so only columns >= c change
                if self.e == 1:
                    block = R[others, c:] - col[others, None] * R[r, c:][None, :]
                    R[others, c:] = block % self.p
                else:
                    R[others, c:] = self.sub(R[others, c:], self.mul(col[others, None], R[r, c:][None, :]))
            pivots.append(c)
            r += 1
        return R[:r], pivots

    def rank(self, A) -> int:
        A = np.asarray(A)
        if A.size == 0:
            return 0
        return len(self.rref(A)[1])

    def nullspace(self, A) -> np.ndarray:
        """Rows spanning {x : A x = 0}."""
        A = np.asarray(A, dtype=np.int64)
        n = A.shape[1]
        if A.shape[0] == 0:
            return np.eye(n, dtype=np.int64)
        R, piv = self.rref(A)
        free = [c for c in range(n) if c not in set(piv)]
        out = np.zeros((len(free), n), dtype=np.int64)
        for k, f in enumerate(free):
            out[k, f] = 1
            for i, pc in enumerate(piv):
                out[k, pc] = self.neg(R[i, f])
        return out

    def left_nullspace(self, A) -> np.ndarray:
        return self.nullspace(np.asarray(A).T)

    def inverse(self, A) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        n = A.shape[0]
        R, piv = self.rref(np.hstack([A, np.eye(n, dtype=np.int64)]))
        if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] >= n:
            raise ZeroDivisionError("matrix is singular")
        return R[:, n:]

    def solve(self, A, b) -> np.ndarray | None:
        """Some x with A x = b, or None if inconsistent."""
        A = np.asarray(A, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
        n = A.shape[1]
        R, piv = self.rref(np.hstack([A, b]))
        if piv and piv[-1] == n:
            return None
        x = np.zeros(n, dtype=np.int64)
        for i, c in enumerate(piv):
            x[c] = R[i, n]
        return x

    def reduce_rows(self, basis: np.ndarray, pivots: list[int], V) -> np.ndarray:
        """Reduce rows of V modulo the row space of an RREF basis."""
        V = np.asarray(V, dtype=np.int64)
        if len(pivots) == 0 or V.shape[0] == 0:
            return V.copy()
        coeff = V[:, pivots]
        return self.sub(V, self.matmul(coeff, basis))

    def random_matrix(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    # -- characteristic polynomial ------------------------------------------
    def charpoly(self, A) -> list[int]:
        """Characteristic polynomial det(xI - A), lowest degree first."""
        A = np.array(A, dtype=np.int64)
        n = A.shape[0]
        H = self._hessenberg(A)
        # recurrence on leading principal minors of xI - H
        polys: list[list[int]] = [[1]]
        for k in range(1, n + 1):
            hk = int(H[k - 1, k - 1])
            prev = polys[k - 1]
            cur = [0] + prev  # x * p_{k-1}
            cur = [int(c) for c in cur]
            sub = [int(self.mul(hk, c)) for c in prev] + [0]
            cur = [int(self.sub(a, b)) for a, b in zip(cur, sub)]
            prod = 1
            for i in range(k - 1, 0, -1):
                prod = int(self.mul(prod, H[i, i - 1]))
                if prod == 0:
                    break
                t = int(self.mul(prod, H[i - 1, k - 1]))
                if t:
                    term = [int(self.mul(t, c)) for c in polys[i - 1]]
                    term += [0] * (len(cur) - len(term))
                    cur = [int(self.sub(a, b)) for a, b in zip(cur, term)]
            polys.append(cur)
        return polys[n]

    def _hessenberg(self, A: np.ndarray) -> np.ndarray:
        H = A.copy()
        n = H.shape[0]
        for j in range(n - 2):
            nz = np.flatnonzero(H[j + 1 :, j])
            if nz.size == 0:
                continue
            i = j + 1 + int(nz[0])
            if i != j + 1:
                H[[i, j + 1]] = H[[j + 1, i]]
                H[:, [i, j + 1]] = H[:, [j + 1, i]]
            piv_inv = int(self.inv(H[j + 1, j]))
            for r in range(j + 2, n):
                if H[r, j]:
                    f = int(self.mul(H[r, j], piv_inv))
                    H[r] = self.sub(H[r], self.mul(f, H[j + 1]))
                    H[:, j + 1] = self.add(H[:, j + 1], self.mul(f, H[:, r]))
        return H

    def poly_eval(self, coeffs: list[int], x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        acc = np.zeros_like(x)
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def roots(self, coeffs: list[int]) -> list[int]:
        allx = np.arange(self.q, dtype=np.int64)
        vals = self.poly_eval(coeffs, allx)
        return [int(x) for x in np.flatnonzero(vals == 0)]

    # -- Teichmueller lift -------------------------------------------------
    def teichmueller(self, a: int) -> CycNumber:
        return teichmueller_lift(FFElem(self, a))

    def reduce_cyclotomic(self, c: CycNumber) -> int:
        """Image of c under the reduction map compatible with the Teichmueller lift.

        zeta_M goes to gamma^((q-1)/M' * u) where M = M' p^a, p not dividing M',
        and u = p^-a mod M'; p-power roots of unity go to 1.
        """
        M = c.M
        Mp, pa = M, 1
        while Mp % self.p == 0:
            Mp //= self.p
            pa *= self.p
        if (self.q - 1) % Mp:
            raise ValueError(f"{self!r} does not contain the {Mp}-th roots of unity")
        if c.den % self.p == 0:
            raise ValueError("denominator divisible by the characteristic")
        u = pow(pa, -1, Mp) if Mp > 1 else 0
        step = (self.q - 1) // Mp * u
        acc = 0
        for i, x in enumerate(c.num):
            if x:
                term = self.mul(self.from_int(x), int(self.exp[(step * i) % (self.q - 1)]))
                acc = int(self.add(acc, term))
        return int(self.mul(acc, self.inv(self.from_int(c.den))))

    def kron(self, A, B) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        out = self.mul(A[:, None, :, None], B[None, :, None, :])
        return out.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])

    def nullity(self, A) -> int:
        A = np.asarray(A)
        return A.shape[1] - self.rank(A)

    def matpow(self, A, k: int) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        result = self.identity(A.shape[0])
        while k:
            if k & 1:
                result = self.matmul(result, A)
            A = self.matmul(A, A)
            k >>= 1
        return result

    def row_space(self, rows, chunk: int = 512) -> tuple[np.ndarray, list[int]]:
        """RREF basis of the span of many rows, processed in chunks."""
        rows = np.asarray(rows, dtype=np.int64)
        ncols = rows.shape[1]
        basis = np.zeros((0, ncols), dtype=np.int64)
        piv: list[int] = []
        for start in range(0, rows.shape[0], chunk):
            block = self.reduce_rows(basis, piv, rows[start : start + chunk])
            block = block[np.any(block != 0, axis=1)]
            if block.shape[0] == 0:
                continue
            basis, piv = self.rref(np.vstack([basis, block]))
            if len(piv) == ncols:
                break
        return basis, piv


def _exact_matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Integer product of matrices with entries in [0, p), via BLAS when exact.

    float64 holds integers below 2^53 exactly, so the float product is exact
    whenever K (p-1)^2 < 2^53.
    """
    K = A.shape[-1]
    if A.size and B.size and K * (p - 1) ** 2 < 2**52:
        return np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64)
    return A @ B


@lru_cache(maxsize=None)
def get_field(p: int, e: int = 1) -> GF:
    return GF(p, e)


@dataclass(frozen=True)
class FFElem:
    """A single element of GF(p^e); mostly for tests and serialization."""

    field: GF
    code: int

    @classmethod
    def from_coefficients(cls, p: int, e: int, coeffs) -> "FFElem":
        F = get_field(p, e)
        if len(coeffs) != e:
            raise ValueError(f"expected {e} coefficients")
        return cls(F, int(sum((int(c) % p) * p**i for i, c in enumerate(coeffs))))

    @property
    def coefficients(self) -> list[int]:
        return [int(d) for d in self.field.digits[self.code]]

    def __add__(self, other: "FFElem") -> "FFElem":
        return FFElem(self.field, int(self.field.add(self.code, other.code)))

    def __sub__(self, other: "FFElem") -> "FFElem":
        return FFElem(self.field, int(self.field.sub(self.code, other.code)))

    def __mul__(self, other: "FFElem") -> "FFElem":
        return FFElem(self.field, int(self.field.mul(self.code, other.code)))

    def __neg__(self) -> "FFElem":
        return FFElem(self.field, int(self.field.neg(self.code)))

    def inverse(self) -> "FFElem":
        return FFElem(self.field, int(self.field.inv(self.code)))

    def __pow__(self, k: int) -> "FFElem":
        return FFElem(self.field, self.field.power(self.code, k))

    def __repr__(self) -> str:
        return f"FFElem({self.field!r}, {self.coefficients})"


def teichmueller_lift(a: FFElem) -> CycNumber:
    """Multiplicative section GF(q)^x -> mu_{q-1}; sends the canonical generator to zeta_{q-1}."""
    F = a.field
    if a.code == 0:
        return CycNumber.rational(0)
    k = int(F.log[a.code])
    M = F.q - 1
    if M == 1:
        return CycNumber.rational(1)
    return zeta(M, k)
