"""Exact arithmetic in cyclotomic fields Q(zeta_M).

An element is stored as a coefficient vector in the power basis
1, z, ..., z^(phi(M)-1) of Q(zeta_M) = Q[z]/(Phi_M), with a single positive
common denominator.  Operands with different conductors are first embedded
into the field of the lcm conductor.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from ..errors import SingularSystem

__all__ = [
    "CycNumber",
    "zeta",
    "cyc_solve",
    "is_algebraic_integer",
    "lies_in_conductor",
    "euler_phi",
]


def euler_phi(n: int) -> int:
    result = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    # Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}; done by exact polynomial division.
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_exact_div(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // lead
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    return out


@lru_cache(maxsize=None)
def _power_table(M: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds the power-basis coordinates of z^j for 0 <= j < M."""
    phi = euler_phi(M)
    cyc = cyclotomic_polynomial(M)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(M):
        rows.append(tuple(cur))
        # multiply by z and reduce with z^phi = -sum cyc[i] z^i
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * cyc[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def _embedding(M: int, L: int) -> tuple[tuple[int, ...], ...]:
    step = L // M
    table = _power_table(L)
    return tuple(table[(j * step) % L] for j in range(euler_phi(M)))


@lru_cache(maxsize=None)
def _galois_matrix(M: int, a: int) -> tuple[tuple[int, ...], ...]:
    table = _power_table(M)
    return tuple(table[(j * a) % M] for j in range(euler_phi(M)))


def _apply_rows(vec: Sequence[int], rows: Sequence[Sequence[int]], width: int) -> list[int]:
    out = [0] * width
    for c, row in zip(vec, rows):
        if c:
            for i, r in enumerate(row):
                if r:
                    out[i] += c * r
    return out


class CycNumber:
    """Element of Q(zeta_M) with exact rational coefficients."""

    __slots__ = ("M", "num", "den", "_canon")

    def __init__(self, M: int, num: Sequence[int], den: int = 1):
        if M < 1:
            raise ValueError("conductor must be positive")
        phi = euler_phi(M)
        if len(num) != phi:
            raise ValueError(f"expected {phi} coefficients for conductor {M}, got {len(num)}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den = -den
            num = [-c for c in num]
        g = den
        for c in num:
            if c:
                g = math.gcd(g, c)
                if g == 1:
                    break
        if g != 1:
            num = [c // g for c in num]
            den //= g
        self.M = M
        self.num = tuple(int(c) for c in num)
        self.den = int(den)
        self._canon = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def rational(cls, value, M: int = 1) -> "CycNumber":
        q = Fraction(value)
        num = [0] * euler_phi(M)
        num[0] = q.numerator
        return cls(M, num, q.denominator)

    @classmethod
    def from_coefficients(cls, M: int, coeffs: Sequence) -> "CycNumber":
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for f in fr:
            den = den * f.denominator // math.gcd(den, f.denominator)
        return cls(M, [int(f * den) for f in fr], den)

    @classmethod
    def from_exponents(cls, M: int, exps: Mapping[int, int] | Iterable[int]) -> "CycNumber":
        """Sum of m_k * zeta_M^k, given as a mapping k -> m_k or a list of exponents."""
        if not isinstance(exps, Mapping):
            counts: dict[int, int] = {}
            for k in exps:
                counts[k % M] = counts.get(k % M, 0) + 1
            exps = counts
        table = _power_table(M)
        phi = euler_phi(M)
        out = [0] * phi
        for k, m in exps.items():
            if m:
                row = table[k % M]
                for i in range(phi):
                    if row[i]:
                        out[i] += m * row[i]
        return cls(M, out)

    # -- basic queries ------------------------------------------------------
    @property
    def coefficients(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def is_integer(self) -> bool:
        return self.is_rational() and self.den == 1

    # -- conductor changes ----------------------------------------------------
    def embed(self, L: int) -> "CycNumber":
        if L == self.M:
            return self
        if L % self.M:
            raise ValueError(f"conductor {self.M} does not divide {L}")
        rows = _embedding(self.M, L)
        return CycNumber(L, _apply_rows(self.num, rows, euler_phi(L)), self.den)

    def galois(self, a: int) -> "CycNumber":
        """Image under the automorphism zeta_M -> zeta_M^a (a coprime to M)."""
        a %= self.M
        if math.gcd(a, self.M) != 1:
            raise ValueError(f"{a} is not a unit modulo {self.M}")
        if a == 1 % self.M:
            return self
        rows = _galois_matrix(self.M, a)
        return CycNumber(self.M, _apply_rows(self.num, rows, len(self.num)), self.den)

    def conjugate(self) -> "CycNumber":
        return self.galois(-1)

    def fixed_by(self, M_sub: int) -> bool:
        """True if fixed by every automorphism of Q(zeta_M) that fixes zeta_{M_sub}."""
        L = math.lcm(self.M, M_sub)
        x = self.embed(L)
        g = math.gcd(M_sub, L)
        # the subgroup {a = 1 mod g} of (Z/L)^x is generated by elements we enumerate
        for a in range(1, L, g):
            if math.gcd(a, L) == 1 and x.galois(a) != x:
                return False
        return True

    def minimal_conductor(self) -> int:
        M = self.M
        changed = True
        while changed and M > 1:
            changed = False
            for q in _prime_factors(M):
                cand = M // q
                if cand % 4 == 2:
                    cand //= 2
                if cand >= 1 and self.fixed_by(cand):
                    M = cand
                    changed = True
                    break
        if M % 4 == 2:
            M //= 2
        return M

    def reduce_conductor(self, M_new: int | None = None) -> "CycNumber":
        """Rewrite in the power basis of a smaller cyclotomic field containing it."""
        if M_new is None:
            M_new = self.minimal_conductor()
        if M_new == self.M:
            return self
        if self.M % M_new:
            L = math.lcm(self.M, M_new)
            return self.embed(L).reduce_conductor(M_new)
        rows = _embedding(M_new, self.M)
        sol = _solve_rows(rows, self.num)
        if sol is None:
            raise ValueError(f"value does not lie in Q(zeta_{M_new})")
        return CycNumber.from_coefficients(M_new, [s / self.den for s in sol])

    def canonical(self) -> "CycNumber":
        if self._canon is None:
            self._canon = self.reduce_conductor()
        return self._canon

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "CycNumber":
        if isinstance(other, CycNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber.rational(other, 1)
        return NotImplemented

    @staticmethod
    def _common(a: "CycNumber", b: "CycNumber") -> tuple["CycNumber", "CycNumber"]:
        if a.M == b.M:
            return a, b
        if a.M > 1 and b.M == 1:
            return a, b.embed(a.M)
        if b.M > 1 and a.M == 1:
            return a.embed(b.M), b
        L = math.lcm(a.M, b.M)
        return a.embed(L), b.embed(L)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(self, other)
        if a.den == b.den:
            return CycNumber(a.M, [x + y for x, y in zip(a.num, b.num)], a.den)
        return CycNumber(a.M, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.M, [-x for x in self.num], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycNumber(self.M, [x * q.numerator for x in self.num], self.den * q.denominator)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(self, other)
        if a.is_rational():
            return CycNumber(b.M, [a.num[0] * y for y in b.num], a.den * b.den)
        if b.is_rational():
            return CycNumber(a.M, [b.num[0] * x for x in a.num], a.den * b.den)
        phi = len(a.num)
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        prod[i + j] += x * y
        table = _power_table(a.M)
        out = list(prod[:phi])
        for s in range(phi, 2 * phi - 1):
            c = prod[s]
            if c:
                row = table[s % a.M]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return CycNumber(a.M, out, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycNumber.rational(Fraction(self.den, self.num[0]), self.M)
        # extended Euclid in Q[x] against Phi_M
        a = [Fraction(c, self.den) for c in self.num]
        m = [Fraction(c) for c in cyclotomic_polynomial(self.M)]
        s = _poly_inverse_mod(a, m)
        return CycNumber.from_coefficients(self.M, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNumber.rational(1, self.M)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, CycNumber):
            return NotImplemented
        if self.M == other.M:
            return self.den == other.den and self.num == other.num
        a, b = self._common(self, other)
        return a.den == b.den and a.num == b.num

    def __hash__(self) -> int:
        c = self.canonical()
        return hash((c.M, c.num, c.den))

    def __repr__(self) -> str:
        return f"CycNumber({self.M}, {list(self.num)}, {self.den})"

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.num):
            if not c:
                continue
            coef = Fraction(c, self.den)
            if j == 0:
                terms.append(str(coef))
            else:
                base = f"z{self.M}" + (f"^{j}" if j > 1 else "")
                if coef == 1:
                    terms.append(base)
                elif coef == -1:
                    terms.append("-" + base)
                else:
                    terms.append(f"{coef}*{base}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    # -- serialization --------------------------------------------------------
    def to_json(self) -> dict:
        return {"conductor": self.M, "coefficients": [str(f) for f in self.coefficients]}

    @classmethod
    def from_json(cls, data: Mapping) -> "CycNumber":
        return cls.from_coefficients(int(data["conductor"]), [Fraction(c) for c in data["coefficients"]])


def zeta(M: int, k: int = 1) -> CycNumber:
    """The root of unity zeta_M^k."""
    return CycNumber.from_exponents(M, {k % M: 1})


def _poly_trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
        _poly_trim(a)
    return q, a


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _poly_trim([Fraction(x) for x in out])


def _poly_inverse_mod(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    # invariant: s_i * a = r_i (mod m)
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    s = [x / c for x in s1]
    _, s = _poly_divmod(s, m)
    phi = len(m) - 1
    return s + [Fraction(0)] * (phi - len(s))


def _solve_rows(rows: Sequence[Sequence[int]], target: Sequence[int]) -> list[Fraction] | None:
    """Solve y @ rows = target over Q; rows must be linearly independent."""
    n, w = len(rows), len(target)
    # augmented system: columns of `rows` are equations
    mat = [[Fraction(rows[i][c]) for i in range(n)] + [Fraction(target[c])] for c in range(w)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, w) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(w):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        piv_cols.append(c)
        r += 1
    if any(mat[i][n] != 0 for i in range(r, w)):
        return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = mat[i][n]
    return sol


def is_algebraic_integer(c: CycNumber) -> bool:
    """The power basis is an integral basis of Z[zeta_M]."""
    return c.den == 1


def lies_in_conductor(c: CycNumber, M_sub: int) -> bool:
    return c.fixed_by(M_sub)


def cyc_solve(A: Sequence[Sequence], b: Sequence) -> list[CycNumber]:
    """Exact solution of the square system A x = b over a cyclotomic field."""
    n = len(A)
    if any(len(row) != n for row in A) or len(b) != n:
        raise ValueError("cyc_solve needs a square system")
    as_cyc = lambda v: v if isinstance(v, CycNumber) else CycNumber.rational(v)
    aug = [[as_cyc(v) for v in row] + [as_cyc(b[i])] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise SingularSystem(f"matrix is singular (no pivot in column {col})")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]
