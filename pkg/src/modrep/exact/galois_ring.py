"""Galois rings GR(p^m, e) = (Z/p^m)[x]/(f), f the lifted canonical polynomial.

These are the truncations W(GF(p^e))/p^m of the Witt vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .finite_field import FFElem, canonical_polynomial, get_field


@lru_cache(maxsize=None)
def get_galois_ring(p: int, m: int, e: int = 1) -> "GaloisRing":
    return GaloisRing(p, m, e)


class GaloisRing:
    def __init__(self, p: int, m: int, e: int = 1):
        if m < 1:
            raise ValueError("precision must be at least 1")
        self.p = p
        self.m = m
        self.e = e
        self.modulus = canonical_polynomial(p, e)
        self.N = p**m

    def __repr__(self) -> str:
        return f"GR({self.p}^{self.m}, {self.e})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GaloisRing) and (self.p, self.m, self.e) == (other.p, other.m, other.e)

    def __hash__(self) -> int:
        return hash(("GR", self.p, self.m, self.e))

    def __call__(self, coeffs) -> "GaloisRingElem":
        if isinstance(coeffs, int):
            coeffs = [coeffs] + [0] * (self.e - 1)
        if len(coeffs) != self.e:
            raise ValueError(f"expected {self.e} coefficients")
        return GaloisRingElem(self, tuple(int(c) % self.N for c in coeffs))

    def zero(self) -> "GaloisRingElem":
        return self(0)

    def one(self) -> "GaloisRingElem":
        return self(1)

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        e, N = self.e, self.N
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        low = self.modulus[:-1]
        for s in range(2 * e - 2, e - 1, -1):
            top = prod[s]
            if top:
                for i, c in enumerate(low):
                    if c:
                        prod[s - e + i] -= c * top
        return tuple(c % N for c in prod[:e])

    def lift(self, a: FFElem) -> "GaloisRingElem":
        """Coefficientwise lift with digits in 0..p-1."""
        if (a.field.p, a.field.e) != (self.p, self.e):
            raise ValueError("residue field mismatch")
        return self(a.coefficients)

    def teichmueller(self, a: FFElem) -> "GaloisRingElem":
        """The unique (q-1)-th root of unity (or 0) reducing to a."""
        x = self.lift(a)
        q = self.p**self.e
        return x ** (q ** (self.m - 1))


@dataclass(frozen=True)
class GaloisRingElem:
    ring: GaloisRing
    coeffs: tuple[int, ...]

    def __add__(self, other: "GaloisRingElem") -> "GaloisRingElem":
        N = self.ring.N
        return GaloisRingElem(self.ring, tuple((a + b) % N for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "GaloisRingElem") -> "GaloisRingElem":
        N = self.ring.N
        return GaloisRingElem(self.ring, tuple((a - b) % N for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "GaloisRingElem":
        N = self.ring.N
        return GaloisRingElem(self.ring, tuple((-a) % N for a in self.coeffs))

    def __mul__(self, other) -> "GaloisRingElem":
        if isinstance(other, int):
            return self.ring([c * other for c in self.coeffs])
        return GaloisRingElem(self.ring, self.ring._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GaloisRingElem":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def residue(self) -> FFElem:
        R = self.ring
        return FFElem.from_coefficients(R.p, R.e, [c % R.p for c in self.coeffs])

    def is_unit(self) -> bool:
        return self.residue().code != 0

    def reduce(self, m_new: int) -> "GaloisRingElem":
        """Image in GR(p^m_new, e) for m_new <= m."""
        if m_new > self.ring.m:
            raise ValueError("cannot raise precision by reduction")
        return get_galois_ring(self.ring.p, m_new, self.ring.e)(list(self.coeffs))

    def inverse(self) -> "GaloisRingElem":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        R = self.ring
        x = R.lift(self.residue().inverse())
        # Newton iteration x <- x(2 - a x) doubles p-adic precision each step
        prec = 1
        two = R(2)
        while prec < R.m:
            x = x * (two - self * x)
            prec *= 2
        return x

    def valuation(self) -> int:
        if self.is_zero():
            return self.ring.m
        v = 0
        while all(c % self.ring.p ** (v + 1) == 0 for c in self.coeffs):
            v += 1
        return v
