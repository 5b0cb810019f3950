"""Ordinary character tables by the Dixon-Schneider method.

Central characters are found as common eigenvectors of the class
multiplication matrices over a prime field GF(l) with l = 1 mod exp(G);
character values are then recovered exactly as sums of roots of unity by
an inverse discrete Fourier transform along power maps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InternalInconsistency
from .exact.cyclotomic import CycNumber
from .exact.finite_field import get_field, is_prime
from .groups import Group


@dataclass(frozen=True)
class Character:
    values: tuple[CycNumber, ...]

    @property
    def degree(self) -> int:
        return int(self.values[0].rational_value())

    def __getitem__(self, c: int) -> CycNumber:
        return self.values[c]

    def __len__(self) -> int:
        return len(self.values)

    def is_rational(self) -> bool:
        return all(v.is_rational() for v in self.values)


def class_multiplication_coefficients(G: Group) -> np.ndarray:
    """a[r, s, t] = #{x in C_r : x^-1 g_t in C_s}, i.e. C_r^+ C_s^+ = sum_t a[r,s,t] C_t^+."""
    cls = G.classes
    k = len(cls)
    a = np.zeros((k, k, k), dtype=np.int64)
    class_of = cls.class_of
    for t, ct in enumerate(cls.classes):
        g = ct.rep
        for r, cr in enumerate(cls.classes):
            for x in cr.members:
                y = G.mul(G.inv(x), g)
                a[r, class_of[y], t] += 1
    return a


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime l = 1 mod exponent with l > 2 sqrt(order)."""
    bound = 2 * math.isqrt(order) + 2
    l = exponent + 1
    while l <= bound or not is_prime(l):
        l += exponent
    return l


def _primitive_root(l: int) -> int:
    factors = [q for q in range(2, l) if (l - 1) % q == 0 and is_prime(q)]
    for g in range(2, l):
        if all(pow(g, (l - 1) // q, l) != 1 for q in factors):
            return g
    return 1


def _split_common_eigenspaces(F, mats: list[np.ndarray], k: int) -> list[np.ndarray]:
    spaces = [np.eye(k, dtype=np.int64)]
    for M in mats:
        if all(V.shape[0] == 1 for V in spaces):
            break
        new = []
        for V in spaces:
            if V.shape[0] == 1:
                new.append(V)
                continue
            R, piv = F.rref(V)
            X = F.matmul(M, R.T)[piv, :]
            roots = F.roots(F.charpoly(X))
            for lam in roots:
                coords = F.nullspace(F.sub(X, F.scale(lam, F.identity(X.shape[0]))))
                if coords.shape[0]:
                    new.append(F.rref(F.matmul(coords, R))[0])
        spaces = new
    return spaces


def character_table(G: Group) -> list[Character]:
    cached = getattr(G, "_character_table", None)
    if cached is not None:
        return cached
    table = _compute_character_table(G)
    G._character_table = table
    return table


def _compute_character_table(G: Group) -> list[Character]:
    cls = G.classes
    k = len(cls)
    N = G.order
    if k == 1:
        return [Character((CycNumber.rational(1),))]
    expo = G.exponent
    l = dixon_prime(N, expo)
    F = get_field(l)
    a = class_multiplication_coefficients(G) % l
    mats = [a[r] for r in range(1, k)]
    spaces = _split_common_eigenspaces(F, mats, k)
    if len(spaces) != k or any(V.shape[0] != 1 for V in spaces):
        raise InternalInconsistency("class matrices did not separate the central characters")
    sizes = [c.size for c in cls.classes]
    inv_class = [G.inverse_class(c) for c in range(k)]
    zeta_l = pow(_primitive_root(l), (l - 1) // expo, l)
    chars = []
    for V in spaces:
        w = [int(x) for x in V[0]]
        w0inv = pow(w[0], -1, l)
        w = [x * w0inv % l for x in w]
        s = sum(w[t] * w[inv_class[t]] * pow(sizes[t], -1, l) for t in range(k)) % l
        d2 = N * pow(s, -1, l) % l
        d = next((d for d in range(1, math.isqrt(N) + 1) if d * d % l == d2), None)
        if d is None:
            raise InternalInconsistency("no integral degree for a central character")
        theta = [w[t] * d * pow(sizes[t], -1, l) % l for t in range(k)]
        values = []
        for t in range(k):
            o = cls[t].element_order
            z = pow(zeta_l, expo // o, l)
            powers = [G.class_power(t, j) for j in range(o)]
            inv_o = pow(o, -1, l)
            mult = {}
            for kk in range(o):
                acc = 0
                for j in range(o):
                    acc += theta[powers[j]] * pow(z, (-j * kk) % o, l)
                m = acc * inv_o % l
                if m > d:
                    raise InternalInconsistency("root-of-unity multiplicity out of range")
                if m:
                    mult[kk] = m
            values.append(CycNumber.from_exponents(o, mult))
        chars.append(Character(tuple(values)))
    chars.sort(key=_char_sort_key)
    return chars


def _char_sort_key(ch: Character):
    return (ch.degree, [(v.M, tuple(-x for x in v.num), v.den) for v in ch.values])


def inner_product(G: Group, chi: Sequence[CycNumber], psi: Sequence[CycNumber]) -> Fraction | CycNumber:
    cls = G.classes
    total = CycNumber.rational(0)
    for c, cc in enumerate(cls.classes):
        total = total + chi[c] * psi[c].conjugate() * cc.size
    total = total / G.order
    return total.rational_value() if total.is_rational() else total


def check_orthogonality(G: Group, chars: list[Character]) -> bool:
    k = len(G.classes)
    if len(chars) != k:
        return False
    for i in range(k):
        for j in range(i, k):
            ip = inner_product(G, chars[i].values, chars[j].values)
            if ip != (1 if i == j else 0):
                return False
    for c in range(k):
        for d in range(c, k):
            s = CycNumber.rational(0)
            for ch in chars:
                s = s + ch[c] * ch[d].conjugate()
            if s != (G.classes[c].centralizer_order if c == d else 0):
                return False
    return sum(ch.degree**2 for ch in chars) == G.order


def galois_class_permutation(G: Group, a: int) -> list[int]:
    return [G.class_power(c, a) for c in range(len(G.classes))]


def padic_galois_exponents(G: Group, p: int) -> list[int]:
    """Units a mod exp(G) acting trivially on p'-roots of unity."""
    expo = G.exponent
    pa = 1
    while expo % (pa * p) == 0:
        pa *= p
    m = expo // pa
    out = []
    for c in range(1, pa + 1):
        if c % p == 0:
            continue
        # a = 1 mod m, a = c mod p^alpha
        a = (c * m * pow(m, -1, pa) + pa * pow(pa, -1, m)) % expo if pa > 1 else 1
        if m == 1:
            a = c % expo
        out.append(a)
    return sorted(set(out))


def galois_orbits_padic(G: Group, chars: Sequence[Character], p: int, members: Sequence[int] | None = None) -> list[list[int]]:
    """Orbits (as index lists into chars) under zeta_{p^a} -> zeta_{p^a}^c fixing p'-roots."""
    if members is None:
        members = list(range(len(chars)))
    perms = [galois_class_permutation(G, a) for a in padic_galois_exponents(G, p)]
    lookup = {chars[i].values: i for i in members}
    parent = {i: i for i in members}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in members:
        for perm in perms:
            img = tuple(chars[i].values[perm[c]] for c in range(len(perm)))
            j = lookup.get(img)
            if j is not None:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in members:
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: (len(g), g[0]))


def restrict_p_regular(G: Group, chi: Character, p: int) -> dict[int, CycNumber]:
    return {c: chi.values[c] for c in G.p_regular_classes(p)}
