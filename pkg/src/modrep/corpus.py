"""Small named groups used by the tests, the acceptance suite and the CLI."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .groups import Group, build_group


def _cycles(degree: int, *cycles: tuple[int, ...]) -> list[int]:
    """Permutation from 1-based cycles."""
    perm = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a - 1] = b - 1
    return perm


def cyclic(n: int) -> list[list[int]]:
    return [[(i + 1) % n for i in range(n)]] if n > 1 else []


def symmetric(n: int) -> list[list[int]]:
    if n == 1:
        return []
    if n == 2:
        return [_cycles(2, (1, 2))]
    return [_cycles(n, (1, 2)), _cycles(n, tuple(range(1, n + 1)))]


def alternating(n: int) -> list[list[int]]:
    if n == 3:
        return [_cycles(3, (1, 2, 3))]
    gens = [_cycles(n, (1, 2, 3))]
    if n % 2:
        gens.append(_cycles(n, tuple(range(1, n + 1))))
    else:
        gens.append(_cycles(n, tuple(range(2, n + 1))))
    return gens


def dihedral(order: int) -> list[list[int]]:
    n = order // 2
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return [rot, ref]


def semidihedral(order: int = 16) -> list[list[int]]:
    """SD_{2^n} = <a, b | a^m = b^2 = 1, b a b = a^(m/2 - 1)> acting on Z/m by affine maps."""
    m = order // 2
    return [[(x + 1) % m for x in range(m)], [((m // 2 - 1) * x) % m for x in range(m)]]


def klein_four() -> list[list[int]]:
    return [_cycles(4, (1, 2), (3, 4)), _cycles(4, (1, 3), (2, 4))]


def _regular(elements: list, mul) -> list[list[int]]:
    index = {x: i for i, x in enumerate(elements)}
    return index, lambda g: [index[mul(g, x)] for x in elements]


def quaternion(order: int = 8) -> list[list[int]]:
    """Generalized quaternion group in its regular representation."""
    n = order // 2  # <a, b | a^n = 1, b^2 = a^(n/2), b a b^-1 = a^-1>
    elements = [(i, j) for j in range(2) for i in range(n)]

    def mul(x, y):
        i1, j1 = x
        i2, j2 = y
        if j1 == 0:
            return ((i1 + i2) % n, j2)
        # b^j1 a^i2 = a^-i2 b
        i = (i1 - i2) % n
        if j2 == 1:
            return ((i + n // 2) % n, 0)
        return (i, 1)

    index, act = _regular(elements, mul)
    return [act((1, 0)), act((0, 1))]


def _mat_mul(A, B, q):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(2)) % q for j in range(2)) for i in range(2)
    )


def special_linear_2(q: int) -> list[list[int]]:
    """SL(2, q), q prime, acting on the nonzero vectors of GF(q)^2."""
    vecs = [v for v in itertools.product(range(q), repeat=2) if v != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}
    gens = [((1, 1), (0, 1)), ((0, q - 1), (1, 0))]

    def act(M):
        return [index[((M[0][0] * v[0] + M[0][1] * v[1]) % q, (M[1][0] * v[0] + M[1][1] * v[1]) % q)] for v in vecs]

    return [act(M) for M in gens]


def projective_general_linear_2(q: int) -> list[list[int]]:
    """PGL(2, q), q prime, acting on the projective line {0..q-1, inf}."""
    inf = q
    g = next(x for x in range(2, q) if len({pow(x, k, q) for k in range(1, q)}) == q - 1) if q > 2 else 1

    def mobius(a, b, c, d):
        out = []
        for x in range(q + 1):
            if x == inf:
                num, den = a, c
            else:
                num, den = (a * x + b) % q, (c * x + d) % q
            out.append(inf if den == 0 else (num * pow(den, -1, q)) % q)
        return out

    return [mobius(1, 1, 0, 1), mobius(g, 0, 0, 1), mobius(0, q - 1, 1, 0)]


def direct_product(gens_a: list[list[int]], deg_a: int, gens_b: list[list[int]], deg_b: int) -> list[list[int]]:
    out = []
    for g in gens_a:
        out.append(list(g) + [deg_a + i for i in range(deg_b)])
    for h in gens_b:
        out.append(list(range(deg_a)) + [deg_a + x for x in h])
    return out


CORPUS = {
    "trivial": (lambda: [], 1),
    "C2": (lambda: cyclic(2), 2),
    "C3": (lambda: cyclic(3), 3),
    "C4": (lambda: cyclic(4), 4),
    "C6": (lambda: cyclic(6), 6),
    "C8": (lambda: cyclic(8), 8),
    "C2xC2": (klein_four, 4),
    "S3": (lambda: symmetric(3), 3),
    "D8": (lambda: dihedral(8), 4),
    "Q8": (lambda: quaternion(8), 8),
    "D12": (lambda: dihedral(12), 6),
    "Q16": (lambda: quaternion(16), 16),
    "D16": (lambda: dihedral(16), 8),
    "SD16": (lambda: semidihedral(16), 8),
    "S4": (lambda: symmetric(4), 4),
    "A4": (lambda: alternating(4), 4),
    "SL(2,3)": (lambda: special_linear_2(3), 8),
    "A5": (lambda: alternating(5), 5),
    "SL(2,7)": (lambda: special_linear_2(7), 48),
    "PGL(2,7)": (lambda: projective_general_linear_2(7), 8),
}


@lru_cache(maxsize=None)
def named_group(name: str) -> Group:
    try:
        builder, degree = CORPUS[name]
    except KeyError:
        raise KeyError(f"unknown corpus group {name!r}; known: {', '.join(CORPUS)}") from None
    return build_group(builder(), degree=degree, name=name)


def group_file_text(name: str) -> str:
    """The group in the text input format of the command line."""
    from .groups import cycle_string

    builder, degree = CORPUS[name]
    lines = [f"name {name}", f"domain {degree}"]
    for g in builder():
        lines.append(f"gen {cycle_string(g)}")
    return "\n".join(lines) + "\n"
