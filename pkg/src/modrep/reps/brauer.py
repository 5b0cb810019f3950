"""Brauer characters and the simple modules of a group in characteristic p."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import ChopBudgetExceeded, InternalInconsistency
from ..exact.cyclotomic import CycNumber
from ..exact.finite_field import GF, get_field
from ..groups import Group
from .matrep import MatRep, permutation_module, trivial_module
from .meataxe import DEFAULT_BUDGET, composition_factors

TENSOR_DIM_CAP = 400


@dataclass(frozen=True)
class BrauerCharacter:
    p: int
    classes: tuple[int, ...]  # p-regular class indices of the group
    values: tuple[CycNumber, ...]

    @property
    def degree(self) -> int:
        return int(self.values[0].rational_value())

    def as_dict(self) -> dict[int, CycNumber]:
        return dict(zip(self.classes, self.values))


def p_prime_exponent(G: Group, p: int) -> int:
    m = 1
    for o in set(int(x) for x in G.element_orders):
        while o % p == 0:
            o //= p
        m = math.lcm(m, o)
    return m


def splitting_degree(G: Group, p: int) -> int:
    """Smallest e with p^e = 1 mod the p'-part of exp(G)."""
    m = p_prime_exponent(G, p)
    if m == 1:
        return 1
    e = 1
    while pow(p, e, m) != 1:
        e += 1
    return e


def splitting_field(G: Group, p: int) -> GF:
    return get_field(p, splitting_degree(G, p))


def brauer_character(S: MatRep, p: int | None = None) -> BrauerCharacter:
    """Teichmueller-lifted eigenvalue sums on the p-regular classes."""
    F = S.field
    p = F.p if p is None else p
    G = S.group
    n = S.dim
    classes = G.p_regular_classes(p)
    values = []
    eye = F.identity(n)
    for c in classes:
        cc = G.classes[c]
        o = cc.element_order
        if (F.q - 1) % o:
            raise ValueError(f"{F!r} lacks the eigenvalues of elements of order {o}")
        A = S.image(cc.rep)
        step = (F.q - 1) // o
        mult = {}
        total = 0
        for k in range(o):
            lam = int(F.exp[step * k])
            m = F.nullity(F.sub(A, F.scale(lam, eye))) if n else 0
            if m:
                mult[k] = m
                total += m
            if total == n:
                break
        if total != n:
            raise InternalInconsistency("p-regular element acts non-semisimply")
        values.append(CycNumber.from_exponents(o, mult))
    return BrauerCharacter(p, tuple(classes), tuple(values))


def _brauer_key(phi: BrauerCharacter):
    return (phi.degree, [tuple(-x for x in v.num) for v in phi.values])


@dataclass
class SimpleModules:
    group: Group
    p: int
    field: GF
    modules: list[MatRep]
    characters: list[BrauerCharacter]
    seed: int

    def __len__(self) -> int:
        return len(self.modules)


def simples(G: Group, p: int, seed: int = 0, budget: int = DEFAULT_BUDGET, field: GF | None = None) -> SimpleModules:
    """Pairwise non-isomorphic absolutely irreducible kG-modules, one per p-regular class.

    Found by chopping the trivial and natural permutation modules, then
    tensor products of the simples found so far; by the Burnside-Brauer
    theorem every simple occurs in some tensor power of a faithful module.
    ``field`` overrides the splitting field, e.g. with the field of an overgroup.
    """
    F = splitting_field(G, p) if field is None else field
    if (F.q - 1) % p_prime_exponent(G, p):
        raise ValueError(f"{F!r} is not a splitting field for {G!r} at p = {p}")
    cache = G.__dict__.setdefault("_simples_cache", {})
    key = (p, seed, F.e)
    if key in cache:
        return cache[key]
    target = len(G.p_regular_classes(p))
    found: list[tuple[MatRep, BrauerCharacter]] = []
    seen: set = set()

    def absorb(V: MatRep) -> None:
        for S in composition_factors(V, seed, budget):
            phi = brauer_character(S, p)
            if phi.values not in seen:
                seen.add(phi.values)
                found.append((S, phi))

    absorb(trivial_module(G, F))
    if len(found) < target:
        absorb(permutation_module(G, F))
    tried: set[tuple[int, int]] = set()
    while len(found) < target:
        # found[0] is the trivial module, whose tensor products add nothing
        pairs = [
            (found[i][0].dim * found[j][0].dim, i, j)
            for i in range(1, len(found))
            for j in range(i, len(found))
            if (i, j) not in tried
        ]
        if not pairs:
            raise ChopBudgetExceeded(f"found {len(found)} of {target} simples; tensor products exhausted")
        d, i, j = min(pairs)
        if d > TENSOR_DIM_CAP:
            raise ChopBudgetExceeded(f"found {len(found)} of {target} simples below tensor dimension {TENSOR_DIM_CAP}")
        tried.add((i, j))
        absorb(found[i][0].tensor(found[j][0]))
    if len(found) != target:
        raise InternalInconsistency(f"found {len(found)} simples but {target} p-regular classes")
    found.sort(key=lambda t: _brauer_key(t[1]))
    result = SimpleModules(G, p, F, [S for S, _ in found], [phi for _, phi in found], seed)
    for i, S in enumerate(result.modules):
        S.label = f"S{i}"
    cache[key] = result
    return result


def brauer_table(G: Group, p: int, seed: int = 0, field: GF | None = None) -> list[BrauerCharacter]:
    return simples(G, p, seed, field=field).characters


def brauer_rank(chars: list[BrauerCharacter]) -> int:
    """Exact rank of Brauer characters as class functions."""
    if not chars:
        return 0
    rows = [[v for v in phi.values] for phi in chars]
    return _cyc_rank(rows)


def _cyc_rank(rows: list[list[CycNumber]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][c].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank
