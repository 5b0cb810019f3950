"""Blocks of kG: central characters, idempotents, defect groups and representation type."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .chartable import Character, character_table, class_multiplication_coefficients
from .errors import InternalInconsistency, NoCorrespondent, NotA2Group
from .exact.cyclotomic import CycNumber
from .exact.finite_field import GF
from .groups import Group, centralizer, sylow, valuation
from .reps.brauer import simples, splitting_field


@dataclass
class Block:
    index: int
    p: int
    characters: list[int]
    brauer: list[int]
    central_character: tuple[int, ...]  # lambda_B(K^+) in GF(q), per class
    idempotent: tuple[int, ...]  # coefficient of each class sum, in GF(q)
    defect: int
    defect_group: Group | None = None
    defect_shape: str = ""
    representation_type: str = ""

    @property
    def is_principal(self) -> bool:
        return 0 in self.characters

    def summary(self) -> dict:
        return {
            "index": self.index,
            "characters": list(self.characters),
            "brauer_characters": list(self.brauer),
            "defect": self.defect,
            "defect_group_order": self.defect_group.order if self.defect_group is not None else None,
            "defect_group_shape": self.defect_shape,
            "representation_type": self.representation_type,
        }


@dataclass
class BlockSystem:
    group: Group
    p: int
    field: GF
    blocks: list[Block]
    char_block: list[int]
    brauer_block: list[int]
    class_coefficients: np.ndarray = field(repr=False)

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __getitem__(self, i: int) -> Block:
        return self.blocks[i]

    @property
    def principal(self) -> Block:
        return self.blocks[self.char_block[0]]

    def block_of_character(self, mu: int) -> Block:
        return self.blocks[self.char_block[mu]]


def central_character_values(G: Group, chi: Character) -> list[CycNumber]:
    """omega_chi(K^+) = |K| chi(g_K) / chi(1), an algebraic integer."""
    d = chi.degree
    return [chi[c] * G.classes[c].size / d for c in range(len(G.classes))]


def reduced_central_characters(G: Group, F: GF, chars: list[Character]) -> list[tuple[int, ...]]:
    out = []
    for chi in chars:
        out.append(tuple(F.reduce_cyclotomic(w) for w in central_character_values(G, chi)))
    return out


def module_central_character(S, F: GF) -> tuple[int, ...]:
    """Scalar by which each class sum acts on an absolutely irreducible module."""
    G = S.group
    imgs = S.images
    out = []
    for cc in G.classes.classes:
        acc = np.zeros((S.dim, S.dim), dtype=np.int64)
        for g in cc.members:
            acc = F.add(acc, imgs[g])
        lam = int(acc[0, 0])
        if not np.array_equal(acc, F.scale(lam, F.identity(S.dim))):
            raise InternalInconsistency("class sum does not act as a scalar on a simple module")
        out.append(lam)
    return tuple(out)


def center_product(F: GF, a: np.ndarray, x, y) -> np.ndarray:
    """Product in Z(kG) of two elements given in the class-sum basis."""
    k = len(x)
    out = np.zeros(k, dtype=np.int64)
    for r in range(k):
        if x[r] == 0:
            continue
        for s in range(k):
            if y[s] == 0:
                continue
            c = int(F.mul(x[r], y[s]))
            out = F.add(out, F.mul(c, a[r, s] % F.p))
    return out


def _idempotent(G: Group, F: GF, chars: list[Character], members: list[int]) -> tuple[int, ...]:
    coeffs = []
    for c in range(len(G.classes)):
        ci = G.inverse_class(c)
        s = CycNumber.rational(0)
        for mu in members:
            s = s + chars[mu][ci] * chars[mu].degree
        coeffs.append(F.reduce_cyclotomic(s / G.order))
    return tuple(coeffs)


def blocks(G: Group, p: int, seed: int = 0, field: GF | None = None) -> BlockSystem:
    """Blocks of kG over ``field`` (default: the splitting field of G).

    Subgroups compared with G (centralizers in the Brauer correspondence)
    must use G's field so that reductions and Teichmueller lifts agree.
    """
    F = splitting_field(G, p) if field is None else field
    cache = G.__dict__.setdefault("_block_cache", {})
    if (p, seed, F.e) in cache:
        return cache[(p, seed, F.e)]
    chars = character_table(G)
    lam = reduced_central_characters(G, F, chars)
    groups: dict[tuple[int, ...], list[int]] = {}
    for mu, key in enumerate(lam):
        groups.setdefault(key, []).append(mu)
    ordered = sorted(groups.items(), key=lambda kv: kv[1][0])
    a = valuation(G.order, p)
    simple_mods = simples(G, p, seed, field=F)
    brauer_keys = [module_central_character(S, F) for S in simple_mods.modules]
    block_list = []
    char_block = [0] * len(chars)
    brauer_block = [-1] * len(brauer_keys)
    for b, (key, members) in enumerate(ordered):
        for mu in members:
            char_block[mu] = b
        br = [nu for nu, k in enumerate(brauer_keys) if k == key]
        for nu in br:
            brauer_block[nu] = b
        d = a - min(valuation(chars[mu].degree, p) for mu in members)
        block_list.append(Block(b, p, members, br, key, _idempotent(G, F, chars, members), d))
    if min(brauer_block, default=0) < 0:
        raise InternalInconsistency("a simple module matches no block's central character")
    system = BlockSystem(G, p, F, block_list, char_block, brauer_block, class_multiplication_coefficients(G))
    P = sylow(G, p)
    for B in block_list:
        B.defect_group = defect_group(G, B, P)
        if p == 2:
            B.defect_shape = classify_2group(B.defect_group)
        elif _is_cyclic(B.defect_group):
            B.defect_shape = "cyclic"
        else:
            B.defect_shape = "noncyclic"
        B.representation_type = representation_type(B)
    cache[(p, seed, F.e)] = system
    return system


def check_idempotents(system: BlockSystem) -> bool:
    """e_B^2 = e_B, e_B e_C = 0 and sum e_B = 1 in Z(kG)."""
    F = system.field
    a = system.class_coefficients
    k = len(system.group.classes)
    one = np.zeros(k, dtype=np.int64)
    one[0] = 1
    total = np.zeros(k, dtype=np.int64)
    es = [np.array(B.idempotent, dtype=np.int64) for B in system.blocks]
    for i, e in enumerate(es):
        if not np.any(e):
            return False
        total = F.add(total, e)
        for j, f in enumerate(es):
            prod = center_product(F, a, e, f)
            expected = e if i == j else np.zeros(k, dtype=np.int64)
            if not np.array_equal(prod, expected):
                return False
    return bool(np.array_equal(total, one))


# -- p-subgroups and defect groups ----------------------------------------------


def subgroups_of(G: Group, members: list[int]) -> list[frozenset[int]]:
    """All subgroups of the subgroup with the given element list, by closure."""
    seen = {frozenset([0])}
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for H in frontier:
            for x in members:
                if x in H:
                    continue
                K = frozenset(G.closure(list(H) + [x]))
                if K not in seen:
                    seen.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted(seen, key=lambda H: (len(H), sorted(H)))


def _centralizer_of_set(G: Group, H: frozenset[int]) -> list[int]:
    gens = G.closure(H)
    return [g for g in range(G.order) if all(G.mul(g, h) == G.mul(h, g) for h in gens)]


def brauer_map_nonzero(G: Group, B: Block, D: frozenset[int]) -> bool:
    """Br_D(e_B) != 0: some class with nonzero idempotent coefficient meets C_G(D)."""
    cls = G.classes.class_of
    for g in _centralizer_of_set(G, D):
        if B.idempotent[int(cls[g])]:
            return True
    return False


def defect_group(G: Group, B: Block, P: Group | None = None) -> Group:
    p = B.p
    if P is None:
        P = sylow(G, p)
    target = p**B.defect
    if target == 1:
        return G.subgroup([0], name="1")
    if target == P.order:
        if not brauer_map_nonzero(G, B, frozenset(P.parent_indices)):
            raise InternalInconsistency("Brauer homomorphism vanishes on the Sylow subgroup for a full-defect block")
        return P
    seen: set[frozenset[int]] = set()
    for H in subgroups_of(G, list(P.parent_indices)):
        if len(H) != target or H in seen:
            continue
        for g in range(G.order):
            conj = frozenset(G.conj(g, h) for h in H)
            if conj <= set(P.parent_indices):
                seen.add(conj)
        if brauer_map_nonzero(G, B, H):
            return G.subgroup(sorted(H), name="D")
    raise InternalInconsistency(f"no subgroup of order {target} passes the Brauer homomorphism test")


# -- classification -------------------------------------------------------------


def _is_cyclic(D: Group) -> bool:
    return D.order == 1 or int(max(D.element_orders)) == D.order


def classify_2group(D: Group) -> str:
    N = D.order
    if N & (N - 1):
        raise NotA2Group(f"order {N} is not a power of 2")
    if _is_cyclic(D):
        return "cyclic"
    orders = D.element_orders
    involutions = [g for g in range(N) if orders[g] == 2]
    if N == 4:
        return "klein-four"
    if len(involutions) == 1 and N >= 8:
        return "quaternion"
    xs = [g for g in range(N) if orders[g] == N // 2]
    if not xs:
        return "other"
    x = xs[0]
    cyc = set(D.closure([x]))
    if any(D.mul(D.mul(g, x), D.inv(g)) not in cyc for g in D.generator_indices):
        return "other"
    n = N.bit_length() - 1
    y = next(g for g in range(N) if g not in cyc)
    conj = D.conj(y, x)
    k = next(k for k in range(N // 2) if D.power(x, k) == conj)
    m = N // 2
    if k == m - 1:
        return "dihedral"
    if n >= 4 and k == m // 2 - 1:
        return "semidihedral"
    return "other"


def representation_type(B: Block) -> str:
    D = B.defect_group
    if D is None or D.order == 1 or _is_cyclic(D):
        return "finite"
    if B.p != 2:
        return "wild"
    shape = B.defect_shape or classify_2group(D)
    if shape == "klein-four":
        return "tame (klein-four)"
    if shape in ("dihedral", "semidihedral", "quaternion"):
        return "tame"
    return "wild"


# -- Brauer correspondence --------------------------------------------------------


def brauer_correspondent(G: Group, H: Group, b: Block, G_blocks: BlockSystem) -> Block:
    """The block B of G with lambda_B(K^+) = lambda_b((K cap H)^+) for every class K of G."""
    F = G_blocks.field
    hcls = H.classes
    k = len(G.classes)
    restricted = [0] * k
    for c, hc in enumerate(hcls.classes):
        K = int(G.classes.class_of[H.parent_indices[hc.rep]])
        restricted[K] = int(F.add(restricted[K], b.central_character[c]))
    matches = [B for B in G_blocks.blocks if list(B.central_character) == restricted]
    if len(matches) != 1:
        raise NoCorrespondent(f"{len(matches)} blocks of G match the block {b.index} of the subgroup")
    return matches[0]


def centralizer_blocks(G: Group, u: int, p: int, seed: int = 0) -> tuple[Group, BlockSystem]:
    H = centralizer(G, u)
    return H, blocks(H, p, seed, field=splitting_field(G, p))
