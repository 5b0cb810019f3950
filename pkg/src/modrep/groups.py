"""Finite permutation groups with all elements materialised.

Elements are stored as rows of an integer array; ``g * h`` means "apply h,
then g", so that permutation matrices multiply in the same order.  The
element table is built breadth-first from the generators and index 0 is
always the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import GroupTooLarge, InputError

DEFAULT_ORDER_CAP = 100_000
TABLE_CAP = 2048


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def p_part(n: int, p: int) -> int:
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0 and n:
        n //= p
        v += 1
    return v


@dataclass
class ConjClass:
    rep: int
    members: list[int]
    size: int
    centralizer_order: int
    element_order: int


@dataclass
class ConjClassFrame:
    classes: list[ConjClass]
    class_of: np.ndarray
    power_maps: dict[int, list[int]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, i: int) -> ConjClass:
        return self.classes[i]


class Group:
    """A finite group of permutations of {0, ..., degree-1}."""

    def __init__(
        self,
        degree: int,
        generators: Sequence[Sequence[int]],
        elements: np.ndarray,
        name: str | None = None,
        parent: "Group | None" = None,
        parent_indices: Sequence[int] | None = None,
        generator_indices: Sequence[int] | None = None,
    ):
        self.degree = degree
        self.perms = elements
        self.order = len(elements)
        self.name = name
        self.parent = parent
        self.parent_indices = None if parent_indices is None else list(parent_indices)
        self._index = {row.tobytes(): i for i, row in enumerate(elements)}
        if len(self._index) != self.order:
            raise InputError("duplicate elements in group table")
        self.generators = [tuple(int(x) for x in g) for g in generators]
        if generator_indices is None:
            generator_indices = [self.index_of(g) for g in self.generators]
        self.generator_indices = list(generator_indices)
        self._table = None
        self._inverse = None

    def __repr__(self) -> str:
        label = self.name or "Group"
        return f"<{label} of order {self.order} on {self.degree} points>"

    def __len__(self) -> int:
        return self.order

    # -- element access --------------------------------------------------------
    def index_of(self, perm) -> int:
        key = np.asarray(perm, dtype=np.int64).tobytes()
        try:
            return self._index[key]
        except KeyError:
            raise KeyError("permutation is not an element of the group") from None

    def contains(self, perm) -> bool:
        return np.asarray(perm, dtype=np.int64).tobytes() in self._index

    @property
    def table(self) -> np.ndarray | None:
        if self._table is None and self.order <= TABLE_CAP:
            N = self.order
            tab = np.empty((N, N), dtype=np.int64)
            idx = self._index
            for g in range(N):
                comp = self.perms[g][self.perms]
                tab[g] = [idx[row.tobytes()] for row in comp]
            self._table = tab
        return self._table

    def mul(self, g: int, h: int) -> int:
        tab = self.table
        if tab is not None:
            return int(tab[g, h])
        return self._index[self.perms[g][self.perms[h]].tobytes()]

    def inv(self, g: int) -> int:
        return int(self.inverses[g])

    @cached_property
    def inverses(self) -> np.ndarray:
        out = np.empty(self.order, dtype=np.int64)
        for g in range(self.order):
            inv = np.empty(self.degree, dtype=np.int64)
            inv[self.perms[g]] = np.arange(self.degree)
            out[g] = self._index[inv.tobytes()]
        return out

    def conj(self, h: int, g: int) -> int:
        """h g h^-1."""
        return self.mul(self.mul(h, g), self.inv(h))

    def power(self, g: int, k: int) -> int:
        k %= self.element_orders[g]
        result = 0
        base = g
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    @cached_property
    def element_orders(self) -> np.ndarray:
        out = np.empty(self.order, dtype=np.int64)
        for g in range(self.order):
            cycles = _cycle_lengths(self.perms[g])
            out[g] = math.lcm(*cycles) if cycles else 1
        return out

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in set(self.element_orders.tolist())))

    def word_tree(self) -> list[tuple[int, int]]:
        """For each element, (parent element, generator position) with g = parent * gen."""
        N = self.order
        tree: list[tuple[int, int] | None] = [None] * N
        tree[0] = (-1, -1)
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for k, s in enumerate(self.generator_indices):
                    y = self.mul(x, s)
                    if tree[y] is None:
                        tree[y] = (x, k)
                        nxt.append(y)
            frontier = nxt
        if any(t is None for t in tree):
            raise InputError("generators do not generate the stored element table")
        return tree  # type: ignore[return-value]

    # -- subgroups -------------------------------------------------------------
    def closure(self, gens: Iterable[int]) -> list[int]:
        gens = [g for g in gens if g != 0]
        seen = {0}
        order = [0]
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.mul(x, s)
                    if y not in seen:
                        seen.add(y)
                        order.append(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(order)

    def subgroup(self, members: Iterable[int], name: str | None = None) -> "Group":
        members = sorted(set(int(m) for m in members))
        if members[0] != 0:
            raise ValueError("subgroup must contain the identity")
        gens: list[int] = []
        span = {0}
        for m in members:
            if m not in span:
                gens.append(m)
                span = set(self.closure(gens))
        if span != set(members):
            raise ValueError("element set is not closed under multiplication")
        perms = self.perms[members]
        local = {m: i for i, m in enumerate(members)}
        return Group(
            self.degree,
            [tuple(self.perms[g]) for g in gens],
            perms,
            name=name,
            parent=self,
            parent_indices=members,
            generator_indices=[local[g] for g in gens],
        )

    # -- conjugacy classes -----------------------------------------------------
    @cached_property
    def classes(self) -> ConjClassFrame:
        N = self.order
        class_of = np.full(N, -1, dtype=np.int64)
        raw: list[list[int]] = []
        gens = self.generator_indices
        for g in range(N):
            if class_of[g] >= 0:
                continue
            members = [g]
            class_of[g] = len(raw)
            frontier = [g]
            while frontier:
                nxt = []
                for x in frontier:
                    for s in gens:
                        y = self.conj(s, x)
                        if class_of[y] < 0:
                            class_of[y] = len(raw)
                            members.append(y)
                            nxt.append(y)
                frontier = nxt
            raw.append(sorted(members))
        orders = self.element_orders
        raw.sort(key=lambda m: (int(orders[m[0]]), len(m), m[0]))
        classes = []
        for i, m in enumerate(raw):
            class_of[m] = i
            classes.append(ConjClass(m[0], m, len(m), N // len(m), int(orders[m[0]])))
        frame = ConjClassFrame(classes, class_of)
        for p in factorize(N):
            frame.power_maps[p] = [int(class_of[self.power(c.rep, p)]) for c in classes]
        return frame

    def class_power(self, c: int, k: int) -> int:
        cls = self.classes
        return int(cls.class_of[self.power(cls[c].rep, k)])

    def inverse_class(self, c: int) -> int:
        return int(self.classes.class_of[self.inv(self.classes[c].rep)])

    def p_regular_classes(self, p: int) -> list[int]:
        return [i for i, c in enumerate(self.classes.classes) if c.element_order % p]

    def element_label(self, g: int) -> str:
        return cycle_string(self.perms[g])


def _cycle_lengths(perm) -> list[int]:
    n = len(perm)
    seen = [False] * n
    out = []
    for i in range(n):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = int(perm[j])
                length += 1
            out.append(length)
    return out


def cycle_string(perm) -> str:
    n = len(perm)
    seen = [False] * n
    parts = []
    for i in range(n):
        if seen[i] or int(perm[i]) == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = int(perm[j])
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def build_group(
    generators: Sequence[Sequence[int]],
    degree: int | None = None,
    name: str | None = None,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> Group:
    """Enumerate the group generated by permutations given as image lists."""
    if degree is None:
        if not generators:
            degree = 1
        else:
            degree = len(generators[0])
    gens = []
    for g in generators:
        arr = np.asarray(g, dtype=np.int64)
        if arr.shape != (degree,) or sorted(arr.tolist()) != list(range(degree)):
            raise InputError(f"not a permutation of {degree} points: {list(g)}")
        gens.append(arr)
    ident = np.arange(degree, dtype=np.int64)
    elements = [ident]
    index = {ident.tobytes(): 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = x[s]  # x * s: apply s, then x
                key = y.tobytes()
                if key not in index:
                    index[key] = len(elements)
                    elements.append(y)
                    nxt.append(y)
                    if len(elements) > order_cap:
                        raise GroupTooLarge(f"group order exceeds the cap {order_cap}")
        frontier = nxt
    table = np.array(elements, dtype=np.int64).reshape(len(elements), degree)
    return Group(degree, [tuple(int(x) for x in g) for g in gens], table, name=name)


def p_part_decomposition(G: Group, g: int, p: int) -> tuple[int, int]:
    """The commuting factorisation g = u v with u a p-element and v p-regular."""
    n = int(G.element_orders[g])
    pa = p_part(n, p)
    m = n // pa
    # s = 1 mod p^a and s = 0 mod m
    s = (m * pow(m, -1, pa)) % n if pa > 1 else 0
    return G.power(g, s), G.power(g, 1 - s)


def centralizer(G: Group, g: int) -> Group:
    members = [h for h in range(G.order) if G.mul(h, g) == G.mul(g, h)]
    return G.subgroup(members, name=f"C({G.element_label(g)})")


def normalizer_elements(G: Group, members: Sequence[int]) -> list[int]:
    mset = set(members)
    sub = G.subgroup(members)
    gens = [sub.parent_indices[i] for i in sub.generator_indices]
    return [h for h in range(G.order) if all(G.conj(h, s) in mset for s in gens)]


def sylow(G: Group, p: int) -> Group:
    """A Sylow p-subgroup, grown greedily inside successive normalisers."""
    target = p_part(G.order, p)
    members = [0]
    while len(members) < target:
        mset = set(members)
        found = None
        for h in normalizer_elements(G, members):
            if h in mset:
                continue
            if G.power(h, p) in mset:
                found = h
                break
        if found is None:
            raise AssertionError("Sylow growth stalled")
        members = G.closure(_gen_list(G, members) + [found])
    return G.subgroup(members, name=f"Syl_{p}")


def _gen_list(G: Group, members: list[int]) -> list[int]:
    if len(members) == 1:
        return []
    sub = G.subgroup(members)
    return [sub.parent_indices[i] for i in sub.generator_indices]


@dataclass
class FrameEntry:
    u: int
    order: int
    alpha: int
    centralizer: Group
    v_local: list[int]
    v: list[int]
    g_classes: list[int]
    c_classes: list[int]

    @property
    def ell(self) -> int:
        return len(self.v)


@dataclass
class PSingularFrame:
    p: int
    sylow: Group
    entries: list[FrameEntry]

    @property
    def h(self) -> int:
        return len(self.entries) - 1

    def pair_of_class(self) -> dict[int, tuple[int, int]]:
        out = {}
        for i, ent in enumerate(self.entries):
            for j, c in enumerate(ent.g_classes):
                out[c] = (i, j)
        return out


def p_singular_frame(G: Group, p: int) -> PSingularFrame:
    P = sylow(G, p)
    frame = G.classes
    p_classes = [i for i, c in enumerate(frame.classes) if p_part(c.element_order, p) == c.element_order]
    reps = []
    in_P = P.parent_indices
    for ci in p_classes:
        u = next(x for x in in_P if frame.class_of[x] == ci)
        reps.append(u)
    reps.sort(key=lambda u: (int(G.element_orders[u]), u))
    entries = []
    for u in reps:
        C = centralizer(G, u)
        creg = C.p_regular_classes(p)
        v_local = [C.classes[c].rep for c in creg]
        v = [C.parent_indices[x] for x in v_local]
        g_classes = [int(frame.class_of[G.mul(u, x)]) for x in v]
        order = int(G.element_orders[u])
        entries.append(FrameEntry(u, order, valuation(order, p), C, v_local, v, g_classes, creg))
    return PSingularFrame(p, P, entries)
