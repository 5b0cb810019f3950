"""Matrix representations of permutation groups over finite fields.

Matrices act on column vectors: rho(g) v.  Generator images are aligned
with ``group.generator_indices``; images of all elements are filled lazily
along the group's word tree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import InputError
from ..exact.finite_field import GF
from ..groups import Group

HOM_CHECK_LIMIT = 512


@dataclass(eq=False)
class MatRep:
    group: Group
    field: GF
    gens: list[np.ndarray]
    label: str = ""
    n: int = -1
    _images: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.gens:
            self.n = int(self.gens[0].shape[0])
        elif self._images is not None:
            self.n = int(self._images.shape[1])
        if self.n < 0:
            raise ValueError("dimension unknown for a representation without generators")

    @property
    def dim(self) -> int:
        return self.n

    @classmethod
    def from_generators(
        cls, G: Group, F: GF, mats: Sequence, label: str = "", check: bool = True, n: int | None = None
    ) -> "MatRep":
        mats = [np.asarray(m, dtype=np.int64) % F.q for m in mats]
        if len(mats) != len(G.generator_indices):
            raise InputError(f"expected {len(G.generator_indices)} generator matrices, got {len(mats)}")
        if mats:
            n = mats[0].shape[0]
            if any(m.shape != (n, n) for m in mats):
                raise InputError("generator matrices must be square of a common size")
        rep = cls(G, F, mats, label, n=mats[0].shape[0] if mats else (n or 1))
        if check:
            rep.check_homomorphism()
        return rep

    @classmethod
    def from_images(cls, G: Group, F: GF, images: np.ndarray, label: str = "") -> "MatRep":
        images = np.asarray(images, dtype=np.int64)
        gens = [images[s] for s in G.generator_indices]
        return cls(G, F, gens, label, n=images.shape[1], _images=images)

    @property
    def images(self) -> np.ndarray:
        if self._images is None:
            n = self.dim
            G = self.group
            out = np.empty((G.order, n, n), dtype=np.int64)
            out[0] = np.eye(n, dtype=np.int64)
            tree = G.word_tree()
            order = sorted(range(1, G.order), key=lambda g: _depth(tree, g))
            F = self.field
            for g in order:
                parent, k = tree[g]
                out[g] = F.matmul(out[parent], self.gens[k])
            self._images = out
        return self._images

    def image(self, g: int) -> np.ndarray:
        return self.images[g]

    def check_homomorphism(self) -> None:
        F = self.field
        n = self.dim
        for m in self.gens:
            if F.rank(m) != n:
                raise InputError("generator image is not invertible")
        G = self.group
        imgs = self.images
        elems = range(G.order)
        if G.order > HOM_CHECK_LIMIT:
            rng = np.random.default_rng(0)
            elems = rng.choice(G.order, size=HOM_CHECK_LIMIT, replace=False)
        for g in elems:
            for k, s in enumerate(G.generator_indices):
                if not np.array_equal(F.matmul(imgs[g], self.gens[k]), imgs[G.mul(int(g), s)]):
                    raise InputError("generator images do not define a homomorphism")

    # -- constructions -----------------------------------------------------------
    def restrict(self, H: Group) -> "MatRep":
        """Restriction to a subgroup created by ``self.group.subgroup``."""
        if H.parent is not self.group:
            raise ValueError("H must be a subgroup of the representation's group")
        imgs = self.images[np.asarray(H.parent_indices)]
        return MatRep.from_images(H, self.field, imgs, label=self.label)

    def conjugate_by(self, T: np.ndarray) -> "MatRep":
        F = self.field
        Ti = F.inverse(T)
        return MatRep(self.group, F, [F.matmul(F.matmul(T, m), Ti) for m in self.gens], self.label, n=self.n)

    def direct_sum(self, other: "MatRep") -> "MatRep":
        a, b = self.dim, other.dim
        gens = []
        for x, y in zip(self.gens, other.gens):
            m = np.zeros((a + b, a + b), dtype=np.int64)
            m[:a, :a] = x
            m[a:, a:] = y
            gens.append(m)
        return MatRep(self.group, self.field, gens, n=a + b)

    def tensor(self, other: "MatRep") -> "MatRep":
        F = self.field
        return MatRep(self.group, F, [F.kron(x, y) for x, y in zip(self.gens, other.gens)], n=self.n * other.n)

    def dual(self) -> "MatRep":
        F = self.field
        return MatRep(self.group, F, [F.inverse(m).T.copy() for m in self.gens], n=self.n)

    def submodule(self, basis: np.ndarray) -> "MatRep":
        """Action on the span of the columns-as-rows ``basis`` (an invariant subspace)."""
        F = self.field
        R, piv = F.rref(basis)
        gens = []
        for m in self.gens:
            img = F.matmul(R, m.T)  # rows: images of basis vectors
            coords = img[:, piv]
            gens.append(coords.T.copy())
        return MatRep(self.group, F, gens, n=len(piv))

    def quotient(self, basis: np.ndarray) -> "MatRep":
        F = self.field
        n = self.dim
        R, piv = F.rref(basis)
        free = [c for c in range(n) if c not in set(piv)]
        gens = []
        for m in self.gens:
            rows = m.T[free]  # images of the free unit vectors, as rows
            red = F.reduce_rows(R, piv, rows)
            gens.append(red[:, free].T.copy())
        return MatRep(self.group, F, gens, n=len(free))

    def is_invariant(self, basis: np.ndarray) -> bool:
        F = self.field
        R, piv = F.rref(basis)
        for m in self.gens:
            img = F.matmul(R, m.T)
            if np.any(F.reduce_rows(R, piv, img)):
                return False
        return True

    def matrices_equal(self, other: "MatRep") -> bool:
        return all(np.array_equal(x, y) for x, y in zip(self.gens, other.gens))


def _depth(tree, g: int) -> int:
    d = 0
    while g > 0:
        g = tree[g][0]
        d += 1
    return d


def trivial_module(G: Group, F: GF, dim: int = 1) -> MatRep:
    gens = [np.eye(dim, dtype=np.int64) for _ in G.generator_indices]
    return MatRep(G, F, gens, label="trivial", n=dim)


def permutation_module(G: Group, F: GF) -> MatRep:
    """Natural permutation module on the points moved by G."""
    d = G.degree
    gens = []
    for s in G.generator_indices:
        perm = G.perms[s]
        m = np.zeros((d, d), dtype=np.int64)
        m[perm, np.arange(d)] = 1
        gens.append(m)
    return MatRep(G, F, gens, label="permutation", n=d)


def regular_module(G: Group, F: GF) -> MatRep:
    """Left regular module kG with basis the group elements."""
    N = G.order
    gens = []
    for s in G.generator_indices:
        m = np.zeros((N, N), dtype=np.int64)
        for x in range(N):
            m[G.mul(s, x), x] = 1
        gens.append(m)
    return MatRep(G, F, gens, label="regular", n=N)


def coset_module(G: Group, H: Group, F: GF) -> MatRep:
    """Permutation module on the left cosets of the subgroup H."""
    members = set(H.parent_indices)
    reps: list[int] = []
    coset_of: dict[int, int] = {}
    for g in range(G.order):
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for h in members:
            coset_of[G.mul(g, h)] = idx
    k = len(reps)
    gens = []
    for s in G.generator_indices:
        m = np.zeros((k, k), dtype=np.int64)
        for i, r in enumerate(reps):
            m[coset_of[G.mul(s, r)], i] = 1
        gens.append(m)
    return MatRep(G, F, gens, label="coset", n=k)
