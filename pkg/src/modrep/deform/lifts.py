"""Lifts of a residual representation over finite local rings.

A lift over R is given by generator matrices over R (arrays of shape
(n, n, B) in the ring's coordinates).  The residual identification is a
matrix phi over k with pi(rho(g)) = phi^-1 rhobar(g) phi; ``normalized``
conjugates it away so that pi(rho(g)) = rhobar(g) exactly, after which
isomorphism of lifts is strict equivalence (conjugation by 1 + M_n(m_R)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..errors import InputError, InternalInconsistency, OracleBudgetExceeded
from ..reps.homs import stable_end
from ..reps.matrep import MatRep
from .cohomology import CohomologyReport, cohomology_dims
from .ring import LocalAlgebra, SmallExtension, dual_numbers

ORACLE_GROUP_CAP = 8
ORACLE_DIM_CAP = 2
ORACLE_RING_CAP = 256
ORACLE_TUPLE_CAP = 2_000_000


def _tree_order(G) -> tuple[list, list[int]]:
    tree = G.word_tree()

    def depth(g):
        d = 0
        while g:
            g = tree[g][0]
            d += 1
        return d

    return tree, sorted(range(1, G.order), key=depth)


def images_over_ring(R: LocalAlgebra, G, gens: np.ndarray) -> np.ndarray:
    """Images of all elements along the word tree; gens has shape (..., k, n, n, B)."""
    tree, order = _tree_order(G)
    lead = gens.shape[:-4]
    n = gens.shape[-3]
    out = np.zeros(lead + (G.order, n, n, R.B), dtype=np.int64)
    out[..., 0, :, :, :] = R.mat_identity(n)
    for g in order:
        parent, k = tree[g]
        out[..., g, :, :, :] = R.matmul(out[..., parent, :, :, :], gens[..., k, :, :, :])
    return out


def homomorphism_mask(R: LocalAlgebra, G, gens: np.ndarray) -> np.ndarray:
    """For a batch of generator tuples (T, k, n, n, B): which define homomorphisms of G."""
    imgs = images_over_ring(R, G, gens)
    ok = np.ones(gens.shape[0], dtype=bool)
    for g in range(G.order):
        for k, s in enumerate(G.generator_indices):
            lhs = R.matmul(imgs[:, g], gens[:, k])
            rhs = imgs[:, G.mul(g, s)]
            ok &= np.all(lhs == rhs, axis=(1, 2, 3))
    return ok


@dataclass(eq=False)
class Lift:
    ring: LocalAlgebra
    residual: MatRep
    gens: np.ndarray  # (k, n, n, B)
    identification: np.ndarray | None = None

    def __post_init__(self):
        self.gens = self.ring.reduce(np.asarray(self.gens, dtype=np.int64))
        k = len(self.residual.group.generator_indices)
        n = self.residual.dim
        if self.gens.shape != (k, n, n, self.ring.B):
            raise InputError(f"lift generators have shape {self.gens.shape}, expected {(k, n, n, self.ring.B)}")

    @property
    def group(self):
        return self.residual.group

    @property
    def dim(self) -> int:
        return self.residual.dim

    def images(self) -> np.ndarray:
        return images_over_ring(self.ring, self.group, self.gens)

    def is_homomorphism(self) -> bool:
        return bool(homomorphism_mask(self.ring, self.group, self.gens[None])[0])

    def reduces_to_residual(self) -> bool:
        R = self.ring
        F = R.field
        phi = self.identification
        for k, A in enumerate(self.residual.gens):
            target = A if phi is None else F.matmul(F.matmul(F.inverse(phi), A), phi)
            if not np.array_equal(R.mat_residue(self.gens[k]), target):
                return False
        return True

    def check(self) -> None:
        if not self.reduces_to_residual():
            raise InputError("lift does not reduce to the residual representation")
        if not self.is_homomorphism():
            raise InputError("lift is not multiplicative")

    def normalized(self) -> "Lift":
        if self.identification is None:
            return self
        R = self.ring
        P = R.mat_lift(self.identification)
        Pinv = R.mat_inverse(P)
        gens = R.matmul(R.matmul(P[None], self.gens), Pinv[None])
        return Lift(R, self.residual, gens)

    def key(self) -> tuple:
        return tuple(self.normalized().gens.ravel().tolist())

    def format(self) -> list[list[list[str]]]:
        R = self.ring
        return [[[R.format_element(x) for x in row] for row in mat] for mat in self.gens]


def trivial_lift(rho: MatRep, R: LocalAlgebra) -> Lift:
    """rhobar extended by scalars (coefficient lift of its matrices)."""
    return Lift(R, rho, np.stack([R.mat_lift(A) for A in rho.gens]) if rho.gens else np.zeros((0, rho.dim, rho.dim, R.B), dtype=np.int64))


def lift_from_generators(rho: MatRep, R: LocalAlgebra, mats, identification=None, check: bool = True) -> Lift:
    L = Lift(R, rho, np.asarray(mats, dtype=np.int64), identification)
    if check:
        L.check()
    return L


# -- tangent space ------------------------------------------------------------------


@dataclass
class TangentCorrespondence:
    """Def(rhobar, k[eps]) <-> H^1(G, ad rhobar)."""

    residual: MatRep
    report: CohomologyReport
    ring: LocalAlgebra

    @property
    def dimension(self) -> int:
        return self.report.h1

    def _parts(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        R = self.ring
        F = R.field
        e = R.e
        base = (X[..., :e] % R.p) @ F.place
        eps = (X[..., e : 2 * e] % R.p) @ F.place
        return base, eps

    def cocycle(self, lift: Lift) -> np.ndarray:
        """beta with rho(g) = (1 + eps beta(g)) rhobar(g), as a flat 1-cochain."""
        rho = self.residual
        F = rho.field
        imgs = lift.normalized().images()
        out = []
        for g in range(1, rho.group.order):
            base, eps = self._parts(imgs[g])
            out.append(F.matmul(eps, F.inverse(base)).reshape(-1))
        if not out:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate(out)

    def forward(self, lift: Lift) -> np.ndarray:
        """H^1 coordinates of a k[eps]-lift."""
        beta = self.cocycle(lift)
        return self.report.H1.coordinates(beta)

    def cocycle_of(self, coords) -> np.ndarray:
        H1 = self.report.H1
        coords = np.asarray(coords, dtype=np.int64)
        F = self.residual.field
        if H1.dim == 0:
            return np.zeros(self.report.Z1.shape[1] if self.report.Z1.ndim == 2 else 0, dtype=np.int64)
        return F.matmul(coords[None, :], H1.classes)[0]

    def lift_of_cocycle(self, beta: np.ndarray) -> Lift:
        rho = self.residual
        R = self.ring
        F = rho.field
        n = rho.dim
        e = R.e
        gens = []
        for k, s in enumerate(rho.group.generator_indices):
            A = rho.gens[k]
            b = beta[(s - 1) * n * n : s * n * n].reshape(n, n) if s else np.zeros((n, n), dtype=np.int64)
            eps = F.matmul(b, A)
            X = np.zeros((n, n, R.B), dtype=np.int64)
            X[..., :e] = F.digits[A]
            X[..., e : 2 * e] = F.digits[eps]
            gens.append(X)
        return Lift(R, rho, np.array(gens, dtype=np.int64).reshape(-1, n, n, R.B))

    def inverse(self, coords) -> Lift:
        return self.lift_of_cocycle(self.cocycle_of(coords))

    def all_classes(self) -> list[Lift]:
        q = self.residual.field.q
        return [self.inverse(np.array(c, dtype=np.int64)) for c in itertools.product(range(q), repeat=self.dimension)]

    def extension_module(self, coords) -> MatRep:
        """The 2n-dimensional kG-module on (v, eps v): g -> [[rhobar, 0], [B, rhobar]]."""
        rho = self.residual
        n = rho.dim
        lift = self.inverse(coords)
        mats = []
        for X in lift.gens:
            base, eps = self._parts(X)
            M = np.zeros((2 * n, 2 * n), dtype=np.int64)
            M[:n, :n] = base
            M[n:, n:] = base
            M[n:, :n] = eps
            mats.append(M)
        return MatRep.from_generators(rho.group, rho.field, mats, label=f"ext({rho.label})", n=2 * n)


def tangent_correspondence(rho: MatRep, report: CohomologyReport | None = None) -> TangentCorrespondence:
    report = cohomology_dims(rho) if report is None else report
    return TangentCorrespondence(rho, report, dual_numbers(rho.field.p, rho.field.e))


# -- obstructions -----------------------------------------------------------------------


@dataclass
class ObstructionResult:
    extension: SmallExtension
    cocycles: list[np.ndarray]  # one 2-cocycle over k per k-basis element of I
    normal_forms: list[np.ndarray]  # the same, reduced modulo 2-coboundaries
    coordinates: np.ndarray  # (dim I, h^2) coordinates in the chosen H^2 basis
    kernel_basis: np.ndarray = field(repr=False)
    lift: Lift | None = None

    @property
    def vanishes(self) -> bool:
        return not any(np.any(v) for v in self.normal_forms)


def _kernel_coordinates(ext: SmallExtension, X: np.ndarray) -> np.ndarray:
    """k-coordinates of an array of kernel elements (..., B) -> (..., t)."""
    _, table = ext.kernel_coordinates
    flat = X.reshape(-1, X.shape[-1])
    out = []
    for v in flat:
        try:
            out.append(table[tuple(v.tolist())])
        except KeyError:
            raise InternalInconsistency("2-cocycle value lies outside the kernel of the small extension") from None
    t = ext.kernel_dimension
    return np.array(out, dtype=np.int64).reshape(X.shape[:-1] + (t,))


def obstruction_class(
    rho0: Lift,
    ext: SmallExtension,
    report: CohomologyReport | None = None,
    rng: np.random.Generator | None = None,
) -> ObstructionResult:
    """Class of c(g, h) = gamma(gh) gamma(h)^-1 gamma(g)^-1 in H^2(G, ad) (x) I.

    gamma is the coefficient lift of rho0, optionally perturbed by random
    elements of M_n(I) (the class does not depend on the choice).  When the
    class vanishes, gamma is corrected by a 1-cochain to a genuine lift.
    """
    rho0 = rho0.normalized()
    R1, R0 = ext.R1, ext.R0
    if rho0.ring.key() != R0.key():
        raise InputError("the lift is not defined over the target of the small extension")
    rho = rho0.residual
    G = rho.group
    F = rho.field
    n = rho.dim
    report = cohomology_dims(rho) if report is None else report
    kbasis, _ = ext.kernel_coordinates
    t = kbasis.shape[0]
    imgs0 = rho0.images()
    gamma = ext.section(imgs0).copy()
    if rng is not None and t:
        for g in range(1, G.order):
            coeffs = rng.integers(0, F.q, size=(n, n, t))
            gamma[g] = R1.add(gamma[g], _combine_kernel(R1, coeffs, kbasis))
    gamma = R1.reduce(gamma)
    gamma[0] = R1.mat_identity(n)
    ginv = R1.mat_inverse(gamma)
    m = G.order - 1
    cocycles = [np.zeros(m * m * n * n, dtype=np.int64) for _ in range(t)]
    eye = R1.mat_identity(n)
    for g in range(1, G.order):
        for h in range(1, G.order):
            gh = G.mul(g, h)
            c = R1.matmul(R1.matmul(gamma[gh], ginv[h]), ginv[g])
            C = R1.reduce(c - eye)
            coords = _kernel_coordinates(ext, C)  # (n, n, t)
            off = ((g - 1) * m + (h - 1)) * n * n
            for j in range(t):
                cocycles[j][off : off + n * n] = coords[..., j].reshape(-1)
    H2 = report.H2
    normal = [H2.canonical(c) for c in cocycles] if m else [c for c in cocycles]
    coords = np.array([H2.coordinates(c) for c in cocycles], dtype=np.int64).reshape(t, H2.dim) if m else np.zeros((t, 0), dtype=np.int64)
    result = ObstructionResult(ext, cocycles, normal, coords, kbasis)
    if result.vanishes:
        result.lift = _correct(rho0, ext, report, gamma, cocycles, kbasis)
    return result


def _combine_kernel(R1: LocalAlgebra, coeffs: np.ndarray, kbasis: np.ndarray) -> np.ndarray:
    """sum_j s(coeffs[..., j]) iota_j in R1."""
    out = np.zeros(coeffs.shape[:-1] + (R1.B,), dtype=np.int64)
    for j in range(kbasis.shape[0]):
        out = out + R1.mul(R1.lift_residue(coeffs[..., j]), np.broadcast_to(kbasis[j], coeffs.shape[:-1] + (R1.B,)))
    return R1.reduce(out)


def _correct(rho0: Lift, ext: SmallExtension, report: CohomologyReport, gamma, cocycles, kbasis) -> Lift:
    R1 = ext.R1
    rho = rho0.residual
    G = rho.group
    F = rho.field
    n = rho.dim
    t = kbasis.shape[0]
    m = G.order - 1
    B = np.zeros((G.order, n, n, t), dtype=np.int64)
    for j in range(t):
        b = F.solve(report.d1, cocycles[j]) if m else np.zeros(0, dtype=np.int64)
        if b is None:
            raise InternalInconsistency("vanishing obstruction class without a coboundary solution")
        for g in range(1, G.order):
            B[g, :, :, j] = b[(g - 1) * n * n : g * n * n].reshape(n, n)
    corr = _combine_kernel(R1, B, kbasis)
    new_gamma = R1.matmul(R1.add(R1.mat_identity(n)[None], corr), gamma)
    gens = np.stack([new_gamma[s] for s in G.generator_indices]) if G.generator_indices else np.zeros((0, n, n, R1.B), dtype=np.int64)
    L = Lift(R1, rho, gens)
    if not L.is_homomorphism():
        raise InternalInconsistency("corrected lift is not multiplicative")
    imgs = L.images()
    if not np.array_equal(ext.alpha(imgs), ext.alpha(rho0.images())):
        raise InternalInconsistency("corrected lift does not reduce to the given lift")
    return L


# -- brute-force oracles ---------------------------------------------------------------


def _check_caps(rho: MatRep, R: LocalAlgebra) -> None:
    if rho.group.order > ORACLE_GROUP_CAP or rho.dim > ORACLE_DIM_CAP or R.size > ORACLE_RING_CAP:
        raise OracleBudgetExceeded(
            f"oracle caps: |G| <= {ORACLE_GROUP_CAP}, n <= {ORACLE_DIM_CAP}, |R| <= {ORACLE_RING_CAP}"
            f" (got {rho.group.order}, {rho.dim}, {R.size})"
        )


def _perturbations(R: LocalAlgebra, elements: np.ndarray, n: int) -> np.ndarray:
    """All n x n matrices with entries from a list of ring elements."""
    idx = np.array(list(itertools.product(range(len(elements)), repeat=n * n)), dtype=np.int64)
    return elements[idx].reshape(-1, n, n, R.B)


def _unipotent_group(R: LocalAlgebra, n: int) -> tuple[np.ndarray, np.ndarray]:
    """All X in 1 + M_n(m_R) with their inverses."""
    mR = R.maximal_ideal
    X = R.reduce(R.mat_identity(n)[None] + _perturbations(R, mR, n))
    return X, R.mat_inverse(X)


def _search(rho: MatRep, R: LocalAlgebra, base: np.ndarray, elements: np.ndarray) -> np.ndarray:
    """All homomorphic generator tuples base[k] + M_n(elements)."""
    G = rho.group
    n = rho.dim
    pert = _perturbations(R, elements, n)
    per_gen = []
    orders = G.element_orders
    for k, s in enumerate(G.generator_indices):
        cand = R.reduce(base[k][None] + pert)
        # necessary condition: X^{ord(s)} = 1
        P = cand.copy()
        for _ in range(int(orders[s]) - 1):
            P = R.matmul(P, cand)
        keep = np.all(P == R.mat_identity(n)[None], axis=(1, 2, 3))
        per_gen.append(cand[keep])
    total = 1
    for c in per_gen:
        total *= len(c)
    if total > ORACLE_TUPLE_CAP:
        raise OracleBudgetExceeded(f"{total} candidate generator tuples exceed the oracle budget")
    if not per_gen:
        return np.zeros((1, 0, n, n, R.B), dtype=np.int64)
    if total == 0:
        return np.zeros((0, len(per_gen), n, n, R.B), dtype=np.int64)
    idx = np.array(list(itertools.product(*[range(len(c)) for c in per_gen])), dtype=np.int64)
    tuples = np.stack([per_gen[k][idx[:, k]] for k in range(len(per_gen))], axis=1)
    out = []
    for start in range(0, len(tuples), 4096):
        chunk = tuples[start : start + 4096]
        out.append(chunk[homomorphism_mask(R, G, chunk)])
    return np.concatenate(out)


@dataclass
class LiftClass:
    representative: Lift
    size: int  # number of lifts (generator tuples) in the strict-equivalence class


def all_lifts(rho: MatRep, R: LocalAlgebra) -> np.ndarray:
    """Every homomorphic generator tuple over R reducing to rhobar."""
    _check_caps(rho, R)
    base = np.stack([R.mat_lift(A) for A in rho.gens]) if rho.gens else np.zeros((0, rho.dim, rho.dim, R.B), dtype=np.int64)
    return _search(rho, R, base, R.maximal_ideal)


def enumerate_lifts(rho: MatRep, R: LocalAlgebra) -> list[LiftClass]:
    """Strict-equivalence classes of lifts of rhobar over R, by exhaustion."""
    if R.p != rho.field.p or R.e != rho.field.e:
        raise InputError("ring residue field differs from the field of the representation")
    tuples = all_lifts(rho, R)
    X, Xinv = _unipotent_group(R, rho.dim)
    keys = {tuple(t.ravel().tolist()): i for i, t in enumerate(tuples)}
    seen: set = set()
    classes = []
    for key in sorted(keys):
        if key in seen:
            continue
        t = tuples[keys[key]]
        conj = R.matmul(R.matmul(X[:, None], t[None]), Xinv[:, None])
        orbit = {tuple(c.ravel().tolist()) for c in conj}
        if not orbit <= keys.keys():
            raise InternalInconsistency("conjugate of a lift is missing from the enumeration")
        seen |= orbit
        classes.append(LiftClass(Lift(R, rho, t), len(orbit)))
    return classes


def search_lift(rho0: Lift, ext: SmallExtension) -> Lift | None:
    """Exhaustive search for a lift of rho0 through a small extension."""
    rho0 = rho0.normalized()
    R1 = ext.R1
    rho = rho0.residual
    _check_caps(rho, R1)
    base = ext.section(rho0.gens)
    kernel = np.array(sorted(ext.kernel_coordinates[1]), dtype=np.int64).reshape(-1, R1.B)
    found = _search(rho, R1, base, kernel)
    if len(found) == 0:
        return None
    return Lift(R1, rho, found[0])


def _strict_witness(R: LocalAlgebra, A: np.ndarray, B: np.ndarray, X: np.ndarray) -> bool:
    """Some X[i] with X A = B X on every generator."""
    if A.shape[0] == 0:
        return True
    lhs = R.matmul(X[:, None], A[None])
    rhs = R.matmul(B[None], X[:, None])
    return bool(np.any(np.all(lhs == rhs, axis=(1, 2, 3, 4))))


def lifts_isomorphic(L1: Lift, L2: Lift, cross_check: bool = True) -> bool:
    """Isomorphism of lifts compatible with the residual identifications."""
    R = L1.ring
    if L2.ring.key() != R.key() or L1.dim != L2.dim:
        raise InputError("lifts must share the coefficient ring and dimension")
    _check_caps(L1.residual, R)
    A, B = L1.normalized().gens, L2.normalized().gens
    X, _ = _unipotent_group(R, L1.dim)
    compatible = _strict_witness(R, A, B, X)
    if cross_check and stable_end(L1.residual) == 1:
        if compatible != lifts_plainly_isomorphic(L1, L2):
            raise InternalInconsistency("stable End is k but compatible and plain isomorphism disagree")
    return compatible


def lifts_plainly_isomorphic(L1: Lift, L2: Lift) -> bool:
    """Isomorphism of the underlying RG-modules, ignoring identifications."""
    R = L1.ring
    n = L1.dim
    F = R.field
    X, _ = _unipotent_group(R, n)
    units = []
    for entries in itertools.product(range(F.q), repeat=n * n):
        M = np.array(entries, dtype=np.int64).reshape(n, n)
        if F.rank(M) == n:
            units.append(R.mat_lift(M))
    U = np.stack(units)
    all_units = R.matmul(U[:, None], X[None]).reshape(-1, n, n, R.B)
    return _strict_witness(R, L1.gens, L2.gens, all_units)


def swapped_identification_pair(p: int) -> tuple[Lift, Lift]:
    """Two lifts of the trivial 2-dimensional module of C_p over GF(p)[eps].

    Both have module M with sigma -> [[1, eps], [0, 1]]; the identifications
    are the identity and the swap of the two basis vectors.  They are
    isomorphic as modules but not as lifts.
    """
    from ..exact.finite_field import get_field
    from ..groups import build_group
    from ..reps.matrep import trivial_module

    G = build_group([list(range(1, p)) + [0]], degree=p, name=f"C{p}")
    F = get_field(p)
    V = trivial_module(G, F, dim=2)
    R = dual_numbers(p)
    sigma = np.zeros((2, 2, R.B), dtype=np.int64)
    sigma[0, 0, 0] = sigma[1, 1, 0] = 1
    sigma[0, 1, 1] = 1
    # sigma^p = [[1, p eps], [0, 1]] = 1, and every group generator maps to sigma
    gens = np.stack([sigma for _ in G.generator_indices])
    swap = np.array([[0, 1], [1, 0]], dtype=np.int64)
    return Lift(R, V, gens), Lift(R, V, gens, identification=swap)
