"""Truncated versal deformation rings by iterated small-extension lifting.

Work in S = W[[t_1..t_r]]/(m^D, p^m) with r = h^1.  Start from the tangent
lift over S/J_1, J_1 = (p, t)^2 + (p).  At each step lift through
S/mJ -> S/J; the obstruction class, written as sum_b h_b (x) y_b over a basis
h_b of H^2, gives relations y_b in J, and J' = mJ + (y_b) is the next ideal.
The lift over S/J' exists by construction.  When J' = J the y_b generate J
(Nakayama), so J needs at most h^2 generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..errors import CapExceeded, InternalInconsistency, NotApplicable
from ..reps.homs import stable_end
from ..reps.matrep import MatRep
from .cohomology import CohomologyReport, cohomology_dims
from .lifts import Lift, LiftClass, _unipotent_group, all_lifts, obstruction_class
from .ring import LocalAlgebra, SmallExtension, power_series_truncated

RING_SIZE_CAP = 1 << 22
MAX_STEPS = 64


@dataclass
class VersalPresentation:
    residual: MatRep
    r: int
    s: int
    degree_cap: int
    precision: int
    ambient: LocalAlgebra  # S
    relations: list[np.ndarray]  # minimal generators of J, as vectors in S
    ring: LocalAlgebra  # S / J
    lift: Lift  # over S / J
    universal: bool  # stable End is k
    steps: int
    history: list[int] = field(default_factory=list)  # relations found per step

    @property
    def monomials(self) -> list[tuple[int, ...]]:
        return self.ambient.monomials

    def relation_terms(self, y: np.ndarray) -> list[tuple[tuple[int, ...], int]]:
        """Nonzero terms (exponent vector, coefficient), t-degree first then p-adic size."""
        terms = [(a, int(c)) for a, c in zip(self.monomials, y) if c]
        return sorted(terms, key=lambda t: (sum(t[0]), t[0]))

    def format_relation(self, y: np.ndarray) -> str:
        names = ["t"] if self.r == 1 else [f"t{i + 1}" for i in range(self.r)]
        parts = []
        for a, c in sorted(self.relation_terms(y), key=lambda t: (-sum(t[0]), t[0])):
            mono = "*".join(nm if k == 1 else f"{nm}^{k}" for nm, k in zip(names, a) if k)
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"

    def relation_strings(self) -> list[str]:
        return [self.format_relation(y) for y in self.relations]

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "s": self.s,
            "degree_cap": self.degree_cap,
            "precision": self.precision,
            "relations": self.relation_strings(),
            "relation_terms": [
                [{"exponents": list(a), "coefficient": c} for a, c in self.relation_terms(y)] for y in self.relations
            ],
            "universal": self.universal,
            "steps": self.steps,
        }


def _ideal_generators(S: LocalAlgebra, gens) -> np.ndarray:
    span = S.ideal_span(gens)
    return span[np.any(S.reduce(span), axis=1)] if span.shape[0] else span


def _times_maximal(S: LocalAlgebra, gens: np.ndarray, r: int) -> np.ndarray:
    """Generators of m J for J = (gens), m = (p, t_1..t_r)."""
    mult = [S.from_int(S.p)] + [S.basis_element(1 + i) for i in range(r)]
    out = [S.mul(g, x) for g in gens for x in mult]
    return np.array(out, dtype=np.int64).reshape(-1, S.B)


def _tangent_lift(rho: MatRep, S: LocalAlgebra, R0: LocalAlgebra, report: CohomologyReport) -> Lift:
    F = rho.field
    n = rho.dim
    G = rho.group
    classes = report.H1.classes
    gens = []
    for k, s in enumerate(G.generator_indices):
        A = rho.gens[k]
        X = S.mat_lift(A)
        for i in range(report.h1):
            if s == 0:
                continue
            beta = classes[i][(s - 1) * n * n : s * n * n].reshape(n, n)
            coeff = S.mat_lift(F.matmul(beta, A))
            X = X + S.mul(coeff, np.broadcast_to(S.basis_element(1 + i), coeff.shape))
        gens.append(X)
    L = Lift(R0, rho, np.array(gens, dtype=np.int64).reshape(-1, n, n, S.B))
    if not L.is_homomorphism():
        raise InternalInconsistency("tangent lift is not multiplicative")
    return L


def _normalize_relation(S: LocalAlgebra, y: np.ndarray) -> np.ndarray:
    """Scale by a unit so the highest-degree term of least valuation has coefficient p^v."""
    p = S.p
    best = None
    for i, c in enumerate(y):
        if not c:
            continue
        v = 0
        x = int(c)
        while x % p == 0:
            x //= p
            v += 1
        key = (v, -sum(S.monomials[i]))
        if best is None or key < best[0]:
            best = (key, x)
    if best is None:
        return y
    unit = best[1]
    return S.reduce(y * pow(unit, -1, S.N))


def versal_presentation_truncated(
    rho: MatRep,
    degree_cap: int = 4,
    precision: int = 4,
    report: CohomologyReport | None = None,
) -> VersalPresentation:
    F = rho.field
    if F.e != 1:
        raise NotApplicable("versal presentations are built over W = Z_p (residue field GF(p))")
    p = F.p
    report = cohomology_dims(rho) if report is None else report
    r, s = report.h1, report.h2
    S = power_series_truncated(p, r, degree_cap, precision)
    if S.size > RING_SIZE_CAP:
        raise CapExceeded(f"truncated power series ring of order {S.size} exceeds the cap {RING_SIZE_CAP}")
    first = [S.from_int(p)] + [S.basis_element(i) for i, a in enumerate(S.monomials) if sum(a) == 2]
    J = _ideal_generators(S, np.array(first, dtype=np.int64).reshape(-1, S.B))
    lift = _tangent_lift(rho, S, S.quotient(J), report)
    history = []
    relations: list[np.ndarray] = []
    for step in range(1, MAX_STEPS + 1):
        mJ = _times_maximal(S, J, r)
        R1 = S.quotient(mJ)
        ext = SmallExtension.from_ideal(R1, J)
        ob = obstruction_class(Lift(ext.R0, rho, lift.gens), ext, report)
        kbasis = ob.kernel_basis
        ys = []
        for b in range(s):
            y = R1.zero()
            for j in range(kbasis.shape[0]):
                c = int(ob.coordinates[j, b])
                if c:
                    y = R1.add(y, R1.mul(R1.from_int(c), kbasis[j]))
            if np.any(y):
                ys.append(y)
        new_gens = np.vstack([mJ] + [y[None] for y in ys]) if ys else mJ
        J_new = _ideal_generators(S, new_gens)
        history.append(len(ys))
        S_new = S.quotient(J_new)
        if not np.any(S_new.reduce(J)):
            relations = ys
            break
        ext2 = SmallExtension.from_ideal(S_new, J)
        ob2 = obstruction_class(Lift(ext2.R0, rho, lift.gens), ext2, report)
        if not ob2.vanishes:
            raise InternalInconsistency("obstruction survives after adjoining its relations")
        lift = ob2.lift
        J = J_new
    else:
        raise CapExceeded(f"ideal did not stabilize within {MAX_STEPS} steps")
    # minimal generators of J modulo mJ, in graded order
    minimal: list[np.ndarray] = []
    acc = mJ
    for y in relations:
        Q = S.quotient(acc)
        if np.any(Q.reduce(y)):
            minimal.append(_normalize_relation(S, S.reduce(y)))
            acc = np.vstack([acc, y[None]])
    quotient = S.quotient(J)
    final = Lift(quotient, rho, lift.gens)
    if not final.is_homomorphism():
        raise InternalInconsistency("versal lift is not multiplicative")
    universal = stable_end(rho) == 1
    return VersalPresentation(rho, r, s, degree_cap, precision, S, minimal, quotient, final, universal, step, history)


# -- map counts and the classifying map ----------------------------------------------------


def _check_test_ring(pres: VersalPresentation, R: LocalAlgebra) -> None:
    if R.p != pres.ambient.p or R.e != 1:
        raise CapExceeded("test rings must have residue field GF(p)")
    if R.p_torsion_exponent() > pres.precision or R.nilpotency > pres.degree_cap:
        raise CapExceeded(
            f"{R.name} needs precision {R.p_torsion_exponent()} and degree cap {R.nilpotency};"
            f" presentation has {pres.precision} and {pres.degree_cap}"
        )


def _evaluate(pres: VersalPresentation, R: LocalAlgebra, xs: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Image of an element of S under t_i -> xs[..., i, :], for a batch of points."""
    monos = pres.monomials
    lead = xs.shape[:-2]
    out = np.zeros(lead + (R.B,), dtype=np.int64)
    max_deg = pres.degree_cap
    powers = []
    for i in range(pres.r):
        pw = [np.broadcast_to(R.one(), lead + (R.B,))]
        for _ in range(1, max_deg):
            pw.append(R.mul(pw[-1], xs[..., i, :]))
        powers.append(pw)
    for a, c in zip(monos, vec):
        if not c:
            continue
        term = np.broadcast_to(R.one(), lead + (R.B,))
        for i, k in enumerate(a):
            if k:
                term = R.mul(term, powers[i][k])
        out = out + int(c) * term
    return R.reduce(out)


def algebra_maps(pres: VersalPresentation, R: LocalAlgebra) -> np.ndarray:
    """All points x in m_R^r with every relation vanishing: the local maps (S/J) -> R."""
    _check_test_ring(pres, R)
    mR = R.maximal_ideal
    if pres.r == 0:
        pts = np.zeros((1, 0, R.B), dtype=np.int64)
    else:
        idx = np.array(list(itertools.product(range(len(mR)), repeat=pres.r)), dtype=np.int64)
        pts = mR[idx]
    ok = np.ones(len(pts), dtype=bool)
    # relations of J as computed, plus the truncation (automatic when m_R^D = 0, p^m R = 0)
    for y in pres.relations:
        ok &= ~np.any(_evaluate(pres, R, pts, y), axis=-1)
    return pts[ok]


def count_maps(pres: VersalPresentation, R: LocalAlgebra) -> int:
    return len(algebra_maps(pres, R))


def specialize(pres: VersalPresentation, R: LocalAlgebra, x: np.ndarray) -> Lift:
    """The lift over R obtained by pushing the versal lift along t -> x."""
    gens = pres.lift.gens
    flat = gens.reshape(-1, gens.shape[-1])
    imgs = np.stack([_evaluate(pres, R, x, v) for v in flat])
    return Lift(R, pres.residual, imgs.reshape(gens.shape[:-1] + (R.B,)))


@dataclass
class MapCountCheck:
    ring: str
    maps: int
    classes: int
    injective: bool
    surjective: bool

    @property
    def ok(self) -> bool:
        return self.maps == self.classes and self.injective and self.surjective


def classifying_map_check(pres: VersalPresentation, R: LocalAlgebra) -> MapCountCheck:
    """Compare Hom(S/J, R) with strict-equivalence classes of lifts over R."""
    rho = pres.residual
    tuples = all_lifts(rho, R)
    X, Xinv = _unipotent_group(R, rho.dim)
    class_of: dict = {}
    n_classes = 0
    for t in tuples:
        key = tuple(t.ravel().tolist())
        if key in class_of:
            continue
        conj = R.matmul(R.matmul(X[:, None], t[None]), Xinv[:, None])
        for c in conj:
            class_of[tuple(c.ravel().tolist())] = n_classes
        n_classes += 1
    points = algebra_maps(pres, R)
    hit = []
    for x in points:
        L = specialize(pres, R, x)
        if not L.is_homomorphism():
            raise InternalInconsistency("specialization of the versal lift is not multiplicative")
        hit.append(class_of[tuple(L.gens.ravel().tolist())])
    return MapCountCheck(R.name, len(points), n_classes, len(set(hit)) == len(hit), set(hit) == set(range(n_classes)))
