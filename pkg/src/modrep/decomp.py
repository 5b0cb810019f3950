"""Decomposition numbers, generalized decomposition numbers and heights."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .blocks import Block, BlockSystem, blocks, brauer_correspondent
from .chartable import Character, character_table
from .errors import CharacterNotInBlock, InternalInconsistency, NonIntegralSolution, VanishingViolated
from .exact.cyclotomic import CycNumber, cyc_solve, is_algebraic_integer, lies_in_conductor
from .groups import Group, PSingularFrame, p_singular_frame, valuation
from .reps.brauer import BrauerCharacter, simples, splitting_field


@dataclass
class DecompositionMatrix:
    group: Group
    p: int
    entries: list[list[int]]  # rows: ordinary characters, columns: Brauer characters
    brauer: list[BrauerCharacter]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.brauer)

    def cartan(self) -> list[list[int]]:
        """D^T D."""
        rows, cols = self.shape
        return [[sum(self.entries[m][a] * self.entries[m][b] for m in range(rows)) for b in range(cols)] for a in range(cols)]


@dataclass
class GenDecompositionSlice:
    u: int
    alpha: int
    centralizer: Group
    brauer: list[BrauerCharacter]
    entries: list[list[CycNumber]]  # rows: ordinary characters of G, columns: Brauer characters of C_G(u)
    g_classes: list[int]


@dataclass
class GenDecompositionTable:
    group: Group
    p: int
    frame: PSingularFrame
    slices: list[GenDecompositionSlice]


@dataclass
class VanishingReport:
    checked: list[tuple[int, int, int]] = field(default_factory=list)
    violations: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _solve_against(brauer: list[BrauerCharacter], targets: list[list[CycNumber]]) -> list[list[CycNumber]]:
    """For each target vector t, the coefficients x with sum_nu x_nu phi_nu = t."""
    ell = len(brauer)
    A = [[brauer[nu].values[j] for nu in range(ell)] for j in range(ell)]
    # columns of the inverse, so that each target costs one matrix-vector product
    inv_cols = []
    for j in range(ell):
        e = [CycNumber.rational(1 if i == j else 0) for i in range(ell)]
        inv_cols.append(cyc_solve(A, e))
    out = []
    for t in targets:
        x = []
        for nu in range(ell):
            s = CycNumber.rational(0)
            for j in range(ell):
                s = s + inv_cols[j][nu] * t[j]
            x.append(s)
        out.append(x)
    return out


def decomposition_matrix(G: Group, p: int, seed: int = 0) -> DecompositionMatrix:
    cache = G.__dict__.setdefault("_decomp_cache", {})
    if (p, seed) in cache:
        return cache[(p, seed)]
    chars = character_table(G)
    S = simples(G, p, seed)
    classes = S.characters[0].classes if S.characters else ()
    targets = [[chi[c] for c in classes] for chi in chars]
    sol = _solve_against(S.characters, targets)
    entries = []
    for mu, row in enumerate(sol):
        ints = []
        for nu, x in enumerate(row):
            if not x.is_rational() or x.rational_value().denominator != 1 or x.rational_value() < 0:
                raise NonIntegralSolution(f"d[{mu}][{nu}] = {x} is not a non-negative integer")
            ints.append(int(x.rational_value()))
        entries.append(ints)
    D = DecompositionMatrix(G, p, entries, list(S.characters))
    cache[(p, seed)] = D
    return D


def generalized_decomposition(G: Group, p: int, seed: int = 0) -> GenDecompositionTable:
    cache = G.__dict__.setdefault("_gendecomp_cache", {})
    if (p, seed) in cache:
        return cache[(p, seed)]
    chars = character_table(G)
    frame = p_singular_frame(G, p)
    F = splitting_field(G, p)
    slices = []
    for ent in frame.entries:
        if ent.u == 0:
            D = decomposition_matrix(G, p, seed)
            entries = [[CycNumber.rational(x) for x in row] for row in D.entries]
            slices.append(GenDecompositionSlice(0, 0, ent.centralizer, list(D.brauer), entries, list(ent.g_classes)))
            continue
        C = ent.centralizer
        phis = simples(C, p, seed, field=F).characters
        targets = [[chi[c] for c in ent.g_classes] for chi in chars]
        sol = _solve_against(phis, targets)
        pa = p**ent.alpha
        entries = []
        for mu, row in enumerate(sol):
            out_row = []
            for nu, x in enumerate(row):
                if not is_algebraic_integer(x.canonical()):
                    raise NonIntegralSolution(f"generalized entry ({mu}, u{ent.u}, {nu}) = {x} is not integral")
                if not lies_in_conductor(x, pa):
                    raise NonIntegralSolution(f"generalized entry ({mu}, u{ent.u}, {nu}) = {x} lies outside Q(zeta_{pa})")
                out_row.append(x.reduce_conductor(pa))
            entries.append(out_row)
        slices.append(GenDecompositionSlice(ent.u, ent.alpha, C, list(phis), entries, list(ent.g_classes)))
    table = GenDecompositionTable(G, p, frame, slices)
    cache[(p, seed)] = table
    return table


def reconstruction_holds(table: GenDecompositionTable) -> bool:
    """zeta_mu(u_i v_ij) = sum_nu d^i_{mu nu} phi^i_nu(v_ij) at every class."""
    chars = character_table(table.group)
    covered = set()
    for sl in table.slices:
        for j, c in enumerate(sl.g_classes):
            covered.add(c)
            for mu, chi in enumerate(chars):
                s = CycNumber.rational(0)
                for nu, phi in enumerate(sl.brauer):
                    s = s + sl.entries[mu][nu] * phi.values[j]
                if s != chi[c]:
                    return False
    return covered == set(range(len(table.group.classes)))


def verify_block_vanishing(table: GenDecompositionTable, seed: int = 0, raise_on_violation: bool = True) -> VanishingReport:
    """d^i_{mu nu} = 0 whenever phi^i_nu lies in a block of C_G(u_i) whose Brauer correspondent is not mu's block."""
    G = table.group
    p = table.p
    G_blocks = blocks(G, p, seed)
    F = G_blocks.field
    report = VanishingReport()
    for i, sl in enumerate(table.slices):
        C = sl.centralizer
        C_blocks = G_blocks if sl.u == 0 else blocks(C, p, seed, field=F)
        for nu in range(len(sl.brauer)):
            b = C_blocks.blocks[C_blocks.brauer_block[nu]]
            B = b if sl.u == 0 else brauer_correspondent(G, C, b, G_blocks)
            for mu in range(len(sl.entries)):
                if G_blocks.char_block[mu] != B.index:
                    triple = (mu, i, nu)
                    report.checked.append(triple)
                    if not sl.entries[mu][nu].is_zero():
                        report.violations.append(triple)
    if report.violations and raise_on_violation:
        raise VanishingViolated(report.violations[0], f"{len(report.violations)} nonzero entries across mismatched blocks")
    return report


def character_height(G: Group, mu: int, B: Block) -> int:
    if mu not in B.characters:
        raise CharacterNotInBlock(f"character {mu} does not belong to block {B.index}")
    chi = character_table(G)[mu]
    h = valuation(chi.degree, B.p) - valuation(G.order, B.p) + B.defect
    if h < 0:
        raise InternalInconsistency(f"negative height {h} for character {mu}")
    return h


def block_diagonal(D: DecompositionMatrix, system: BlockSystem) -> bool:
    for mu, row in enumerate(D.entries):
        for nu, d in enumerate(row):
            if d and system.char_block[mu] != system.brauer_block[nu]:
                return False
    return True


# -- reduce-and-chop oracle -------------------------------------------------------


def _induced_character(G: Group, H: Group, lam: Character) -> list[CycNumber]:
    """Ind_H^G(lam) as a class function on G."""
    k = len(G.classes)
    acc = [CycNumber.rational(0) for _ in range(k)]
    for hc in H.classes.classes:
        K = int(G.classes.class_of[H.parent_indices[hc.rep]])
        acc[K] = acc[K] + lam.values[H.classes.class_of[hc.rep]] * Fraction(1, hc.centralizer_order)
    return [acc[K] * G.classes[K].centralizer_order for K in range(k)]


def _multiplicities(G: Group, psi: list[CycNumber]) -> list[int]:
    out = []
    for chi in character_table(G):
        s = CycNumber.rational(0)
        for c, cc in enumerate(G.classes.classes):
            s = s + psi[c] * chi[c].conjugate() * cc.size
        s = s / G.order
        out.append(int(s.rational_value()))
    return out


def _integer_solve(vectors: list[list[int]], target: list[int]) -> list[int] | None:
    """Integer a with sum_j a_j vectors[j] = target, by Hermite reduction with a transform."""
    m = len(vectors)
    k = len(target)
    rows = [list(v) + [1 if i == j else 0 for j in range(m)] for i, v in enumerate(vectors)]
    r = 0
    for c in range(k):
        while True:
            nz = [i for i in range(r, m) if rows[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(rows[i][c]))
            rows[r], rows[piv] = rows[piv], rows[r]
            done = True
            for i in range(r + 1, m):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        done = False
            if done:
                break
        if any(rows[i][c] for i in range(r, m)):
            r += 1
    # back-substitute the target against the echelon rows
    residual = list(target)
    coeffs = [0] * m
    row = 0
    for c in range(k):
        if row < r and rows[row][c]:
            if residual[c] % rows[row][c]:
                return None
            q = residual[c] // rows[row][c]
            residual = [x - q * y for x, y in zip(residual, rows[row][:k])]
            coeffs = [a + q * t for a, t in zip(coeffs, rows[row][k:])]
            row += 1
        elif residual[c]:
            return None
    return coeffs if not any(residual) else None


def _monomial_module(G: Group, H: Group, lam: Character, F):
    """Ind_H^G of the reduction mod p of a linear character of H."""
    import numpy as np

    from .reps.matrep import MatRep

    members = H.parent_indices
    local = {g: i for i, g in enumerate(members)}
    lam_bar = [F.reduce_cyclotomic(lam.values[H.classes.class_of[i]]) for i in range(H.order)]
    reps: list[int] = []
    coset_of: dict[int, tuple[int, int]] = {}
    for g in range(G.order):
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for h in members:
            coset_of[G.mul(g, h)] = (idx, h)
    n = len(reps)
    gens = []
    for s in G.generator_indices:
        M = np.zeros((n, n), dtype=np.int64)
        for i, r in enumerate(reps):
            j, h = coset_of[G.mul(s, r)]  # s r = r_j h
            M[j, i] = lam_bar[local[h]]
        gens.append(M)
    return MatRep(G, F, gens, n=n)


def reduce_and_chop_oracle(G: Group, p: int, seed: int = 0) -> list[list[int]]:
    """Decomposition numbers from chopping reductions of monomial modules.

    Each ordinary character is written as an integer combination of
    characters induced from linear characters of subgroups; the oracle value
    is the same combination of composition multiplicities of the reduced
    induced modules.  Independent of the Brauer-character solve.
    """
    from .blocks import subgroups_of
    from .reps.brauer import brauer_character
    from .reps.meataxe import composition_factors

    chars = character_table(G)
    k = len(chars)
    S = simples(G, p, seed)
    F = S.field
    key_index = {phi.values: nu for nu, phi in enumerate(S.characters)}
    candidates = []
    seen_classes = set()
    for Hset in subgroups_of(G, list(range(G.order))):
        # one subgroup per conjugacy class
        canon = min(tuple(sorted(G.conj(g, h) for h in Hset)) for g in range(G.order))
        if canon in seen_classes:
            continue
        seen_classes.add(canon)
        H = G.subgroup(sorted(Hset))
        for lam in character_table(H):
            if lam.degree == 1:
                psi = _induced_character(G, H, lam)
                candidates.append((H, lam, _multiplicities(G, psi)))
    vectors = [c[2] for c in candidates]
    chopped: dict[int, list[int]] = {}
    oracle = []
    for mu in range(k):
        target = [1 if i == mu else 0 for i in range(k)]
        a = _integer_solve(vectors, target)
        if a is None:
            raise InternalInconsistency(f"character {mu} is not an integer combination of monomial characters")
        row = [0] * len(S.characters)
        for j, coeff in enumerate(a):
            if coeff == 0:
                continue
            if j not in chopped:
                H, lam, _ = candidates[j]
                mult = [0] * len(S.characters)
                for factor in composition_factors(_monomial_module(G, H, lam, F), seed):
                    mult[key_index[brauer_character(factor, p).values]] += 1
                chopped[j] = mult
            row = [x + coeff * y for x, y in zip(row, chopped[j])]
        oracle.append(row)
    return oracle
