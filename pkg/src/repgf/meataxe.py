"""Irreducibility testing and decomposition of modules over GF(q).

`is_irreducible` runs a Holt-Rees style MeatAxe: random algebra elements,
factor their minimal polynomial, spin a null vector of f(theta) and, when
that does not split, certify with Norton's dual test.  `spin_oracle` is the
independent brute-force check: every projective point must generate the
whole space under the group.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .errors import CertificationError, ValidationError
from .fields import FieldSpec
from .groups import FiniteGroup
from .linalg import Echelon, identity, inverse, min_poly, nullspace, rank, spin
from .poly import factor_poly, poly_eval_matrix
from .representations import (
    Representation,
    intertwining_number,
    regular_rep,
    require_semisimple,
    trivial_rep,
)

__all__ = [
    "IrreducibilityResult",
    "DecompositionResult",
    "is_irreducible",
    "spin_oracle",
    "projective_point_count",
    "decompose",
    "irreducibles_of_group",
    "subrepresentation",
    "verify_decomposition",
    "is_isomorphic",
    "ORACLE_POINT_LIMIT",
]

ORACLE_POINT_LIMIT = 2**14
MEATAXE_TRIES = 60


@dataclass
class IrreducibilityResult:
    irreducible: bool
    witness: np.ndarray | None = None  # RREF rows of a proper invariant subspace
    method: str = "meataxe"

    def __bool__(self):
        return self.irreducible


def projective_point_count(q: int, d: int) -> int:
    return (q**d - 1) // (q - 1)


def _projective_points(F: FieldSpec, d: int, lead: int, start: int, stop: int) -> np.ndarray:
    """Points with first nonzero coordinate `lead` (equal to 1), slice [start, stop)."""
    tail = d - lead - 1
    idx = np.arange(start, stop, dtype=np.int64)
    pts = np.zeros((len(idx), d), dtype=np.int64)
    pts[:, lead] = 1
    for j in range(tail):
        pts[:, d - 1 - j] = idx % F.q
        idx = idx // F.q
    return pts


def _full_rank_batch(F: FieldSpec, T: np.ndarray) -> np.ndarray:
    """For T of shape (P, rows, d): whether each slice has rank d."""
    T = T.copy()
    P, rows, d = T.shape
    ok = np.ones(P, dtype=bool)
    used = np.zeros((P, rows), dtype=bool)
    ar = np.arange(P)
    for c in range(d):
        cand = (T[:, :, c] != 0) & ~used
        has = cand.any(axis=1)
        ok &= has
        piv = np.argmax(cand, axis=1)
        prow = T[ar, piv, :]
        pval = prow[:, c]
        pval = np.where(has, pval, 1)
        scale = F.mul(T[:, :, c], F.inv(pval)[:, None])
        scale[ar, piv] = 0
        scale[~has] = 0
        T = F.sub(T, F.mul(scale[:, :, None], prow[:, None, :]))
        used[ar[has], piv[has]] = True
    return ok


def spin_oracle(V: Representation, limit: int | None = ORACLE_POINT_LIMIT, chunk: int = 4096) -> IrreducibilityResult:
    """Exhaustive check: every projective point spans V under the group.

    The spin of v is span{g v : g in G}, so each point needs a rank test
    on |G| vectors.  Raises ValueError above `limit` points (None = no cap).
    """
    F, d = V.field, V.dim
    if d == 0:
        raise ValidationError("zero module")
    count = projective_point_count(F.q, d)
    if limit is not None and count > limit:
        raise ValueError(f"{count} projective points exceeds the oracle limit {limit}")
    imgs = V.element_images()  # (|G|, d, d)
    per = max(1, chunk // max(1, len(imgs)))
    for lead in range(d):
        total = F.q ** (d - lead - 1)
        for start in range(0, total, per):
            pts = _projective_points(F, d, lead, start, min(total, start + per))
            # T[p, g, :] = imgs[g] @ pts[p]
            T = F.matmul(imgs[None, :, :, :], pts[:, None, :, None])[..., 0]
            ok = _full_rank_batch(F, T)
            if not ok.all():
                v = pts[np.argmin(ok)]
                return IrreducibilityResult(False, spin(F, v, V.images), "oracle")
    return IrreducibilityResult(True, None, "oracle")


def _dual_witness(F: FieldSpec, dual_span: np.ndarray, d: int) -> np.ndarray:
    """The annihilator of a dual submodule is a submodule of V."""
    ann = nullspace(F, dual_span)
    E = Echelon(F, d)
    E.add(ann)
    return E.R


def _meataxe(V: Representation, seed: int, tries: int):
    F, d = V.field, V.dim
    gens = list(V.images)
    gens_t = [a.T.copy() for a in gens]
    rng = random.Random(seed)
    pool = list(gens)
    for attempt in range(tries):
        # grow the pool of algebra elements by products of random members
        if len(pool) < 2 * len(gens) + 6:
            a, b = rng.choice(pool), rng.choice(pool)
            pool.append(F.matmul(a, b))
        theta = np.zeros((d, d), dtype=np.int64)
        for w in pool:
            c = rng.randrange(F.q)
            if c:
                theta = F.add(theta, F.mul(c, w))
        mp = min_poly(F, theta)
        for fac, _ in factor_poly(F, mp, seed=rng.randrange(2**31)):
            fdeg = len(fac) - 1
            ftheta = poly_eval_matrix(F, fac, theta)
            null = nullspace(F, ftheta)
            if len(null) == 0:
                continue
            v = null[0]
            S = spin(F, v, gens)
            if len(S) < d:
                return IrreducibilityResult(False, S, "meataxe")
            if len(null) != fdeg:
                continue
            w = nullspace(F, ftheta.T)[0]
            St = spin(F, w, gens_t)
            if len(St) < d:
                return IrreducibilityResult(False, _dual_witness(F, St, d), "meataxe")
            return IrreducibilityResult(True, None, "meataxe")
    return None


def is_irreducible(V: Representation, seed: int = 0, oracle_limit: int = ORACLE_POINT_LIMIT) -> IrreducibilityResult:
    """Decide irreducibility; a reducible verdict carries an invariant-subspace witness."""
    d = V.dim
    if d == 0:
        raise ValidationError("zero module")
    require_semisimple(V.group, V.field)
    if d == 1:
        return IrreducibilityResult(True, None, "trivial")
    if not V.images:
        e = np.zeros((1, d), dtype=np.int64)
        e[0, 0] = 1
        return IrreducibilityResult(False, e, "trivial")
    res = _meataxe(V, seed, MEATAXE_TRIES)
    if res is not None:
        if res.witness is not None:
            _check_witness(V, res.witness)
        return res
    if projective_point_count(V.field.q, d) <= oracle_limit:
        return spin_oracle(V, limit=None)
    raise CertificationError(f"MeatAxe inconclusive after {MEATAXE_TRIES} tries on a {d}-dimensional module")


def _check_witness(V: Representation, W: np.ndarray):
    F = V.field
    if not (0 < len(W) < V.dim):
        raise CertificationError("witness is not a proper nonzero subspace")
    if len(spin(F, W, V.images)) != len(W):
        raise CertificationError("witness subspace is not invariant")


def subrepresentation(V: Representation, basis_cols: np.ndarray) -> Representation:
    """V restricted to an invariant subspace with the given column basis."""
    F = V.field
    U = np.asarray(basis_cols, dtype=np.int64)
    k = U.shape[1]
    # solve U Y = A U for each generator via a left inverse of U
    E_rows, piv = _left_inverse(F, U)
    mats = [F.matmul(E_rows, F.matmul(a, U)) for a in V.images]
    return Representation(V.group, F, mats, dim=k, check=False)


def _left_inverse(F, U):
    d, k = U.shape
    from .linalg import rref

    R, piv = rref(F, np.hstack([U, identity(d)]))
    # rows with pivot in the first k columns give a left inverse
    return R[:k, k:], piv


@dataclass
class DecompositionResult:
    summands: list  # (irreducible Representation, multiplicity)
    change_of_basis: np.ndarray
    blocks: list = field(default_factory=list)  # (summand index, dim) in basis order

    @property
    def dims(self):
        return [s.dim for s, _ in self.summands]


def _equivariant_complement(V: Representation, U: np.ndarray) -> np.ndarray:
    """Columns spanning a G-invariant complement of the column space of U."""
    F, d = V.field, V.dim
    k = U.shape[1]
    # complete U to a basis with standard vectors
    E = Echelon(F, d)
    E.add(U.T)
    extra = []
    for c in range(d):
        e = np.zeros(d, dtype=np.int64)
        e[c] = 1
        if not E.contains(e):
            E.add(e)
            extra.append(e)
    C = np.hstack([U, np.array(extra, dtype=np.int64).T.reshape(d, len(extra))])
    Ci = inverse(F, C)
    D = np.zeros((d, d), dtype=np.int64)
    D[:k, :k] = identity(k)
    P0 = F.matmul(C, F.matmul(D, Ci))
    imgs = V.element_images()
    inv_idx = V.group.inv
    avg = F.sum(F.matmul(imgs, F.matmul(P0[None], imgs[inv_idx])), axis=0)
    P = F.mul(F.sinv(V.group.order % F.p), avg)
    return nullspace(F, P).T


def decompose(V: Representation, seed: int = 0) -> DecompositionResult:
    """Direct-sum decomposition into irreducibles (Maschke splitting)."""
    require_semisimple(V.group, V.field)
    F, d = V.field, V.dim
    leaves = []  # (basis columns in V's coordinates, irreducible rep)
    stack = [(identity(d), V)]
    step = 0
    while stack:
        basis, W = stack.pop()
        res = is_irreducible(W, seed=seed + step)
        step += 1
        if res.irreducible:
            leaves.append((basis, W))
            continue
        U = res.witness.T
        comp = _equivariant_complement(W, U)
        for part in (comp, U):
            stack.append((F.matmul(basis, part), subrepresentation(W, part)))
    leaves.reverse()
    classes = []  # [rep, multiplicity]
    blocks = []
    for basis, S in leaves:
        for ci, entry in enumerate(classes):
            if entry[0].dim == S.dim and intertwining_number(S, entry[0]):
                entry[1] += 1
                blocks.append((ci, S.dim))
                break
        else:
            classes.append([S, 1])
            blocks.append((len(classes) - 1, S.dim))
    cob = np.hstack([b for b, _ in leaves]) if leaves else identity(0)
    return DecompositionResult([(s, m) for s, m in classes], cob, blocks)


def verify_decomposition(V: Representation, dec: DecompositionResult) -> bool:
    """Check the block-diagonalization certificate and the multiplicities."""
    F = V.field
    C = dec.change_of_basis
    if C.shape != (V.dim, V.dim) or rank(F, C) != V.dim:
        return False
    if sum(m * s.dim for s, m in dec.summands) != V.dim:
        return False
    Ci = inverse(F, C)
    conj = [F.matmul(Ci, F.matmul(a, C)) for a in V.images]
    mask = np.zeros((V.dim, V.dim), dtype=bool)
    o = 0
    spans = []
    for ci, d in dec.blocks:
        mask[o : o + d, o : o + d] = True
        spans.append((ci, o, d))
        o += d
    if any((a[~mask] != 0).any() for a in conj):
        return False
    for ci, o, d in spans:
        S = dec.summands[ci][0]
        B = Representation(V.group, F, [a[o : o + d, o : o + d] for a in conj], dim=d, check=False)
        if not is_isomorphic(B, S):
            return False
    for S, m in dec.summands:
        if intertwining_number(V, S) != m * intertwining_number(S, S):
            return False
    return True


def irreducibles_of_group(H: FiniteGroup, F: FieldSpec, seed: int = 0) -> list:
    """All irreducible representations of H over F, one per isomorphism class.

    Obtained from the regular representation and certified complete by
    sum dim(V)^2 / i(V, V) = |H|.  Sorted by (dim, generator images).
    """
    require_semisimple(H, F)
    if H.order == 1:
        return [trivial_rep(H, F)]
    reg = regular_rep(H, F)
    dec = decompose(reg, seed=seed)
    reps = [s for s, _ in dec.summands]
    total = 0
    for S in reps:
        e = intertwining_number(S, S)
        total += S.dim * S.dim // e
        if (S.dim * S.dim) % e:
            raise CertificationError("endomorphism dimension does not divide dim^2")
    if total != H.order:
        raise CertificationError(f"Wedderburn count {total} != |H| = {H.order}")
    reps.sort(key=lambda S: S.encoding())
    return reps


def is_isomorphic(M: Representation, N: Representation) -> bool:
    """For irreducible M, N: isomorphic iff Hom is nonzero."""
    return M.dim == N.dim and intertwining_number(M, N) > 0
