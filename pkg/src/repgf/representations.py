"""Representations as matrix systems.

A Representation stores one invertible matrix per generator of its group;
images of other elements are derived along the group's word tree and
cached.  Induced modules use the basis t_i (x) e_a ordered coset-major.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from .errors import CharacteristicError, ValidationError
from .fields import FieldSpec
from .groups import FiniteGroup, left_coset_reps, subgroup
from .linalg import commutant_dim, identity, inverse, rank, solve_commutant

__all__ = [
    "Representation",
    "rep_from_images",
    "trivial_rep",
    "regular_rep",
    "permutation_rep",
    "direct_sum",
    "restrict",
    "induce",
    "conjugate_rep",
    "intertwining_number",
    "is_disjoint",
    "find_isomorphism",
    "require_semisimple",
]


class Representation:
    def __init__(self, group: FiniteGroup, field: FieldSpec, images, dim: int | None = None, check: bool = True):
        imgs = tuple(np.array(a, dtype=np.int64) for a in images)
        if len(imgs) != len(group.gens):
            raise ValidationError(f"expected {len(group.gens)} generator images, got {len(imgs)}")
        if dim is None:
            if not imgs:
                raise ValidationError("dimension is required for a group without generators")
            dim = imgs[0].shape[0]
        for a in imgs:
            if a.shape != (dim, dim):
                raise ValidationError(f"generator image of shape {list(a.shape)} in a {dim}-dimensional representation")
            if ((a < 0) | (a >= field.q)).any():
                raise ValidationError("matrix entries are not field codes")
            a.setflags(write=False)
        self.group = group
        self.field = field
        self.images = imgs
        self.dim = int(dim)
        self._all = None
        if check:
            self.validate()

    def validate(self):
        F = self.field
        for name, a in zip(self.group.gen_names, self.images):
            if rank(F, a) < self.dim:
                raise ValidationError(f"image of generator {name} is singular")
        allim = self.element_images()
        G = self.group
        for s, g in enumerate(G.gens):
            lg = G.local(g)
            if not np.array_equal(F.matmul(self.images[s][None], allim), allim[G.mult[lg]]):
                raise ValidationError(
                    f"relation violation: generator images are inconsistent with the group law (at {G.gen_names[s]})"
                )

    def element_images(self) -> np.ndarray:
        """Images of all elements, indexed by the group's local order."""
        if self._all is None:
            G, F, d = self.group, self.field, self.dim
            out = np.zeros((G.order, d, d), dtype=np.int64)
            out[0] = identity(d)
            for level in G.tree_levels[1:]:
                level = np.array(level)
                gens = G.tree_gen[level]
                parents = G.tree_parent[level]
                for s in np.unique(gens):
                    sel = level[gens == s]
                    out[sel] = F.matmul(self.images[s][None], out[G.tree_parent[sel]])
                del parents
            out.setflags(write=False)
            self._all = out
        return self._all

    def image(self, x: int) -> np.ndarray:
        """Image of the root element x."""
        return self.element_images()[self.group.local(x)]

    def encoding(self) -> tuple:
        return (self.dim, tuple(tuple(a.ravel().tolist()) for a in self.images))

    def images_dict(self) -> dict:
        F = self.field
        return {
            name: [[F.encode(x) for x in row] for row in a]
            for name, a in zip(self.group.gen_names, self.images)
        }

    def is_semisimple_context(self) -> bool:
        return self.group.order % self.field.p != 0

    def __repr__(self):
        return f"Representation(dim={self.dim}, group_order={self.group.order}, field={self.field})"


def require_semisimple(group: FiniteGroup, field: FieldSpec):
    order = group.root.order if hasattr(group, "root") else group.order
    if order % field.p == 0:
        raise CharacteristicError(field.p, order)


def rep_from_images(G: FiniteGroup, images, F: FieldSpec, dim: int | None = None) -> Representation:
    return Representation(G, F, images, dim=dim, check=True)


def trivial_rep(G: FiniteGroup, F: FieldSpec, dim: int = 1) -> Representation:
    return Representation(G, F, [identity(dim) for _ in G.gens], dim=dim, check=False)


def _perm_matrix(perm) -> np.ndarray:
    n = len(perm)
    M = np.zeros((n, n), dtype=np.int64)
    M[np.asarray(perm), np.arange(n)] = 1
    return M


def regular_rep(G: FiniteGroup, F: FieldSpec) -> Representation:
    """Left regular representation: g e_x = e_{gx}, basis in local order."""
    mats = [_perm_matrix(G.mult[G.local(g)]) for g in G.gens]
    return Representation(G, F, mats, dim=G.order, check=False)


def permutation_rep(G: FiniteGroup, H: FiniteGroup, F: FieldSpec) -> Representation:
    """Permutation module on the left cosets of H (the induced trivial module)."""
    return induce(trivial_rep(H, F), G)


def direct_sum(*reps: Representation) -> Representation:
    G, F = reps[0].group, reps[0].field
    for r in reps[1:]:
        if r.group != G or r.field != F:
            raise ValidationError("direct sum of representations of different groups")
    d = sum(r.dim for r in reps)
    mats = []
    for s in range(len(G.gens)):
        M = np.zeros((d, d), dtype=np.int64)
        o = 0
        for r in reps:
            M[o : o + r.dim, o : o + r.dim] = r.images[s]
            o += r.dim
        mats.append(M)
    return Representation(G, F, mats, dim=d, check=False)


def restrict(V: Representation, S: FiniteGroup) -> Representation:
    """V restricted to a subgroup S of V's group."""
    if not S.is_subgroup_of(V.group):
        raise ValidationError("restriction target is not a subgroup")
    if S == V.group:
        return V
    return Representation(S, V.field, [V.image(g) for g in S.gens], dim=V.dim, check=False)


def induce(L: Representation, G: FiniteGroup) -> Representation:
    """L^G for L a representation of a subgroup H of G.

    For g in G and coset representatives t_i, g t_i = t_j h with h in H;
    block (j, i) of the image of g is L(h).
    """
    H = L.group
    if not H.is_subgroup_of(G):
        raise ValidationError("induction source is not a subgroup of the target group")
    if H == G:
        return L
    R = G.root
    F = L.field
    d = L.dim
    reps = left_coset_reps(G, H)
    r = len(reps)
    coset_of = np.full(R.order, -1, dtype=np.int64)
    h_of = np.full(R.order, -1, dtype=np.int64)
    for i, t in enumerate(reps):
        members = R.mult[t, H.embed]
        coset_of[members] = i
        h_of[members] = np.arange(H.order)  # local index in H of t^-1 * member
    Limgs = L.element_images()
    mats = []
    for g in G.gens:
        M = np.zeros((r * d, r * d), dtype=np.int64)
        for i, t in enumerate(reps):
            y = R.mult[g, t]
            j = coset_of[y]
            M[j * d : (j + 1) * d, i * d : (i + 1) * d] = Limgs[h_of[y]]
        mats.append(M)
    out = Representation(G, F, mats, dim=r * d, check=False)
    out.coset_reps = reps
    return out


def conjugate_rep(L: Representation, x: int) -> Representation:
    """x (x) L: the representation g -> L(x^-1 g x) of x H x^-1."""
    H = L.group
    R = H.root
    K = subgroup(R, [H.conj(x, h) for h in H.gens], names=list(H.gen_names))
    return Representation(K, L.field, L.images, dim=L.dim, check=False)


def _same_group(M: Representation, N: Representation):
    if M.group != N.group:
        raise ValidationError("representations of different groups")
    if M.field != N.field:
        raise ValidationError("representations over different fields")


def intertwining_number(M: Representation, N: Representation) -> int:
    """dim Hom_KG(M, N)."""
    _same_group(M, N)
    return commutant_dim(M.field, M.images, N.images, M.dim, N.dim)


def hom_basis(M: Representation, N: Representation) -> np.ndarray:
    """Basis of Hom_KG(M, N) as matrices of shape (dim N, dim M)."""
    _same_group(M, N)
    return solve_commutant(M.field, M.images, N.images, M.dim, N.dim)


def is_disjoint(M: Representation, N: Representation) -> bool:
    require_semisimple(M.group, M.field)
    return intertwining_number(M, N) == 0


def find_isomorphism(M: Representation, N: Representation, seed: int = 0, budget: int = 1000):
    """An invertible X with X M(g) = N(g) X, or None.

    Tries basis combinations with small coefficients in a fixed order,
    then seeded random combinations.
    """
    if M.dim != N.dim:
        return None
    basis = hom_basis(M, N)
    if len(basis) == 0:
        return None
    F = M.field
    s = len(basis)
    flat = basis.reshape(s, -1)

    def trial(coeffs):
        X = F.matmul(np.asarray(coeffs, dtype=np.int64)[None, :], flat)[0].reshape(N.dim, M.dim)
        return X if rank(F, X) == M.dim else None

    tried = 0
    for coeffs in itertools.product(range(min(F.q, 3)), repeat=s):
        if not any(coeffs):
            continue
        X = trial(coeffs)
        if X is not None:
            return X
        tried += 1
        if tried >= budget:
            break
    rng = random.Random(seed)
    for _ in range(budget):
        X = trial([rng.randrange(F.q) for _ in range(s)])
        if X is not None:
            return X
    return None


def change_basis(V: Representation, C) -> Representation:
    """The representation g -> C^-1 V(g) C."""
    F = V.field
    Ci = inverse(F, C)
    return Representation(V.group, F, [F.matmul(Ci, F.matmul(a, C)) for a in V.images], dim=V.dim, check=False)
