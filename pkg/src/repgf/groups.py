"""Fully enumerated finite groups.

Every group lives inside a *root* group whose elements are numbered
0 .. |root|-1 with 0 the identity.  Subgroups are FiniteGroup objects
that remember the root indices of their elements (`embed`) and carry
their own generators; all public functions take and return elements as
root indices.  Each element has a word in the generators recorded as a
breadth-first tree: x = gens[tree_gen[x]] * tree_parent[x].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .fields import lcm

__all__ = [
    "FiniteGroup",
    "AbelianGroupSpec",
    "SemidirectGroup",
    "group_from_permutations",
    "semidirect",
    "subgroup",
    "subgroup_from_elements",
    "left_coset_reps",
    "double_coset_reps",
    "double_coset",
    "conj_intersection",
]

DEFAULT_BOUND = 10000


class FiniteGroup:
    def __init__(self, mult, gens, *, names=None, root=None, embed=None, labels=None, check=True):
        mult = np.asarray(mult, dtype=np.int64)
        n = mult.shape[0]
        self.mult = mult
        self.mult.setflags(write=False)
        self.root = self if root is None else root
        self.embed = np.arange(n, dtype=np.int64) if embed is None else np.asarray(embed, dtype=np.int64)
        self.embed.setflags(write=False)
        self.gens = tuple(int(g) for g in gens)  # root indices
        self.gen_names = tuple(names) if names is not None else tuple(f"g{i}" for i in range(len(self.gens)))
        self.labels = labels
        if self.root is self:
            self._local = self.embed
        else:
            loc = np.full(self.root.order, -1, dtype=np.int64)
            loc[self.embed] = np.arange(n)
            self._local = loc
        if int(self._local[self.root_identity]) != 0:
            raise ValidationError("identity must be the first element")
        inv = np.argmax(mult == 0, axis=1)
        if not np.all(mult[np.arange(n), inv] == 0):
            raise ValidationError("multiplication table lacks inverses")
        self.inv = inv
        if check:
            self._check_table()
        self._build_tree()

    root_identity = 0

    # -- construction helpers ------------------------------------------------

    def _check_table(self):
        n = self.order
        if not np.array_equal(self.mult[0], np.arange(n)) or not np.array_equal(self.mult[:, 0], np.arange(n)):
            raise ValidationError("element 0 is not an identity")
        if n <= 64:
            a = self.mult[self.mult]  # a[x, y, z] = (x*y)*z  via mult[mult[x,y], z]
            b = self.mult[:, self.mult]  # b[x, y, z] = x*(y*z)
            if not np.array_equal(a, b):
                raise ValidationError("multiplication is not associative")
        else:
            rng = np.random.default_rng(0)
            x, y, z = rng.integers(0, n, (3, 4096))
            if not np.array_equal(self.mult[self.mult[x, y], z], self.mult[x, self.mult[y, z]]):
                raise ValidationError("multiplication is not associative")

    def _build_tree(self):
        n = self.order
        parent = np.full(n, -1, dtype=np.int64)
        gen = np.full(n, -1, dtype=np.int64)
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        levels = [[0]]
        order = [0]
        lgens = [int(self._local[g]) for g in self.gens]
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for i, g in enumerate(lgens):
                    y = int(self.mult[g, x])
                    if not seen[y]:
                        seen[y] = True
                        parent[y] = x
                        gen[y] = i
                        nxt.append(y)
            if nxt:
                levels.append(nxt)
                order.extend(nxt)
            frontier = nxt
        if not seen.all():
            raise ValidationError("generators do not generate the group")
        self.tree_parent = parent
        self.tree_gen = gen
        self.tree_levels = levels
        self.tree_order = order

    # -- basic queries ---------------------------------------------------------

    @property
    def order(self) -> int:
        return self.mult.shape[0]

    @property
    def elements(self) -> np.ndarray:
        return self.embed

    @property
    def is_root(self) -> bool:
        return self.root is self

    def local(self, x: int) -> int:
        i = int(self._local[int(x)])
        if i < 0:
            raise ValidationError(f"element {x} is not in the group")
        return i

    def contains(self, x: int) -> bool:
        return int(self._local[int(x)]) >= 0

    def contains_all(self, xs) -> bool:
        return bool(np.all(self._local[np.asarray(xs, dtype=np.int64)] >= 0))

    def is_subgroup_of(self, other: "FiniteGroup") -> bool:
        return self.root is other.root and other.contains_all(self.embed)

    def mul(self, a: int, b: int) -> int:
        return int(self.root.mult[a, b])

    def inverse(self, a: int) -> int:
        return int(self.root.inv[a])

    def conj(self, x: int, h: int) -> int:
        """x h x^-1."""
        R = self.root
        return int(R.mult[R.mult[x, h], R.inv[x]])

    def word(self, x: int) -> list[int]:
        """Generator indices i1, i2, ... with x = g_i1 g_i2 ... ."""
        i = self.local(x)
        out = []
        while i != 0:
            out.append(int(self.tree_gen[i]))
            i = int(self.tree_parent[i])
        return out

    @property
    def gen_words(self) -> list[list[int]]:
        return [self.word(x) for x in self.embed]

    def evaluate_word(self, word) -> int:
        x = 0
        for i in word:
            x = self.mul(x, self.gens[i])
        return x

    def element_order(self, x: int) -> int:
        k, y = 1, int(x)
        while y != 0:
            y = self.mul(y, x)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    def is_normal_in(self, G: "FiniteGroup") -> bool:
        R = self.root
        H = self.embed
        for g in G.embed:
            if not self.contains_all(R.mult[R.mult[g, H], R.inv[g]]):
                return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, FiniteGroup)
            and self.root is other.root
            and self.gens == other.gens
            and np.array_equal(self.embed, other.embed)
        )

    def __hash__(self):
        return hash((id(self.root), self.gens, self.embed.tobytes()))

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, gens={list(self.gen_names)})"

    def label(self, x: int):
        return self.root.labels[x] if self.root.labels is not None else int(x)


def _closure(R: FiniteGroup, gens) -> np.ndarray:
    seen = np.zeros(R.order, dtype=bool)
    seen[0] = True
    frontier = [0]
    gens = [int(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(R.mult[g, x])
                if not seen[y]:
                    seen[y] = True
                    nxt.append(y)
        frontier = nxt
    return np.flatnonzero(seen)


def _make_subgroup(G: FiniteGroup, elements, gens, names=None) -> FiniteGroup:
    R = G.root
    elements = np.asarray(elements, dtype=np.int64)
    loc = np.full(R.order, -1, dtype=np.int64)
    loc[elements] = np.arange(len(elements))
    mult = loc[R.mult[np.ix_(elements, elements)]]
    if (mult < 0).any():
        raise ValidationError("element set is not closed under multiplication")
    return FiniteGroup(mult, gens, names=names, root=R, embed=elements, check=False)


def subgroup(G: FiniteGroup, gens, names=None) -> FiniteGroup:
    """The subgroup of G's root generated by the given root elements."""
    gens = [int(g) for g in gens]
    elements = _closure(G.root, gens)
    if not G.contains_all(elements):
        raise ValidationError("generated subgroup is not contained in the ambient group")
    if names is None:
        names = [f"s{i}" for i in range(len(gens))]
    return _make_subgroup(G, elements, gens, names)


def subgroup_from_elements(G: FiniteGroup, elements) -> FiniteGroup:
    """Subgroup with the given element set; generators chosen greedily."""
    R = G.root
    elements = np.unique(np.asarray(elements, dtype=np.int64))
    if len(elements) == 0 or elements[0] != 0:
        raise ValidationError("a subgroup must contain the identity")
    target = set(elements.tolist())
    gens = []
    current = {0}
    for x in elements:
        x = int(x)
        if x in current:
            continue
        gens.append(x)
        current = set(_closure(R, gens).tolist())
        if not current <= target:
            raise ValidationError("element set is not a subgroup")
    if current != target:
        raise ValidationError("element set is not a subgroup")
    return _make_subgroup(G, elements, gens, [f"s{i}" for i in range(len(gens))])


# -- permutation groups ---------------------------------------------------------


def group_from_permutations(gens, bound: int = DEFAULT_BOUND, degree: int | None = None) -> FiniteGroup:
    """Closure of permutation generators (image arrays on 0..n-1).

    Elements are sorted lexicographically as image tuples, so the
    identity comes first.  Composition is (s t)(i) = s(t(i)).
    """
    gens = [tuple(int(i) for i in g) for g in gens]
    if degree is None:
        degree = len(gens[0]) if gens else 1
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValidationError(f"generator {list(g)} is not a permutation of 0..{degree - 1}")
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[i] for i in x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > bound:
                        raise ValidationError(f"group closure exceeds bound {bound}")
        frontier = nxt
    elems = sorted(seen)
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    P = np.array(elems, dtype=np.int64).reshape(n, degree)
    # right multiplication by each generator, then fill columns along words
    gidx = [index[g] for g in gens]
    mult = np.full((n, n), -1, dtype=np.int64)
    mult[:, 0] = np.arange(n)
    # breadth-first: b = g * c  =>  a*b = (a*g)*c
    right_by_gen = [np.array([index[tuple(P[a][list(g)])] for a in range(n)]) for g in gens]
    done = np.zeros(n, dtype=bool)
    done[0] = True
    frontier = [0]
    while frontier:
        nxt = []
        for c in frontier:
            for gi, g in enumerate(gens):
                b = index[tuple(g[i] for i in elems[c])]
                if not done[b]:
                    done[b] = True
                    mult[:, b] = mult[right_by_gen[gi], c]
                    nxt.append(b)
        frontier = nxt
    del gidx
    return FiniteGroup(mult, [index[g] for g in gens], names=[f"h{i}" for i in range(len(gens))], labels=elems)


# -- abelian groups and semidirect products -------------------------------------


@dataclass(frozen=True)
class AbelianGroupSpec:
    """Z/m_1 x ... x Z/m_k; elements are exponent vectors."""

    moduli: tuple

    def __post_init__(self):
        mods = tuple(int(m) for m in self.moduli)
        if any(m < 2 for m in mods):
            raise ValidationError(f"moduli must be >= 2, got {list(mods)}")
        object.__setattr__(self, "moduli", mods)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        out = 1
        for m in self.moduli:
            out *= m
        return out

    @property
    def exponent(self) -> int:
        return lcm(self.moduli)

    def vectors(self) -> np.ndarray:
        """All elements in lexicographic order of exponent vectors."""
        if not self.moduli:
            return np.zeros((1, 0), dtype=np.int64)
        return np.array(list(itertools.product(*[range(m) for m in self.moduli])), dtype=np.int64)

    def code(self, vec) -> int:
        c = 0
        for v, m in zip(vec, self.moduli):
            c = c * m + int(v) % m
        return c

    def decode(self, c: int) -> tuple:
        out = []
        for m in reversed(self.moduli):
            out.append(c % m)
            c //= m
        return tuple(reversed(out))

    def apply(self, matrix, vecs) -> np.ndarray:
        M = np.asarray(matrix, dtype=np.int64)
        out = np.asarray(vecs, dtype=np.int64) @ M.T
        return out % np.array(self.moduli, dtype=np.int64)

    def check_automorphism(self, matrix) -> None:
        M = np.asarray(matrix, dtype=np.int64)
        k = self.rank
        if M.shape != (k, k):
            raise ValidationError(f"action matrix must be {k}x{k}, got shape {list(M.shape)}")
        for i, mi in enumerate(self.moduli):
            for j, mj in enumerate(self.moduli):
                if (M[i, j] * mj) % mi:
                    raise ValidationError(
                        f"action matrix {M.tolist()} is not well defined on Z/{mj} -> Z/{mi} "
                        f"(entry ({i},{j}) = {M[i, j]} times {mj} is not 0 mod {mi})"
                    )
        images = self.apply(M, self.vectors())
        if len({tuple(r) for r in images.tolist()}) != self.order:
            raise ValidationError(f"action matrix {M.tolist()} is not an automorphism (not invertible)")


class SemidirectGroup(FiniteGroup):
    """N x| H with N abelian; element (n, h) has index h*|N| + code(n).

    Generators are the standard basis of N (named n0, n1, ...) followed by
    the generators of H (named h0, h1, ...).  Multiplication is
    (n1, h1)(n2, h2) = (n1 + phi(h1)(n2), h1 h2).
    """

    def __init__(self, N: AbelianGroupSpec, H: FiniteGroup, action_on_gens):
        if not H.is_root:
            raise ValidationError("H must be given as a standalone group")
        action_on_gens = [np.asarray(a, dtype=np.int64).reshape(N.rank, N.rank) for a in action_on_gens]
        if len(action_on_gens) != len(H.gens):
            raise ValidationError(
                f"need one action matrix per H-generator: {len(H.gens)} generators, {len(action_on_gens)} matrices"
            )
        for A in action_on_gens:
            N.check_automorphism(A)
        vecs = N.vectors()
        nN, nH = N.order, H.order
        codes = np.array([N.code(v) for v in vecs], dtype=np.int64)
        gen_perm = [codes[np.array([N.code(w) for w in N.apply(A, vecs)])] if nN else None for A in action_on_gens]
        # phi(h) as a permutation of N codes, along H's word tree
        phi = np.zeros((nH, nN), dtype=np.int64)
        phi[0] = np.arange(nN)
        for x in H.tree_order[1:]:
            phi[x] = gen_perm[H.tree_gen[x]][phi[H.tree_parent[x]]]
        for s, g in enumerate(H.gens):
            if not np.array_equal(phi[H.mult[g]], gen_perm[s][phi]):
                raise ValidationError(
                    "action is not a homomorphism H -> Aut(N): the matrices violate a relation of H"
                )
        mods = np.array(N.moduli, dtype=np.int64)
        radix = np.array([int(np.prod(mods[i + 1 :])) for i in range(N.rank)], dtype=np.int64)
        add = ((vecs[:, None, :] + vecs[None, :, :]) % mods) @ radix
        mult = np.empty((nH * nN, nH * nN), dtype=np.int64)
        for h1 in range(nH):
            nn = add[:, phi[h1]]  # nn[n1, n2] = n1 + phi(h1)(n2)
            for h2 in range(nH):
                mult[h1 * nN : (h1 + 1) * nN, h2 * nN : (h2 + 1) * nN] = H.mult[h1, h2] * nN + nn
        n_gens = [N.code(tuple(int(i == j) for j in range(N.rank))) for i in range(N.rank)]
        gens = n_gens + [int(g) * nN for g in H.gens]
        names = [f"n{i}" for i in range(N.rank)] + [f"h{i}" for i in range(len(H.gens))]
        labels = [(N.decode(c), h) for h in range(nH) for c in range(nN)]
        super().__init__(mult, gens, names=names, labels=labels)
        self.N = N
        self.H = H
        self.action = tuple(a.copy() for a in action_on_gens)
        self.phi = phi
        self.N_sub = subgroup(self, n_gens, names=[f"n{i}" for i in range(N.rank)]) if N.rank else subgroup(self, [])
        self.H_sub = subgroup(self, [int(g) * nN for g in H.gens], names=[f"h{i}" for i in range(len(H.gens))])

    def element(self, n, h: int = 0) -> int:
        return int(h) * self.N.order + self.N.code(n)

    def split(self, x: int) -> tuple:
        """(n-vector, h index in H) of a root element."""
        nN = self.N.order
        return self.N.decode(int(x) % nN), int(x) // nN

    def n_part(self, x: int) -> tuple:
        return self.split(x)[0]

    def h_part(self, x: int) -> int:
        return int(x) // self.N.order


def semidirect(N: AbelianGroupSpec, H: FiniteGroup, action_on_gens) -> SemidirectGroup:
    return SemidirectGroup(N, H, action_on_gens)


# -- cosets ----------------------------------------------------------------------


def _require_sub(G: FiniteGroup, H: FiniteGroup):
    if not H.is_subgroup_of(G):
        raise ValidationError("not a subgroup of the ambient group")


def left_coset_reps(G: FiniteGroup, H: FiniteGroup) -> list[int]:
    """One representative per left coset tH, smallest element first."""
    _require_sub(G, H)
    R = G.root
    covered = np.zeros(R.order, dtype=bool)
    reps = []
    for x in G.embed:
        if not covered[x]:
            reps.append(int(x))
            covered[R.mult[x, H.embed]] = True
    return reps


def double_coset_reps(G: FiniteGroup, H1: FiniteGroup, H2: FiniteGroup) -> list[int]:
    """One representative per double coset H1 x H2, in element order."""
    _require_sub(G, H1)
    _require_sub(G, H2)
    R = G.root
    covered = np.zeros(R.order, dtype=bool)
    reps = []
    for x in G.embed:
        if not covered[x]:
            reps.append(int(x))
            left = R.mult[H1.embed, x]
            covered[R.mult[np.ix_(left, H2.embed)].ravel()] = True
    return reps


def double_coset(G: FiniteGroup, H1: FiniteGroup, H2: FiniteGroup, x: int) -> np.ndarray:
    R = G.root
    return np.unique(R.mult[np.ix_(R.mult[H1.embed, x], H2.embed)])


def conj_intersection(G: FiniteGroup, H: FiniteGroup, x: int, K: FiniteGroup | None = None) -> FiniteGroup:
    """x H x^-1 intersected with K (K defaults to H)."""
    _require_sub(G, H)
    K = H if K is None else K
    R = G.root
    conj = R.mult[R.mult[x, H.embed], R.inv[x]]
    inter = conj[K._local[conj] >= 0]
    return subgroup_from_elements(G, inter)
