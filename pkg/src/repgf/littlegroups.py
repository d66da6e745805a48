"""Irreducibles of N x| H with N abelian, from orbits of characters.

G acts on the one-dimensional characters of N by chi^g(a) = chi(g^-1 a g).
For each orbit pick a representative chi, let I be its stabilizer and
H_chi = I & H.  Every irreducible rho of H_chi gives the module
theta = Ind_I^G (chi (x) rho), where chi is extended to I by (n, h) -> chi(n)
and rho is pulled back along I -> H_chi.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CertificationError, HypothesisError, ValidationError
from .fields import FieldSpec, roots_of_unity
from .groups import AbelianGroupSpec, FiniteGroup, SemidirectGroup, subgroup, subgroup_from_elements
from .linalg import identity, nullspace
from .mackey import mackey_sufficient
from .meataxe import irreducibles_of_group, is_irreducible
from .representations import Representation, induce, intertwining_number, require_semisimple

__all__ = [
    "Character",
    "OrbitData",
    "ClassificationEntry",
    "characters",
    "char_action",
    "orbits",
    "extend_character",
    "tensor_char",
    "classify",
    "completeness_check",
    "match_irreducible",
    "field_compat",
    "NO_FACTOR",
]

NO_FACTOR = "no one-dimensional N-composition factor"


@dataclass(frozen=True)
class Character:
    """A homomorphism N -> K*, stored as the values on N's standard generators."""

    N: AbelianGroupSpec
    field: FieldSpec
    values: tuple  # field codes

    def __call__(self, n) -> int:
        F = self.field
        out = 1
        for x, e in zip(self.values, n):
            out = F.smul(out, F.spow(x, int(e)))
        return out

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def encode(self) -> list:
        return [self.field.encode(v) for v in self.values]

    def __lt__(self, other):
        return self.values < other.values

    def __repr__(self):
        return f"Character({self.encode()})"


def characters(N: AbelianGroupSpec, F: FieldSpec) -> list:
    """All one-dimensional characters of N over F, lexicographic in their values."""
    if N.order % F.p == 0:
        from .errors import CharacteristicError

        raise CharacteristicError(F.p, N.order)
    choices = [roots_of_unity(m, F) for m in N.moduli]
    return [Character(N, F, tuple(v)) for v in itertools.product(*choices)]


def _conj_matrix(G: SemidirectGroup, g: int) -> np.ndarray:
    """Integer matrix M with g^-1 e_i g = sum_j M[i, j] e_j in N."""
    R = G.root
    gi = int(R.inv[g])
    rows = []
    for e in G.N_sub.gens:
        rows.append(G.n_part(R.conj(gi, e)))
    return np.array(rows, dtype=np.int64).reshape(G.N.rank, G.N.rank)


def char_action(chi: Character, g: int, G: SemidirectGroup) -> Character:
    """chi^g : a -> chi(g^-1 a g)."""
    M = _conj_matrix(G, g)
    return Character(chi.N, chi.field, tuple(chi(row) for row in M))


@dataclass
class OrbitData:
    rep: Character
    orbit: list
    stabilizer: FiniteGroup  # I = N x| H_chi, generated by n0.. and H_chi's generators
    h_stabilizer: FiniteGroup  # H_chi as a subgroup of G

    @property
    def size(self) -> int:
        return len(self.orbit)


def _action_table(G: SemidirectGroup, chars: list):
    index = {c.values: i for i, c in enumerate(chars)}
    table = np.zeros((G.order, len(chars)), dtype=np.int64)
    for gi, g in enumerate(G.embed):
        M = _conj_matrix(G, int(g))
        for ci, c in enumerate(chars):
            key = tuple(c(row) for row in M)
            if key not in index:
                raise CertificationError("character action left the character set")
            table[gi, ci] = index[key]
    return table


def orbits(G: SemidirectGroup, chars: list, choose: str = "min") -> list:
    """Orbits of G on chars with stabilizers.

    The representative is the lexicographically smallest member
    (`choose="max"` picks the largest, for representative-independence checks).
    Orbits are listed by their smallest member.
    """
    table = _action_table(G, chars)
    seen = np.zeros(len(chars), dtype=bool)
    nN = G.N.order
    out = []
    for ci in range(len(chars)):
        if seen[ci]:
            continue
        members = sorted(set(table[:, ci].tolist()))
        seen[members] = True
        rep = members[0] if choose == "min" else members[-1]
        stab = G.embed[table[:, rep] == rep]
        h_elems = stab[stab % nN == 0]
        Hj = subgroup_from_elements(G, h_elems)
        I = subgroup(G, list(G.N_sub.gens) + list(Hj.gens), names=list(G.N_sub.gen_names) + [f"k{i}" for i in range(len(Hj.gens))])
        if not np.array_equal(np.sort(I.embed), np.sort(stab)):
            raise CertificationError("stabilizer is not N x| H_chi")
        if len(members) * len(stab) != G.order:
            raise CertificationError("orbit-stabilizer count fails")
        out.append(OrbitData(chars[rep], [chars[m] for m in members], I, Hj))
    return out


def extend_character(chi: Character, I: FiniteGroup, G: SemidirectGroup) -> Representation:
    """The one-dimensional representation (n, h) -> chi(n) of I."""
    imgs = [[[chi(G.n_part(g))]] for g in I.gens]
    try:
        return Representation(I, chi.field, imgs, dim=1, check=True)
    except ValidationError as exc:
        raise ValidationError(f"subgroup does not stabilize the character: {exc}") from None


def tensor_char(chi_ext: Representation, rho: Representation, G: SemidirectGroup) -> Representation:
    """(n, h) -> chi(n) rho(h) on I, with rho a representation of H_chi."""
    I = chi_ext.group
    F = chi_ext.field
    if chi_ext.dim != 1 or rho.field != F:
        raise ValidationError("tensor needs a one-dimensional character and a representation over the same field")
    nN = G.N.order
    mats = []
    for g in I.gens:
        h = (int(g) // nN) * nN
        if not rho.group.contains(h):
            raise ValidationError("H-part of a stabilizer element is outside the representation's group")
        mats.append(F.mul(int(chi_ext.image(g)[0, 0]), rho.image(h)))
    return Representation(I, F, mats, dim=rho.dim, check=False)


@dataclass
class ClassificationEntry:
    j: int
    chi: Character
    rho_index: int
    rho: Representation
    theta: Representation
    orbit_size: int
    endo_dim: int
    certified_irreducible: bool

    @property
    def dim_theta(self) -> int:
        return self.theta.dim

    def as_dict(self) -> dict:
        return {
            "j": self.j,
            "chi": self.chi.encode(),
            "rho_dim": self.rho.dim,
            "theta_dim": self.theta.dim,
            "endo_dim": self.endo_dim,
            "irreducible": self.certified_irreducible,
        }


def field_compat(N: AbelianGroupSpec, F: FieldSpec) -> bool:
    """Whether exp(N) divides q - 1, so every irreducible of N is one-dimensional."""
    return (F.q - 1) % N.exponent == 0


def classify(G: SemidirectGroup, F: FieldSpec, seed: int = 0, choose: str = "min", oracle: bool = False) -> list:
    """The modules theta_{j, rho}, each certified irreducible, pairwise non-isomorphic.

    Irreducibility is certified twice: by the double-coset test on
    chi (x) rho and by is_irreducible on theta (plus the exhaustive spin
    oracle when `oracle`).  Any disagreement raises CertificationError.
    """
    if not isinstance(G, SemidirectGroup):
        raise ValidationError("classification needs a semidirect product N x| H")
    require_semisimple(G, F)
    chars = characters(G.N, F)
    entries = []
    for j, od in enumerate(orbits(G, chars, choose=choose)):
        ext = extend_character(od.rep, od.stabilizer, G)
        for r, rho in enumerate(irreducibles_of_group(od.h_stabilizer, F, seed=seed)):
            L = tensor_char(ext, rho, G)
            rep = mackey_sufficient(L, G, seed=seed, direct=False)
            theta = induce(L, G)
            if theta.dim != od.size * rho.dim:
                raise CertificationError("induced dimension is not [G:I] dim(rho)")
            direct = is_irreducible(theta, seed=seed).irreducible
            if oracle:
                from .meataxe import spin_oracle

                direct = direct and spin_oracle(theta, limit=None).irreducible
            if not (rep.condition_holds and direct):
                raise CertificationError(f"entry ({j}, {r}) failed irreducibility certification")
            endo = intertwining_number(theta, theta)
            entries.append(ClassificationEntry(j, od.rep, r, rho, theta, od.size, endo, True))
    for a, b in itertools.combinations(entries, 2):
        if intertwining_number(a.theta, b.theta):
            raise CertificationError(f"entries ({a.j}, {a.rho_index}) and ({b.j}, {b.rho_index}) are isomorphic")
    return entries


def completeness_check(entries: list, G: FiniteGroup):
    """(sum of dim^2 / endo_dim, whether it equals |G|)."""
    total = 0
    for e in entries:
        total += e.dim_theta**2 // e.endo_dim
    return total, total == G.order


def isotypic_space(V: Representation, chi: Character, G: SemidirectGroup) -> np.ndarray:
    """Rows spanning {v : V(a) v = chi(a) v for all a in N}."""
    F = V.field
    d = V.dim
    blocks = []
    for i, a in enumerate(G.N_sub.gens):
        blocks.append(F.sub(V.image(a), F.mul(chi.values[i], identity(d))))
    if not blocks:
        return identity(d)
    return nullspace(F, np.vstack(blocks))


def match_irreducible(V: Representation, entries: list, G: SemidirectGroup, seed: int = 0):
    """The entry isomorphic to irreducible V, or NO_FACTOR when V_N has no 1-dim factor."""
    if not V.group.is_subgroup_of(G) or V.group.order != G.order:
        raise ValidationError("representation is not of the classified group")
    require_semisimple(G, V.field)
    if not is_irreducible(V, seed=seed).irreducible:
        raise HypothesisError("representation to match is reducible")
    chars = characters(G.N, V.field)
    if all(len(isotypic_space(V, c, G)) == 0 for c in chars):
        return NO_FACTOR
    hits = [e for e in entries if e.theta.dim == V.dim and intertwining_number(V, _as_group(e.theta, V.group))]
    if len(hits) != 1:
        raise CertificationError(f"{len(hits)} classification entries match the representation")
    return hits[0]


def _as_group(theta: Representation, G: FiniteGroup) -> Representation:
    """theta re-expressed on G's generators (same root, same element set)."""
    if theta.group == G:
        return theta
    return Representation(G, theta.field, [theta.image(g) for g in G.gens], dim=theta.dim, check=False)
