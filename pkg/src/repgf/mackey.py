"""Double-coset tests for induced modules.

For L a KH-module and x in G, x (x) L is the module of xHx^-1 with
h -> L(x^-1 h x).  Its restriction to H^(x) = xHx^-1 & H compared with
L restricted there gives i(L, L, D) for the double coset D = HxH, and
i(L^G, L^G) is the sum of these over all double cosets.  Disjointness is
i = 0, which is exact because char K does not divide |G|.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CertificationError, HypothesisError, ValidationError
from .groups import FiniteGroup, conj_intersection, double_coset_reps, left_coset_reps
from .meataxe import is_irreducible
from .representations import (
    Representation,
    conjugate_rep,
    induce,
    intertwining_number,
    require_semisimple,
    restrict,
)

__all__ = [
    "CosetRow",
    "MackeyReport",
    "InducedIsomorphismReport",
    "double_coset_intertwining",
    "intertwining_via_double_cosets",
    "mackey_sufficient",
    "normal_case_values",
    "endomorphism_equality_check",
    "monomial_criterion",
    "induced_isomorphism_test",
    "word_string",
]


def word_string(G: FiniteGroup, x: int) -> str:
    """x as a product of G's generator names ("1" for the identity)."""
    w = G.word(x)
    return "*".join(G.gen_names[i] for i in w) if w else "1"


def _require_pair(L: Representation, G: FiniteGroup):
    if not L.group.is_subgroup_of(G):
        raise ValidationError("representation's group is not a subgroup of G")
    require_semisimple(G, L.field)


def double_coset_intertwining(L1: Representation, L2: Representation, x: int, G: FiniteGroup) -> int:
    """i((x (x) L1) restricted to xH1x^-1 & H2, L2 restricted there)."""
    _require_pair(L1, G)
    _require_pair(L2, G)
    if not G.contains(x):
        raise ValidationError(f"element {x} is not in G")
    H1, H2 = L1.group, L2.group
    S = conj_intersection(G, H1, x, H2)
    return intertwining_number(restrict(conjugate_rep(L1, x), S), restrict(L2, S))


def intertwining_via_double_cosets(L1: Representation, L2: Representation, G: FiniteGroup):
    """[(x, i_x)] over representatives x of the double cosets H2 x H1."""
    return [(x, double_coset_intertwining(L1, L2, x, G)) for x in double_coset_reps(G, L2.group, L1.group)]


@dataclass
class CosetRow:
    rep: int
    rep_word: str
    hx_order: int
    i_value: int

    def as_dict(self):
        return {"rep_word": self.rep_word, "hx_order": self.hx_order, "i_value": self.i_value}


@dataclass
class MackeyReport:
    double_cosets: list
    total: int
    i_LL: int
    i_induced: int
    condition_holds: bool
    irreducible_by_test: bool
    direct_irreducible: bool | None = None

    @property
    def verdict(self) -> str:
        if self.condition_holds:
            return "irreducible"
        return "inconclusive by the double-coset test"

    def as_dict(self):
        return {
            "double_cosets": [r.as_dict() for r in self.double_cosets],
            "total": self.total,
            "i_LL": self.i_LL,
            "i_induced": self.i_induced,
            "condition_holds": self.condition_holds,
            "irreducible_by_test": self.irreducible_by_test,
            "direct_irreducible": self.direct_irreducible,
            "verdict": self.verdict,
        }


def _require_irreducible(L: Representation, what: str, seed: int):
    if not is_irreducible(L, seed=seed).irreducible:
        raise HypothesisError(f"{what} is reducible")


def mackey_sufficient(L: Representation, G: FiniteGroup, seed: int = 0, direct: bool = True) -> MackeyReport:
    """Sufficient test for irreducibility of L^G.

    The condition is that every double coset other than H itself gives
    i = 0.  The total over all double cosets is cross-checked against a
    direct computation of i(L^G, L^G).  With `direct`, the independent
    is_irreducible verdict on L^G is attached as well.
    """
    _require_pair(L, G)
    _require_irreducible(L, "L", seed)
    H = L.group
    rows = []
    for x in double_coset_reps(G, H, H):
        S = conj_intersection(G, H, x)
        val = intertwining_number(restrict(conjugate_rep(L, x), S), restrict(L, S))
        rows.append(CosetRow(x, word_string(G, x), S.order, val))
    total = sum(r.i_value for r in rows)
    i_LL = intertwining_number(L, L)
    LG = induce(L, G)
    i_ind = intertwining_number(LG, LG)
    if total != i_ind:
        raise CertificationError(f"double-coset total {total} differs from i(L^G, L^G) = {i_ind}")
    cond = all(r.i_value == 0 for r in rows if not H.contains(r.rep))
    direct_verdict = is_irreducible(LG, seed=seed).irreducible if direct else None
    if cond and direct_verdict is False:
        raise CertificationError("double-coset condition holds but L^G was found reducible")
    return MackeyReport(rows, total, i_LL, i_ind, cond, cond, direct_verdict)


def normal_case_values(L: Representation, G: FiniteGroup):
    """For normal H: [(x, i(x (x) L, L))] over left coset reps x outside H."""
    _require_pair(L, G)
    H = L.group
    if not H.is_normal_in(G):
        raise ValidationError("subgroup is not normal")
    out = []
    for x in left_coset_reps(G, H):
        if H.contains(x):
            continue
        out.append((x, intertwining_number(restrict(conjugate_rep(L, x), H), L)))
    return out


def endomorphism_equality_check(L: Representation, G: FiniteGroup, seed: int = 0) -> bool:
    """Whether i(L^G, L^G) = i(L, L), both computed directly."""
    _require_pair(L, G)
    _require_irreducible(L, "L", seed)
    LG = induce(L, G)
    return intertwining_number(LG, LG) == intertwining_number(L, L)


def monomial_criterion(rho: Representation, G: FiniteGroup, details: bool = False):
    """For 1-dim rho on H: every x outside H has some y in H^(x) with rho(y) != rho(x^-1 y x).

    With `details`, returns (verdict, [(x, y or None)]) over the double
    coset representatives outside H.
    """
    if rho.dim != 1:
        raise ValidationError("the monomial criterion needs a one-dimensional representation")
    _require_pair(rho, G)
    H = rho.group
    R = G.root
    vals = rho.element_images()[:, 0, 0]
    witnesses = []
    ok = True
    for x in double_coset_reps(G, H, H):
        if H.contains(x):
            continue
        S = conj_intersection(G, H, x)
        ys = S.embed
        back = R.mult[R.mult[R.inv[x], ys], x]  # x^-1 y x, lies in H
        diff = vals[H._local[ys]] != vals[H._local[back]]
        if diff.any():
            witnesses.append((x, int(ys[np.argmax(diff)])))
        else:
            witnesses.append((x, None))
            ok = False
    return (ok, witnesses) if details else ok


@dataclass
class InducedIsomorphismReport:
    non_isomorphic: bool
    rows: list = field(default_factory=list)  # CosetRow per double coset H2 x H1
    direct_i: int = 0

    def __bool__(self):
        return self.non_isomorphic

    def as_dict(self):
        return {
            "non_isomorphic": self.non_isomorphic,
            "double_cosets": [r.as_dict() for r in self.rows],
            "direct_i": self.direct_i,
        }


def induced_isomorphism_test(L1: Representation, L2: Representation, G: FiniteGroup, seed: int = 0) -> InducedIsomorphismReport:
    """Decide whether irreducible L1^G and L2^G are non-isomorphic.

    Non-isomorphic iff x (x) L1 and L2 are disjoint on xH1x^-1 & H2 for
    every x; cross-checked against i(L1^G, L2^G) = 0.
    """
    _require_pair(L1, G)
    _require_pair(L2, G)
    if L1.field != L2.field:
        raise ValidationError("representations over different fields")
    I1, I2 = induce(L1, G), induce(L2, G)
    _require_irreducible(I1, "first induced module", seed)
    _require_irreducible(I2, "second induced module", seed)
    rows = []
    for x in double_coset_reps(G, L2.group, L1.group):
        S = conj_intersection(G, L1.group, x, L2.group)
        val = intertwining_number(restrict(conjugate_rep(L1, x), S), restrict(L2, S))
        rows.append(CosetRow(x, word_string(G, x), S.order, val))
    verdict = all(r.i_value == 0 for r in rows)
    direct = intertwining_number(I1, I2)
    if verdict != (direct == 0):
        raise CertificationError("double-coset verdict disagrees with the direct intertwining number")
    return InducedIsomorphismReport(verdict, rows, direct)
