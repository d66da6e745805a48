"""Randomized invariant checks on a group/field instance, and a sweep driver.

Every check compares two independent computations: induced modules
against restrictions, double-coset sums against direct intertwining
numbers, sufficient tests against the exhaustive spin oracle, and the
character-orbit classification against a Wedderburn count.  Checks that
need the oracle are skipped (and counted) when the module has too many
projective points.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

import numpy as np

from .fields import FieldSpec, make_field
from .groups import (
    AbelianGroupSpec,
    FiniteGroup,
    SemidirectGroup,
    double_coset,
    double_coset_reps,
    group_from_permutations,
    semidirect,
    subgroup,
)
from .linalg import rank
from .littlegroups import NO_FACTOR, classify, completeness_check, field_compat, match_irreducible
from .mackey import (
    double_coset_intertwining,
    mackey_sufficient,
    monomial_criterion,
    normal_case_values,
)
from .meataxe import (
    ORACLE_POINT_LIMIT,
    irreducibles_of_group,
    is_irreducible,
    projective_point_count,
    spin_oracle,
)
from .representations import (
    Representation,
    change_basis,
    conjugate_rep,
    direct_sum,
    induce,
    intertwining_number,
    restrict,
)

__all__ = ["CheckTally", "InstanceChecker", "random_instance", "property_sweep", "PROPERTIES"]

PROPERTIES = (
    "frt",
    "int_sum",
    "int_rep_independence",
    "normal_case",
    "sufficient_test_soundness",
    "sufficient_test_equivalence",
    "monomial_soundness",
    "induced_isomorphism",
    "classification",
    "representative_independence",
)


@dataclass
class CheckTally:
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    def as_dict(self):
        return {"checked": self.checked, "skipped": self.skipped, "failures": list(self.failures)}


class InstanceChecker:
    """Run the invariant suite on one (G, F) with a seeded generator."""

    def __init__(self, G: FiniteGroup, F: FieldSpec, seed: int = 0, oracle_limit: int = ORACLE_POINT_LIMIT, samples: int = 3):
        self.G = G
        self.F = F
        self.seed = seed
        self.rng = random.Random(seed)
        self.oracle_limit = oracle_limit
        self.samples = samples
        self.tally = {p: CheckTally() for p in PROPERTIES}
        self._irr = {}

    # -- helpers -----------------------------------------------------------

    def _fail(self, prop, msg):
        self.tally[prop].failures.append(msg)

    def _ok(self, prop, cond, msg):
        self.tally[prop].checked += 1
        if not cond:
            self._fail(prop, msg)

    def irreducibles(self, H: FiniteGroup):
        key = (H.embed.tobytes(), H.gens)
        if key not in self._irr:
            self._irr[key] = irreducibles_of_group(H, self.F, seed=self.seed)
        return self._irr[key]

    def random_subgroup(self) -> FiniteGroup:
        G, rng = self.G, self.rng
        roll = rng.random()
        if roll < 0.15 and isinstance(G, SemidirectGroup):
            return G.N_sub
        if roll < 0.2:
            return G
        k = rng.choice((1, 1, 2))
        gens = [int(rng.choice(G.embed)) for _ in range(k)]
        return subgroup(G, gens)

    def random_irreducible(self, H: FiniteGroup) -> Representation:
        return self.rng.choice(self.irreducibles(H))

    def random_module(self) -> Representation:
        """Direct sum of one or two irreducibles of G, in a random basis."""
        irr = self.irreducibles(self.G)
        parts = [self.rng.choice(irr) for _ in range(self.rng.choice((1, 2)))]
        V = direct_sum(*parts) if len(parts) > 1 else parts[0]
        return change_basis(V, self.random_invertible(V.dim))

    def random_invertible(self, n: int) -> np.ndarray:
        while True:
            C = np.array([[self.rng.randrange(self.F.q) for _ in range(n)] for _ in range(n)], dtype=np.int64)
            if rank(self.F, C) == n:
                return C

    def oracle(self, V: Representation):
        """Exhaustive verdict, or None when the module is too large."""
        if projective_point_count(self.F.q, V.dim) > self.oracle_limit:
            return None
        return spin_oracle(V, limit=None).irreducible

    # -- properties ----------------------------------------------------------

    def check_frt(self):
        for _ in range(self.samples):
            H = self.random_subgroup()
            W = self.random_irreducible(H)
            V = self.random_module()
            a = intertwining_number(induce(W, self.G), V)
            b = intertwining_number(W, restrict(V, H))
            self._ok("frt", a == b, f"i(W^G, V) = {a} but i(W, V_H) = {b} for |H| = {H.order}")

    def check_int(self):
        G = self.G
        for _ in range(self.samples):
            H1, H2 = self.random_subgroup(), self.random_subgroup()
            L1, L2 = self.random_irreducible(H1), self.random_irreducible(H2)
            reps = double_coset_reps(G, H2, H1)
            vals = [double_coset_intertwining(L1, L2, x, G) for x in reps]
            direct = intertwining_number(induce(L1, G), induce(L2, G))
            self._ok("int_sum", sum(vals) == direct, f"double-coset sum {sum(vals)} != {direct}")
            for x, v in zip(reps, vals):
                other = int(self.rng.choice(double_coset(G, H2, H1, x)))
                w = double_coset_intertwining(L1, L2, other, G)
                self._ok("int_rep_independence", v == w, f"representatives {x} and {other} give {v} and {w}")

    def check_normal_case(self):
        G = self.G
        H = G.N_sub if isinstance(G, SemidirectGroup) else G
        L = self.random_irreducible(H)
        rep = mackey_sufficient(L, G, seed=self.seed, direct=False)
        normal = dict(normal_case_values(L, G))
        rows = {r.rep: r.i_value for r in rep.double_cosets if not H.contains(r.rep)}
        self._ok("normal_case", rows == normal, "normal-subgroup path disagrees with the double-coset values")

    def _irreducible_pair_source(self):
        H = self.random_subgroup()
        return H, self.random_irreducible(H)

    def check_sufficient_test(self):
        G = self.G
        for _ in range(self.samples):
            H, L = self._irreducible_pair_source()
            rep = mackey_sufficient(L, G, seed=self.seed, direct=False)
            self._ok(
                "sufficient_test_equivalence",
                rep.condition_holds == (rep.i_induced == rep.i_LL),
                f"condition {rep.condition_holds} with i(L^G,L^G) = {rep.i_induced}, i(L,L) = {rep.i_LL}",
            )
            if rep.condition_holds:
                verdict = self.oracle(induce(L, G))
                if verdict is None:
                    self.tally["sufficient_test_soundness"].skipped += 1
                else:
                    self._ok("sufficient_test_soundness", verdict, f"condition holds but L^G is reducible (|H| = {H.order})")
            if L.dim == 1:
                if monomial_criterion(L, G):
                    verdict = self.oracle(induce(L, G))
                    if verdict is None:
                        self.tally["monomial_soundness"].skipped += 1
                    else:
                        self._ok("monomial_soundness", verdict, "monomial criterion holds but rho^G is reducible")

    def check_induced_isomorphism(self):
        G = self.G
        done = 0
        for _ in range(4 * self.samples):
            if done == self.samples:
                break
            H1, L1 = self._irreducible_pair_source()
            if self.rng.random() < 0.5:
                g = int(self.rng.choice(G.embed))
                L2 = conjugate_rep(L1, g)
            else:
                L2 = self.random_irreducible(self.random_subgroup())
            I1, I2 = induce(L1, G), induce(L2, G)
            if I1.dim != I2.dim:
                continue
            if not (is_irreducible(I1, seed=self.seed) and is_irreducible(I2, seed=self.seed)):
                continue
            done += 1
            vals = [double_coset_intertwining(L1, L2, x, G) for x in double_coset_reps(G, L2.group, L1.group)]
            verdict = all(v == 0 for v in vals)
            direct = intertwining_number(I1, I2)
            self._ok("induced_isomorphism", verdict == (direct == 0), f"verdict {verdict} but direct i = {direct}")

    def check_classification(self):
        G, F = self.G, self.F
        if not isinstance(G, SemidirectGroup):
            return
        entries = classify(G, F, seed=self.seed)
        compat = field_compat(G.N, F)
        total, complete = completeness_check(entries, G)
        ok = True
        for e in entries:
            verdict = self.oracle(e.theta)
            if verdict is None:
                self.tally["classification"].skipped += 1
            elif not verdict:
                ok = False
                self._fail("classification", f"entry ({e.j}, {e.rho_index}) is reducible")
        for a, b in itertools.combinations(entries, 2):
            if intertwining_number(a.theta, b.theta):
                ok = False
                self._fail("classification", f"entries ({a.j}, {a.rho_index}) and ({b.j}, {b.rho_index}) are isomorphic")
        if compat:
            if not complete:
                ok = False
                self._fail("classification", f"completeness sum {total} != |G| = {G.order}")
        else:
            matched = set()
            for V in self.irreducibles(G):
                m = match_irreducible(V, entries, G, seed=self.seed)
                if m != NO_FACTOR:
                    key = (m.j, m.rho_index)
                    if key in matched:
                        ok = False
                        self._fail("classification", f"two irreducibles match entry {key}")
                    matched.add(key)
            if len(matched) != len(entries):
                ok = False
                self._fail("classification", "some entry matches no irreducible of G")
        self.tally["classification"].checked += 1
        # a different orbit representative must give an isomorphic listing
        other = classify(G, F, seed=self.seed, choose="max")
        pairs = len(other) == len(entries) and all(
            sum(1 for b in other if b.theta.dim == a.theta.dim and intertwining_number(a.theta, b.theta)) == 1
            for a in entries
        )
        self._ok("representative_independence", pairs, "listings for different orbit representatives differ")
        return ok

    def run(self):
        self.check_frt()
        self.check_int()
        self.check_normal_case()
        self.check_sufficient_test()
        self.check_induced_isomorphism()
        self.check_classification()
        return self.tally

    def report(self) -> dict:
        return {p: t.as_dict() for p, t in self.tally.items()}


# -- random instances ------------------------------------------------------------


def _cyclic(k: int) -> FiniteGroup:
    return group_from_permutations([[(i + 1) % k for i in range(k)]] if k > 1 else [])


def _unit_of_order(m: int, k: int, rng):
    units = [u for u in range(2, m) if np.gcd(u, m) == 1 and pow(u, k, m) == 1]
    good = [u for u in units if all(pow(u, d, m) != 1 for d in range(1, k))]
    return rng.choice(good) if good else None


def _families():
    C2 = lambda: _cyclic(2)  # noqa: E731
    S3 = lambda: group_from_permutations([[1, 2, 0], [1, 0, 2]])  # noqa: E731
    out = []
    for m in range(3, 25):
        out.append((f"D{m}", lambda m=m: semidirect(AbelianGroupSpec((m,)), C2(), [[[-1]]])))
    for m, k in [(7, 3), (5, 4), (9, 3), (13, 3), (8, 2), (12, 2), (9, 6), (7, 6), (13, 2), (16, 2), (11, 2), (15, 2)]:
        out.append((f"Z{m}:C{k}", lambda m=m, k=k: ("cyc", m, k)))
    out.append(("A4", lambda: semidirect(AbelianGroupSpec((2, 2)), _cyclic(3), [[[0, 1], [1, 1]]])))
    out.append(("S4", lambda: semidirect(AbelianGroupSpec((2, 2)), S3(), [[[0, 1], [1, 1]], [[0, 1], [1, 0]]])))
    out.append(("Z3^2:C2", lambda: semidirect(AbelianGroupSpec((3, 3)), C2(), [[[-1, 0], [0, -1]]])))
    out.append(("Z3^2:C4", lambda: semidirect(AbelianGroupSpec((3, 3)), _cyclic(4), [[[0, -1], [1, 0]]])))
    out.append(("D6'", lambda: semidirect(AbelianGroupSpec((3, 2)), C2(), [[[-1, 0], [0, 1]]])))
    out.append(("Z4xZ2:C2", lambda: semidirect(AbelianGroupSpec((4, 2)), C2(), [[[1, 2], [0, 1]]])))
    out.append(("Z3:C4", lambda: semidirect(AbelianGroupSpec((3,)), _cyclic(4), [[[-1]]])))
    out.append(("Z5:C4'", lambda: semidirect(AbelianGroupSpec((5,)), _cyclic(4), [[[-1]]])))
    out.append(("Z3xS3", lambda: semidirect(AbelianGroupSpec((3,)), S3(), [[[1]], [[1]]])))
    out.append(("Z6xZ2", lambda: semidirect(AbelianGroupSpec((6, 2)), _cyclic(2), [[[1, 0], [0, 1]]])))
    out.append(("Z4xZ4", lambda: semidirect(AbelianGroupSpec((4, 4)), _cyclic(1), [])))
    out.append(("Z12:C4", lambda: semidirect(AbelianGroupSpec((12,)), _cyclic(4), [[[5]]])))
    out.append(("Z2^2:C6", lambda: semidirect(AbelianGroupSpec((2, 2)), _cyclic(6), [[[0, 1], [1, 1]]])))
    return out


GF25_POLY = [1, 1, 1]


def _field(q: int) -> FieldSpec:
    if q == 25:
        return make_field(5, 2, GF25_POLY)
    return make_field(q)


def random_instance(rng: random.Random, max_order: int = 48):
    """(name, G, F) with |G| <= max_order and char F not dividing |G|."""
    fams = _families()
    while True:
        name, build = rng.choice(fams)
        G = build()
        if isinstance(G, tuple):
            _, m, k = G
            u = _unit_of_order(m, k, rng)
            if u is None:
                continue
            G = semidirect(AbelianGroupSpec((m,)), _cyclic(k), [[[u]]])
            name = f"Z{m}:C{k}(u={u})"
        if G.order > max_order:
            continue
        qs = [q for q in (5, 7, 11, 13, 25) if G.order % (q % 5 == 0 and 5 or q) != 0]
        qs = [q for q in qs if G.order % _field(q).p != 0]
        if not qs:
            continue
        q = rng.choice(qs)
        return name, G, _field(q)


def property_sweep(n_instances: int = 50, seed: int = 0, samples: int = 3, log=None) -> dict:
    """Run the invariant suite on n random instances; returns a summary dict."""
    rng = random.Random(seed)
    totals = {p: CheckTally() for p in PROPERTIES}
    instances = []
    start = time.perf_counter()
    for i in range(n_instances):
        name, G, F = random_instance(rng)
        t0 = time.perf_counter()
        checker = InstanceChecker(G, F, seed=rng.randrange(2**32), samples=samples)
        checker.run()
        for p, t in checker.tally.items():
            totals[p].checked += t.checked
            totals[p].skipped += t.skipped
            totals[p].failures.extend(f"{name}/GF({F.q}): {f}" for f in t.failures)
        instances.append({"name": name, "order": G.order, "q": F.q, "seconds": round(time.perf_counter() - t0, 3)})
        if log:
            log(f"[{i + 1}/{n_instances}] {name} |G|={G.order} GF({F.q}) {instances[-1]['seconds']}s")
    return {
        "instances": instances,
        "properties": {p: t.as_dict() for p, t in totals.items()},
        "seconds": round(time.perf_counter() - start, 3),
        "ok": all(not t.failures for t in totals.values()),
    }
