import pytest

from repgf.errors import HypothesisError, ValidationError
from repgf.groups import AbelianGroupSpec, double_coset, group_from_permutations, semidirect, subgroup
from repgf.mackey import (
    double_coset_intertwining,
    endomorphism_equality_check,
    induced_isomorphism_test,
    intertwining_via_double_cosets,
    mackey_sufficient,
    monomial_criterion,
    normal_case_values,
)
from repgf.meataxe import irreducibles_of_group, is_irreducible, spin_oracle
from repgf.representations import (
    induce,
    intertwining_number,
    regular_rep,
    rep_from_images,
    trivial_rep,
)


@pytest.fixture
def c4_example(c4, gf3):
    H = subgroup(c4, [2])
    return c4, rep_from_images(H, [[[2]]], gf3)


def test_double_coset_intertwining_examples(c4_example, s3, gf7):
    G, L = c4_example
    assert double_coset_intertwining(L, L, 0, G) == intertwining_number(L, L) == 1
    assert double_coset_intertwining(L, L, G.gens[0], G) == 1
    chi = rep_from_images(s3.N_sub, [[[2]]], gf7)
    assert double_coset_intertwining(chi, chi, s3.gens[1], s3) == 0


def test_small_example_report(c4_example):
    G, L = c4_example
    r = mackey_sufficient(L, G)
    assert [row.i_value for row in r.double_cosets] == [1, 1]
    assert r.total == 2 and r.i_LL == 1 and r.i_induced == 2
    assert not r.condition_holds and not r.irreducible_by_test
    assert r.direct_irreducible is True
    assert "inconclusive" in r.verdict
    assert not endomorphism_equality_check(L, G)
    assert spin_oracle(induce(L, G)).irreducible


def test_s3_report(s3, gf7):
    chi = rep_from_images(s3.N_sub, [[[2]]], gf7)
    r = mackey_sufficient(chi, s3)
    assert r.condition_holds and r.direct_irreducible
    assert [row.rep_word for row in r.double_cosets] == ["1", "h0"]
    assert [row.i_value for row in r.double_cosets] == [1, 0]
    assert endomorphism_equality_check(chi, s3)


def test_whole_group_is_vacuous(s3, gf7):
    T = trivial_rep(s3, gf7)
    r = mackey_sufficient(T, s3)
    assert r.condition_holds and len(r.double_cosets) == 1
    assert endomorphism_equality_check(T, s3)


def test_reducible_input_rejected(s3, gf7):
    with pytest.raises(HypothesisError):
        mackey_sufficient(regular_rep(s3.N_sub, gf7), s3)
    with pytest.raises(HypothesisError):
        endomorphism_equality_check(regular_rep(s3.N_sub, gf7), s3)


def test_monomial_examples(s3, d4, gf7, gf5):
    B = subgroup(s3, [s3.gens[1]])
    assert not monomial_criterion(trivial_rep(B, gf7), s3)
    chi = rep_from_images(s3.N_sub, [[[2]]], gf7)
    ok, wit = monomial_criterion(chi, s3, details=True)
    assert ok and wit == [(s3.gens[1], s3.gens[0])]
    rho = rep_from_images(d4.N_sub, [[[2]]], gf5)
    assert monomial_criterion(rho, d4)
    ind = induce(rho, d4)
    assert ind.dim == 2 and spin_oracle(ind).irreducible
    with pytest.raises(ValidationError):
        monomial_criterion(regular_rep(s3.N_sub, gf7), s3)


def test_normal_case_matches_double_cosets(d4, gf5):
    for L in irreducibles_of_group(d4.N_sub, gf5):
        r = mackey_sufficient(L, d4, direct=False)
        rows = {row.rep: row.i_value for row in r.double_cosets if row.rep_word != "1"}
        assert rows == dict(normal_case_values(L, d4))
    with pytest.raises(ValidationError):
        normal_case_values(trivial_rep(subgroup(d4, [d4.gens[1]]), gf5), d4)


def test_double_coset_sum_and_representatives(s3, d4, gf7, gf5):
    for G, F in [(s3, gf7), (d4, gf5)]:
        subs = [subgroup(G, [x]) for x in G.embed] + [G]
        for H1 in subs[::2]:
            for H2 in subs[1::2]:
                L1 = irreducibles_of_group(H1, F)[-1]
                L2 = irreducibles_of_group(H2, F)[-1]
                vals = intertwining_via_double_cosets(L1, L2, G)
                assert sum(v for _, v in vals) == intertwining_number(induce(L1, G), induce(L2, G))
                for x, v in vals:
                    for y in double_coset(G, H2, H1, x):
                        assert double_coset_intertwining(L1, L2, int(y), G) == v


def test_induced_isomorphism_examples(s3, gf7):
    chi2 = rep_from_images(s3.N_sub, [[[2]]], gf7)
    chi4 = rep_from_images(s3.N_sub, [[[4]]], gf7)
    r = induced_isomorphism_test(chi2, chi2, s3)
    assert not r.non_isomorphic and r.rows[0].i_value == 1
    r = induced_isomorphism_test(chi2, chi4, s3)
    assert not r.non_isomorphic and r.direct_i == 1


def _d6(gf7):
    G = semidirect(AbelianGroupSpec((3, 2)), group_from_permutations([[1, 0]]), [[[-1, 0], [0, 1]]])
    H1 = G.N_sub
    L1 = rep_from_images(H1, [[[2]], [[1]]], gf7)
    return G, L1


def test_induced_isomorphism_non_isomorphic_pair(gf7):
    G, L1 = _d6(gf7)
    swap = [[0, 1], [1, 0]]
    L2 = rep_from_images(G, [[[2, 0], [0, 4]], [[6, 0], [0, 6]], swap], gf7)
    r = induced_isomorphism_test(L1, L2, G)
    assert r.non_isomorphic and r.direct_i == 0
    L3 = rep_from_images(G, [[[2, 0], [0, 4]], [[1, 0], [0, 1]], swap], gf7)
    r = induced_isomorphism_test(L1, L3, G)
    assert not r.non_isomorphic and r.direct_i == 1


def test_induced_isomorphism_hypothesis(s3, gf7):
    T = trivial_rep(s3.N_sub, gf7)
    chi = rep_from_images(s3.N_sub, [[[2]]], gf7)
    with pytest.raises(HypothesisError):
        induced_isomorphism_test(T, chi, s3)
