import itertools

import numpy as np
import pytest

from repgf.errors import ValidationError
from repgf.groups import (
    AbelianGroupSpec,
    FiniteGroup,
    conj_intersection,
    double_coset,
    double_coset_reps,
    group_from_permutations,
    left_coset_reps,
    semidirect,
    subgroup,
)


def _check_group_axioms(G):
    R = G.root
    els = G.embed
    for a, b, c in itertools.product(els, repeat=3):
        assert R.mult[R.mult[a, b], c] == R.mult[a, R.mult[b, c]]
    for a in els:
        assert R.mult[a, 0] == a == R.mult[0, a]
        assert R.mult[a, R.inv[a]] == 0


def test_s3_semidirect(s3):
    assert s3.order == 6 and not s3.is_abelian()
    _check_group_axioms(s3)
    a, b = s3.gens
    # b a b^-1 = a^-1
    assert s3.conj(b, a) == s3.inverse(a)
    assert s3.N_sub.is_normal_in(s3)


def test_trivial_action_gives_direct_product():
    G = semidirect(AbelianGroupSpec((3,)), group_from_permutations([[1, 0]]), [[[1]]])
    assert G.order == 6 and G.is_abelian()


def test_non_automorphism_rejected():
    with pytest.raises(ValidationError, match="not an automorphism"):
        semidirect(AbelianGroupSpec((4,)), group_from_permutations([[1, 0]]), [[[2]]])


def test_ill_defined_action_rejected():
    with pytest.raises(ValidationError, match="not well defined"):
        semidirect(AbelianGroupSpec((2, 3)), group_from_permutations([[1, 0]]), [[[1, 1], [0, 1]]])


def test_action_must_respect_relations():
    # the 3-cycle generator of C3 cannot act by an involution
    with pytest.raises(ValidationError, match="homomorphism"):
        semidirect(AbelianGroupSpec((3,)), group_from_permutations([[1, 2, 0]]), [[[-1]]])


def test_moduli_validation():
    with pytest.raises(ValidationError):
        AbelianGroupSpec((1, 3))


def test_s4_and_a4_orders():
    S3p = group_from_permutations([[1, 2, 0], [1, 0, 2]])
    S4 = semidirect(AbelianGroupSpec((2, 2)), S3p, [[[0, 1], [1, 1]], [[0, 1], [1, 0]]])
    assert S4.order == 24
    A4 = semidirect(AbelianGroupSpec((2, 2)), group_from_permutations([[1, 2, 0]]), [[[0, 1], [1, 1]]])
    assert A4.order == 12
    # A4 has no subgroup of order 6: spot-check that all 2-generated subgroups avoid it
    orders = {subgroup(A4, [x, y]).order for x in A4.embed for y in A4.embed}
    assert 6 not in orders


def test_bad_table_rejected():
    with pytest.raises(ValidationError):
        FiniteGroup(np.array([[0, 1], [1, 1]]), [1])


def test_cosets_and_double_cosets(s3):
    N = s3.N_sub
    reps = left_coset_reps(s3, N)
    assert len(reps) == 2 and reps[0] == 0
    B = subgroup(s3, [s3.gens[1]])
    dreps = double_coset_reps(s3, B, B)
    sizes = sorted(len(double_coset(s3, B, B, x)) for x in dreps)
    assert sizes == [2, 4]
    # double cosets partition G
    covered = np.concatenate([double_coset(s3, B, B, x) for x in dreps])
    assert sorted(covered.tolist()) == list(range(6))


def test_conj_intersection(s3):
    B = subgroup(s3, [s3.gens[1]])
    a = s3.gens[0]
    assert conj_intersection(s3, B, 0).order == 2
    assert conj_intersection(s3, B, a).order == 1
    assert conj_intersection(s3, s3.N_sub, s3.gens[1]).order == 3


def test_words_evaluate_back(d4):
    for x in d4.embed:
        assert d4.evaluate_word(d4.word(x)) == x


def test_subgroup_not_contained():
    G = semidirect(AbelianGroupSpec((4,)), group_from_permutations([]), [])
    H = subgroup(G, [2])
    with pytest.raises(ValidationError):
        subgroup(H, [1])


def test_permutation_group_validation():
    with pytest.raises(ValidationError):
        group_from_permutations([[0, 0]])
