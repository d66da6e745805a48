import itertools

import numpy as np
import pytest

from repgf.errors import CharacteristicError, HypothesisError, ValidationError
from repgf.fields import make_field
from repgf.groups import AbelianGroupSpec, group_from_permutations, semidirect
from repgf.littlegroups import (
    NO_FACTOR,
    char_action,
    characters,
    classify,
    completeness_check,
    extend_character,
    field_compat,
    isotypic_space,
    match_irreducible,
    orbits,
    tensor_char,
)
from repgf.meataxe import irreducibles_of_group, spin_oracle
from repgf.representations import direct_sum, intertwining_number, regular_rep, trivial_rep


def _values(chars, F):
    return [c.encode() for c in chars]


def test_characters_examples(gf7, gf5):
    assert _values(characters(AbelianGroupSpec((3,)), gf7), gf7) == [[1], [2], [4]]
    assert _values(characters(AbelianGroupSpec((3,)), gf5), gf5) == [[1]]
    assert _values(characters(AbelianGroupSpec((4,)), gf5), gf5) == [[1], [2], [3], [4]]
    with pytest.raises(CharacteristicError):
        characters(AbelianGroupSpec((5,)), gf5)


@pytest.mark.parametrize("moduli,q", [((2, 4), 5), ((6,), 7), ((3, 3), 13), ((2, 2), 3), ((4,), 7)])
def test_character_count_against_brute_force(moduli, q):
    F = make_field(q)
    N = AbelianGroupSpec(moduli)
    brute = 0
    for vals in itertools.product(range(1, q), repeat=len(moduli)):
        if all(pow(v, m, q) == 1 for v, m in zip(vals, moduli)):
            brute += 1
    chars = characters(N, F)
    assert len(chars) == brute
    # each is a homomorphism on all pairs
    vecs = N.vectors()
    for c in chars:
        for a in vecs:
            for b in vecs:
                s = tuple((np.array(a) + np.array(b)) % np.array(moduli))
                assert c(s) == F.smul(c(a), c(b))


def test_char_action_examples(s3, gf7):
    chars = characters(s3.N, gf7)
    chi2 = chars[1]
    assert char_action(chi2, s3.gens[1], s3).encode() == [4]
    assert char_action(chi2, s3.gens[0], s3).encode() == [2]
    for g in s3.embed:
        assert char_action(chars[0], int(g), s3).is_trivial()


def test_orbits_examples(s3, d4, gf7, gf5):
    od = orbits(s3, characters(s3.N, gf7))
    assert [[c.encode() for c in o.orbit] for o in od] == [[[1]], [[2], [4]]]
    assert [o.stabilizer.order for o in od] == [6, 3]
    assert [o.h_stabilizer.order for o in od] == [2, 1]
    od = orbits(d4, characters(d4.N, gf5))
    assert sorted(o.size for o in od) == [1, 1, 2]
    for o in od:
        assert o.size * o.stabilizer.order == d4.order
        assert d4.N_sub.is_subgroup_of(o.stabilizer)


def test_trivial_action_orbits_are_singletons(gf7):
    G = semidirect(AbelianGroupSpec((3,)), group_from_permutations([[1, 0]]), [[[1]]])
    od = orbits(G, characters(G.N, gf7))
    assert all(o.size == 1 and o.stabilizer.order == 6 for o in od)


def test_extend_and_tensor(s3, gf7):
    od = orbits(s3, characters(s3.N, gf7))
    ext = extend_character(od[0].rep, od[0].stabilizer, s3)
    assert all(a.tolist() == [[1]] for a in ext.images)
    ext2 = extend_character(od[1].rep, od[1].stabilizer, s3)
    assert ext2.images[0].tolist() == [[2]]
    sign = irreducibles_of_group(od[0].h_stabilizer, gf7)
    sgn = [r for r in sign if r.images[0].tolist() == [[6]]][0]
    T = tensor_char(ext, sgn, s3)
    assert [a.tolist() for a in T.images] == [[[1]], [[6]]]
    # a non-stabilizing subgroup cannot carry the extension
    with pytest.raises(ValidationError):
        extend_character(od[1].rep, s3, s3)


def test_classify_examples(s3, d4, gf7, gf5):
    E = classify(s3, gf7)
    assert [e.dim_theta for e in E] == [1, 1, 2]
    assert [e.endo_dim for e in E] == [1, 1, 1]
    assert completeness_check(E, s3) == (6, True)
    E = classify(d4, gf5)
    assert sorted(e.dim_theta for e in E) == [1, 1, 1, 1, 2]
    assert completeness_check(E, d4) == (8, True)
    G = semidirect(AbelianGroupSpec((3,)), group_from_permutations([[1, 0]]), [[[1]]])
    E = classify(G, gf7)
    assert len(E) == 6 and all(e.dim_theta == 1 for e in E)


def test_classify_entries_are_oracle_irreducible(s3, d4, gf7, gf5):
    for G, F in [(s3, gf7), (d4, gf5), (s3, gf5)]:
        E = classify(G, F, oracle=True)
        for e in E:
            assert spin_oracle(e.theta).irreducible
            assert e.dim_theta == e.orbit_size * e.rho.dim
        for a, b in itertools.combinations(E, 2):
            assert intertwining_number(a.theta, b.theta) == 0


def test_completeness_examples(s3, gf5):
    E = classify(s3, gf5)
    assert [e.dim_theta for e in E] == [1, 1]
    assert completeness_check(E, s3) == (2, False)
    F3 = make_field(3)
    V4 = semidirect(AbelianGroupSpec((2, 2)), group_from_permutations([]), [])
    E = classify(V4, F3)
    assert completeness_check(E, V4) == (4, True)


def test_match_examples(s3, gf7, gf5):
    E = classify(s3, gf7)
    m = match_irreducible(trivial_rep(s3, gf7), E, s3)
    assert m.j == 0 and m.rho.images[0].tolist() == [[1]]
    two = [V for V in irreducibles_of_group(s3, gf7) if V.dim == 2][0]
    m = match_irreducible(two, E, s3)
    assert m.j == 1 and m.rho.dim == 1
    assert len(isotypic_space(two, m.chi, s3)) == 1
    E5 = classify(s3, gf5)
    two5 = [V for V in irreducibles_of_group(s3, gf5) if V.dim == 2][0]
    assert match_irreducible(two5, E5, s3) == NO_FACTOR
    with pytest.raises(HypothesisError):
        match_irreducible(regular_rep(s3, gf7), E, s3)


def test_field_compat_examples(gf7, gf5):
    assert field_compat(AbelianGroupSpec((3,)), gf7)
    assert not field_compat(AbelianGroupSpec((3,)), gf5)
    assert field_compat(AbelianGroupSpec((4,)), gf5)


def test_representative_choice_does_not_matter(d4, gf5):
    a = classify(d4, gf5)
    b = classify(d4, gf5, choose="max")
    assert len(a) == len(b)
    for e in a:
        assert sum(1 for f in b if intertwining_number(e.theta, f.theta)) == 1


def test_extension_field_classification(gf25):
    # Z3 x| C2 over GF(25): 3 | 24, so the split case applies
    G = semidirect(AbelianGroupSpec((3,)), group_from_permutations([[1, 0]]), [[[-1]]])
    E = classify(G, gf25)
    assert sorted(e.dim_theta for e in E) == [1, 1, 2]
    assert completeness_check(E, G) == (6, True)
