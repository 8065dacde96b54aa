"""Plain KA terms, matrices, the block star, and the automaton encoding."""

from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from katc.errors import DimensionError
from katc.kamatrix import (KaLetter, KaMatrix, KaOne, KaPlus, KaStar, KaTimes,
                           KaZero, encode_automaton, ka_bounded_language,
                           ka_bounded_languages, ka_plus, ka_star,
                           ka_term_size, ka_times, mat_add, mat_mul, mat_star,
                           print_ka_term)


def L(c):
    return KaLetter(c)


def lang(t, n):
    return ka_bounded_language(t, n)


def test_constructors_absorb_units():
    x = L(0)
    assert ka_plus(KaZero(), x) == x
    assert ka_plus(x, KaZero()) == x
    assert ka_times(KaOne(), x) == x
    assert ka_times(x, KaOne()) == x
    assert ka_times(KaZero(), x) == KaZero()
    assert ka_times(x, KaZero()) == KaZero()
    assert ka_star(KaZero()) == KaOne()
    assert ka_star(x) == KaStar(x)


def test_bounded_language_basics():
    assert lang(KaZero(), 3) == set()
    assert lang(KaOne(), 3) == {()}
    assert lang(L(1), 3) == {(1,)}
    assert lang(KaPlus(L(0), L(1)), 3) == {(0,), (1,)}
    assert lang(KaTimes(L(0), L(1)), 3) == {(0, 1)}
    assert lang(KaStar(L(0)), 3) == {(), (0,), (0, 0), (0, 0, 0)}
    assert lang(KaTimes(L(0), KaTimes(L(1), L(0))), 2) == set()


def test_bounded_language_on_shared_subterms():
    x = KaPlus(L(0), L(1))
    doubled = KaTimes(x, x)
    assert lang(doubled, 2) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    many = ka_bounded_languages([x, doubled], 2)
    assert many[0] == {(0,), (1,)}
    assert many[1] == lang(doubled, 2)


def test_ka_term_size_counts_tree_nodes():
    t = KaTimes(KaStar(KaPlus(L(0), L(1))), L(0))
    assert ka_term_size(t) == 6
    shared = KaPlus(t, t)
    assert ka_term_size(shared) == 13


def test_print_ka_term():
    from katc.terms import Alphabet

    a = Alphabet(("p",), ("b",))
    t = KaTimes(KaStar(KaPlus(L(0), L(1))), L(2))
    assert print_ka_term(t, a) == "(p + x[0])* x[1]"


def test_mat_add_mul_shapes():
    m = KaMatrix(((L(0), L(1)),))
    with pytest.raises(DimensionError):
        mat_add(m, KaMatrix(((L(0),),)))
    with pytest.raises(DimensionError):
        mat_mul(m, m)
    identity = KaMatrix(((KaOne(), KaZero()), (KaZero(), KaOne())))
    assert mat_mul(m, identity) == m


def test_mat_star_one_by_one():
    s = mat_star(KaMatrix(((L(0),),)))
    assert s.rows[0][0] == KaStar(L(0))


def test_mat_star_nilpotent_two_by_two():
    """[[0,x],[0,0]]* must be [[1,x],[0,1]].

    The off-diagonal entry comes out as (0 + x 0* 0)* x 0* which has the
    language {x}; an unstarred head factor would instead give the empty
    language and break this case.
    """
    m = KaMatrix(((KaZero(), L(0)), (KaZero(), KaZero())))
    s = mat_star(m)
    assert lang(s.rows[0][0], 4) == {()}
    assert lang(s.rows[0][1], 4) == {(0,)}
    assert lang(s.rows[1][0], 4) == set()
    assert lang(s.rows[1][1], 4) == {()}


def test_mat_star_two_by_two_language():
    # two states in a cycle: paths from 0 to 0 are (ab)^k
    m = KaMatrix(((KaZero(), L(0)), (L(1), KaZero())))
    s = mat_star(m)
    assert lang(s.rows[0][0], 4) == {(), (0, 1), (0, 1, 0, 1)}
    assert lang(s.rows[0][1], 4) == {(0,), (0, 1, 0)}


def test_mat_star_rejects_bad_shapes():
    with pytest.raises(DimensionError):
        mat_star(KaMatrix(((L(0), L(1)),)))
    m3 = KaMatrix(tuple(tuple(L(0) for _ in range(3)) for _ in range(3)))
    with pytest.raises(DimensionError):
        mat_star(m3, partition_size=0)
    with pytest.raises(DimensionError):
        mat_star(m3, partition_size=3)


def _entry_langs(s: KaMatrix, bound: int):
    n = s.nrows
    entries = [s.rows[i][j] for i in range(n) for j in range(n)]
    return ka_bounded_languages(entries, bound)


def test_mat_star_partition_choice_is_immaterial_3x3():
    m = KaMatrix(((L(0), L(1), L(0)),
                  (L(1), L(0), L(1)),
                  (L(0), L(0), L(1))))
    a = _entry_langs(mat_star(m, partition_size=1), 6)
    b = _entry_langs(mat_star(m, partition_size=2), 6)
    assert a == b


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 2**32 - 1), st.integers(3, 5))
def test_mat_star_partition_choice_is_immaterial_random(seed, n):
    from katc.corpus import random_ka_matrix

    m = random_ka_matrix(Random(seed), n, 2)
    bound = 2 * n + 1
    langs = [_entry_langs(mat_star(m, partition_size=k), bound)
             for k in range(1, n)]
    assert all(l == langs[0] for l in langs)


def test_mat_star_matches_path_counting():
    """Entry (i,j) of the star must hold exactly the words spelling i->j paths."""
    rng = Random(11)
    from katc.corpus import random_ka_matrix

    for n in (2, 3, 4):
        m = random_ka_matrix(rng, n, 2)
        bound = 2 * n + 1
        codes = [[m.rows[i][j].code for j in range(n)] for i in range(n)]
        expected = [[set() for _ in range(n)] for _ in range(n)]
        frontier = {(i, i, ()) for i in range(n)}
        for i in range(n):
            expected[i][i].add(())
        for _ in range(bound):
            grown = set()
            for i, j, w in frontier:
                for k in range(n):
                    w2 = w + (codes[j][k],)
                    if w2 not in expected[i][k]:
                        expected[i][k].add(w2)
                        grown.add((i, k, w2))
            frontier = grown
        got = _entry_langs(mat_star(m), bound)
        assert got == [expected[i][j] for i in range(n) for j in range(n)]


def test_encode_automaton_language():
    from katc.automaton import base_automaton, lang_codes
    from katc.guarded import letter_bits, pack_word
    from katc.terms import Alphabet, Prog

    a = Alphabet(("p",), ("b",))
    aut = base_automaton(Prog("p"), a)
    enc = encode_automaton(aut)
    bits = letter_bits(a)
    got = {}
    for w in ka_bounded_language(enc, 2 * aut.n + 1):
        got.setdefault(len(w), set()).add(pack_word(w, bits))
    assert got == lang_codes(aut, 2 * aut.n + 1)
