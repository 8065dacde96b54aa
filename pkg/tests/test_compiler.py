"""End-to-end compilation: sizes, languages, certificates, the KA reduction."""

from random import Random

from hypothesis import given, settings
from hypothesis import strategies as st

from katc.automaton import lang_codes, language_matches
from katc.certificate import certificate_to_text, check_certificate
from katc.compiler import (atom_term, compile_term, equivalence_witness,
                           reduce_to_ka, terms_equivalent)
from katc.guarded import denote_codes, letter_bits, pack_word
from katc.kamatrix import ka_bounded_language
from katc.terms import (Alphabet, parse_term, print_term, term_size, to_nnf)

AB1 = Alphabet(("p",), ("b",))
AB = Alphabet(("p", "q"), ("b", "c"))


def states(text, alphabet=AB1):
    return compile_term(parse_term(text, alphabet), alphabet).automaton.n


def test_state_recurrences():
    """Construction sizes: sum 2+s1+s2, product 2+n1+n2, star 2+s."""
    assert states("0") == 0
    assert states("1") == 2
    assert states("b") == 2
    assert states("~b") == 2
    assert states("p") == 4
    assert states("p + p") == 2 + 4 + 4
    assert states("b + p") == 2 + 0 + 4
    assert states("b p") == 2 + 2 + 4
    assert states("p q", AB) == 2 + 4 + 4
    assert states("p*") == 2 + 4
    # b p has 8 states split 2+6, so its star has 2 + 6, and the outer
    # product wraps that and ~b in a fresh pair of guard states
    assert states("(b p)* ~b") == 2 + (2 + 6) + 2


def test_state_bound_exhaustive_small():
    from katc.corpus import exhaustive_terms

    for t in exhaustive_terms(AB1, 4):
        res = compile_term(t, AB1)
        assert res.automaton.n <= 4 * term_size(t) + 2, print_term(t)


def test_intermediates_cover_every_path():
    t = to_nnf(parse_term("(b p)* ~b", AB1))
    res = compile_term(t, AB1)
    paths = set(res.intermediates)
    assert () in paths
    assert (0,) in paths and (1,) in paths
    assert res.intermediates[()] == res.automaton
    for path, aut in res.intermediates.items():
        aut.validate()


def test_compile_output_is_deterministic():
    t = parse_term("(b p + q)* ~c", AB)
    r1 = compile_term(t, AB)
    r2 = compile_term(t, AB)
    assert r1.automaton == r2.automaton
    assert certificate_to_text(r1.certificate) == certificate_to_text(r2.certificate)


def test_compile_language_known_cases():
    for text in ["0", "1", "b", "~b", "p", "b p", "p + 1", "p*", "(b p)* ~b"]:
        t = parse_term(text, AB1)
        aut = compile_term(t, AB1).automaton
        bound = 2 * aut.n + 1
        ok, why = language_matches(aut, denote_codes(t, AB1, bound), bound)
        assert ok, f"{text}: {why}"


def test_certificates_check_out_of_the_box():
    for text in ["1", "p", "~(b + c)", "(p q)* (b + ~c)"]:
        t = parse_term(text, AB)
        res = compile_term(t, AB)
        verdict = check_certificate(res.certificate, res.automaton, t)
        assert verdict.accepted, (text, verdict.reason)


def test_equivalence_and_witnesses():
    assert terms_equivalent(parse_term("b b", AB1), parse_term("b", AB1), AB1)
    assert terms_equivalent(parse_term("b + ~b", AB1), parse_term("1", AB1), AB1)
    w = equivalence_witness(parse_term("b p", AB1), parse_term("p", AB1), AB1)
    assert w is not None and len(w) == 3


def test_empty_automata_compare_equal():
    assert terms_equivalent(parse_term("0", AB1), parse_term("b ~b", AB1), AB1)


def test_atom_term_languages():
    for i in range(AB.n_atoms):
        t = atom_term(AB, i)
        buckets = denote_codes(t, AB, 1)
        assert buckets == {1: {pack_word((2 + i,), letter_bits(AB))}}


def test_atom_term_no_tests():
    a = Alphabet(("p",), ())
    t = atom_term(a, 0)
    # the only atom is x[], letter code 1 after the single program
    assert denote_codes(t, a, 1) == {1: {1}}


def test_reduce_to_ka_routes_agree():
    t1 = parse_term("p (q p)*", AB)
    t2 = parse_term("(p q)* p", AB)
    rr = reduce_to_ka(t1, t2, AB)
    assert ka_bounded_language(rr.left, 7) == ka_bounded_language(rr.right, 7)
    assert len(rr.atom_definitions) == AB.n_atoms


def test_reduce_to_ka_separates_inequivalent():
    rr = reduce_to_ka(parse_term("p", AB1), parse_term("p p", AB1), AB1)
    assert ka_bounded_language(rr.left, 7) != ka_bounded_language(rr.right, 7)


def test_encoding_language_equals_automaton_language():
    for text in ["p", "b", "b p", "p + q"]:
        t = parse_term(text, AB)
        aut = compile_term(t, AB).automaton
        enc_lang = ka_bounded_language(reduce_to_ka(t, t, AB).left, 5)
        bits = letter_bits(AB)
        got = {}
        for w in enc_lang:
            got.setdefault(len(w), set()).add(pack_word(w, bits))
        want = lang_codes(aut, 5)
        assert got == want, text


@settings(deadline=None, max_examples=60)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8))
def test_compiled_language_matches_oracle(seed, size):
    from katc.corpus import random_term

    t = random_term(Random(seed), size, AB1)
    aut = compile_term(t, AB1).automaton
    bound = 2 * aut.n + 1
    ok, why = language_matches(aut, denote_codes(t, AB1, bound), bound)
    assert ok, f"{print_term(t)}: {why}"


@settings(deadline=None, max_examples=40)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8))
def test_certificates_accept_for_random_terms(seed, size):
    from katc.corpus import random_term

    t = random_term(Random(seed), size, AB)
    res = compile_term(t, AB)
    assert check_certificate(res.certificate, res.automaton, t).accepted


@settings(deadline=None, max_examples=60)
@given(st.integers(0, 2**32 - 1), st.integers(1, 10))
def test_state_bound_random(seed, size):
    from katc.corpus import random_term

    t = random_term(Random(seed), size, AB)
    assert compile_term(t, AB).automaton.n <= 4 * term_size(t) + 2
