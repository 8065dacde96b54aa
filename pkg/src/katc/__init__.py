"""Kleene algebra with tests, compiled to guarded-string automata.

The pipeline rewrites a term to negation normal form, builds a simple
epsilon-free automaton over atoms and program letters whose language is
exactly the term's guarded strings, and emits a replayable certificate for
every construction step. Equivalence of terms is decided on the automata;
a brute-force bounded oracle, a plain-KA matrix encoding, a Hoare-implication
reduction and a while-program front end round out the toolkit.
"""

from .errors import (AlphabetCapError, AlphabetError, DimensionError,
                     EmptyProgramsError, FileFormatError, InvariantError,
                     KatError, ParseError, SortError)
from .terms import (Alphabet, KatTerm, Not, One, Plus, Prog, Star, Test,
                    Times, Zero, check_letters, check_sorts, is_boolean,
                    is_nnf, nnf_trace, parse_term, print_term, term_size,
                    to_nnf)
from .guarded import (Atom, BoundedLanguage, GuardedWord, all_atoms, denote,
                      diamond, word_accept_alphabet, word_display)
from .kamatrix import (KaLetter, KaMatrix, KaOne, KaPlus, KaStar, KaTerm,
                       KaTimes, KaZero, encode_automaton, ka_bounded_language,
                       ka_term_size, mat_add, mat_mul, mat_star, print_ka_term)
from .automaton import (Dfa, GsAutomaton, RawAutomaton, accepts,
                        automaton_from_text, automaton_to_text, base_automaton,
                        concat_automaton, count_words_by_length, determinize,
                        equivalent, lang_codes, language_difference_witness,
                        language_matches, load_automaton, save_automaton,
                        star_automaton, sum_automaton)
from .compiler import (CompileResult, ReduceResult, atom_term, compile_term,
                       equivalence_witness, reduce_to_ka, terms_equivalent)
from .certificate import (Certificate, CertStep, Verdict, check_certificate,
                          certificate_from_text, certificate_to_text,
                          load_certificate, replay_step, save_certificate)
from .programs import (DeterminismReport, HoareImplication, IfThen,
                       IfThenElse, PLAIN_SUM, Prim, STARRED_UNIVERSAL, Seq,
                       Skip, While, WhileProgram, check_while_determinism,
                       determinism_report, encode_while, hoare_bounded_valid,
                       hoare_oracle_comparison, hoare_reduce, parse_while,
                       universal_term)

__version__ = "0.1.0"
