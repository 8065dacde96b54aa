"""Term, program and matrix corpora used by the validation suite and reports.

exhaustive_terms enumerates every sort-correct term up to a node-count bound
in a fixed order, so test runs are reproducible without seeds. The random
generators take an explicit Random instance for the same reason.
"""

from __future__ import annotations

from random import Random

from .kamatrix import KaLetter, KaMatrix, KaOne, KaTerm, KaZero
from .terms import (Alphabet, KatTerm, Not, One, Plus, Prog, Star, Test,
                    Times, Zero)


def desk_alphabet() -> Alphabet:
    return Alphabet(("p", "q"), ("b", "c"))


def exhaustive_terms(alphabet: Alphabet, max_size: int) -> list[KatTerm]:
    """Every sort-correct term with at most max_size nodes, smallest first.

    Terms of each exact size are listed leaves first, then complements of
    Boolean terms, then stars, then sums and products by split point.
    """
    bool_memo: dict[int, list[KatTerm]] = {}
    term_memo: dict[int, list[KatTerm]] = {}

    def bools(n: int) -> list[KatTerm]:
        if n in bool_memo:
            return bool_memo[n]
        out: list[KatTerm] = []
        if n == 1:
            out.extend((Zero(), One()))
            out.extend(Test(name) for name in alphabet.tests)
        else:
            out.extend(Not(t) for t in bools(n - 1))
            for build in (Plus, Times):
                for i in range(1, n - 1):
                    for left in bools(i):
                        for right in bools(n - 1 - i):
                            out.append(build(left, right))
        bool_memo[n] = out
        return out

    def terms(n: int) -> list[KatTerm]:
        if n in term_memo:
            return term_memo[n]
        out: list[KatTerm] = []
        if n == 1:
            out.extend((Zero(), One()))
            out.extend(Test(name) for name in alphabet.tests)
            out.extend(Prog(name) for name in alphabet.programs)
        else:
            out.extend(Not(t) for t in bools(n - 1))
            out.extend(Star(t) for t in terms(n - 1))
            for build in (Plus, Times):
                for i in range(1, n - 1):
                    for left in terms(i):
                        for right in terms(n - 1 - i):
                            out.append(build(left, right))
        term_memo[n] = out
        return out

    result: list[KatTerm] = []
    for n in range(1, max_size + 1):
        result.extend(terms(n))
    return result


def random_bool_term(rng: Random, size: int, alphabet: Alphabet) -> KatTerm:
    if size <= 1:
        leaves: list[KatTerm] = [Zero(), One()]
        leaves.extend(Test(name) for name in alphabet.tests)
        return rng.choice(leaves)
    if size == 2:
        return Not(random_bool_term(rng, 1, alphabet))
    op = rng.choice(("not", "plus", "times"))
    if op == "not":
        return Not(random_bool_term(rng, size - 1, alphabet))
    split = rng.randint(1, size - 2)
    build = Plus if op == "plus" else Times
    return build(random_bool_term(rng, split, alphabet),
                 random_bool_term(rng, size - 1 - split, alphabet))


def random_term(rng: Random, size: int, alphabet: Alphabet) -> KatTerm:
    """A sort-correct term with exactly max(size, 1) nodes."""
    if size <= 1:
        leaves: list[KatTerm] = [Zero(), One()]
        leaves.extend(Test(name) for name in alphabet.tests)
        leaves.extend(Prog(name) for name in alphabet.programs)
        return rng.choice(leaves)
    if size == 2:
        if rng.random() < 0.5:
            return Not(random_bool_term(rng, 1, alphabet))
        return Star(random_term(rng, 1, alphabet))
    op = rng.choice(("not", "star", "plus", "times", "plus", "times"))
    if op == "not":
        return Not(random_bool_term(rng, size - 1, alphabet))
    if op == "star":
        return Star(random_term(rng, size - 1, alphabet))
    split = rng.randint(1, size - 2)
    build = Plus if op == "plus" else Times
    return build(random_term(rng, split, alphabet),
                 random_term(rng, size - 1 - split, alphabet))


def while_corpus() -> list[str]:
    """Twenty structurally varied while programs over p, q, b, c."""
    return [
        "skip",
        "p",
        "p; q",
        "if b then p else q",
        "if b then p",
        "while b do p",
        "while b do { p; q }",
        "if b then { p; q } else skip",
        "p; if b then q",
        "while b do if c then p else q",
        "if b & c then p else q",
        "if b | c then p",
        "if ~b then skip else p",
        "while b & ~c do p",
        "p; while b do q; p",
        "while b do while c do p",
        "if b then if c then p else q",
        "while true do p",
        "if false then p else q",
        "while b do { if c then p else { q; p } }; q",
    ]


def identity_pairs() -> list[tuple[str, str]]:
    """Known equivalences over the desk alphabet, program and test instances."""
    return [
        ("b b", "b"),
        ("b + ~b", "1"),
        ("b*", "1"),
        ("p (q p)*", "(p q)* p"),
        ("b (c b)*", "(b c)* b"),
        ("(p + q)*", "p* (q p*)*"),
        ("(b + c)*", "b* (c b*)*"),
        ("b c", "c b"),
        ("p + p", "p"),
        ("1 p", "p"),
        ("p 0", "0"),
        ("(p*)*", "p*"),
        ("~(b c)", "~b + ~c"),
        ("~(b + c)", "~b ~c"),
        ("(b p)* b ~b", "0"),
    ]


def inequivalent_pairs() -> list[tuple[str, str]]:
    """Pairs that must separate, each with a short witness."""
    return [
        ("p", "q"),
        ("p q", "q p"),
        ("b", "c"),
        ("p", "p p"),
        ("p*", "p"),
        ("b", "1"),
        ("0", "1"),
        ("p q", "p"),
        ("~b", "b"),
        ("(p q)*", "(q p)*"),
        ("p + q", "p"),
        ("b p", "p b"),
    ]


def hoare_instances() -> list[tuple[str, str, str]]:
    """Desk-scale (r, p, q) triples for the Hoare comparison report."""
    return [
        ("0", "p", "p"),
        ("0", "p", "q"),
        ("1", "1", "0"),
        ("b", "b", "0"),
        ("b", "c", "0"),
        ("b", "p", "b p"),
        ("p", "p", "0"),
        ("p p", "p", "q"),
        ("b c", "b", "c"),
        ("c", "(b p)* ~b", "~b + b p (b p)* ~b"),
        ("0", "(p p p p)*", "(p p p p p)*"),
    ]


def random_ka_matrix(rng: Random, n: int, letters: int) -> KaMatrix:
    """Square matrix whose entries are single letters.

    Letter-only entries keep every word in an entry of the star at a length
    equal to its path length, so bounded enumeration stays small.
    """
    pool: list[KaTerm] = [KaLetter(c) for c in range(letters)]
    return KaMatrix(tuple(tuple(rng.choice(pool) for _ in range(n))
                          for _ in range(n)))
