"""While-program front end and the Hoare-implication reduction.

Programs are encoded as terms: p;q becomes pq, if b then p else q becomes
bp + ~bq, if b then p becomes bp + ~b, and while b do p becomes (bp)* ~b.
Compiled while programs are deterministic in a precise sense: at most one
start state can consume any given first atom, and from it every reachable
subset of live states is a singleton. determinism_report checks both parts
on the automaton trimmed to states that can still reach an accept; dead
states left behind by concatenation carry no words and are ignored.

A Hoare-style implication "r = 0 implies p = q" reduces to the plain
equation p + uru = q + uru for a universal term u built from the atomic
programs, either their sum or the starred sum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automaton import GsAutomaton, label_text
from .errors import EmptyProgramsError, KatError, ParseError
from .guarded import GuardedWord, denote, n_letters
from .terms import (Alphabet, KatTerm, Not, One, Plus, Prog, Star, Test,
                    Times, Zero, term_size)


class WhileProgram:
    __slots__ = ()


@dataclass(frozen=True)
class Skip(WhileProgram):
    __slots__ = ()


@dataclass(frozen=True)
class Prim(WhileProgram):
    __slots__ = ("name",)
    name: str


@dataclass(frozen=True)
class Seq(WhileProgram):
    __slots__ = ("first", "second")
    first: WhileProgram
    second: WhileProgram


@dataclass(frozen=True)
class IfThenElse(WhileProgram):
    __slots__ = ("cond", "then_branch", "else_branch")
    cond: KatTerm
    then_branch: WhileProgram
    else_branch: WhileProgram


@dataclass(frozen=True)
class IfThen(WhileProgram):
    __slots__ = ("cond", "then_branch")
    cond: KatTerm
    then_branch: WhileProgram


@dataclass(frozen=True)
class While(WhileProgram):
    __slots__ = ("cond", "body")
    cond: KatTerm
    body: WhileProgram


_KEYWORDS = ("skip", "if", "then", "else", "while", "do", "true", "false")


def _lex_while(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            tokens.append(("kw" if word in _KEYWORDS else "ident", word, i))
            i = j
            continue
        if c in ";{}()~&|":
            tokens.append((c, c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    return tokens


class _WhileParser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.tokens = _lex_while(text)
        self.alphabet = alphabet
        self.pos = 0
        self.end = len(text)

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return ("end", "", self.end)

    def take(self, kind: str, what: str):
        tok = self.peek()
        if tok[0] != kind or (kind == "kw" and tok[1] != what):
            raise ParseError(f"expected {what}", tok[2])
        self.pos += 1
        return tok

    def at_kw(self, word: str) -> bool:
        tok = self.peek()
        return tok[0] == "kw" and tok[1] == word

    def parse_seq(self) -> WhileProgram:
        out = self.parse_stmt()
        while self.peek()[0] == ";":
            self.pos += 1
            out = Seq(out, self.parse_stmt())
        return out

    def parse_stmt(self) -> WhileProgram:
        tok = self.peek()
        if tok[0] == "kw":
            if tok[1] == "skip":
                self.pos += 1
                return Skip()
            if tok[1] == "if":
                self.pos += 1
                cond = self.parse_bexp()
                self.take("kw", "then")
                then_branch = self.parse_block()
                if self.at_kw("else"):
                    self.pos += 1
                    return IfThenElse(cond, then_branch, self.parse_block())
                return IfThen(cond, then_branch)
            if tok[1] == "while":
                self.pos += 1
                cond = self.parse_bexp()
                self.take("kw", "do")
                return While(cond, self.parse_block())
            raise ParseError(f"unexpected keyword {tok[1]!r}", tok[2])
        if tok[0] == "ident":
            self.pos += 1
            if tok[1] not in self.alphabet.programs:
                raise ParseError(f"unknown program {tok[1]!r}", tok[2])
            return Prim(tok[1])
        raise ParseError("expected a statement", tok[2])

    def parse_block(self) -> WhileProgram:
        if self.peek()[0] == "{":
            self.pos += 1
            out = self.parse_seq()
            tok = self.peek()
            if tok[0] != "}":
                raise ParseError("expected }", tok[2])
            self.pos += 1
            return out
        return self.parse_stmt()

    def parse_bexp(self) -> KatTerm:
        out = self.parse_bterm()
        while self.peek()[0] == "|":
            self.pos += 1
            out = Plus(out, self.parse_bterm())
        return out

    def parse_bterm(self) -> KatTerm:
        out = self.parse_bfactor()
        while self.peek()[0] == "&":
            self.pos += 1
            out = Times(out, self.parse_bfactor())
        return out

    def parse_bfactor(self) -> KatTerm:
        tok = self.peek()
        if tok[0] == "~":
            self.pos += 1
            return Not(self.parse_bfactor())
        if tok[0] == "(":
            self.pos += 1
            out = self.parse_bexp()
            closing = self.peek()
            if closing[0] != ")":
                raise ParseError("expected )", closing[2])
            self.pos += 1
            return out
        if tok[0] == "kw" and tok[1] in ("true", "false"):
            self.pos += 1
            return One() if tok[1] == "true" else Zero()
        if tok[0] == "ident":
            self.pos += 1
            if tok[1] not in self.alphabet.tests:
                raise ParseError(f"unknown test {tok[1]!r}", tok[2])
            return Test(tok[1])
        raise ParseError("expected a test expression", tok[2])


def parse_while(text: str, alphabet: Alphabet) -> WhileProgram:
    parser = _WhileParser(text, alphabet)
    out = parser.parse_seq()
    tok = parser.peek()
    if tok[0] != "end":
        raise ParseError("trailing input after the program", tok[2])
    return out


def encode_while(w: WhileProgram) -> KatTerm:
    """Translate a while program into its KAT term."""
    if isinstance(w, Skip):
        return One()
    if isinstance(w, Prim):
        return Prog(w.name)
    if isinstance(w, Seq):
        return Times(encode_while(w.first), encode_while(w.second))
    if isinstance(w, IfThenElse):
        return Plus(Times(w.cond, encode_while(w.then_branch)),
                    Times(Not(w.cond), encode_while(w.else_branch)))
    if isinstance(w, IfThen):
        return Plus(Times(w.cond, encode_while(w.then_branch)), Not(w.cond))
    if isinstance(w, While):
        return Times(Star(Times(w.cond, encode_while(w.body))), Not(w.cond))
    raise KatError(f"unknown program node {type(w).__name__}")


@dataclass(frozen=True)
class DeterminismReport:
    deterministic: bool
    shared_start_atoms: tuple[str, ...]
    multi_subsets: tuple[tuple[int, ...], ...]


def determinism_report(aut: GsAutomaton) -> DeterminismReport:
    """Check the two-part determinism property on the trimmed automaton.

    Part one: for each atom, at most one live start state can consume it.
    Part two: seeding a subset walk with the states those starts reach on
    their atom, every subset reachable over the full alphabet is a singleton.
    """
    reverse: dict[int, set[int]] = {}
    for s, d, _ in aut.edges:
        reverse.setdefault(d, set()).add(s)
    alive = set(aut.accept)
    stack = list(aut.accept)
    while stack:
        d = stack.pop()
        for s in reverse.get(d, ()):
            if s not in alive:
                alive.add(s)
                stack.append(s)
    adjacency: dict[int, dict[int, set[int]]] = {}
    for s, d, l in aut.edges:
        if s in alive and d in alive:
            adjacency.setdefault(l, {}).setdefault(s, set()).add(d)
    np_ = len(aut.alphabet.programs)
    shared = []
    seeds = []
    for i in range(aut.alphabet.n_atoms):
        m = adjacency.get(np_ + i, {})
        starts = [s for s in sorted(aut.start) if s in m]
        if len(starts) > 1:
            shared.append(label_text(aut.alphabet, np_ + i))
        if starts:
            seeds.append(frozenset().union(*(m[s] for s in starts)))
    seen = set()
    work = []
    for t0 in seeds:
        if t0 and t0 not in seen:
            seen.add(t0)
            work.append(t0)
    multi = []
    qi = 0
    while qi < len(work):
        subset = work[qi]
        qi += 1
        if len(subset) > 1:
            multi.append(tuple(sorted(subset)))
        for letter in range(n_letters(aut.alphabet)):
            m = adjacency.get(letter)
            if not m:
                continue
            nxt = frozenset(d for s in subset for d in m.get(s, ()))
            if nxt and nxt not in seen:
                seen.add(nxt)
                work.append(nxt)
    return DeterminismReport(not shared and not multi, tuple(shared), tuple(multi))


def check_while_determinism(w: WhileProgram, alphabet: Alphabet) -> DeterminismReport:
    from .compiler import compile_term
    return determinism_report(compile_term(encode_while(w), alphabet).automaton)


# --- Hoare-implication reduction ----------------------------------------------


PLAIN_SUM = "plain-sum"
STARRED_UNIVERSAL = "starred-universal"


@dataclass(frozen=True)
class HoareImplication:
    """r = 0 implies p = q, all three sides KAT terms."""

    r: KatTerm
    p: KatTerm
    q: KatTerm


def universal_term(alphabet: Alphabet, mode: str = PLAIN_SUM) -> KatTerm:
    """The program-covering term u: the sum of atomic programs, or its star."""
    if mode not in (PLAIN_SUM, STARRED_UNIVERSAL):
        raise KatError(f"unknown universal-term mode {mode!r}")
    if not alphabet.programs:
        if mode == PLAIN_SUM:
            raise EmptyProgramsError("the plain-sum universal term needs at "
                                     "least one atomic program")
        return Star(Zero())
    out: KatTerm = Prog(alphabet.programs[0])
    for name in alphabet.programs[1:]:
        out = Plus(out, Prog(name))
    return Star(out) if mode == STARRED_UNIVERSAL else out


def hoare_reduce(imp: HoareImplication, alphabet: Alphabet,
                 mode: str = PLAIN_SUM) -> tuple[KatTerm, KatTerm]:
    """The equation p + uru = q + uru standing in for the implication."""
    u = universal_term(alphabet, mode)
    uru = Times(Times(u, imp.r), u)
    return Plus(imp.p, uru), Plus(imp.q, uru)


def hoare_size_growth(imp: HoareImplication, alphabet: Alphabet,
                      mode: str = PLAIN_SUM) -> int:
    """term_size(p + uru) - term_size(p); equals 2 size(u) + size(r) + 3."""
    lhs, _ = hoare_reduce(imp, alphabet, mode)
    return term_size(lhs) - term_size(imp.p)


def has_factor(word: GuardedWord, factors: frozenset[GuardedWord] | set) -> bool:
    """True when some atom-to-atom slice of the word is one of the factors."""
    letters = word.letters
    positions = (len(letters) + 1) // 2
    for i in range(positions):
        for j in range(i, positions):
            if GuardedWord(letters[2 * i:2 * j + 1]) in factors:
                return True
    return False


def hoare_bounded_valid(imp: HoareImplication, alphabet: Alphabet,
                        max_len: int) -> bool:
    """Ground truth at a bound: every word separating p from q has an r-factor.

    This matches validity of the implication over guarded strings: the words
    that r = 0 rules out are exactly those containing a fused factor from r's
    language.
    """
    pw = denote(imp.p, alphabet, max_len).words
    qw = denote(imp.q, alphabet, max_len).words
    rw = denote(imp.r, alphabet, max_len).words
    return all(has_factor(w, rw) for w in pw ^ qw)


@dataclass(frozen=True)
class HoareComparisonRow:
    r_text: str
    p_text: str
    q_text: str
    mode: str
    reduced_equal: bool
    bounded_valid: bool

    @property
    def agrees(self) -> bool:
        return self.reduced_equal == self.bounded_valid


def hoare_oracle_comparison(instances, alphabet: Alphabet, max_len: int,
                            modes=(PLAIN_SUM, STARRED_UNIVERSAL)) -> list[HoareComparisonRow]:
    """Compare the reduction's verdict with bounded ground truth per mode."""
    from .compiler import terms_equivalent
    from .terms import print_term
    rows = []
    for imp in instances:
        valid = hoare_bounded_valid(imp, alphabet, max_len)
        for mode in modes:
            lhs, rhs = hoare_reduce(imp, alphabet, mode)
            rows.append(HoareComparisonRow(
                print_term(imp.r), print_term(imp.p), print_term(imp.q),
                mode, terms_equivalent(lhs, rhs, alphabet), valid))
    return rows
