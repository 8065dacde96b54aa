"""KAT terms: alphabet, abstract syntax, parser, printer and negation normal form.

Terms are built from 0, 1, declared program letters, declared test letters,
complement (Boolean subterms only), sum, product and star. The concrete grammar:

    term := sum
    sum  := prod ("+" prod)*
    prod := star ((";" | nothing) star)*
    star := atom "*"*
    atom := "0" | "1" | ident | "~" atom | "(" term ")"

"~" binds tighter than "*", which binds tighter than juxtaposition, which binds
tighter than "+". Juxtaposition and ";" both mean product.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import AlphabetCapError, AlphabetError, ParseError, SortError

MAX_TESTS = 16

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Alphabet:
    """Ordered program and test letters; declaration order is significant."""

    programs: tuple[str, ...] = ()
    tests: tuple[str, ...] = ()

    def __post_init__(self):
        seen = set()
        for name in self.programs + self.tests:
            if not _IDENT_RE.fullmatch(name):
                raise AlphabetError(f"bad identifier {name!r}")
            if name in seen:
                raise AlphabetError(f"duplicate letter {name!r}")
            seen.add(name)
        if len(self.tests) > MAX_TESTS:
            raise AlphabetCapError(
                f"{len(self.tests)} tests declared, cap is {MAX_TESTS}"
            )

    @property
    def n_atoms(self) -> int:
        return 1 << len(self.tests)

    def program_index(self, name: str) -> int:
        try:
            return self.programs.index(name)
        except ValueError:
            raise AlphabetError(f"undeclared program {name!r}") from None

    def test_index(self, name: str) -> int:
        try:
            return self.tests.index(name)
        except ValueError:
            raise AlphabetError(f"undeclared test {name!r}") from None


class KatTerm:
    """Base class for KAT abstract syntax nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Zero(KatTerm):
    __slots__ = ()


@dataclass(frozen=True)
class One(KatTerm):
    __slots__ = ()


@dataclass(frozen=True)
class Prog(KatTerm):
    __slots__ = ("name",)
    name: str


@dataclass(frozen=True)
class Test(KatTerm):
    __test__ = False  # keep pytest from collecting the class by its name

    __slots__ = ("name",)
    name: str


@dataclass(frozen=True)
class Not(KatTerm):
    __slots__ = ("arg",)
    arg: KatTerm


@dataclass(frozen=True)
class Plus(KatTerm):
    __slots__ = ("left", "right")
    left: KatTerm
    right: KatTerm


@dataclass(frozen=True)
class Times(KatTerm):
    __slots__ = ("left", "right")
    left: KatTerm
    right: KatTerm


@dataclass(frozen=True)
class Star(KatTerm):
    __slots__ = ("arg",)
    arg: KatTerm


def children(t: KatTerm) -> tuple[KatTerm, ...]:
    if isinstance(t, (Not, Star)):
        return (t.arg,)
    if isinstance(t, (Plus, Times)):
        return (t.left, t.right)
    return ()


def rebuild(t: KatTerm, kids: tuple[KatTerm, ...]) -> KatTerm:
    if isinstance(t, Not):
        return Not(kids[0])
    if isinstance(t, Star):
        return Star(kids[0])
    if isinstance(t, Plus):
        return Plus(kids[0], kids[1])
    if isinstance(t, Times):
        return Times(kids[0], kids[1])
    return t


def term_size(t: KatTerm) -> int:
    """Number of AST nodes."""
    return 1 + sum(term_size(c) for c in children(t))


def subterm_at(t: KatTerm, path: tuple[int, ...]) -> KatTerm:
    for i in path:
        kids = children(t)
        if i >= len(kids):
            raise ValueError(f"path {path} does not exist in term")
        t = kids[i]
    return t


def replace_at(t: KatTerm, path: tuple[int, ...], new: KatTerm) -> KatTerm:
    if not path:
        return new
    kids = list(children(t))
    if path[0] >= len(kids):
        raise ValueError(f"path {path} does not exist in term")
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return rebuild(t, tuple(kids))


def is_boolean(t: KatTerm) -> bool:
    """Boolean sort: built from 0, 1 and tests under ~, + and product."""
    if isinstance(t, (Zero, One, Test)):
        return True
    if isinstance(t, Not):
        return is_boolean(t.arg)
    if isinstance(t, (Plus, Times)):
        return is_boolean(t.left) and is_boolean(t.right)
    return False


def check_sorts(t: KatTerm) -> None:
    """Raise SortError if any complement is applied to a non-Boolean subterm."""
    if isinstance(t, Not):
        if not is_boolean(t.arg):
            raise SortError("complement applied to a non-Boolean subterm")
        check_sorts(t.arg)
    else:
        for c in children(t):
            check_sorts(c)


def check_letters(t: KatTerm, alphabet: Alphabet) -> None:
    """Raise AlphabetError if the term uses an undeclared letter."""
    if isinstance(t, Prog):
        alphabet.program_index(t.name)
    elif isinstance(t, Test):
        alphabet.test_index(t.name)
    else:
        for c in children(t):
            check_letters(c, alphabet)


# --- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|([01+;*~()]))")


def _split_letters(run: str, at: int, alphabet: Alphabet) -> list[tuple[str, str, int]]:
    """Split an identifier run into declared letter names, longest match first.

    Lets juxtaposition work without spaces, as in p(qp)*. Ambiguity is
    resolved greedily, so with programs p and pp the run ppp reads as pp p.
    """
    names = sorted(alphabet.programs + alphabet.tests, key=len, reverse=True)
    tokens = []
    i = 0
    while i < len(run):
        for name in names:
            if run.startswith(name, i):
                tokens.append(("ident", name, at + i))
                i += len(name)
                break
        else:
            raise AlphabetError(f"undeclared letter {run[i:]!r} (at position {at + i})")
    return tokens


def _lex(text: str, alphabet: Alphabet | None = None) -> list[tuple[str, str, int]]:
    """Tokenize into (kind, value, position) triples; kind is 'ident' or the char.

    With an alphabet, identifier runs that are not themselves declared names
    are split into a sequence of declared names.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        if m.group(1) is not None:
            run = m.group(1)
            if (alphabet is None or run in alphabet.programs
                    or run in alphabet.tests):
                tokens.append(("ident", run, m.start(1)))
            else:
                tokens.extend(_split_letters(run, m.start(1), alphabet))
        else:
            tokens.append((m.group(2), m.group(2), m.start(2)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _TermParser:
    def __init__(self, tokens: list[tuple[str, str, int]], alphabet: Alphabet):
        self.tokens = tokens
        self.alphabet = alphabet
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse_sum(self) -> KatTerm:
        t = self.parse_prod()
        while self.peek()[0] == "+":
            self.advance()
            t = Plus(t, self.parse_prod())
        return t

    def parse_prod(self) -> KatTerm:
        t = self.parse_star()
        while True:
            kind = self.peek()[0]
            if kind == ";":
                self.advance()
                t = Times(t, self.parse_star())
            elif kind in ("0", "1", "ident", "~", "("):
                t = Times(t, self.parse_star())
            else:
                return t

    def parse_star(self) -> KatTerm:
        t = self.parse_atom()
        while self.peek()[0] == "*":
            self.advance()
            t = Star(t)
        return t

    def parse_atom(self) -> KatTerm:
        kind, value, pos = self.advance()
        if kind == "0":
            return Zero()
        if kind == "1":
            return One()
        if kind == "ident":
            if value in self.alphabet.programs:
                return Prog(value)
            if value in self.alphabet.tests:
                return Test(value)
            raise AlphabetError(f"undeclared letter {value!r} (at position {pos})")
        if kind == "~":
            return Not(self.parse_atom())
        if kind == "(":
            t = self.parse_sum()
            kind2, _, pos2 = self.advance()
            if kind2 != ")":
                raise ParseError("expected ')'", pos2)
            return t
        raise ParseError(f"unexpected token {value!r}" if value else "unexpected end of input", pos)


def parse_term(text: str, alphabet: Alphabet) -> KatTerm:
    """Parse a KAT term, checking letters against the alphabet and the Boolean sort."""
    parser = _TermParser(_lex(text, alphabet), alphabet)
    t = parser.parse_sum()
    kind, value, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected token {value!r}", pos)
    check_sorts(t)
    return t


# --- printing --------------------------------------------------------------

_PREC_SUM = 0
_PREC_PROD = 1
_PREC_STAR = 2
_PREC_ATOM = 3


def print_term(t: KatTerm) -> str:
    """Render a term so that parse_term(print_term(t)) == t."""

    def go(t: KatTerm, want: int) -> str:
        if isinstance(t, Zero):
            return "0"
        if isinstance(t, One):
            return "1"
        if isinstance(t, (Prog, Test)):
            return t.name
        if isinstance(t, Not):
            return "~" + go(t.arg, _PREC_ATOM)
        if isinstance(t, Star):
            s = go(t.arg, _PREC_STAR) + "*"
            return s if want <= _PREC_STAR else "(" + s + ")"
        if isinstance(t, Plus):
            s = go(t.left, _PREC_SUM) + " + " + go(t.right, _PREC_PROD)
            return s if want <= _PREC_SUM else "(" + s + ")"
        if isinstance(t, Times):
            s = go(t.left, _PREC_PROD) + " " + go(t.right, _PREC_STAR)
            return s if want <= _PREC_PROD else "(" + s + ")"
        raise TypeError(f"not a KatTerm: {t!r}")

    return go(t, _PREC_SUM)


# --- negation normal form ---------------------------------------------------

NNF_AXIOMS = ("doubleNeg", "deMorganPlus", "deMorganTimes", "notZero", "notOne")


@dataclass(frozen=True)
class NnfRewriteEvent:
    """One complement-pushing rewrite, applied at a path of the evolving term."""

    axiom: str
    path: tuple[int, ...]


def nnf_trace(t: KatTerm) -> tuple[KatTerm, list[NnfRewriteEvent]]:
    """Normalize complements down to test letters, recording each rewrite.

    Replaying the recorded events in order against the original term (with
    apply_nnf_rewrite) reproduces the returned normal form.
    """
    events: list[NnfRewriteEvent] = []

    def walk(t: KatTerm, path: tuple[int, ...]) -> KatTerm:
        if isinstance(t, Not):
            arg = t.arg
            if isinstance(arg, Test):
                return t
            if isinstance(arg, Zero):
                events.append(NnfRewriteEvent("notZero", path))
                return One()
            if isinstance(arg, One):
                events.append(NnfRewriteEvent("notOne", path))
                return Zero()
            if isinstance(arg, Not):
                events.append(NnfRewriteEvent("doubleNeg", path))
                return walk(arg.arg, path)
            if isinstance(arg, Plus):
                events.append(NnfRewriteEvent("deMorganPlus", path))
                return Times(walk(Not(arg.left), path + (0,)),
                             walk(Not(arg.right), path + (1,)))
            if isinstance(arg, Times):
                events.append(NnfRewriteEvent("deMorganTimes", path))
                return Plus(walk(Not(arg.left), path + (0,)),
                            walk(Not(arg.right), path + (1,)))
            raise SortError("complement applied to a non-Boolean subterm")
        kids = children(t)
        if not kids:
            return t
        return rebuild(t, tuple(walk(c, path + (i,)) for i, c in enumerate(kids)))

    return walk(t, ()), events


def to_nnf(t: KatTerm) -> KatTerm:
    """Negation normal form: every complement ends up on a test letter."""
    return nnf_trace(t)[0]


def is_nnf(t: KatTerm) -> bool:
    if isinstance(t, Not):
        return isinstance(t.arg, Test)
    return all(is_nnf(c) for c in children(t))


def apply_nnf_rewrite(t: KatTerm, axiom: str, path: tuple[int, ...]) -> KatTerm:
    """Apply a single named complement rewrite at a path, or raise ValueError."""
    sub = subterm_at(t, path)
    if not isinstance(sub, Not):
        raise ValueError(f"{axiom} at {path}: subterm is not a complement")
    arg = sub.arg
    if axiom == "doubleNeg":
        if not isinstance(arg, Not):
            raise ValueError("doubleNeg: operand is not a complement")
        new: KatTerm = arg.arg
    elif axiom == "deMorganPlus":
        if not isinstance(arg, Plus):
            raise ValueError("deMorganPlus: operand is not a sum")
        new = Times(Not(arg.left), Not(arg.right))
    elif axiom == "deMorganTimes":
        if not isinstance(arg, Times):
            raise ValueError("deMorganTimes: operand is not a product")
        new = Plus(Not(arg.left), Not(arg.right))
    elif axiom == "notZero":
        if not isinstance(arg, Zero):
            raise ValueError("notZero: operand is not 0")
        new = One()
    elif axiom == "notOne":
        if not isinstance(arg, One):
            raise ValueError("notOne: operand is not 1")
        new = Zero()
    else:
        raise ValueError(f"unknown rewrite {axiom!r}")
    return replace_at(t, path, new)
