"""Simple, epsilon-free automata over guarded strings in atom-letter form.

States split into an o-block (the first n_o states, n_o in {0, 2}) accepting
only single atoms, and an s-block accepting only words with at least two
letters. Every constructor maintains:

  * block disjointness: no edge crosses the o/s boundary;
  * o-block shape: state 0 is its only start, state 1 its only accept, and all
    o-block edges are atom-labeled from 0 to 1;
  * s-block length: no s-state is both start and accept, and no edge runs from
    an s-start to an s-accept;
  * guard boundary: program edges never leave a start state nor enter an
    accept state.

Sum merges the o-blocks and keeps the s-blocks side by side. Concatenation and
star first build a raw automaton whose bridge edges carry two-atom label
words, then collapse those words with x_i x_j = x_i when i = j and 0 otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .errors import (AlphabetCapError, AlphabetError, FileFormatError,
                     InvariantError, KatError)
from .guarded import (Buckets, atom_letter_code, is_atom_code, letter_bits,
                      letter_display, n_letters, satisfying_atom_indices,
                      unpack_word, word_display)
from .terms import Alphabet, KatTerm, Not, One, Prog, Test, Zero


@dataclass(frozen=True)
class GsAutomaton:
    """(u, A, v) with 0-1 entries, letter-indexed transition matrices."""

    alphabet: Alphabet
    n: int
    n_o: int
    start: frozenset[int]
    accept: frozenset[int]
    edges: frozenset[tuple[int, int, int]]  # (src, dst, letter code)

    @property
    def n_s(self) -> int:
        return self.n - self.n_o

    @cached_property
    def adjacency(self) -> dict[int, dict[int, tuple[int, ...]]]:
        """letter code -> src -> destinations."""
        raw: dict[int, dict[int, list[int]]] = {}
        for src, dst, letter in self.edges:
            raw.setdefault(letter, {}).setdefault(src, []).append(dst)
        return {letter: {s: tuple(sorted(ds)) for s, ds in srcs.items()}
                for letter, srcs in raw.items()}

    def validate(self) -> None:
        """Raise InvariantError unless every structural invariant holds."""
        if self.n < 0 or self.n_o not in (0, 2) or self.n_o > self.n:
            raise InvariantError(f"bad block split n={self.n} n_o={self.n_o}")
        for name, states in (("start", self.start), ("accept", self.accept)):
            for s in states:
                if not 0 <= s < self.n:
                    raise InvariantError(f"{name} state {s} out of range")
        nl = n_letters(self.alphabet)
        for src, dst, letter in self.edges:
            if not (0 <= src < self.n and 0 <= dst < self.n):
                raise InvariantError(f"edge ({src},{dst}) out of range")
            if not 0 <= letter < nl:
                raise InvariantError(f"letter code {letter} out of range")
            if (src < self.n_o) != (dst < self.n_o):
                raise InvariantError(f"edge ({src},{dst}) crosses the block boundary")
        if self.n_o == 2:
            if self.start & {0, 1} != {0}:
                raise InvariantError("o-block start states must be exactly {0}")
            if self.accept & {0, 1} != {1}:
                raise InvariantError("o-block accept states must be exactly {1}")
            for src, dst, letter in self.edges:
                if src < 2 or dst < 2:
                    if (src, dst) != (0, 1):
                        raise InvariantError("o-block edges must run from state 0 to state 1")
                    if not is_atom_code(self.alphabet, letter):
                        raise InvariantError("o-block edges must carry atom letters")
        s_starts = {s for s in self.start if s >= self.n_o}
        s_accepts = {s for s in self.accept if s >= self.n_o}
        if s_starts & s_accepts:
            raise InvariantError("an s-block state is both start and accept")
        for src, dst, letter in self.edges:
            if src in s_starts and dst in s_accepts:
                raise InvariantError("s-block edge runs from a start to an accept")
            if not is_atom_code(self.alphabet, letter):
                if src in self.start:
                    raise InvariantError("program edge leaves a start state")
                if dst in self.accept:
                    raise InvariantError("program edge enters an accept state")


@dataclass(frozen=True)
class RawAutomaton:
    """Construction-time automaton whose edges carry one- or two-letter words."""

    alphabet: Alphabet
    n: int
    n_o: int
    start: frozenset[int]
    accept: frozenset[int]
    edges: frozenset[tuple[int, int, tuple[int, ...]]]

    @property
    def n_s(self) -> int:
        return self.n - self.n_o


@dataclass(frozen=True)
class EdgeSimplification:
    """Collapse record for one edge: which two-atom words were kept or dropped."""

    src: int
    dst: int
    before: tuple[tuple[int, ...], ...]      # sorted label words, letter codes
    after: tuple[int, ...]                   # sorted surviving letter codes
    collapses: tuple[tuple[int, int, bool], ...]  # (atom i, atom j, kept)


def olabel_codes(aut: GsAutomaton) -> frozenset[int]:
    """Atom letter codes accepted by the o-block."""
    if aut.n_o == 0:
        return frozenset()
    return frozenset(l for src, dst, l in aut.edges if src == 0 and dst == 1)


def raw_from_simple(aut: GsAutomaton) -> RawAutomaton:
    return RawAutomaton(aut.alphabet, aut.n, aut.n_o, aut.start, aut.accept,
                        frozenset((s, d, (l,)) for s, d, l in aut.edges))


def simple_from_raw(raw: RawAutomaton) -> GsAutomaton:
    for src, dst, word in raw.edges:
        if len(word) != 1:
            raise InvariantError(f"edge ({src},{dst}) still carries a {len(word)}-letter word")
    aut = GsAutomaton(raw.alphabet, raw.n, raw.n_o, raw.start, raw.accept,
                      frozenset((s, d, w[0]) for s, d, w in raw.edges))
    aut.validate()
    return aut


def simplify_entries(raw: RawAutomaton) -> tuple[GsAutomaton, tuple[EdgeSimplification, ...]]:
    """Collapse two-atom label words: x_i x_j survives as x_i exactly when i = j.

    Returns the simple automaton and one record per edge that needed collapsing,
    sorted by edge. A two-letter word with a program component means the guard
    boundary was broken upstream and raises InvariantError.
    """
    np_ = len(raw.alphabet.programs)
    by_edge: dict[tuple[int, int], set[tuple[int, ...]]] = {}
    for src, dst, word in raw.edges:
        if len(word) not in (1, 2):
            raise InvariantError(f"edge ({src},{dst}) carries a {len(word)}-letter word")
        by_edge.setdefault((src, dst), set()).add(word)
    records = []
    edges = set()
    for (src, dst), words in sorted(by_edge.items()):
        kept = {w[0] for w in words if len(w) == 1}
        collapses = []
        needs_record = False
        for w in sorted(words):
            if len(w) == 2:
                needs_record = True
                i, j = w[0] - np_, w[1] - np_
                if i < 0 or j < 0:
                    raise InvariantError(
                        f"edge ({src},{dst}) has a two-letter word with a program letter")
                keep = i == j
                collapses.append((i, j, keep))
                if keep:
                    kept.add(w[0])
        for letter in kept:
            edges.add((src, dst, letter))
        if needs_record:
            records.append(EdgeSimplification(src, dst, tuple(sorted(words)),
                                              tuple(sorted(kept)), tuple(collapses)))
    aut = GsAutomaton(raw.alphabet, raw.n, raw.n_o, raw.start, raw.accept,
                      frozenset(edges))
    aut.validate()
    return aut, tuple(records)


def apply_edge_simplification(raw: RawAutomaton, record: EdgeSimplification) -> RawAutomaton:
    """Replace one edge's label words by the collapsed single letters."""
    edges = {e for e in raw.edges if (e[0], e[1]) != (record.src, record.dst)}
    edges.update((record.src, record.dst, (l,)) for l in record.after)
    return RawAutomaton(raw.alphabet, raw.n, raw.n_o, raw.start, raw.accept,
                        frozenset(edges))


# --- base cases --------------------------------------------------------------


def base_automaton(t: KatTerm, alphabet: Alphabet) -> GsAutomaton:
    """Automaton for an atomic term: 0, 1, a test, a complemented test, or a program.

    0 has no states at all. 1 and tests are a pure o-block whose edge carries
    the satisfying atoms. A program is a four-state s-block path: any atom,
    the program letter, any atom.
    """
    z = alphabet.n_atoms
    all_codes = [atom_letter_code(alphabet, i) for i in range(z)]
    if isinstance(t, Zero):
        aut = GsAutomaton(alphabet, 0, 0, frozenset(), frozenset(), frozenset())
    elif isinstance(t, One):
        aut = GsAutomaton(alphabet, 2, 2, frozenset({0}), frozenset({1}),
                          frozenset((0, 1, c) for c in all_codes))
    elif isinstance(t, (Test, Not)):
        if isinstance(t, Not) and not isinstance(t.arg, Test):
            raise KatError("base_automaton complement case needs a primitive test")
        idx = satisfying_atom_indices(t, alphabet)
        aut = GsAutomaton(alphabet, 2, 2, frozenset({0}), frozenset({1}),
                          frozenset((0, 1, atom_letter_code(alphabet, i)) for i in idx))
    elif isinstance(t, Prog):
        p = alphabet.program_index(t.name)
        edges = {(0, 1, c) for c in all_codes}
        edges.add((1, 2, p))
        edges.update((2, 3, c) for c in all_codes)
        aut = GsAutomaton(alphabet, 4, 0, frozenset({0}), frozenset({3}),
                          frozenset(edges))
    else:
        raise KatError(f"base_automaton needs an atomic term, got {type(t).__name__}")
    aut.validate()
    return aut


# --- the three constructions --------------------------------------------------


def _s_edges(aut: GsAutomaton):
    return [(s, d, l) for s, d, l in aut.edges if s >= aut.n_o]


def _into_accept(aut: GsAutomaton, o_block: bool) -> list[tuple[int, int]]:
    """(state, letter) pairs with an edge into an accept state of the given block."""
    out = []
    for s, d, l in aut.edges:
        if d in aut.accept and (s < aut.n_o) == o_block:
            out.append((s, l))
    return out


def _from_start(aut: GsAutomaton, o_block: bool) -> list[tuple[int, int]]:
    """(state, letter) pairs with an edge from a start state of the given block."""
    out = []
    for s, d, l in aut.edges:
        if s in aut.start and (d < aut.n_o) == o_block:
            out.append((d, l))
    return out


def sum_automaton(a1: GsAutomaton, a2: GsAutomaton) -> GsAutomaton:
    """Union: merged two-state o-block plus the two s-blocks side by side."""
    if a1.alphabet != a2.alphabet:
        raise AlphabetError("sum over different alphabets")
    off1 = 2 - a1.n_o
    off2 = 2 + a1.n_s - a2.n_o
    edges = {(0, 1, l) for l in olabel_codes(a1) | olabel_codes(a2)}
    edges.update((s + off1, d + off1, l) for s, d, l in _s_edges(a1))
    edges.update((s + off2, d + off2, l) for s, d, l in _s_edges(a2))
    start = {0} | {s + off1 for s in a1.start if s >= a1.n_o} \
                | {s + off2 for s in a2.start if s >= a2.n_o}
    accept = {1} | {s + off1 for s in a1.accept if s >= a1.n_o} \
                 | {s + off2 for s in a2.accept if s >= a2.n_o}
    aut = GsAutomaton(a1.alphabet, 2 + a1.n_s + a2.n_s, 2,
                      frozenset(start), frozenset(accept), frozenset(edges))
    aut.validate()
    return aut


def concat_raw(a1: GsAutomaton, a2: GsAutomaton) -> RawAutomaton:
    """Concatenation before entry collapse.

    The new o-edge carries the label products of the two input o-blocks. Both
    inputs are embedded whole as the s-part, with bridge edges x y from each
    state with an atom edge into an accept of a1 to each state with an atom
    edge from a start of a2; the o1-to-o2 product is what the new o-block
    accepts, so that pair of blocks gets no bridge.
    """
    if a1.alphabet != a2.alphabet:
        raise AlphabetError("concatenation over different alphabets")
    off1, off2 = 2, 2 + a1.n
    edges: set[tuple[int, int, tuple[int, ...]]] = set()
    edges.update((0, 1, (x, y)) for x in olabel_codes(a1) for y in olabel_codes(a2))
    edges.update((s + off1, d + off1, (l,)) for s, d, l in a1.edges)
    edges.update((s + off2, d + off2, (l,)) for s, d, l in a2.edges)
    o1_pre = _into_accept(a1, o_block=True)
    s1_pre = _into_accept(a1, o_block=False)
    o2_post = _from_start(a2, o_block=True)
    s2_post = _from_start(a2, o_block=False)
    for i, x in o1_pre:
        for j, y in s2_post:
            edges.add((i + off1, j + off2, (x, y)))
    for i, x in s1_pre:
        for j, y in o2_post + s2_post:
            edges.add((i + off1, j + off2, (x, y)))
    start = {0} | {s + off1 for s in a1.start}
    accept = {1} | {s + off2 for s in a2.accept}
    return RawAutomaton(a1.alphabet, 2 + a1.n + a2.n, 2,
                        frozenset(start), frozenset(accept), frozenset(edges))


def star_raw(a: GsAutomaton) -> RawAutomaton:
    """Asterate before entry collapse.

    The result is a full-atom o-block next to a's s-block with loop edges x y
    from each state with an atom edge into an s-accept to each state with an
    atom edge from an s-start. a's own o-block is dropped: single atoms are
    the o-block's business.
    """
    z = a.alphabet.n_atoms
    off = 2 - a.n_o
    edges: set[tuple[int, int, tuple[int, ...]]] = set()
    edges.update((0, 1, (atom_letter_code(a.alphabet, i),)) for i in range(z))
    edges.update((s + off, d + off, (l,)) for s, d, l in _s_edges(a))
    pre = _into_accept(a, o_block=False)
    post = _from_start(a, o_block=False)
    for i, x in pre:
        for j, y in post:
            edges.add((i + off, j + off, (x, y)))
    start = {0} | {s + off for s in a.start if s >= a.n_o}
    accept = {1} | {s + off for s in a.accept if s >= a.n_o}
    return RawAutomaton(a.alphabet, 2 + a.n_s, 2,
                        frozenset(start), frozenset(accept), frozenset(edges))


def concat_automaton(a1: GsAutomaton, a2: GsAutomaton) -> GsAutomaton:
    return simplify_entries(concat_raw(a1, a2))[0]


def star_automaton(a: GsAutomaton) -> GsAutomaton:
    return simplify_entries(star_raw(a))[0]


# --- running words ------------------------------------------------------------


def accepts(aut: GsAutomaton, letters) -> bool:
    """Run a word over the extended alphabet, given as letter codes."""
    nl = n_letters(aut.alphabet)
    current = set(aut.start)
    adjacency = aut.adjacency
    for code in letters:
        if not 0 <= code < nl:
            raise KatError(f"letter code {code} out of range")
        step = adjacency.get(code)
        if not step or not current:
            return False
        current = {d for s in current for d in step.get(s, ())}
    return bool(current & aut.accept)


@dataclass
class Dfa:
    """Subset-construction automaton; every row is total via the empty-set sink."""

    alphabet: Alphabet
    subsets: list[frozenset[int]]
    trans: list[list[int]]
    accepting: list[bool]
    initial: int = 0


def determinize(aut: GsAutomaton) -> Dfa:
    nl = n_letters(aut.alphabet)
    adjacency = aut.adjacency
    accept = aut.accept

    def step(subset: frozenset[int], letter: int) -> frozenset[int]:
        m = adjacency.get(letter)
        if not m:
            return frozenset()
        return frozenset(d for s in subset for d in m.get(s, ()))

    init = frozenset(aut.start)
    index = {init: 0}
    subsets = [init]
    trans: list[list[int]] = []
    i = 0
    while i < len(subsets):
        row = []
        for letter in range(nl):
            target = step(subsets[i], letter)
            if target not in index:
                index[target] = len(subsets)
                subsets.append(target)
            row.append(index[target])
        trans.append(row)
        i += 1
    accepting = [bool(s & accept) for s in subsets]
    return Dfa(aut.alphabet, subsets, trans, accepting)


def _co_accessible(dfa: Dfa) -> list[bool]:
    reverse: dict[int, set[int]] = {}
    for src, row in enumerate(dfa.trans):
        for dst in row:
            reverse.setdefault(dst, set()).add(src)
    alive = [False] * len(dfa.trans)
    stack = [i for i, a in enumerate(dfa.accepting) if a]
    for i in stack:
        alive[i] = True
    while stack:
        dst = stack.pop()
        for src in reverse.get(dst, ()):
            if not alive[src]:
                alive[src] = True
                stack.append(src)
    return alive


def language_difference_witness(a1: GsAutomaton, a2: GsAutomaton) -> tuple[int, ...] | None:
    """Shortest word accepted by exactly one automaton; ties broken by letter order.

    Breadth-first product of the two subset constructions; None when the
    languages agree.
    """
    if a1.alphabet != a2.alphabet:
        raise AlphabetError("equivalence over different alphabets")
    nl = n_letters(a1.alphabet)
    adj1, adj2 = a1.adjacency, a2.adjacency
    acc1, acc2 = a1.accept, a2.accept

    def step(adj, subset, letter):
        m = adj.get(letter)
        if not m:
            return frozenset()
        return frozenset(d for s in subset for d in m.get(s, ()))

    def mismatch(pair) -> bool:
        s1, s2 = pair
        return bool(s1 & acc1) != bool(s2 & acc2)

    initial = (frozenset(a1.start), frozenset(a2.start))
    if mismatch(initial):
        return ()
    parent: dict = {initial: None}
    queue = [initial]
    qi = 0
    while qi < len(queue):
        pair = queue[qi]
        qi += 1
        s1, s2 = pair
        for letter in range(nl):
            nxt = (step(adj1, s1, letter), step(adj2, s2, letter))
            if nxt in parent:
                continue
            parent[nxt] = (pair, letter)
            if mismatch(nxt):
                word = []
                node = nxt
                while parent[node] is not None:
                    node, letter_ = parent[node]
                    word.append(letter_)
                return tuple(reversed(word))
            queue.append(nxt)
    return None


def equivalent(a1: GsAutomaton, a2: GsAutomaton) -> bool:
    return language_difference_witness(a1, a2) is None


def lang_codes(aut: GsAutomaton, max_len: int) -> Buckets:
    """Accepted words up to max_len, packed like the oracle's buckets.

    Level-synchronous walk of the pruned subset automaton carrying one code
    set per subset state, so the per-word work is a set comprehension.
    """
    dfa = determinize(aut)
    alive = _co_accessible(dfa)
    trans = dfa.trans
    accepting = dfa.accepting
    nl = n_letters(aut.alphabet)
    bits = letter_bits(aut.alphabet)
    out: Buckets = {}
    if not alive[dfa.initial]:
        return out
    frontier: dict[int, set[int]] = {dfa.initial: {0}}
    for length in range(max_len + 1):
        # frontier sets are never mutated once built, so a single accepting
        # state's set can be recorded without copying
        accepted = [codes for state, codes in frontier.items() if accepting[state]]
        if accepted:
            out[length] = accepted[0] if len(accepted) == 1 else set().union(*accepted)
        if length == max_len or not frontier:
            break
        shift = bits * length
        nxt: dict[int, set[int]] = {}
        for state, codes in frontier.items():
            row = trans[state]
            for letter in range(nl):
                child = row[letter]
                if alive[child]:
                    stamp = letter << shift
                    moved = {code | stamp for code in codes}
                    seen = nxt.get(child)
                    if seen is None:
                        nxt[child] = moved
                    else:
                        seen |= moved
        frontier = nxt
    return out


def count_words_by_length(aut: GsAutomaton, max_len: int) -> list[int]:
    """Exact accepted-word counts per length, 0..max_len."""
    dfa = determinize(aut)
    alive = _co_accessible(dfa)
    counts = []
    vec = {dfa.initial: 1} if alive[dfa.initial] else {}
    accepting = dfa.accepting
    trans = dfa.trans
    nl = n_letters(aut.alphabet)
    for _ in range(max_len + 1):
        counts.append(sum(c for s, c in vec.items() if accepting[s]))
        nxt: dict[int, int] = {}
        for s, c in vec.items():
            row = trans[s]
            for letter in range(nl):
                t = row[letter]
                if alive[t]:
                    nxt[t] = nxt.get(t, 0) + c
        vec = nxt
    return counts


def language_matches(aut: GsAutomaton, buckets: Buckets, max_len: int) -> tuple[bool, str]:
    """Exact bounded comparison of an automaton's language against oracle buckets."""
    lang = lang_codes(aut, max_len)
    want = {length: s for length, s in buckets.items() if s and length <= max_len}
    if lang == want:
        return True, ""
    bits = letter_bits(aut.alphabet)
    for length in sorted(set(lang) | set(want)):
        got = lang.get(length, frozenset())
        expected = want.get(length, frozenset())
        if got == expected:
            continue
        extra = got - expected
        if extra:
            word = word_display(unpack_word(min(extra), length, bits), aut.alphabet)
            return False, f"automaton accepts '{word}' which the oracle lacks"
        word = word_display(unpack_word(min(expected - got), length, bits),
                            aut.alphabet)
        return False, f"oracle has '{word}' which the automaton rejects"
    return False, "languages differ"


# --- persistence ----------------------------------------------------------------


def parse_alphabet_fields(obj: dict) -> Alphabet:
    """Build the alphabet declared by a JSON object's programs/tests fields."""
    progs, tests = obj.get("programs", []), obj.get("tests", [])
    for field, val in (("programs", progs), ("tests", tests)):
        if not (isinstance(val, list) and all(isinstance(x, str) for x in val)):
            raise FileFormatError(f"{field} must be a list of names")
    try:
        return Alphabet(tuple(progs), tuple(tests))
    except AlphabetCapError:
        raise
    except AlphabetError as e:
        raise FileFormatError(f"bad alphabet declaration: {e}") from None


def label_text(alphabet: Alphabet, code: int) -> str:
    np_ = len(alphabet.programs)
    if code < np_:
        return f"prog:{alphabet.programs[code]}"
    bits = format(code - np_, f"0{len(alphabet.tests)}b") if alphabet.tests else ""
    return f"atom:{bits}"


def label_code(alphabet: Alphabet, label: str) -> int:
    kind, _, body = label.partition(":")
    if kind == "prog":
        try:
            return alphabet.program_index(body)
        except AlphabetError:
            raise FileFormatError(f"unknown program {body!r}") from None
    if kind == "atom":
        if len(body) != len(alphabet.tests) or any(c not in "01" for c in body):
            raise FileFormatError(f"bad atom bitstring {body!r}")
        return atom_letter_code(alphabet, int(body, 2) if body else 0)
    raise FileFormatError(f"bad label {label!r}")


def automaton_to_text(aut: GsAutomaton) -> str:
    transitions = sorted(
        ({"from": s, "to": d, "label": label_text(aut.alphabet, l)}
         for s, d, l in aut.edges),
        key=lambda t: (t["from"], t["to"], t["label"]))
    obj = {
        "format": "gs-automaton",
        "version": 1,
        "programs": list(aut.alphabet.programs),
        "tests": list(aut.alphabet.tests),
        "n": aut.n,
        "n_o": aut.n_o,
        "n_s": aut.n_s,
        "u": sorted(aut.start),
        "v": sorted(aut.accept),
        "transitions": transitions,
    }
    return json.dumps(obj, indent=2) + "\n"


def automaton_from_text(text: str) -> GsAutomaton:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"not valid JSON: {e}") from None
    if not isinstance(obj, dict):
        raise FileFormatError("automaton file must hold a JSON object")
    if obj.get("format") != "gs-automaton" or obj.get("version") != 1:
        raise FileFormatError("expected a gs-automaton file, format version 1")
    for field in ("n", "n_o", "n_s", "u", "v", "transitions"):
        if field not in obj:
            raise FileFormatError(f"missing field {field!r}")
    alphabet = parse_alphabet_fields(obj)
    n, n_o, n_s = obj["n"], obj["n_o"], obj["n_s"]
    if not all(isinstance(x, int) for x in (n, n_o, n_s)):
        raise FileFormatError("state counts must be integers")
    if n_o + n_s != n:
        raise InvariantError(f"n_o + n_s = {n_o + n_s} does not match n = {n}")
    for field in ("u", "v"):
        val = obj[field]
        if not (isinstance(val, list) and all(isinstance(x, int) for x in val)):
            raise FileFormatError(f"{field} must be a list of state indices")
        if any(not b > a for a, b in zip(val, val[1:])):
            raise FileFormatError(f"{field} must be strictly increasing")
    edges = set()
    entries = []
    for t in obj["transitions"]:
        if not (isinstance(t, dict) and {"from", "to", "label"} <= set(t)):
            raise FileFormatError("each transition needs from, to and label")
        if not (isinstance(t["from"], int) and isinstance(t["to"], int)
                and isinstance(t["label"], str)):
            raise FileFormatError("bad transition field types")
        entries.append((t["from"], t["to"], t["label"]))
        edges.add((t["from"], t["to"], label_code(alphabet, t["label"])))
    if any(not b > a for a, b in zip(entries, entries[1:])):
        raise FileFormatError("transitions must be sorted without duplicates")
    aut = GsAutomaton(alphabet, n, n_o, frozenset(obj["u"]), frozenset(obj["v"]),
                      frozenset(edges))
    aut.validate()
    return aut


def save_automaton(aut: GsAutomaton, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(automaton_to_text(aut))


def load_automaton(path) -> GsAutomaton:
    with open(path, encoding="utf-8") as fh:
        return automaton_from_text(fh.read())
