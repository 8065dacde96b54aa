"""Guarded-string semantics: atoms, guarded words and a bounded brute-force oracle.

An atom is a truth assignment to the declared tests, identified by the integer
whose binary expansion lists the test bits with the first declared test as the
most significant bit. A guarded word alternates atoms and program letters and
begins and ends with an atom, so it always has odd letter count.

denote(t, alphabet, max_len) enumerates every guarded word of t up to the given
letter count directly from the language equations, with star as an increasing
fixpoint of fusion products. It shares no code with the automaton pipeline and
serves as the ground truth the rest of the package is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import KatError, SortError
from .terms import (Alphabet, KatTerm, Not, One, Plus, Prog, Star, Test, Times,
                    Zero, check_letters, check_sorts, is_boolean)


class OracleBudgetExceeded(KatError):
    """Bounded enumeration produced more words than the caller's work cap."""


@dataclass(frozen=True)
class Atom(object):
    """One truth assignment: `index` read MSB-first over `width` declared tests."""

    index: int
    width: int

    @property
    def bits(self) -> str:
        return format(self.index, f"0{self.width}b") if self.width else ""

    @property
    def text(self) -> str:
        return f"x[{self.bits}]"


@dataclass(frozen=True)
class GuardedWord:
    """Alternating atoms and program names, first and last letters atoms."""

    letters: tuple

    def __post_init__(self):
        if len(self.letters) % 2 == 0:
            raise KatError("guarded word must have odd letter count")
        for i, letter in enumerate(self.letters):
            if i % 2 == 0 and not isinstance(letter, Atom):
                raise KatError(f"letter {i} must be an atom")
            if i % 2 == 1 and not isinstance(letter, str):
                raise KatError(f"letter {i} must be a program name")

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def text(self) -> str:
        return " ".join(l.text if isinstance(l, Atom) else l for l in self.letters)


def all_atoms(alphabet: Alphabet) -> list[Atom]:
    nb = len(alphabet.tests)
    return [Atom(i, nb) for i in range(1 << nb)]


def atom_satisfies(atom: Atom, t: KatTerm, alphabet: Alphabet) -> bool:
    """Truth of a Boolean-sorted term under one atom."""
    if not is_boolean(t):
        raise SortError("atom_satisfies needs a Boolean-sorted term")
    nb = len(alphabet.tests)
    if isinstance(t, Zero):
        return False
    if isinstance(t, One):
        return True
    if isinstance(t, Test):
        j = alphabet.test_index(t.name)
        return (atom.index >> (nb - 1 - j)) & 1 == 1
    if isinstance(t, Not):
        return not atom_satisfies(atom, t.arg, alphabet)
    if isinstance(t, Plus):
        return atom_satisfies(atom, t.left, alphabet) or atom_satisfies(atom, t.right, alphabet)
    if isinstance(t, Times):
        return atom_satisfies(atom, t.left, alphabet) and atom_satisfies(atom, t.right, alphabet)
    raise SortError("atom_satisfies needs a Boolean-sorted term")


def satisfying_atom_indices(t: KatTerm, alphabet: Alphabet) -> list[int]:
    """Indices of the atoms under which a Boolean-sorted term is true."""
    if not is_boolean(t):
        raise SortError("satisfying_atom_indices needs a Boolean-sorted term")
    nb = len(alphabet.tests)
    z = 1 << nb

    def sat(t: KatTerm) -> set[int]:
        if isinstance(t, Zero):
            return set()
        if isinstance(t, One):
            return set(range(z))
        if isinstance(t, Test):
            j = alphabet.test_index(t.name)
            bit = nb - 1 - j
            return {i for i in range(z) if (i >> bit) & 1}
        if isinstance(t, Not):
            return set(range(z)) - sat(t.arg)
        if isinstance(t, Plus):
            return sat(t.left) | sat(t.right)
        return sat(t.left) & sat(t.right)

    return sorted(sat(t))


def atoms_of(t: KatTerm, alphabet: Alphabet) -> list[Atom]:
    nb = len(alphabet.tests)
    return [Atom(i, nb) for i in satisfying_atom_indices(t, alphabet)]


def diamond(x: GuardedWord, y: GuardedWord) -> GuardedWord | None:
    """Fuse two guarded words on a shared boundary atom; None when undefined."""
    if x.letters[-1] != y.letters[0]:
        return None
    return GuardedWord(x.letters + y.letters[1:])


# --- the extended alphabet P + {x_i} ----------------------------------------
#
# Letters get integer codes: programs first in declaration order, then the atom
# letters by atom index. Words over the extended alphabet are packed into ints,
# first letter in the lowest bits, letter_bits() bits per letter.


def word_accept_alphabet(alphabet: Alphabet) -> list[str]:
    """Extended alphabet in canonical order: program names, then atom texts."""
    return list(alphabet.programs) + [a.text for a in all_atoms(alphabet)]


def n_letters(alphabet: Alphabet) -> int:
    return len(alphabet.programs) + alphabet.n_atoms


def letter_bits(alphabet: Alphabet) -> int:
    return max((n_letters(alphabet) - 1).bit_length(), 1)


def atom_letter_code(alphabet: Alphabet, atom_index: int) -> int:
    return len(alphabet.programs) + atom_index


def is_atom_code(alphabet: Alphabet, code: int) -> bool:
    return code >= len(alphabet.programs)


def letter_display(alphabet: Alphabet, code: int) -> str:
    np_ = len(alphabet.programs)
    if code < np_:
        return alphabet.programs[code]
    return Atom(code - np_, len(alphabet.tests)).text


def pack_word(codes, bits: int) -> int:
    w = 0
    for k, c in enumerate(codes):
        w |= c << (bits * k)
    return w


def unpack_word(code: int, length: int, bits: int) -> tuple[int, ...]:
    mask = (1 << bits) - 1
    return tuple((code >> (bits * k)) & mask for k in range(length))


def word_codes(w: GuardedWord, alphabet: Alphabet) -> tuple[int, ...]:
    np_ = len(alphabet.programs)
    out = []
    for letter in w.letters:
        if isinstance(letter, Atom):
            out.append(np_ + letter.index)
        else:
            out.append(alphabet.program_index(letter))
    return tuple(out)


def word_from_codes(codes, alphabet: Alphabet) -> GuardedWord:
    np_ = len(alphabet.programs)
    nb = len(alphabet.tests)
    letters = []
    for c in codes:
        letters.append(alphabet.programs[c] if c < np_ else Atom(c - np_, nb))
    return GuardedWord(tuple(letters))


def word_display(codes, alphabet: Alphabet) -> str:
    return " ".join(letter_display(alphabet, c) for c in codes)


# --- the oracle --------------------------------------------------------------

Buckets = dict[int, set[int]]  # letter count -> packed words of that length


@dataclass(frozen=True)
class BoundedLanguage:
    """All guarded words of a term up to a letter-count bound."""

    words: frozenset[GuardedWord]
    bound: int


def denote_codes(t: KatTerm, alphabet: Alphabet, max_len: int,
                 work_cap: int | None = None) -> Buckets:
    """Bucketed packed-word form of denote; the engine behind the oracle.

    work_cap bounds the total number of words produced across all subterm
    evaluations; exceeding it raises OracleBudgetExceeded.
    """
    if max_len < 1:
        raise KatError("max_len must be at least 1; guarded words are never empty")
    check_letters(t, alphabet)
    check_sorts(t)

    np_ = len(alphabet.programs)
    z = alphabet.n_atoms
    bits = letter_bits(alphabet)
    atom_codes = [np_ + i for i in range(z)]
    produced = 0

    def charge(k: int) -> None:
        nonlocal produced
        produced += k
        if work_cap is not None and produced > work_cap:
            raise OracleBudgetExceeded(f"oracle produced more than {work_cap} words")

    # languages are carried grouped as length -> first atom -> last atom ->
    # codes, so the diamond product pairs boundary atoms without regrouping;
    # every constructor returns a fresh structure, which lets merge mutate
    Grouped = dict

    def atoms_lang(codes) -> Grouped:
        charge(len(codes))
        return {1: {a: {a: {a}} for a in codes}} if codes else {}

    def product(c: Grouped, d: Grouped) -> Grouped:
        out: Grouped = {}
        added = 0
        for m, cm in c.items():
            shift = bits * m
            for n, dn in d.items():
                if m + n - 1 > max_len:
                    continue
                cell = out.setdefault(m + n - 1, {})
                if n == 1:
                    # an atom on the right only filters by the last letter
                    for first, by_last in cm.items():
                        row = cell.get(first)
                        for a, xs in by_last.items():
                            if not dn.get(a):
                                continue
                            if row is None:
                                row = cell[first] = {}
                            tgt = row.get(a)
                            if tgt is None:
                                row[a] = set(xs)
                                added += len(xs)
                            else:
                                before = len(tgt)
                                tgt |= xs
                                added += len(tgt) - before
                    continue
                if m == 1:
                    # an atom on the left leaves the right word unchanged
                    for a in cm:
                        dn_a = dn.get(a)
                        if not dn_a:
                            continue
                        row = cell.get(a)
                        if row is None:
                            row = cell[a] = {}
                        for last, ys in dn_a.items():
                            tgt = row.get(last)
                            if tgt is None:
                                row[last] = set(ys)
                                added += len(ys)
                            else:
                                before = len(tgt)
                                tgt |= ys
                                added += len(tgt) - before
                    continue
                for first, by_last in cm.items():
                    row = cell.get(first)
                    for a, xs in by_last.items():
                        dn_a = dn.get(a)
                        if not dn_a:
                            continue
                        if row is None:
                            row = cell[first] = {}
                        for last, ys in dn_a.items():
                            tgt = row.get(last)
                            if tgt is None:
                                tgt = row[last] = set()
                            before = len(tgt)
                            # comprehension over the larger side
                            if len(xs) <= len(ys):
                                shifted = [(y >> bits) << shift for y in ys]
                                for x in xs:
                                    tgt |= {x | yy for yy in shifted}
                            else:
                                for y in ys:
                                    yy = (y >> bits) << shift
                                    tgt |= {x | yy for x in xs}
                            added += len(tgt) - before
        charge(added)
        return out

    def merge(c: Grouped, d: Grouped) -> Grouped:
        for m, dcell in d.items():
            cell = c.setdefault(m, {})
            for first, by_last in dcell.items():
                row = cell.setdefault(first, {})
                for last, ys in by_last.items():
                    got = row.get(last)
                    if got is None:
                        row[last] = ys
                    else:
                        got |= ys
        return c

    def star_lang(c: Grouped) -> Grouped:
        out = atoms_lang(atom_codes)
        for m, cell in c.items():
            out_cell = out.setdefault(m, {})
            for first, by_last in cell.items():
                row = out_cell.setdefault(first, {})
                for last, ys in by_last.items():
                    got = row.get(last)
                    if got is None:
                        row[last] = set(ys)
                    else:
                        got |= ys
        frontier = c
        while frontier:
            grown = product(frontier, c)
            frontier = {}
            for m, cell in grown.items():
                out_cell = out.setdefault(m, {})
                for first, by_last in cell.items():
                    row = out_cell.setdefault(first, {})
                    for last, ys in by_last.items():
                        got = row.get(last)
                        fresh = ys if got is None else ys - got
                        if not fresh:
                            continue
                        if got is None:
                            row[last] = set(fresh)
                        else:
                            got |= fresh
                        frontier.setdefault(m, {}).setdefault(
                            first, {})[last] = fresh
        return out

    def ev(t: KatTerm) -> Grouped:
        if isinstance(t, Zero):
            return {}
        if isinstance(t, One):
            return atoms_lang(atom_codes)
        if isinstance(t, Test):
            idx = satisfying_atom_indices(t, alphabet)
            return atoms_lang([np_ + i for i in idx])
        if isinstance(t, Not):
            keep = sorted(set(range(z)) - set(satisfying_atom_indices(t.arg, alphabet)))
            return atoms_lang([np_ + i for i in keep])
        if isinstance(t, Prog):
            if max_len < 3:
                return {}
            p = alphabet.program_index(t.name)
            shift1, shift2 = bits, 2 * bits
            charge(z * z)
            return {3: {a0: {a1: {(a1 << shift2) | (p << shift1) | a0}
                             for a1 in atom_codes}
                        for a0 in atom_codes}}
        if isinstance(t, Plus):
            return merge(ev(t.left), ev(t.right))
        if isinstance(t, Times):
            return product(ev(t.left), ev(t.right))
        if isinstance(t, Star):
            return star_lang(ev(t.arg))
        raise TypeError(f"not a KatTerm: {t!r}")

    out: Buckets = {}
    for m, cell in ev(t).items():
        all_codes = set()
        for by_last in cell.values():
            for codes in by_last.values():
                all_codes |= codes
        if all_codes:
            out[m] = all_codes
    return out


def denote(t: KatTerm, alphabet: Alphabet, max_len: int) -> BoundedLanguage:
    """Every guarded word of t with letter count at most max_len."""
    buckets = denote_codes(t, alphabet, max_len)
    bits = letter_bits(alphabet)
    words = []
    for length, codes in buckets.items():
        for code in codes:
            words.append(word_from_codes(unpack_word(code, length, bits), alphabet))
    return BoundedLanguage(frozenset(words), max_len)


def bucket_count(buckets: Buckets) -> int:
    return sum(len(s) for s in buckets.values())


def word_sort_key(w: GuardedWord, alphabet: Alphabet) -> tuple:
    codes = word_codes(w, alphabet)
    return (len(codes), codes)
