"""Kleene algebra terms and matrices over them.

KA terms are KAT terms without complement; their letters are the program
letters together with one letter per atom. Matrix star follows the standard
block construction, so an automaton (u, A, v) can be folded into the single
term u^T A* v.

Entry simplification is deliberately limited to the unit and annihilator laws
(a+0, a*1, a*0 and 0* = 1): everything else would make the output shape
unpredictable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError
from .guarded import letter_display
from .terms import Alphabet


class KaTerm:
    """Base class for KA abstract syntax nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class KaZero(KaTerm):
    __slots__ = ()


@dataclass(frozen=True)
class KaOne(KaTerm):
    __slots__ = ()


@dataclass(frozen=True)
class KaLetter(KaTerm):
    """A letter of the extended alphabet, by canonical code."""

    __slots__ = ("code",)
    code: int


@dataclass(frozen=True)
class KaPlus(KaTerm):
    __slots__ = ("left", "right")
    left: KaTerm
    right: KaTerm


@dataclass(frozen=True)
class KaTimes(KaTerm):
    __slots__ = ("left", "right")
    left: KaTerm
    right: KaTerm


@dataclass(frozen=True)
class KaStar(KaTerm):
    __slots__ = ("arg",)
    arg: KaTerm


def ka_plus(a: KaTerm, b: KaTerm) -> KaTerm:
    if isinstance(a, KaZero):
        return b
    if isinstance(b, KaZero):
        return a
    return KaPlus(a, b)


def ka_times(a: KaTerm, b: KaTerm) -> KaTerm:
    if isinstance(a, KaZero) or isinstance(b, KaZero):
        return KaZero()
    if isinstance(a, KaOne):
        return b
    if isinstance(b, KaOne):
        return a
    return KaTimes(a, b)


def ka_star(a: KaTerm) -> KaTerm:
    if isinstance(a, KaZero):
        return KaOne()
    return KaStar(a)


def ka_term_size(t: KaTerm) -> int:
    """Node count of the term as a tree.

    Encoded automata share subterms heavily, so sizes are computed over the
    DAG with a memo; the returned tree size can still be astronomically large.
    """
    memo: dict[int, int] = {}
    for node in _ka_postorder([t]):
        if isinstance(node, (KaPlus, KaTimes)):
            size = 1 + memo[id(node.left)] + memo[id(node.right)]
        elif isinstance(node, KaStar):
            size = 1 + memo[id(node.arg)]
        else:
            size = 1
        memo[id(node)] = size
    return memo[id(t)]


_PREC_SUM, _PREC_PROD, _PREC_STAR = 0, 1, 2


def print_ka_term(t: KaTerm, alphabet: Alphabet) -> str:
    """Same surface grammar as KAT terms, minus complement."""

    def go(t: KaTerm, want: int) -> str:
        if isinstance(t, KaZero):
            return "0"
        if isinstance(t, KaOne):
            return "1"
        if isinstance(t, KaLetter):
            return letter_display(alphabet, t.code)
        if isinstance(t, KaStar):
            s = go(t.arg, _PREC_STAR) + "*"
            return s if want <= _PREC_STAR else "(" + s + ")"
        if isinstance(t, KaPlus):
            s = go(t.left, _PREC_SUM) + " + " + go(t.right, _PREC_PROD)
            return s if want <= _PREC_SUM else "(" + s + ")"
        if isinstance(t, KaTimes):
            s = go(t.left, _PREC_PROD) + " " + go(t.right, _PREC_STAR)
            return s if want <= _PREC_PROD else "(" + s + ")"
        raise TypeError(f"not a KaTerm: {t!r}")

    return go(t, _PREC_SUM)


@dataclass(frozen=True)
class KaMatrix:
    rows: tuple[tuple[KaTerm, ...], ...]

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise DimensionError("ragged matrix")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i: int, j: int) -> KaTerm:
        return self.rows[i][j]


def mat_add(a: KaMatrix, b: KaMatrix) -> KaMatrix:
    if a.nrows != b.nrows or a.ncols != b.ncols:
        raise DimensionError(f"cannot add {a.nrows}x{a.ncols} and {b.nrows}x{b.ncols}")
    return KaMatrix(tuple(
        tuple(ka_plus(x, y) for x, y in zip(ra, rb))
        for ra, rb in zip(a.rows, b.rows)))


def mat_mul(a: KaMatrix, b: KaMatrix) -> KaMatrix:
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.nrows}x{a.ncols} by {b.nrows}x{b.ncols}")
    rows = []
    for i in range(a.nrows):
        row = []
        for j in range(b.ncols):
            acc: KaTerm = KaZero()
            for k in range(a.ncols):
                acc = ka_plus(acc, ka_times(a.rows[i][k], b.rows[k][j]))
            row.append(acc)
        rows.append(tuple(row))
    return KaMatrix(tuple(rows))


def _submatrix(m: KaMatrix, r0: int, r1: int, c0: int, c1: int) -> KaMatrix:
    return KaMatrix(tuple(tuple(m.rows[i][c0:c1]) for i in range(r0, r1)))


def _assemble(tl: KaMatrix, tr: KaMatrix, bl: KaMatrix, br: KaMatrix) -> KaMatrix:
    top = tuple(tl.rows[i] + tr.rows[i] for i in range(tl.nrows))
    bottom = tuple(bl.rows[i] + br.rows[i] for i in range(bl.nrows))
    return KaMatrix(top + bottom)


def mat_star(m: KaMatrix, partition_size: int | None = None) -> KaMatrix:
    """Asterate of a square matrix.

    1x1 is the scalar star; 2x2 uses the symmetric four-entry formula; larger
    matrices are split into blocks around partition_size (default ceiling of
    n/2) and assembled from F = A + B D* C. The partition choice only affects
    the shape of the entries, never their language.
    """
    n = m.nrows
    if n != m.ncols:
        raise DimensionError(f"star of a non-square {n}x{m.ncols} matrix")
    if n == 0:
        return m
    if n == 1:
        return KaMatrix(((ka_star(m.rows[0][0]),),))
    if n == 2:
        a, b = m.rows[0]
        c, d = m.rows[1]
        astar, dstar = ka_star(a), ka_star(d)
        f = ka_star(ka_plus(a, ka_times(ka_times(b, dstar), c)))
        g = ka_star(ka_plus(d, ka_times(ka_times(c, astar), b)))
        return KaMatrix((
            (f, ka_times(ka_times(f, b), dstar)),
            (ka_times(ka_times(g, c), astar), g),
        ))
    k = partition_size if partition_size is not None else (n + 1) // 2
    if not 1 <= k <= n - 1:
        raise DimensionError(f"partition size {k} out of range for a {n}x{n} matrix")
    a = _submatrix(m, 0, k, 0, k)
    b = _submatrix(m, 0, k, k, n)
    c = _submatrix(m, k, n, 0, k)
    d = _submatrix(m, k, n, k, n)
    dstar = mat_star(d)
    fstar = mat_star(mat_add(a, mat_mul(b, mat_mul(dstar, c))))
    tr = mat_mul(mat_mul(fstar, b), dstar)
    bl = mat_mul(mat_mul(dstar, c), fstar)
    br = mat_add(dstar, mat_mul(mat_mul(bl, b), dstar))
    return _assemble(fstar, tr, bl, br)


def encode_automaton(aut) -> KaTerm:
    """Fold an automaton (u, A, v) into the single KA term u^T A* v."""
    n = aut.n
    if n == 0:
        return KaZero()
    by_pos: dict[tuple[int, int], list[int]] = {}
    for src, dst, letter in aut.edges:
        by_pos.setdefault((src, dst), []).append(letter)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc: KaTerm = KaZero()
            for letter in sorted(by_pos.get((i, j), ())):
                acc = ka_plus(acc, KaLetter(letter))
            row.append(acc)
        rows.append(tuple(row))
    star = mat_star(KaMatrix(tuple(rows)))
    u = KaMatrix(((tuple(KaOne() if i in aut.start else KaZero() for i in range(n))),))
    v = KaMatrix(tuple((KaOne() if i in aut.accept else KaZero(),) for i in range(n)))
    return mat_mul(mat_mul(u, star), v).rows[0][0]


def _ka_children(t: KaTerm) -> tuple[KaTerm, ...]:
    if isinstance(t, (KaPlus, KaTimes)):
        return (t.left, t.right)
    if isinstance(t, KaStar):
        return (t.arg,)
    if isinstance(t, (KaZero, KaOne, KaLetter)):
        return ()
    raise TypeError(f"not a KaTerm: {t!r}")


def _ka_postorder(roots) -> list[KaTerm]:
    """Every distinct node (by identity) with children before parents."""
    order: list[KaTerm] = []
    seen: set[int] = set()
    work = [(t, False) for t in roots]
    while work:
        node, expanded = work.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        work.append((node, True))
        for child in _ka_children(node):
            if id(child) not in seen:
                work.append((child, False))
    return order


# language buckets: list indexed by length of sets of little-endian packed words
_Lang = list


def _bucket_product(left, right, bits: int, max_len: int, out) -> None:
    for i, xs in enumerate(left):
        if not xs:
            continue
        shift = bits * i
        for j in range(max_len - i + 1):
            ys = right[j]
            if not ys:
                continue
            tgt = out[i + j]
            for y in ys:
                shifted = y << shift
                tgt.update(x | shifted for x in xs)


def ka_bounded_languages(terms, max_len: int) -> list[set[tuple[int, ...]]]:
    """Bounded languages of several terms, one memo shared across the DAG.

    Words are kept length-bucketed and packed into ints while the DAG is
    folded, so products never touch a pair of words whose combined length
    exceeds the bound. Stars grow from the empty word one factor per round;
    factors have positive length, so the rounds are capped by the bound.
    """
    terms = list(terms)
    order = _ka_postorder(terms)
    maxcode = 0
    for node in order:
        if isinstance(node, KaLetter):
            maxcode = max(maxcode, node.code)
    bits = max(1, maxcode.bit_length())
    memo: dict[int, _Lang] = {}

    for node in order:
        out: _Lang = [set() for _ in range(max_len + 1)]
        if isinstance(node, KaZero):
            pass
        elif isinstance(node, KaOne):
            out[0].add(0)
        elif isinstance(node, KaLetter):
            if max_len >= 1:
                out[1].add(node.code)
        elif isinstance(node, KaPlus):
            left, right = memo[id(node.left)], memo[id(node.right)]
            out = [xs | ys for xs, ys in zip(left, right)]
        elif isinstance(node, KaTimes):
            _bucket_product(memo[id(node.left)], memo[id(node.right)],
                            bits, max_len, out)
        else:
            base = memo[id(node.arg)]
            out[0].add(0)
            frontier: _Lang = [{0}] + [set() for _ in range(max_len)]
            while True:
                grown: _Lang = [set() for _ in range(max_len + 1)]
                for i, xs in enumerate(frontier):
                    if not xs:
                        continue
                    shift = bits * i
                    for j in range(1, max_len - i + 1):
                        ys = base[j]
                        if not ys:
                            continue
                        tgt = grown[i + j]
                        for y in ys:
                            shifted = y << shift
                            tgt.update(x | shifted for x in xs)
                frontier = [s - out[k] for k, s in enumerate(grown)]
                if not any(frontier):
                    break
                for k, s in enumerate(frontier):
                    out[k] |= s
        memo[id(node)] = out

    mask = (1 << bits) - 1
    results = []
    for t in terms:
        words = set()
        for length, codes in enumerate(memo[id(t)]):
            for code in codes:
                words.add(tuple((code >> (bits * k)) & mask
                                for k in range(length)))
        results.append(words)
    return results


def ka_bounded_language(t: KaTerm, max_len: int) -> set[tuple[int, ...]]:
    """All words of t with length at most max_len, as tuples of letter codes."""
    return ka_bounded_languages([t], max_len)[0]
