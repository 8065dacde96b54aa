"""Pipeline from terms to automata: rewrite to negation normal form, then
build the automaton bottom-up, recording every step in a certificate.

The emitted certificate replays under check_certificate by construction. Side
conditions are computed from the actual intermediate automata and must hold;
a violation here means a construction invariant broke and raises
InvariantError rather than producing an unsound certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automaton import (GsAutomaton, RawAutomaton, apply_edge_simplification,
                        base_automaton, concat_raw, label_text,
                        language_difference_witness, raw_from_simple,
                        simple_from_raw, simplify_entries, star_raw,
                        sum_automaton)
from .certificate import (Certificate, CertStep, collapse_conds,
                          conditions_hold, oblock_shape_cond,
                          vec_mat_vec_conds, vec_zero_cond)
from .errors import InvariantError
from .guarded import Atom
from .kamatrix import KaTerm, encode_automaton
from .terms import (Alphabet, KatTerm, Not, One, Plus, Prog, Star, Test,
                    Times, Zero, apply_nnf_rewrite, check_letters, check_sorts,
                    nnf_trace, print_term)


@dataclass(frozen=True)
class CompileResult:
    term: KatTerm
    nnf: KatTerm
    automaton: GsAutomaton
    certificate: Certificate
    intermediates: dict


def _atomic(t: KatTerm) -> bool:
    return isinstance(t, (Zero, One, Test, Prog)) or (
        isinstance(t, Not) and isinstance(t.arg, Test))


def _require(conds) -> None:
    bad = conditions_hold(conds)
    if bad is not None:
        raise InvariantError(f"construction hypothesis fails: {bad}")


def compile_term(t: KatTerm, alphabet: Alphabet) -> CompileResult:
    """Compile a term to its guarded-string automaton with a certificate.

    intermediates maps each path in the rewritten term's syntax tree (root is
    the empty tuple, children count from 0) to that subterm's automaton.
    """
    check_letters(t, alphabet)
    check_sorts(t)
    steps: list[CertStep] = []
    width = len(alphabet.tests)
    for i in range(alphabet.n_atoms):
        steps.append(CertStep(len(steps), "AtomDefinition",
                              atom_index=i, atom_bits=Atom(i, width).bits))
    nnf, events = nnf_trace(t)
    current = t
    for ev in events:
        current = apply_nnf_rewrite(current, ev.axiom, ev.path)
        steps.append(CertStep(len(steps), "NnfRewrite", axiom=ev.axiom,
                              path=ev.path, result_term=print_term(current)))
    if current != nnf:
        raise InvariantError("rewrite trace does not reach the normal form")
    intermediates: dict[tuple[int, ...], GsAutomaton] = {}

    def emit_simplify(raw: RawAutomaton, prev_id: int) -> tuple[GsAutomaton, int]:
        aut, records = simplify_entries(raw)
        current_raw = raw
        last = prev_id
        for record in records:
            current_raw = apply_edge_simplification(current_raw, record)
            before = tuple(tuple(label_text(alphabet, c) for c in w)
                           for w in record.before)
            after = tuple(label_text(alphabet, c) for c in record.after)
            sid = len(steps)
            steps.append(CertStep(sid, "EntrySimplify", inputs=(last,),
                                  side_conditions=collapse_conds(record.collapses),
                                  edge=(record.src, record.dst), before=before,
                                  after=after, result_automaton=current_raw))
            last = sid
        if simple_from_raw(current_raw) != aut:
            raise InvariantError("entry collapse chain drifts from the simple form")
        return aut, last

    def build(node: KatTerm, path: tuple[int, ...]) -> tuple[GsAutomaton, int]:
        if _atomic(node):
            aut = base_automaton(node, alphabet)
            sid = len(steps)
            steps.append(CertStep(sid, "BaseCase", atomic=print_term(node),
                                  result_automaton=raw_from_simple(aut)))
        elif isinstance(node, Plus):
            a1, i1 = build(node.left, path + (0,))
            a2, i2 = build(node.right, path + (1,))
            conds = (oblock_shape_cond(a1), oblock_shape_cond(a2))
            _require(conds)
            aut = sum_automaton(a1, a2)
            sid = len(steps)
            steps.append(CertStep(sid, "SumStep", inputs=(i1, i2),
                                  side_conditions=conds,
                                  result_automaton=raw_from_simple(aut)))
        elif isinstance(node, Times):
            a1, i1 = build(node.left, path + (0,))
            a2, i2 = build(node.right, path + (1,))
            conds = (oblock_shape_cond(a1), oblock_shape_cond(a2),
                     vec_zero_cond("o1r1", a1), vec_zero_cond("s1t1", a1),
                     vec_zero_cond("o2r2", a2), vec_zero_cond("s2t2", a2))
            _require(conds)
            raw = concat_raw(a1, a2)
            sid = len(steps)
            steps.append(CertStep(sid, "ConcatStep", inputs=(i1, i2),
                                  side_conditions=conds, result_automaton=raw))
            aut, sid = emit_simplify(raw, sid)
        elif isinstance(node, Star):
            a, i0 = build(node.arg, path + (0,))
            conds = (oblock_shape_cond(a), vec_zero_cond("st", a)) \
                + vec_mat_vec_conds(a)
            _require(conds)
            raw = star_raw(a)
            sid = len(steps)
            steps.append(CertStep(sid, "StarStep", inputs=(i0,),
                                  side_conditions=conds, result_automaton=raw))
            aut, sid = emit_simplify(raw, sid)
        else:
            raise InvariantError(f"unexpected node after rewriting: {type(node).__name__}")
        intermediates[path] = aut
        return aut, sid

    automaton, _ = build(nnf, ())
    cert = Certificate(1, alphabet.programs, alphabet.tests, print_term(t),
                       tuple(steps))
    return CompileResult(t, nnf, automaton, cert, intermediates)


def equivalence_witness(t1: KatTerm, t2: KatTerm, alphabet: Alphabet) -> tuple[int, ...] | None:
    """Shortest letter-code word separating the two terms, None when equivalent."""
    a1 = compile_term(t1, alphabet).automaton
    a2 = compile_term(t2, alphabet).automaton
    return language_difference_witness(a1, a2)


def terms_equivalent(t1: KatTerm, t2: KatTerm, alphabet: Alphabet) -> bool:
    return equivalence_witness(t1, t2, alphabet) is None


def atom_term(alphabet: Alphabet, index: int) -> KatTerm:
    """The atom as a Boolean product of literals in declaration order."""
    nb = len(alphabet.tests)
    if nb == 0:
        return One()
    literals: list[KatTerm] = []
    for j, name in enumerate(alphabet.tests):
        bit = (index >> (nb - 1 - j)) & 1
        literals.append(Test(name) if bit else Not(Test(name)))
    out = literals[0]
    for lit in literals[1:]:
        out = Times(out, lit)
    return out


@dataclass(frozen=True)
class ReduceResult:
    """Two plain Kleene algebra terms over the extended alphabet, plus the
    atom table: term equivalence coincides with equality of the two
    regular languages once each atom letter is read as its Boolean product."""

    left: KaTerm
    right: KaTerm
    atom_definitions: tuple[tuple[int, KatTerm], ...]


def reduce_to_ka(t1: KatTerm, t2: KatTerm, alphabet: Alphabet) -> ReduceResult:
    a1 = compile_term(t1, alphabet).automaton
    a2 = compile_term(t2, alphabet).automaton
    defs = tuple((i, atom_term(alphabet, i)) for i in range(alphabet.n_atoms))
    return ReduceResult(encode_automaton(a1), encode_automaton(a2), defs)
