"""Construction certificates: checkable transcripts of a compilation run.

A certificate lists every step the compiler took: the atom table, each
negation-pushing rewrite with the term it produced, and one construction step
per node of the rewritten term in post-order, each carrying its side
conditions and a snapshot of the automaton it built. Two-letter entries left
by concatenation and asterate are collapsed by explicit EntrySimplify steps.

The checker replays everything from the input term alone. For each step it
rebuilds the expected side conditions from the actual input automata, so a
certificate whose conditions were edited to look satisfied is rejected for
not matching the inputs, and one whose conditions are honest but violated is
rejected on the recomputed value. Three rewrite step kinds (DenestingRule,
SlidingRule, BisimulationRule) are accepted from external producers and are
validated by bounded language comparison; the compiler never emits them.

Malformed files raise FileFormatError. Well-formed certificates that fail
replay produce a Verdict with accepted=False and the offending step.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .automaton import (GsAutomaton, RawAutomaton, apply_edge_simplification,
                        base_automaton, concat_raw, label_code, label_text,
                        lang_codes, parse_alphabet_fields, raw_from_simple,
                        simple_from_raw, simplify_entries, star_raw,
                        sum_automaton)
from .errors import FileFormatError, InvariantError, KatError
from .guarded import Atom, is_atom_code
from .terms import (Alphabet, KatTerm, Not, One, Plus, Prog, Star, Test,
                    Times, Zero, NNF_AXIOMS, apply_nnf_rewrite, is_nnf,
                    parse_term, print_term)

STEP_KINDS = ("AtomDefinition", "NnfRewrite", "BaseCase", "SumStep",
              "ConcatStep", "StarStep", "EntrySimplify", "DenestingRule",
              "SlidingRule", "BisimulationRule")
REWRITE_RULE_KINDS = ("DenestingRule", "SlidingRule", "BisimulationRule")


@dataclass(frozen=True)
class VecZeroCond:
    """Saturated inner product of two 0-1 state vectors must be zero.

    Roles name the hypothesis: o1r1/o2r2 pair an input's o-block start and
    accept vectors, s1t1/s2t2/st its s-block start and accept vectors.
    """

    role: str
    left: tuple[int, ...]
    right: tuple[int, ...]
    value: int


@dataclass(frozen=True)
class VecMatVecZeroCond:
    """s^T A_letter t = 0: no single edge joins an s-start to an s-accept."""

    letter: str
    left: tuple[int, ...]
    mat: tuple[tuple[int, int], ...]
    right: tuple[int, ...]
    value: int


@dataclass(frozen=True)
class OBlockShapeCond:
    """The input's o-block is empty or the two-state single-edge-bundle form."""

    n_o: int
    start: tuple[int, ...]
    accept: tuple[int, ...]
    labels: tuple[str, ...]
    ok: bool


@dataclass(frozen=True)
class AtomCollapseCond:
    """x_i x_j collapses to x_i when i = j and to nothing otherwise."""

    i: int
    j: int
    keep: bool


SideCondition = VecZeroCond | VecMatVecZeroCond | OBlockShapeCond | AtomCollapseCond


@dataclass(frozen=True)
class CertStep:
    step_id: int
    kind: str
    inputs: tuple[int, ...] = ()
    side_conditions: tuple[SideCondition, ...] = ()
    axiom: str | None = None
    path: tuple[int, ...] | None = None
    atom_index: int | None = None
    atom_bits: str | None = None
    atomic: str | None = None
    edge: tuple[int, int] | None = None
    before: tuple[tuple[str, ...], ...] | None = None
    after: tuple[str, ...] | None = None
    result_term: str | None = None
    result_automaton: RawAutomaton | None = None


@dataclass(frozen=True)
class Certificate:
    version: int
    programs: tuple[str, ...]
    tests: tuple[str, ...]
    term_text: str
    steps: tuple[CertStep, ...]

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.programs, self.tests)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    failed_step: int | None
    reason: str


# --- building side conditions (shared by the compiler and the checker) -------


def oblock_shape_cond(aut: GsAutomaton) -> OBlockShapeCond:
    o_start = tuple(sorted(s for s in aut.start if s < aut.n_o))
    o_accept = tuple(sorted(s for s in aut.accept if s < aut.n_o))
    o_edges = sorted((s, d, l) for s, d, l in aut.edges if s < aut.n_o or d < aut.n_o)
    labels = tuple(sorted(label_text(aut.alphabet, l) for _, _, l in o_edges))
    if aut.n_o == 0:
        ok = not o_edges
    else:
        ok = (aut.n_o == 2 and o_start == (0,) and o_accept == (1,)
              and all((s, d) == (0, 1) and is_atom_code(aut.alphabet, l)
                      for s, d, l in o_edges))
    return OBlockShapeCond(aut.n_o, o_start, o_accept, labels, ok)


def vec_zero_cond(role: str, aut: GsAutomaton) -> VecZeroCond:
    if role in ("o1r1", "o2r2"):
        left = tuple(sorted(s for s in aut.start if s < aut.n_o))
        right = tuple(sorted(s for s in aut.accept if s < aut.n_o))
    elif role in ("s1t1", "s2t2", "st"):
        left = tuple(sorted(s for s in aut.start if s >= aut.n_o))
        right = tuple(sorted(s for s in aut.accept if s >= aut.n_o))
    else:
        raise KatError(f"unknown vector condition role {role!r}")
    value = 1 if set(left) & set(right) else 0
    return VecZeroCond(role, left, right, value)


def vec_mat_vec_conds(aut: GsAutomaton) -> tuple[VecMatVecZeroCond, ...]:
    """One condition per letter with at least one s-block edge, in code order."""
    left = tuple(sorted(s for s in aut.start if s >= aut.n_o))
    right = tuple(sorted(s for s in aut.accept if s >= aut.n_o))
    by_letter: dict[int, set[tuple[int, int]]] = {}
    for s, d, l in aut.edges:
        if s >= aut.n_o and d >= aut.n_o:
            by_letter.setdefault(l, set()).add((s, d))
    lset, rset = set(left), set(right)
    out = []
    for letter in sorted(by_letter):
        mat = tuple(sorted(by_letter[letter]))
        value = 1 if any(i in lset and j in rset for i, j in mat) else 0
        out.append(VecMatVecZeroCond(label_text(aut.alphabet, letter),
                                     left, mat, right, value))
    return tuple(out)


def collapse_conds(collapses) -> tuple[AtomCollapseCond, ...]:
    return tuple(AtomCollapseCond(i, j, keep) for i, j, keep in collapses)


def conditions_hold(conds) -> SideCondition | None:
    """First violated condition, or None when all hold."""
    for c in conds:
        if isinstance(c, (VecZeroCond, VecMatVecZeroCond)):
            if c.value != 0:
                return c
        elif isinstance(c, OBlockShapeCond):
            if not c.ok:
                return c
        elif isinstance(c, AtomCollapseCond):
            if c.keep != (c.i == c.j):
                return c
        else:
            raise KatError(f"unknown side condition {type(c).__name__}")
    return None


# --- replay --------------------------------------------------------------------


def _atomic_term(t: KatTerm) -> bool:
    return isinstance(t, (Zero, One, Test, Prog)) or (
        isinstance(t, Not) and isinstance(t.arg, Test))


def replay_step(step: CertStep, alphabet: Alphabet, inputs: list):
    """Recompute one step's result from resolved inputs.

    inputs holds the objects the step's input ids refer to: the previous term
    for NnfRewrite, automata for construction steps. AtomDefinition returns
    the expected bitstring; rewrite-rule steps have no recomputation and
    return the stored snapshot.
    """
    kind = step.kind
    if kind == "AtomDefinition":
        return Atom(step.atom_index, len(alphabet.tests)).bits
    if kind == "NnfRewrite":
        return apply_nnf_rewrite(inputs[0], step.axiom, step.path)
    if kind == "BaseCase":
        return raw_from_simple(base_automaton(parse_term(step.atomic, alphabet), alphabet))
    if kind == "SumStep":
        return raw_from_simple(sum_automaton(inputs[0], inputs[1]))
    if kind == "ConcatStep":
        return concat_raw(inputs[0], inputs[1])
    if kind == "StarStep":
        return star_raw(inputs[0])
    if kind == "EntrySimplify":
        raw: RawAutomaton = inputs[0]
        src, dst = step.edge
        edges = {e for e in raw.edges if (e[0], e[1]) != (src, dst)}
        edges.update((src, dst, (label_code(alphabet, l),)) for l in step.after)
        return RawAutomaton(raw.alphabet, raw.n, raw.n_o, raw.start,
                            raw.accept, frozenset(edges))
    if kind in REWRITE_RULE_KINDS:
        return step.result_automaton
    raise KatError(f"step kind {kind!r} has no replay")


class _Reject(Exception):
    def __init__(self, step_id: int | None, reason: str):
        super().__init__(reason)
        self.step_id = step_id
        self.reason = reason


class _Walk:
    """Post-order consumption of construction steps against the rewritten term."""

    def __init__(self, alphabet: Alphabet, steps: tuple[CertStep, ...], pos: int):
        self.alphabet = alphabet
        self.steps = steps
        self.pos = pos

    def take(self, node_text: str) -> CertStep:
        if self.pos >= len(self.steps):
            raise _Reject(None, f"certificate ends before covering {node_text}")
        step = self.steps[self.pos]
        self.pos += 1
        return step

    def peek_kind(self) -> str | None:
        if self.pos >= len(self.steps):
            return None
        return self.steps[self.pos].kind

    def node(self, t: KatTerm) -> tuple[GsAutomaton, int]:
        text = print_term(t)
        if _atomic_term(t):
            step = self.take(text)
            if step.kind != "BaseCase":
                raise _Reject(step.step_id, f"expected BaseCase for {text}, got {step.kind}")
            if step.atomic != text:
                raise _Reject(step.step_id,
                              f"base case names {step.atomic!r}, term has {text!r}")
            if step.side_conditions:
                raise _Reject(step.step_id, "base case carries side conditions")
            aut = base_automaton(t, self.alphabet)
            if step.result_automaton != raw_from_simple(aut):
                raise _Reject(step.step_id, f"snapshot for {text} does not replay")
            return self.finish_node(aut, step.step_id)
        if isinstance(t, Plus):
            a1, id1 = self.node(t.left)
            a2, id2 = self.node(t.right)
            step = self.take(text)
            if step.kind != "SumStep":
                raise _Reject(step.step_id, f"expected SumStep for {text}, got {step.kind}")
            self.check_inputs(step, (id1, id2))
            expected = (oblock_shape_cond(a1), oblock_shape_cond(a2))
            self.check_conditions(step, expected)
            aut = sum_automaton(a1, a2)
            if step.result_automaton != raw_from_simple(aut):
                raise _Reject(step.step_id, f"snapshot for {text} does not replay")
            return self.finish_node(aut, step.step_id)
        if isinstance(t, Times):
            a1, id1 = self.node(t.left)
            a2, id2 = self.node(t.right)
            step = self.take(text)
            if step.kind != "ConcatStep":
                raise _Reject(step.step_id, f"expected ConcatStep for {text}, got {step.kind}")
            self.check_inputs(step, (id1, id2))
            expected = (oblock_shape_cond(a1), oblock_shape_cond(a2),
                        vec_zero_cond("o1r1", a1), vec_zero_cond("s1t1", a1),
                        vec_zero_cond("o2r2", a2), vec_zero_cond("s2t2", a2))
            self.check_conditions(step, expected)
            raw = concat_raw(a1, a2)
            return self.raw_then_simplify(step, raw, text)
        if isinstance(t, Star):
            a, id0 = self.node(t.arg)
            step = self.take(text)
            if step.kind != "StarStep":
                raise _Reject(step.step_id, f"expected StarStep for {text}, got {step.kind}")
            self.check_inputs(step, (id0,))
            expected = (oblock_shape_cond(a), vec_zero_cond("st", a)) \
                + vec_mat_vec_conds(a)
            self.check_conditions(step, expected)
            raw = star_raw(a)
            return self.raw_then_simplify(step, raw, text)
        raise _Reject(None, f"term {text} is not in negation normal form")

    def check_inputs(self, step: CertStep, expected: tuple[int, ...]) -> None:
        if step.inputs != expected:
            raise _Reject(step.step_id,
                          f"inputs {list(step.inputs)} do not name this node's "
                          f"children {list(expected)}")

    def check_conditions(self, step: CertStep, expected) -> None:
        if step.side_conditions != tuple(expected):
            raise _Reject(step.step_id, "side conditions do not match the inputs")
        bad = conditions_hold(expected)
        if bad is not None:
            raise _Reject(step.step_id, f"side condition fails: {bad}")

    def raw_then_simplify(self, step: CertStep, raw: RawAutomaton, text: str) \
            -> tuple[GsAutomaton, int]:
        if step.result_automaton != raw:
            raise _Reject(step.step_id, f"snapshot for {text} does not replay")
        _, records = simplify_entries(raw)
        prev_id = step.step_id
        current = raw
        for record in records:
            sub = self.take(f"entry collapse of {text}")
            if sub.kind != "EntrySimplify":
                raise _Reject(sub.step_id,
                              f"expected EntrySimplify for edge "
                              f"({record.src},{record.dst}), got {sub.kind}")
            self.check_inputs(sub, (prev_id,))
            if sub.edge != (record.src, record.dst):
                raise _Reject(sub.step_id, "collapse names the wrong edge")
            labels = self.alphabet
            before = tuple(tuple(label_text(labels, c) for c in w) for w in record.before)
            after = tuple(label_text(labels, c) for c in record.after)
            if sub.before != before or sub.after != after:
                raise _Reject(sub.step_id, "collapse labels do not match the edge")
            self.check_conditions(sub, collapse_conds(record.collapses))
            current = apply_edge_simplification(current, record)
            if sub.result_automaton != current:
                raise _Reject(sub.step_id, "snapshot after collapse does not replay")
            prev_id = sub.step_id
        try:
            aut = simple_from_raw(current)
        except InvariantError as e:
            raise _Reject(prev_id, f"result is not a simple automaton: {e}")
        return self.finish_node(aut, prev_id)

    def finish_node(self, aut: GsAutomaton, prev_id: int) -> tuple[GsAutomaton, int]:
        """Consume optional rewrite-rule steps that transform this node's result."""
        while self.peek_kind() in REWRITE_RULE_KINDS:
            step = self.steps[self.pos]
            self.pos += 1
            self.check_inputs(step, (prev_id,))
            if step.side_conditions:
                raise _Reject(step.step_id, "rewrite rules carry no side conditions")
            if step.result_automaton is None:
                raise _Reject(step.step_id, "rewrite rule lacks a result")
            try:
                new = simple_from_raw(step.result_automaton)
            except InvariantError as e:
                raise _Reject(step.step_id, f"rewritten automaton is invalid: {e}")
            bound = 2 * max(aut.n, new.n) + 1
            if lang_codes(aut, bound) != lang_codes(new, bound):
                raise _Reject(step.step_id,
                              "rewritten automaton changes the bounded language")
            aut, prev_id = new, step.step_id
        return aut, prev_id


def check_certificate(cert: Certificate, claimed: GsAutomaton, t: KatTerm) -> Verdict:
    """Replay a certificate against the term and the claimed automaton."""
    try:
        alphabet = cert.alphabet
        if alphabet != claimed.alphabet:
            raise _Reject(None, "certificate and automaton declare different alphabets")
        try:
            declared = parse_term(cert.term_text, alphabet)
        except KatError as e:
            raise _Reject(None, f"term text does not parse: {e}")
        if declared != t:
            raise _Reject(None, "certificate is for a different term")
        steps = cert.steps
        z = alphabet.n_atoms
        for i in range(z):
            if i >= len(steps) or steps[i].kind != "AtomDefinition":
                raise _Reject(i if i < len(steps) else None,
                              f"expected {z} atom definitions")
            step = steps[i]
            if step.atom_index != i or step.atom_bits != Atom(i, len(alphabet.tests)).bits:
                raise _Reject(step.step_id, f"atom {i} is defined incorrectly")
        if z < len(steps) and steps[z].kind == "AtomDefinition":
            raise _Reject(steps[z].step_id, f"more than {z} atom definitions")
        pos = z
        current = t
        while pos < len(steps) and steps[pos].kind == "NnfRewrite":
            step = steps[pos]
            try:
                current = apply_nnf_rewrite(current, step.axiom, step.path)
            except ValueError as e:
                raise _Reject(step.step_id, f"rewrite does not apply: {e}")
            if print_term(current) != step.result_term:
                raise _Reject(step.step_id, "rewrite snapshot does not replay")
            pos += 1
        if not is_nnf(current):
            raise _Reject(steps[pos].step_id if pos < len(steps) else None,
                          "rewrites stop before negation normal form")
        walk = _Walk(alphabet, steps, pos)
        aut, _ = walk.node(current)
        if walk.pos != len(steps):
            raise _Reject(steps[walk.pos].step_id, "trailing steps after the root")
        if aut != claimed:
            raise _Reject(steps[-1].step_id if steps else None,
                          "final automaton differs from the claimed one")
    except _Reject as r:
        return Verdict(False, r.step_id, r.reason)
    return Verdict(True, None, "")


# --- serialization ---------------------------------------------------------------


def _raw_to_obj(raw: RawAutomaton) -> dict:
    transitions = sorted(
        ({"from": s, "to": d, "labels": [label_text(raw.alphabet, c) for c in w]}
         for s, d, w in raw.edges),
        key=lambda e: (e["from"], e["to"], e["labels"]))
    return {"n": raw.n, "n_o": raw.n_o, "u": sorted(raw.start),
            "v": sorted(raw.accept), "transitions": transitions}


def _cond_to_obj(cond: SideCondition) -> dict:
    if isinstance(cond, VecZeroCond):
        return {"kind": "VecZero", "role": cond.role, "left": list(cond.left),
                "right": list(cond.right), "value": cond.value}
    if isinstance(cond, VecMatVecZeroCond):
        return {"kind": "VecMatVecZero", "letter": cond.letter,
                "left": list(cond.left), "mat": [list(p) for p in cond.mat],
                "right": list(cond.right), "value": cond.value}
    if isinstance(cond, OBlockShapeCond):
        return {"kind": "OBlockShape", "n_o": cond.n_o, "start": list(cond.start),
                "accept": list(cond.accept), "labels": list(cond.labels),
                "ok": cond.ok}
    if isinstance(cond, AtomCollapseCond):
        return {"kind": "AtomCollapse", "i": cond.i, "j": cond.j, "keep": cond.keep}
    raise KatError(f"unknown side condition {type(cond).__name__}")


def _step_to_obj(step: CertStep) -> dict:
    obj: dict = {"id": step.step_id, "kind": step.kind}
    if step.kind == "AtomDefinition":
        obj["atom_index"] = step.atom_index
        obj["atom_bits"] = step.atom_bits
        return obj
    if step.kind == "NnfRewrite":
        obj["axiom"] = step.axiom
        obj["path"] = list(step.path)
        obj["result_term"] = step.result_term
        return obj
    if step.kind == "BaseCase":
        obj["atomic"] = step.atomic
        obj["result"] = _raw_to_obj(step.result_automaton)
        return obj
    obj["inputs"] = list(step.inputs)
    if step.kind == "EntrySimplify":
        obj["edge"] = list(step.edge)
        obj["before"] = [list(w) for w in step.before]
        obj["after"] = list(step.after)
    if step.kind not in REWRITE_RULE_KINDS:
        obj["side_conditions"] = [_cond_to_obj(c) for c in step.side_conditions]
    obj["result"] = _raw_to_obj(step.result_automaton)
    return obj


def certificate_to_text(cert: Certificate) -> str:
    obj = {
        "format": "kat-compilation-certificate",
        "version": cert.version,
        "programs": list(cert.programs),
        "tests": list(cert.tests),
        "term": cert.term_text,
        "steps": [_step_to_obj(s) for s in cert.steps],
    }
    return json.dumps(obj, indent=2) + "\n"


def _need(obj: dict, field: str, types):
    if field not in obj:
        raise FileFormatError(f"step is missing field {field!r}")
    val = obj[field]
    if not isinstance(val, types):
        raise FileFormatError(f"step field {field!r} has the wrong type")
    return val


def _int_list(obj, field) -> tuple[int, ...]:
    val = _need(obj, field, list)
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in val):
        raise FileFormatError(f"step field {field!r} must hold integers")
    return tuple(val)


def _increasing(values, what: str) -> None:
    """The emitter writes sets as sorted lists; readers insist on that form."""
    if any(not b > a for a, b in zip(values, values[1:])):
        raise FileFormatError(f"{what} must be strictly increasing")


def _raw_from_obj(obj, alphabet: Alphabet) -> RawAutomaton:
    if not isinstance(obj, dict):
        raise FileFormatError("automaton snapshot must be an object")
    n = _need(obj, "n", int)
    n_o = _need(obj, "n_o", int)
    u = _int_list(obj, "u")
    v = _int_list(obj, "v")
    _increasing(u, "snapshot field 'u'")
    _increasing(v, "snapshot field 'v'")
    entries = []
    edges = set()
    for t in _need(obj, "transitions", list):
        if not (isinstance(t, dict) and {"from", "to", "labels"} <= set(t)):
            raise FileFormatError("each snapshot transition needs from, to and labels")
        labels = t["labels"]
        if not (isinstance(t["from"], int) and isinstance(t["to"], int)
                and isinstance(labels, list) and labels
                and all(isinstance(x, str) for x in labels)):
            raise FileFormatError("bad snapshot transition field types")
        if len(labels) > 2:
            raise FileFormatError("snapshot transitions carry one- or two-letter words")
        word = tuple(label_code(alphabet, l) for l in labels)
        entries.append((t["from"], t["to"], tuple(labels)))
        edges.add((t["from"], t["to"], word))
    _increasing(entries, "snapshot transitions")
    return RawAutomaton(alphabet, n, n_o, frozenset(u), frozenset(v),
                        frozenset(edges))


def _cond_from_obj(obj, alphabet: Alphabet) -> SideCondition:
    if not isinstance(obj, dict):
        raise FileFormatError("side condition must be an object")
    kind = _need(obj, "kind", str)
    if kind == "VecZero":
        role = _need(obj, "role", str)
        if role not in ("o1r1", "o2r2", "s1t1", "s2t2", "st"):
            raise FileFormatError(f"unknown vector condition role {role!r}")
        return VecZeroCond(role, _int_list(obj, "left"), _int_list(obj, "right"),
                           _need(obj, "value", int))
    if kind == "VecMatVecZero":
        letter = _need(obj, "letter", str)
        label_code(alphabet, letter)
        mat = _need(obj, "mat", list)
        pairs = []
        for p in mat:
            if not (isinstance(p, list) and len(p) == 2
                    and all(isinstance(x, int) for x in p)):
                raise FileFormatError("matrix entries must be [src, dst] pairs")
            pairs.append((p[0], p[1]))
        return VecMatVecZeroCond(letter, _int_list(obj, "left"), tuple(pairs),
                                 _int_list(obj, "right"), _need(obj, "value", int))
    if kind == "OBlockShape":
        labels = _need(obj, "labels", list)
        if not all(isinstance(x, str) for x in labels):
            raise FileFormatError("o-block labels must be strings")
        return OBlockShapeCond(_need(obj, "n_o", int), _int_list(obj, "start"),
                               _int_list(obj, "accept"), tuple(labels),
                               _need(obj, "ok", bool))
    if kind == "AtomCollapse":
        return AtomCollapseCond(_need(obj, "i", int), _need(obj, "j", int),
                                _need(obj, "keep", bool))
    raise FileFormatError(f"unknown side condition kind {kind!r}")


def _step_from_obj(obj, alphabet: Alphabet) -> CertStep:
    if not isinstance(obj, dict):
        raise FileFormatError("each step must be an object")
    step_id = _need(obj, "id", int)
    kind = _need(obj, "kind", str)
    if kind not in STEP_KINDS:
        raise FileFormatError(f"unknown step kind {kind!r}")
    if kind == "AtomDefinition":
        return CertStep(step_id, kind, atom_index=_need(obj, "atom_index", int),
                        atom_bits=_need(obj, "atom_bits", str))
    if kind == "NnfRewrite":
        axiom = _need(obj, "axiom", str)
        if axiom not in NNF_AXIOMS:
            raise FileFormatError(f"unknown rewrite axiom {axiom!r}")
        return CertStep(step_id, kind, axiom=axiom, path=_int_list(obj, "path"),
                        result_term=_need(obj, "result_term", str))
    result = _raw_from_obj(_need(obj, "result", dict), alphabet)
    if kind == "BaseCase":
        return CertStep(step_id, kind, atomic=_need(obj, "atomic", str),
                        result_automaton=result)
    inputs = _int_list(obj, "inputs")
    if kind in REWRITE_RULE_KINDS:
        return CertStep(step_id, kind, inputs=inputs, result_automaton=result)
    conds = tuple(_cond_from_obj(c, alphabet)
                  for c in _need(obj, "side_conditions", list))
    if kind == "EntrySimplify":
        edge = _int_list(obj, "edge")
        if len(edge) != 2:
            raise FileFormatError("edge must be a [src, dst] pair")
        before_raw = _need(obj, "before", list)
        before = []
        for w in before_raw:
            if not (isinstance(w, list) and w and all(isinstance(x, str) for x in w)):
                raise FileFormatError("before words must be label lists")
            for l in w:
                label_code(alphabet, l)
            before.append(tuple(w))
        after = _need(obj, "after", list)
        if not all(isinstance(x, str) for x in after):
            raise FileFormatError("after labels must be strings")
        for l in after:
            label_code(alphabet, l)
        return CertStep(step_id, kind, inputs=inputs, side_conditions=conds,
                        edge=(edge[0], edge[1]), before=tuple(before),
                        after=tuple(after), result_automaton=result)
    return CertStep(step_id, kind, inputs=inputs, side_conditions=conds,
                    result_automaton=result)


def certificate_from_text(text: str) -> Certificate:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"not valid JSON: {e}") from None
    if not isinstance(obj, dict):
        raise FileFormatError("certificate file must hold a JSON object")
    if obj.get("format") != "kat-compilation-certificate" or obj.get("version") != 1:
        raise FileFormatError("expected a kat-compilation-certificate file, format version 1")
    alphabet = parse_alphabet_fields(obj)
    term_text = obj.get("term")
    if not isinstance(term_text, str):
        raise FileFormatError("term must be a string")
    steps_raw = obj.get("steps")
    if not isinstance(steps_raw, list):
        raise FileFormatError("steps must be a list")
    steps = tuple(_step_from_obj(s, alphabet) for s in steps_raw)
    for i, step in enumerate(steps):
        if step.step_id != i:
            raise FileFormatError(f"step ids must count up from 0, found {step.step_id} at {i}")
    return Certificate(1, alphabet.programs, alphabet.tests, term_text, steps)


def save_certificate(cert: Certificate, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(certificate_to_text(cert))


def load_certificate(path) -> Certificate:
    with open(path, encoding="utf-8") as fh:
        return certificate_from_text(fh.read())
