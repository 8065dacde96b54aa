"""Certificate structure, serialization, and checker strictness."""

import json
from random import Random

import pytest

from certmut import mutate_once
from katc.automaton import GsAutomaton, raw_from_simple
from katc.certificate import (Certificate, CertStep, certificate_from_text,
                              certificate_to_text, check_certificate,
                              load_certificate, replay_step, save_certificate)
from katc.compiler import compile_term
from katc.errors import FileFormatError
from katc.terms import Alphabet, parse_term

AB1 = Alphabet(("p",), ("b",))
AB = Alphabet(("p", "q"), ("b", "c"))


def compiled(text, alphabet=AB1):
    t = parse_term(text, alphabet)
    return t, compile_term(t, alphabet)


def test_accepts_own_output():
    for text in ["0", "1", "~b", "p", "b p", "p + q", "p*", "(b p)* ~b"]:
        t, res = compiled(text, AB)
        verdict = check_certificate(res.certificate, res.automaton, t)
        assert verdict.accepted, (text, verdict.reason)


def test_serialization_round_trip():
    t, res = compiled("(b p)* ~b")
    text = certificate_to_text(res.certificate)
    again = certificate_from_text(text)
    assert again == res.certificate
    assert certificate_to_text(again) == text


def test_file_round_trip(tmp_path):
    t, res = compiled("p + b")
    path = tmp_path / "cert.json"
    save_certificate(res.certificate, path)
    assert load_certificate(path) == res.certificate
    assert check_certificate(load_certificate(path), res.automaton, t).accepted


def test_step_ids_are_sequential():
    _, res = compiled("b p")
    ids = [s.step_id for s in res.certificate.steps]
    assert ids == list(range(len(ids)))


def test_atom_definitions_come_first():
    _, res = compiled("p", AB)
    kinds = [s.kind for s in res.certificate.steps]
    assert kinds[:AB.n_atoms] == ["AtomDefinition"] * AB.n_atoms


def test_rejects_wrong_term():
    t1, res1 = compiled("b p")
    t2, _ = compiled("p")
    verdict = check_certificate(res1.certificate, res1.automaton, t2)
    assert not verdict.accepted
    assert "different term" in verdict.reason


def test_rejects_wrong_automaton():
    t1, res1 = compiled("b p")
    _, res2 = compiled("~b p")
    verdict = check_certificate(res1.certificate, res2.automaton, t1)
    assert not verdict.accepted


def test_rejects_trailing_steps():
    t, res = compiled("p")
    last = res.certificate.steps[-1]
    extra = CertStep(step_id=last.step_id + 1, kind="BaseCase",
                     atomic="p", result_automaton=last.result_automaton)
    cert = Certificate(res.certificate.version, res.certificate.programs,
                       res.certificate.tests, res.certificate.term_text,
                       res.certificate.steps + (extra,))
    verdict = check_certificate(cert, res.automaton, t)
    assert not verdict.accepted
    assert "trailing" in verdict.reason


def test_rewrite_rule_step_with_equal_language_is_accepted():
    t, res = compiled("p")
    aut = res.automaton
    # permute the interior states 1 and 2; the language cannot change
    perm = {0: 0, 1: 2, 2: 1, 3: 3}
    permuted = GsAutomaton(
        aut.alphabet, aut.n, aut.n_o,
        frozenset(perm[s] for s in aut.start),
        frozenset(perm[s] for s in aut.accept),
        frozenset((perm[s], perm[d], l) for s, d, l in aut.edges))
    permuted.validate()
    assert permuted != aut
    last = res.certificate.steps[-1]
    rule = CertStep(step_id=last.step_id + 1, kind="BisimulationRule",
                    inputs=(last.step_id,),
                    result_automaton=raw_from_simple(permuted))
    cert = Certificate(res.certificate.version, res.certificate.programs,
                       res.certificate.tests, res.certificate.term_text,
                       res.certificate.steps + (rule,))
    assert certificate_from_text(certificate_to_text(cert)) == cert
    verdict = check_certificate(cert, permuted, t)
    assert verdict.accepted, verdict.reason
    # the rule rewrote the automaton, so the original claim must now fail
    assert not check_certificate(cert, aut, t).accepted


def test_rewrite_rule_step_changing_language_is_rejected():
    t, res = compiled("p")
    _, other = compiled("p p")
    last = res.certificate.steps[-1]
    rule = CertStep(step_id=last.step_id + 1, kind="DenestingRule",
                    inputs=(last.step_id,),
                    result_automaton=raw_from_simple(other.automaton))
    cert = Certificate(res.certificate.version, res.certificate.programs,
                       res.certificate.tests, res.certificate.term_text,
                       res.certificate.steps + (rule,))
    verdict = check_certificate(cert, other.automaton, t)
    assert not verdict.accepted
    assert "bounded language" in verdict.reason


def test_replay_step_matches_stored_results():
    t, res = compiled("(b p)* ~b")
    steps = res.certificate.steps
    by_id = {s.step_id: s for s in steps}
    for step in steps:
        if step.kind in ("AtomDefinition", "NnfRewrite"):
            continue
        inputs = [by_id[i].result_automaton for i in step.inputs]
        inputs = [i for i in inputs if i is not None]
        if step.kind in ("BaseCase", "ConcatStep", "StarStep", "EntrySimplify"):
            got = replay_step(step, AB1, [_purify(i) for i in inputs]
                              if step.kind in ("ConcatStep", "StarStep") else inputs)
            assert got == step.result_automaton, step.kind


def _purify(raw):
    from katc.automaton import simple_from_raw

    return simple_from_raw(raw)


@pytest.mark.parametrize("bad", [
    '{"format": "nope", "version": 1, "programs": [], "tests": [], "term": "1", "steps": []}',
    '{"format": "kat-compilation-certificate", "version": 9, "programs": [], "tests": [], "term": "1", "steps": []}',
    '{"format": "kat-compilation-certificate", "version": 1, "programs": [], "tests": [], "term": "1"}',
    'not json at all',
])
def test_malformed_documents_rejected(bad):
    with pytest.raises(FileFormatError):
        certificate_from_text(bad)


def test_nonsequential_ids_rejected():
    _, res = compiled("b")
    obj = json.loads(certificate_to_text(res.certificate))
    obj["steps"][-1]["id"] = 17
    with pytest.raises(FileFormatError):
        certificate_from_text(json.dumps(obj))


def test_unknown_axiom_rejected():
    _, res = compiled("~(b + b)")
    obj = json.loads(certificate_to_text(res.certificate))
    for step in obj["steps"]:
        if step["kind"] == "NnfRewrite":
            step["axiom"] = "fancyNewAxiom"
            break
    with pytest.raises(FileFormatError):
        certificate_from_text(json.dumps(obj))


def test_mutation_sweep_small():
    """Any single-field change is caught at parse or by the checker."""
    t, res = compiled("(b p)* ~b + q p", AB)
    assert check_certificate(res.certificate, res.automaton, t).accepted
    base = json.loads(certificate_to_text(res.certificate))
    rng = Random(20240816)
    silent = []
    for i in range(200):
        mutated = mutate_once(base, rng)
        try:
            cert = certificate_from_text(json.dumps(mutated))
        except FileFormatError:
            continue
        verdict = check_certificate(cert, res.automaton, t)
        if verdict.accepted:
            silent.append(mutated)
    assert not silent, f"{len(silent)} mutations were silently accepted"
