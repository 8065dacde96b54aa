"""Command line interface.

Alphabets are always passed explicitly (--programs, --tests) because atom
bit order follows test declaration order. Exit codes: 0 for success or a
positive verdict, 1 for inequivalent / rejected / nondeterministic, 2 for
usage, parse and sort errors, 3 when the test alphabet exceeds the atom cap.
"""

from __future__ import annotations

import argparse
import sys

from .automaton import load_automaton, save_automaton
from .certificate import check_certificate, load_certificate, save_certificate
from .compiler import compile_term, equivalence_witness, reduce_to_ka
from .errors import AlphabetCapError, KatError
from .guarded import Atom, denote, word_display, word_sort_key
from .kamatrix import print_ka_term
from .programs import (HoareImplication, PLAIN_SUM, STARRED_UNIVERSAL,
                       check_while_determinism, encode_while, hoare_reduce,
                       parse_while)
from .terms import Alphabet, parse_term, print_term, to_nnf


def _split_names(text: str) -> tuple[str, ...]:
    return tuple(name for name in text.split(",") if name) if text else ()


def _alphabet(args) -> Alphabet:
    return Alphabet(_split_names(args.programs), _split_names(args.tests))


def _witness_text(witness, alphabet: Alphabet) -> str:
    return word_display(witness, alphabet) if witness else "(empty)"


def _cmd_compile(args) -> int:
    alphabet = _alphabet(args)
    result = compile_term(parse_term(args.term, alphabet), alphabet)
    print(f"states: {result.automaton.n}")
    if args.out:
        save_automaton(result.automaton, args.out)
        print(f"wrote automaton to {args.out}")
    if args.certificate:
        save_certificate(result.certificate, args.certificate)
        print(f"wrote certificate to {args.certificate}")
    return 0


def _cmd_equiv(args) -> int:
    alphabet = _alphabet(args)
    witness = equivalence_witness(parse_term(args.left, alphabet),
                                  parse_term(args.right, alphabet), alphabet)
    if witness is None:
        print("equivalent")
        return 0
    print(f"inequivalent: {_witness_text(witness, alphabet)}")
    return 1


def _cmd_denote(args) -> int:
    alphabet = _alphabet(args)
    lang = denote(parse_term(args.term, alphabet), alphabet, args.max_len)
    for word in sorted(lang.words, key=lambda w: word_sort_key(w, alphabet)):
        print(word.text)
    return 0


def _cmd_nnf(args) -> int:
    alphabet = _alphabet(args)
    print(print_term(to_nnf(parse_term(args.term, alphabet))))
    return 0


def _cmd_reduce_ka(args) -> int:
    alphabet = _alphabet(args)
    result = reduce_to_ka(parse_term(args.left, alphabet),
                          parse_term(args.right, alphabet), alphabet)
    print(f"left: {print_ka_term(result.left, alphabet)}")
    print(f"right: {print_ka_term(result.right, alphabet)}")
    width = len(alphabet.tests)
    for index, product in result.atom_definitions:
        print(f"atom {Atom(index, width).text} = {print_term(product)}")
    return 0


def _cmd_hoare(args) -> int:
    alphabet = _alphabet(args)
    imp = HoareImplication(parse_term(args.r, alphabet),
                           parse_term(args.p, alphabet),
                           parse_term(args.q, alphabet))
    mode = STARRED_UNIVERSAL if args.starred_u else PLAIN_SUM
    lhs, rhs = hoare_reduce(imp, alphabet, mode)
    print(f"lhs: {print_term(lhs)}")
    print(f"rhs: {print_term(rhs)}")
    witness = equivalence_witness(lhs, rhs, alphabet)
    if witness is None:
        print("equivalent")
        return 0
    print(f"inequivalent: {_witness_text(witness, alphabet)}")
    return 1


def _cmd_while(args) -> int:
    alphabet = _alphabet(args)
    with open(args.file, encoding="utf-8") as fh:
        program = parse_while(fh.read(), alphabet)
    print(f"term: {print_term(encode_while(program))}")
    if not args.check_determinism:
        return 0
    report = check_while_determinism(program, alphabet)
    if report.deterministic:
        print("deterministic")
        return 0
    print("nondeterministic")
    for label in report.shared_start_atoms:
        print(f"shared start atom: {label}")
    for subset in report.multi_subsets:
        print("multi subset: " + " ".join(str(s) for s in subset))
    return 1


def _cmd_check_cert(args) -> int:
    alphabet = _alphabet(args)
    term = parse_term(args.term, alphabet)
    cert = load_certificate(args.certificate)
    claimed = load_automaton(args.automaton)
    verdict = check_certificate(cert, claimed, term)
    if verdict.accepted:
        print("Accept")
        return 0
    where = f" (step {verdict.failed_step})" if verdict.failed_step is not None else ""
    print(f"Reject: {verdict.reason}{where}")
    return 1


def _cmd_report(args) -> int:
    from .report import run_report
    for path in run_report(args.out_dir, seed=args.seed, samples=args.samples):
        print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="katc",
        description="Compile Kleene algebra with tests terms to guarded-string "
                    "automata, decide equivalence, and check certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--programs", default="",
                       help="comma-separated atomic programs, order-significant")
        p.add_argument("--tests", default="",
                       help="comma-separated atomic tests, order-significant")

    p = sub.add_parser("compile", help="compile a term to an automaton")
    common(p)
    p.add_argument("term")
    p.add_argument("--out", help="write the automaton to this file")
    p.add_argument("--certificate", help="write the construction certificate")
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("equiv", help="decide equivalence of two terms")
    common(p)
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("denote", help="list denoted guarded strings up to a length")
    common(p)
    p.add_argument("term")
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(func=_cmd_denote)

    p = sub.add_parser("nnf", help="push complements down to tests")
    common(p)
    p.add_argument("term")
    p.set_defaults(func=_cmd_nnf)

    p = sub.add_parser("reduce-ka", help="encode two terms as plain Kleene algebra")
    common(p)
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=_cmd_reduce_ka)

    p = sub.add_parser("hoare", help="reduce r = 0 -> p = q to an equation and decide it")
    common(p)
    p.add_argument("--r", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--starred-u", action="store_true",
                   help="use the starred sum of programs as the universal term")
    p.set_defaults(func=_cmd_hoare)

    p = sub.add_parser("while", help="encode a while program as a term")
    common(p)
    p.add_argument("--file", required=True)
    p.add_argument("--check-determinism", action="store_true")
    p.set_defaults(func=_cmd_while)

    p = sub.add_parser("check-cert", help="replay a certificate against an automaton")
    common(p)
    p.add_argument("term")
    p.add_argument("--certificate", required=True)
    p.add_argument("--automaton", required=True)
    p.set_defaults(func=_cmd_check_cert)

    p = sub.add_parser("report", help="write measurement tables and figures")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AlphabetCapError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (KatError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
