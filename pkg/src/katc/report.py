"""Measurement tables and figures.

Runs small corpora through the compiler and writes CSV tables next to PNG
figures: automaton states against the 4n+2 bound, the tree size of the
plain-KA encoding, certificate sizes, and the Hoare reduction comparison.
Output is deterministic for a fixed seed; figures carry no timestamps.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from random import Random

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .certificate import certificate_to_text
from .compiler import compile_term
from .corpus import desk_alphabet, exhaustive_terms, hoare_instances, random_term
from .kamatrix import encode_automaton, ka_term_size
from .programs import HoareImplication, hoare_oracle_comparison
from .terms import Alphabet, parse_term, print_term, term_size


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _save(fig, path: Path) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata={"Date": None})
    plt.close(fig)


def run_report(out_dir, seed: int = 0, samples: int = 200,
               exhaustive_size: int = 6) -> list[str]:
    """Write all tables and figures into out_dir, returning the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    small = Alphabet(("p",), ("b",))
    desk = desk_alphabet()
    rng = Random(seed)
    written: list[Path] = []

    # states against the linear bound
    size_rows = []
    exhaustive_points: list[tuple[int, int]] = []
    random_points: list[tuple[int, int]] = []
    for t in exhaustive_terms(small, exhaustive_size):
        states = compile_term(t, small).automaton.n
        n = term_size(t)
        size_rows.append((print_term(t), n, states, 4 * n + 2,
                          f"{states / (4 * n + 2):.6f}"))
        exhaustive_points.append((n, states))
    for _ in range(samples):
        t = random_term(rng, rng.randint(8, 12), desk)
        states = compile_term(t, desk).automaton.n
        n = term_size(t)
        size_rows.append((print_term(t), n, states, 4 * n + 2,
                          f"{states / (4 * n + 2):.6f}"))
        random_points.append((n, states))
    path = out / "sizes.csv"
    _write_csv(path, ["term", "term_size", "states", "bound", "ratio"], size_rows)
    written.append(path)

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if exhaustive_points:
        ax.scatter(*zip(*exhaustive_points), s=14, alpha=0.4,
                   label="exhaustive corpus")
    if random_points:
        ax.scatter(*zip(*random_points), s=14, alpha=0.4, marker="x",
                   label="random corpus")
    top = max(n for n, _ in exhaustive_points + random_points)
    xs = list(range(1, top + 1))
    ax.plot(xs, [4 * n + 2 for n in xs], "k--", label="4n + 2")
    ax.set_xlabel("term size (nodes)")
    ax.set_ylabel("automaton states")
    ax.legend()
    ax.grid(True, alpha=0.3)
    path = out / "sizes.png"
    _save(fig, path)
    written.append(path)

    # tree size of the plain-KA encoding
    ka_size = min(5, exhaustive_size)
    ka_rows = []
    ka_points: list[tuple[int, float]] = []
    for t in exhaustive_terms(small, ka_size):
        aut = compile_term(t, small).automaton
        size = ka_term_size(encode_automaton(aut))
        ka_rows.append((print_term(t), aut.n, str(size)))
        if size > 0:
            ka_points.append((aut.n, math.log10(size)))
    path = out / "ka_growth.csv"
    _write_csv(path, ["term", "states", "ka_tree_size"], ka_rows)
    written.append(path)

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.scatter(*zip(*ka_points), s=14, alpha=0.4)
    ax.set_xlabel("automaton states")
    ax.set_ylabel("log10 KA term tree size")
    ax.grid(True, alpha=0.3)
    path = out / "ka_growth.png"
    _save(fig, path)
    written.append(path)

    # certificate sizes
    cert_size = min(5, exhaustive_size)
    cert_rows = []
    cert_points: list[tuple[int, int]] = []
    for t in exhaustive_terms(small, cert_size):
        result = compile_term(t, small)
        text = certificate_to_text(result.certificate)
        n = term_size(t)
        cert_rows.append((print_term(t), n, len(result.certificate.steps),
                          len(text.encode("utf-8"))))
        cert_points.append((n, len(text.encode("utf-8"))))
    path = out / "certs.csv"
    _write_csv(path, ["term", "term_size", "steps", "bytes"], cert_rows)
    written.append(path)

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.scatter(*zip(*cert_points), s=14, alpha=0.4)
    ax.set_xlabel("term size (nodes)")
    ax.set_ylabel("certificate bytes")
    ax.grid(True, alpha=0.3)
    path = out / "certs.png"
    _save(fig, path)
    written.append(path)

    # Hoare reduction against bounded ground truth
    instances = [HoareImplication(parse_term(r, desk), parse_term(p, desk),
                                  parse_term(q, desk))
                 for r, p, q in hoare_instances()]
    rows = hoare_oracle_comparison(instances, desk, max_len=7)
    path = out / "hoare.csv"
    _write_csv(path,
               ["r", "p", "q", "mode", "reduced_equal", "bounded_valid", "agrees"],
               [(r.r_text, r.p_text, r.q_text, r.mode, r.reduced_equal,
                 r.bounded_valid, r.agrees) for r in rows])
    written.append(path)

    modes = sorted({r.mode for r in rows})
    agree = [sum(1 for r in rows if r.mode == m and r.agrees) for m in modes]
    disagree = [sum(1 for r in rows if r.mode == m and not r.agrees) for m in modes]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    xs = range(len(modes))
    ax.bar([x - 0.2 for x in xs], agree, width=0.4, label="agree")
    ax.bar([x + 0.2 for x in xs], disagree, width=0.4, label="disagree")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(modes)
    ax.set_ylabel("instances")
    ax.legend()
    ax.grid(True, axis="y", alpha=0.3)
    path = out / "hoare_agreement.png"
    _save(fig, path)
    written.append(path)

    return [str(p) for p in written]
