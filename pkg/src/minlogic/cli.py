"""Command-line interface: ``minlogic COMMAND ...``.

Exit status is 0 on success, 1 on an invalid proof or any input error, and 2
when a search was cut off by its limits.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis, corpus
from .cutelim import CutElimError, eliminate_cuts
from .formula import ParseError, PreconditionViolation, print_formula
from .kernel import PROFILES, check_proof, get_profile, node_paths, parse_sequent
from .proofio import format_proof_file, parse_proof_file, proof_to_latex

EXIT_OK, EXIT_FAIL, EXIT_LIMIT = 0, 1, 2


class _Fail(Exception):
    pass


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _Fail(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_proof_file(text)
    except ParseError as exc:
        raise _Fail(f"{path}: parse error {exc}") from None


def _sequent(text: str):
    try:
        return parse_sequent(text)
    except ParseError as exc:
        raise _Fail(f"cannot parse sequent {text!r}: {exc}") from None


def cmd_check(args, out, err) -> int:
    pf = _load(args.file)
    hyps = pf.hypotheses + tuple(_sequent(s) for s in args.assume)
    report = check_proof(pf.proof, get_profile(args.profile), hyps)
    print(f"{report.verdict} in {args.profile}: {pf.proof.conclusion}", file=out)
    print(str(report), file=out)
    if args.latex:
        print(proof_to_latex(pf.proof), file=out, end="")
    return EXIT_OK if report.valid else EXIT_FAIL


def cmd_elim(args, out, err) -> int:
    pf = _load(args.file)
    if pf.hypotheses:
        raise _Fail("cut elimination needs a closed proof; the file declares assumptions")
    try:
        result, trace = eliminate_cuts(pf.proof, args.profile)
    except (CutElimError, PreconditionViolation) as exc:
        raise _Fail(str(exc)) from None
    text = format_proof_file(result, comment=f"cut-free proof of {result.conclusion}")
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {args.output}: height={result.height} degree={result.degree} "
              f"cuts={result.cuts} steps={len(trace)}", file=out)
    else:
        print(text, file=out, end="")
    if args.trace:
        print(trace.to_text(), file=err, end="")
    return EXIT_OK


def cmd_analyze(args, out, err) -> int:
    s = _sequent(args.sequent)
    cert = analysis.lemma4_unprovability(s)
    if cert is not None:
        print(cert.to_text(), file=out, end="")
        return EXIT_OK
    print("no verdict", file=out)
    if len(s.succedent) == 1:
        try:
            hit = analysis.positivity_witness(s.antecedent, s.succedent[0])
        except PreconditionViolation:
            hit = None
        if hit is not None:
            f, path = hit
            print(f"{analysis.POSITIVITY}: {print_formula(f)} at " + (".".join(map(str, path)) or "root"),
                  file=out)
    return EXIT_OK


def cmd_search(args, out, err) -> int:
    s = _sequent(args.sequent)
    try:
        cert = analysis.backward_search(s, args.profile, args.max_copies, args.max_depth)
    except PreconditionViolation as exc:
        raise _Fail(str(exc)) from None
    print(cert.to_text(), file=out, end="")
    if cert.proof is not None and args.show_proof:
        print(format_proof_file(cert.proof), file=out, end="")
    return EXIT_LIMIT if cert.kind == analysis.LIMIT else EXIT_OK


def cmd_corpus(args, out, err) -> int:
    rows = corpus.run_corpus()
    print(f"{'entry':8} {'profile':10} {'expected':9} {'actual':9} result", file=out)
    failures = 0
    for entry, exp, report, ok in rows:
        expected = "Valid" if exp.valid else "Invalid"
        actual = report.verdict
        if not report.valid:
            actual += f" at {'.'.join(map(str, report.path)) or 'root'} [{report.rule}]"
        print(f"{entry.id:8} {exp.profile:10} {expected:9} {actual:9} {'pass' if ok else 'FAIL'}", file=out)
        failures += not ok
    print(f"{len(rows) - failures}/{len(rows)} expectations hold", file=out)
    if args.export:
        folder = Path(args.export)
        folder.mkdir(parents=True, exist_ok=True)
        for entry in corpus.load_corpus():
            (folder / f"{entry.id}.proof").write_text(
                format_proof_file(entry.proof, entry.hypotheses, entry.description))
    return EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_stats(args, out, err) -> int:
    pf = _load(args.file)
    p = pf.proof
    print(f"end-sequent: {p.conclusion}", file=out)
    print(f"height: {p.height}", file=out)
    print(f"degree: {p.degree}", file=out)
    print(f"cuts: {p.cuts}", file=out)
    print(f"nodes: {sum(1 for _ in node_paths(p))}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minlogic", description="Sequent-calculus toolkit for "
                                     "minimal logic: check proofs, eliminate cuts, search, analyze.")
    sub = parser.add_subparsers(dest="command", required=True)
    profiles = sorted(PROFILES)

    p = sub.add_parser("check", help="check a proof file against a profile")
    p.add_argument("file")
    p.add_argument("--profile", default="ML", choices=profiles)
    p.add_argument("--assume", action="append", default=[], metavar="SEQ",
                   help="declare an open premise (repeatable)")
    p.add_argument("--latex", action="store_true", help="also print bussproofs source")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("elim", help="eliminate cuts from an ML or MLplus proof")
    p.add_argument("file")
    p.add_argument("--profile", default="MLplus", choices=["ML", "MLplus"])
    p.add_argument("--trace", action="store_true", help="write the reduction trace to stderr")
    p.add_argument("--output", metavar="PATH", help="write the proof here instead of stdout")
    p.set_defaults(func=cmd_elim)

    p = sub.add_parser("analyze", help="apply the positivity criterion to a sequent")
    p.add_argument("sequent")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("search", help="bounded cut-free backward proof search")
    p.add_argument("sequent")
    p.add_argument("--profile", default="ML", choices=[n for n in profiles if n != "LK"])
    p.add_argument("--max-depth", type=int, default=40)
    p.add_argument("--max-copies", type=int, default=2)
    p.add_argument("--show-proof", action="store_true", help="print the proof found")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("corpus", help="check every corpus entry against its expectations")
    p.add_argument("--export", metavar="DIR", help="also write each entry as a proof file")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("stats", help="height, degree and cut count of a proof file")
    p.add_argument("file")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors must not be mistaken for EXIT_LIMIT
        return EXIT_OK if not exc.code else EXIT_FAIL
    try:
        return args.func(args, out, err)
    except (_Fail, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
