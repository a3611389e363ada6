"""Command-line interface: ``idealsync <command> [<action>] ...``.

Exit status is 0 whenever the analysis completed (verdicts are in the
output), 2 for parse or usage errors, 3 for violated preconditions and 4
when a search budget runs out.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .automata import (
    Acceptor,
    image,
    is_isomorphic,
    load_automaton,
    serialize_automaton,
    to_dot,
)
from .aw import build_aw, verify_aw
from .constants import (
    complement_contains_right_ideal,
    find_constant,
    find_sink,
    has_constant,
    is_constant,
    prop5_check,
    prop6_check,
    z_nonempty,
)
from .decomp import (
    Decomposition,
    automaton_of_decomposition,
    cerny_probes,
    extract_decomposition,
    lift,
    verify_decomposition,
    verify_lift,
)
from .errors import AutFormatError, BudgetExceeded, PreconditionError
from .languages import Language, ideal_kind
from .synchro import (
    DEFAULT_ENUM_BUDGET,
    DEFAULT_SUBSET_CAP,
    cerny_automaton,
    is_finitely_generated,
    rc_search,
    scsa_corpus,
    shortest_reset,
    syn_language,
)
from .syntactic import DEFAULT_SEMIGROUP_CAP, syntactic_complexity

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_BUDGET = 0, 2, 3, 4


class UsageError(Exception):
    pass


# -- argument helpers --------------------------------------------------------


def _alphabet(args, word=None):
    if args.alphabet:
        tokens = [t.strip() for t in args.alphabet.split(",")]
        if any(not t for t in tokens):
            raise UsageError(f"bad alphabet {args.alphabet!r}")
        return tuple(tokens)
    if word and not set(word) <= {"a", "b"}:
        return tuple(sorted(set(word)))
    return ("a", "b")


def _word(args, text):
    return tuple(text.split()) if args.tokens else tuple(text)


def _show_word(word):
    if word is None:
        return None
    return " ".join(word) if any(len(s) > 1 for s in word) else "".join(word)


def _load(path):
    try:
        return load_automaton(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_acceptor(path):
    A = _load(path)
    if not isinstance(A, Acceptor):
        raise PreconditionError(f"{path}: an acceptor ('initial:' line) is required")
    return A


def _automaton_json(A) -> dict:
    d = {
        "kind": "acceptor" if isinstance(A, Acceptor) else "semiautomaton",
        "alphabet": list(A.base.alphabet),
        "states": A.base.n_states,
        "table": [list(row) for row in A.base.delta],
    }
    if isinstance(A, Acceptor):
        d["initial"] = A.initial
        d["finals"] = sorted(A.finals)
    d["aut"] = serialize_automaton(A)
    return d


def _emit_automaton(args, A, extra: dict | None = None):
    if args.format == "aut":
        return serialize_automaton(A)
    if args.format == "dot":
        return to_dot(A)
    d = _automaton_json(A)
    if extra:
        d.update(extra)
    return d


def _json_only(args):
    if args.format != "json":
        raise UsageError(f"{args.command} only supports --format json")


# -- commands ----------------------------------------------------------------


def cmd_parse(args):
    return _emit_automaton(args, _load(args.file))


def cmd_syn(args):
    A = _load(args.file)
    if args.action == "language":
        return _emit_automaton(args, syn_language(A, args.subset_cap).acceptor)
    _json_only(args)
    report = shortest_reset(A, args.subset_cap)
    out = {
        "states": A.base.n_states,
        "synchronizing": report.synchronizing,
        "threshold": report.threshold,
        "shortest": _show_word(report.shortest),
    }
    if args.action == "check":
        out["cerny_bound"] = report.synchronizing and report.threshold <= (A.base.n_states - 1) ** 2
        out["finitely_generated"] = report.synchronizing and is_finitely_generated(A, args.subset_cap)
    return out


def cmd_aw(args):
    w = _word(args, args.word)
    alphabet = _alphabet(args, w)
    if args.action == "build":
        return _emit_automaton(args, build_aw(w, alphabet), {"w": _show_word(w)})
    _json_only(args)
    report = verify_aw(w, alphabet)
    return {
        "w": _show_word(w),
        "ok": report.ok,
        "checks": report.checks,
        "threshold": report.threshold,
        "longest_minimal_reset": report.longest_minimal_reset,
    }


def cmd_syntactic(args):
    _json_only(args)
    w = _word(args, args.word)
    return syntactic_complexity(w, _alphabet(args, w), args.semigroup_cap).as_dict()


def cmd_constants(args):
    _json_only(args)
    A = _load_acceptor(args.file)
    witness = find_constant(A, args.subset_cap)
    p5, p6 = prop5_check(A, args.subset_cap), prop6_check(A, args.subset_cap)
    out = {
        "has_constant": has_constant(A),
        "witness": _show_word(witness),
        "sink": find_sink(A),
        "prop5": {"criterion": p5.criterion, "direct": p5.direct},
        "prop6": {"criterion": p6.criterion, "direct": p6.direct},
        "z_nonempty": z_nonempty(A, args.subset_cap),
    }
    if args.action == "witness":
        out["verified"] = witness is not None and is_constant(A, witness)
        out["image"] = None if witness is None else sorted(image(A, A.states, witness))
        out["complement_contains_right_ideal"] = complement_contains_right_ideal(A)
    return out


def cmd_ideal(args):
    _json_only(args)
    if args.action == "kind":
        kind = ideal_kind(Language.of(_load_acceptor(args.target)))
        return {"left": kind.left, "right": kind.right, "two_sided": kind.two_sided}
    w = _word(args, args.target)
    report = rc_search(w, _alphabet(args, w), args.max_states, args.budget, args.max_witnesses)
    d = report.as_dict()
    if args.no_timing:
        d["elapsed_ms"] = None
    return d


def _parts_json(D: Decomposition):
    return [{"index": i, "aut": serialize_automaton(L.acceptor)} for i, L in D.parts.items()]


def cmd_decomp(args):
    _json_only(args)
    if args.action == "verify" and len(args.files) > 1:
        parts = {}
        for i, path in enumerate(args.files):
            parts[i] = Language.of(_load_acceptor(path))
        D = Decomposition(parts)
    else:
        if len(args.files) != 1:
            raise UsageError(f"decomp {args.action} takes one automaton file")
        D = extract_decomposition(_load(args.files[0]), args.subset_cap)
    if args.action == "extract":
        return {"parts": _parts_json(D)}
    report = verify_decomposition(D)
    out = {"ok": report.ok, "checks": report.checks, "problems": report.problems}
    if args.action == "roundtrip":
        A = _load(args.files[0])
        C = automaton_of_decomposition(D)
        out["isomorphic"] = is_isomorphic(C, A.base)
        out["aut"] = serialize_automaton(C)
    return out


def cmd_lift(args):
    _json_only(args)
    A = _load(args.file)
    word = _word(args, args.word) if args.word is not None else None
    r = lift(A, word, args.subset_cap)
    report = verify_lift(A, r, args.subset_cap)
    return {
        "w": _show_word(r.w),
        "states": r.B.n_states,
        "phi": list(r.phi),
        "labels": [list(lab) for lab in r.class_labels],
        "aut": serialize_automaton(r.B),
        "ok": report.ok,
        "checks": report.checks,
        "problems": report.problems,
        "norms": list(report.norms),
    }


def cmd_probe(args):
    _json_only(args)
    started = time.perf_counter()
    if args.files:
        corpus = [_load(p) for p in args.files]
    else:
        corpus = [cerny_automaton(n) for n in (3, 4, 5)]
        corpus += scsa_corpus(args.seed, args.count, args.max_states)
    report = cerny_probes(corpus, args.subset_cap, args.budget)
    d = {
        "query": "probe-cerny",
        "parameters": {
            "seed": args.seed,
            "count": args.count,
            "max_states": args.max_states,
            "files": args.files,
        },
        **report.as_dict(),
    }
    d["elapsed_ms"] = None if args.no_timing else round((time.perf_counter() - started) * 1000, 3)
    return d


def cmd_fixtures(args):
    if args.n < 2:
        raise UsageError("n must be at least 2")
    return _emit_automaton(args, cerny_automaton(args.n, _alphabet(args)), {"n": args.n})


# -- parser ------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("aut", "dot", "json"), default="json")
    p.add_argument("--alphabet", help="comma-separated letters, e.g. a,b")
    p.add_argument("--tokens", action="store_true", help="words are space-separated tokens")
    p.add_argument("--subset-cap", type=int, default=DEFAULT_SUBSET_CAP)
    p.add_argument("--semigroup-cap", type=int, default=DEFAULT_SEMIGROUP_CAP)
    p.add_argument("--budget", type=int, default=DEFAULT_ENUM_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-timing", action="store_true", help="report elapsed_ms as null")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="idealsync", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse and re-emit an .aut file")
    p.add_argument("file")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("syn", parents=[common], help="reset words")
    p.add_argument("action", choices=("check", "shortest", "language"))
    p.add_argument("file")
    p.set_defaults(func=cmd_syn)

    p = sub.add_parser("aw", parents=[common], help="prefix automaton of a word")
    p.add_argument("action", choices=("build", "verify"))
    p.add_argument("word")
    p.set_defaults(func=cmd_aw)

    p = sub.add_parser("syntactic", parents=[common], help="syntactic complexity of w^-1 Sigma* w")
    p.add_argument("word")
    p.set_defaults(func=cmd_syntactic)

    p = sub.add_parser("constants", parents=[common], help="constants of an acceptor's language")
    p.add_argument("action", choices=("check", "witness"))
    p.add_argument("file")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("ideal", parents=[common], help="ideal kind, reset-complexity search")
    p.add_argument("action", choices=("kind", "rc-search"))
    p.add_argument("target", help="acceptor file (kind) or word (rc-search)")
    p.add_argument("--max-states", type=int, default=3)
    p.add_argument("--max-witnesses", type=int, default=None)
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("decomp", parents=[common], help="reset left regular decompositions")
    p.add_argument("action", choices=("extract", "verify", "roundtrip"))
    p.add_argument("files", nargs="+", help="an automaton, or (verify) one acceptor per part")
    p.set_defaults(func=cmd_decomp)

    p = sub.add_parser("lift", parents=[common], help="lift onto the prefix-automaton class")
    p.add_argument("file")
    p.add_argument("--word", help="reset word to lift with (default: shortest)")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("probe", parents=[common], help="conjecture probes")
    p.add_argument("action", choices=("cerny",))
    p.add_argument("files", nargs="*")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--max-states", type=int, default=5)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("fixtures", parents=[common], help="emit fixture automata")
    p.add_argument("family", choices=("cerny",))
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_fixtures)
    return parser


def _write(out, stream):
    if isinstance(out, str):
        stream.write(out if out.endswith("\n") else out + "\n")
    else:
        stream.write(json.dumps(out, indent=2) + "\n")


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
    except PreconditionError as exc:
        stderr.write(f"idealsync: precondition: {exc}\n")
        return EXIT_PRECONDITION
    except (AutFormatError, UsageError, ValueError) as exc:
        stderr.write(f"idealsync: error: {exc}\n")
        return EXIT_USAGE
    except BudgetExceeded as exc:
        stderr.write(f"idealsync: budget: {exc}\n")
        return EXIT_BUDGET
    _write(out, stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
