"""Command-line front end.

Exit status: 0 on success, 1 when the input fails validation, 2 on usage
errors (bad arguments, unreadable files).
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Sequence

from . import io
from .cellular import cellular_chain_complex
from .errors import PosetMorseError
from .fixtures import check_fixture, load_fixtures
from .homology import complex_homology, face_poset, order_complex, poset_homology
from .matching import classify_poset, hasse_digraph, morse_check, morse_function
from .morse_complex import morse_complex, morse_inequalities
from .poset import beat_point_reduce, grading_info, poset_algebra
from .search import SearchPolicy, greedy_matching, verify_and_report

GRAMMAR = """\
posetmorse [--json | --pretty] [--seed S] COMMAND ...
  poset validate POSET
  poset homology POSET [--unreduced] [--emit-chain]
  poset algebra {join,cone,opposite,skeleton} POSET [POSET2] [--p N] [--apex NAME]
  poset reduce POSET
  complex order POSET
  complex faceposet COMPLEX          (alias: facepose)
  complex homology COMPLEX [--unreduced]
  morse check POSET MATCHING [--dot]
  morse function POSET MATCHING
  morse complex POSET MATCHING [--emit-chain] [--emit-morse]
  morse inequalities POSET MATCHING
  morse report POSET MATCHING
  morse search POSET [--restarts N] [--ordering lex|maxdeg] [--admissible-only] [--out FILE]
  fixtures run"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class _Out:
    def __init__(self, pretty: bool):
        self.pretty = pretty

    def json(self, obj) -> None:
        print(io.dumps(obj, pretty=self.pretty))

    def text(self, s: str) -> None:
        sys.stdout.write(s)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _poset(path):
    return io.parse_poset(_read(path))


def _matching(path):
    return io.parse_matching(_read(path))


def _poset_json(X) -> dict:
    return {"elements": list(X.elements), "covers": [list(c) for c in sorted(X.covers)]}


# each handler returns an exit status


def cmd_poset_validate(a, out: _Out) -> int:
    X = _poset(a.poset)
    info = grading_info(X)
    cls = classify_poset(X)
    out.json({
        "elements": len(X),
        "covers": len(X.covers),
        "height": info.poset_height,
        "heights": dict(info.height_of),
        "graded": info.is_graded,
        "homogeneous": info.is_homogeneous,
        "classification": cls.to_json(),
    })
    return 0


def cmd_poset_homology(a, out: _Out) -> int:
    X = _poset(a.poset)
    result = poset_homology(X, reduced=not a.unreduced).to_json()
    if a.emit_chain:
        result = {"homology": result, "chain_complex": cellular_chain_complex(X).to_json()}
    out.json(result)
    return 0


def cmd_poset_algebra(a, out: _Out) -> int:
    X = _poset(a.poset)
    if a.op == "join":
        if not a.other:
            raise UsageError("join needs two poset files")
        Y = poset_algebra("join", X, _poset(a.other))
    elif a.op == "cone":
        Y = poset_algebra("cone", X, a.apex)
    elif a.op == "skeleton":
        if a.p is None:
            raise UsageError("skeleton needs --p N")
        Y = poset_algebra("skeleton", X, p=a.p)
    else:
        Y = poset_algebra(a.op, X)
    if out.pretty:
        out.text(io.serialize_poset(Y))
    else:
        out.json(_poset_json(Y))
    return 0


def cmd_poset_reduce(a, out: _Out) -> int:
    X = _poset(a.poset)
    Y = beat_point_reduce(X)
    if out.pretty:
        out.text(io.serialize_poset(Y))
    else:
        out.json({"removed": sorted(set(X.elements) - set(Y.elements)), "core": _poset_json(Y)})
    return 0


def cmd_complex_order(a, out: _Out) -> int:
    K = order_complex(_poset(a.poset))
    if out.pretty:
        out.text(io.serialize_complex(K))
    else:
        out.json({"vertices": list(K.vertices), "facets": [list(f) for f in K.facets], "f_vector": list(K.f_vector())})
    return 0


def cmd_complex_faceposet(a, out: _Out) -> int:
    X = face_poset(io.parse_complex(_read(a.complex)))
    if out.pretty:
        out.text(io.serialize_poset(X))
    else:
        out.json(_poset_json(X))
    return 0


def cmd_complex_homology(a, out: _Out) -> int:
    out.json(complex_homology(io.parse_complex(_read(a.complex)), reduced=not a.unreduced).to_json())
    return 0


def cmd_morse_check(a, out: _Out) -> int:
    X, M = _poset(a.poset), _matching(a.matching)
    report = morse_check(X, M)
    if a.dot:
        succ = hasse_digraph(X, M)
        lines = ["digraph H {"] + [f'  "{u}" -> "{v}";' for u in X.elements for v in succ[u]] + ["}"]
        out.text("\n".join(lines) + "\n")
    else:
        out.json(report.to_json())
    return 0 if report.is_morse else 1


def cmd_morse_function(a, out: _Out) -> int:
    X, M = _poset(a.poset), _matching(a.matching)
    f = morse_function(X, M)
    out.json({"values": f.to_json(), "critical": list(f.critical(X)), "violations": f.violations(X)})
    return 0


def cmd_morse_complex(a, out: _Out) -> int:
    X, M = _poset(a.poset), _matching(a.matching)
    result = morse_complex(X, M)
    payload = {"critical_basis": result.to_json()["critical_basis"], "homology": result.homology.to_json()}
    if a.emit_morse:
        payload["morse"] = {**result.to_json(), "inequalities": morse_inequalities(X, M).to_json()}
    if a.emit_chain:
        payload["chain_complex"] = cellular_chain_complex(X).to_json()
    out.json(payload)
    return 0


def cmd_morse_inequalities(a, out: _Out) -> int:
    rep = morse_inequalities(_poset(a.poset), _matching(a.matching))
    out.json(rep.to_json())
    return 0 if rep.passed else 1


def cmd_morse_report(a, out: _Out) -> int:
    rep = verify_and_report(_poset(a.poset), _matching(a.matching))
    out.json(rep.to_json())
    return 0 if rep.passed else 1


def cmd_morse_search(a, out: _Out) -> int:
    X = _poset(a.poset)
    policy = SearchPolicy(
        ordering="max_degree_first" if a.ordering == "maxdeg" else "lexicographic",
        restarts=a.restarts,
        rng_seed=a.seed,
        admissibility_filter=a.admissible_only,
    )
    M = greedy_matching(X, policy)
    text = io.serialize_matching(M)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    report = morse_check(X, M)
    out.json({
        "policy": {"ordering": policy.ordering, "restarts": policy.restarts, "seed": policy.rng_seed,
                   "admissibility_filter": policy.admissibility_filter},
        "matching": text,
        "pairs": [list(p) for p in M],
        "report": report.to_json(),
    })
    return 0


def cmd_fixtures_run(a, out: _Out) -> int:
    results = {}
    for fx in load_fixtures(validate=False):
        problems = check_fixture(fx)
        if fx.matching is not None and not problems:
            rep = morse_inequalities(fx.poset, fx.matching)
            if not rep.passed:
                problems.append("Morse inequalities fail")
        results[fx.name] = {"ok": not problems, "problems": problems}
    passed = sum(r["ok"] for r in results.values())
    out.json({"fixtures": results, "passed": passed, "total": len(results)})
    return 0 if passed == len(results) else 1


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", default=argparse.SUPPRESS)
    fmt.add_argument("--pretty", dest="pretty", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    top = _Parser(prog="posetmorse", usage=GRAMMAR, parents=[common])
    groups = top.add_subparsers(dest="group", parser_class=_Parser)

    def leaf(sub, name, fn: Callable, aliases=()):
        p = sub.add_parser(name, parents=[common], aliases=list(aliases), prog=f"{sub._prog_prefix} {name}")
        p.set_defaults(fn=fn)
        return p

    poset = groups.add_parser("poset", prog="posetmorse poset").add_subparsers(dest="cmd", parser_class=_Parser, prog="posetmorse poset")
    p = leaf(poset, "validate", cmd_poset_validate)
    p.add_argument("poset")
    p = leaf(poset, "homology", cmd_poset_homology)
    p.add_argument("poset")
    p.add_argument("--unreduced", action="store_true")
    p.add_argument("--emit-chain", action="store_true")
    p = leaf(poset, "algebra", cmd_poset_algebra)
    p.add_argument("op", choices=["join", "cone", "opposite", "skeleton"])
    p.add_argument("poset")
    p.add_argument("other", nargs="?")
    p.add_argument("--p", type=int)
    p.add_argument("--apex")
    p = leaf(poset, "reduce", cmd_poset_reduce)
    p.add_argument("poset")

    cx = groups.add_parser("complex", prog="posetmorse complex").add_subparsers(dest="cmd", parser_class=_Parser, prog="posetmorse complex")
    p = leaf(cx, "order", cmd_complex_order)
    p.add_argument("poset")
    p = leaf(cx, "faceposet", cmd_complex_faceposet, aliases=["facepose"])
    p.add_argument("complex")
    p = leaf(cx, "homology", cmd_complex_homology)
    p.add_argument("complex")
    p.add_argument("--unreduced", action="store_true")

    morse = groups.add_parser("morse", prog="posetmorse morse").add_subparsers(dest="cmd", parser_class=_Parser, prog="posetmorse morse")
    for name, fn in [
        ("check", cmd_morse_check),
        ("function", cmd_morse_function),
        ("complex", cmd_morse_complex),
        ("inequalities", cmd_morse_inequalities),
        ("report", cmd_morse_report),
    ]:
        p = leaf(morse, name, fn)
        p.add_argument("poset")
        p.add_argument("matching")
        if name == "check":
            p.add_argument("--dot", action="store_true", help="print H_M(X) as a graph description")
        if name == "complex":
            p.add_argument("--emit-chain", action="store_true")
            p.add_argument("--emit-morse", action="store_true")
    p = leaf(morse, "search", cmd_morse_search)
    p.add_argument("poset")
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--ordering", choices=["lex", "maxdeg"], default="lex")
    p.add_argument("--admissible-only", action="store_true")
    p.add_argument("--out")

    fx = groups.add_parser("fixtures", prog="posetmorse fixtures").add_subparsers(dest="cmd", parser_class=_Parser, prog="posetmorse fixtures")
    leaf(fx, "run", cmd_fixtures_run)
    return top


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "fn"):
            raise UsageError("missing command")
        args.pretty = getattr(args, "pretty", False)
        args.seed = getattr(args, "seed", 0)
        return args.fn(args, _Out(args.pretty))
    except UsageError as exc:
        print(f"{exc}\nusage:\n{GRAMMAR}", file=sys.stderr)
        return 2
    except PosetMorseError as exc:
        print(io.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())
