"""Command-line front end.

    qgames transform|emw|classify|solve [--input FILE] [--scheme mw|refined|emw]
                     [--format json|table] [--tolerance T] [--max-support K]
    qgames reproduce [ID ...]

Exit status: 0 success, 1 usage or parse error, 2 computation error,
3 reproduce mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Any, Sequence

import numpy as np

from .classify import classify_emw, is_separable_pure
from .document import FORMATS, SCHEMES, ProblemDocument, SchemaError, parse_problem
from .emw import emw_bimatrix, emw_config
from .errors import QGamesError
from .game import BimatrixGame, quotient_game
from .linalg import basis_state, tolerance
from .mw import mw_output_game
from .nash import Equilibrium, all_equilibria, best_responses
from .refined import UnitaryParams, classical_recovery_params, refined_output_game

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_MISMATCH = 0, 1, 2, 3
COMMANDS = ("transform", "emw", "classify", "solve", "reproduce")
FIXTURES = ("diagram7", "bos-00-11", "bos-01-10", "riskgame")
MATCH_TOLERANCE = 1e-9


class UsageError(Exception):
    pass


def game_to_json(g: BimatrixGame) -> dict[str, Any]:
    return {"row_labels": list(g.row_labels), "col_labels": list(g.col_labels), "payoffs": g.payoffs.tolist()}


def equilibrium_to_json(g: BimatrixGame, eq: Equilibrium) -> dict[str, Any]:
    return {
        "kind": eq.kind,
        "s1": eq.s1.tolist(),
        "s2": eq.s2.tolist(),
        "support1": [g.row_labels[k] for k in eq.support1],
        "support2": [g.col_labels[k] for k in eq.support2],
        "payoff": list(eq.payoff),
    }


def _states(doc: ProblemDocument) -> tuple[np.ndarray, ...]:
    return doc.states or (basis_state(0, doc.game.n_rows * doc.game.n_cols),)


def _single_state(doc: ProblemDocument, scheme: str) -> np.ndarray:
    states = _states(doc)
    if len(states) != 1:
        raise QGamesError(f"the {scheme} scheme takes exactly one joint state, got {len(states)}")
    return states[0]


def _refined_params(doc: ProblemDocument) -> tuple[UnitaryParams, UnitaryParams]:
    if doc.refined is not None:
        return doc.refined
    return classical_recovery_params(_single_state(doc, "refined"))


def scheme_game(doc: ProblemDocument, scheme: str) -> BimatrixGame:
    """The output game of ``doc`` under ``scheme``."""
    if scheme == "mw":
        return mw_output_game(doc.game, _single_state(doc, scheme))
    if scheme == "refined":
        params1, params2 = _refined_params(doc)
        return refined_output_game(doc.game, _single_state(doc, scheme), params1, params2)
    if scheme == "emw":
        return emw_bimatrix(emw_config(doc.game, *_states(doc)))
    raise UsageError(f"unknown scheme {scheme!r}")


def run(command: str, doc: ProblemDocument, scheme: str | None = None, max_support: int | None = None) -> dict[str, Any]:
    scheme = scheme or doc.scheme
    max_support = max_support or doc.max_support
    report: dict[str, Any] = {"command": command, "scheme": scheme}
    if command == "transform":
        report["game"] = game_to_json(scheme_game(doc, scheme))
        if scheme == "refined":
            report["params"] = [{"theta": p.theta, "phi": p.phi} for p in _refined_params(doc)]
    elif command == "emw":
        report["scheme"] = "emw"
        g = scheme_game(doc, "emw")
        report["game"] = game_to_json(g)
        report["quotient"] = game_to_json(quotient_game(g))
    elif command == "classify":
        report["scheme"] = "emw"
        cfg = emw_config(doc.game, *_states(doc))
        result = classify_emw(cfg)
        n, m = doc.game.shape
        report["classification"] = result.kind
        report["profiles_tested"] = result.profiles_tested
        report["states_separable"] = [is_separable_pure(s, n, m) for s in _states(doc)]
        report["witness"] = None if result.witness is None else {
            "profile": result.witness.name,
            "t1": list(result.witness.t1),
            "t2": list(result.witness.t2),
            "equivalent_state": [[z.real, z.imag] for z in result.witness.equivalent_state],
        }
        report["violations"] = [w.name for w in result.violations]
    elif command == "solve":
        g = scheme_game(doc, scheme)
        skipped: list = []
        if max_support is not None:
            max_support = min(max_support, *g.shape)
        eqs = all_equilibria(g, max_support, skipped=skipped)
        report["game"] = game_to_json(g)
        report["equilibria"] = [equilibrium_to_json(g, eq) for eq in eqs]
        report["skipped_supports"] = [[list(r), list(c)] for r, c in skipped]
    else:
        raise UsageError(f"unknown command {command!r}")
    return report


def load_fixture(name: str) -> ProblemDocument:
    if name not in FIXTURES:
        raise UsageError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    text = resources.files("qgames").joinpath("fixtures", f"{name}.json").read_bytes()
    return parse_problem(text)


def _close(a, b) -> bool:
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= MATCH_TOLERANCE))


def check_expected(doc: ProblemDocument, expected: dict[str, Any]) -> tuple[dict[str, Any], list[str]]:
    """Run the computations named in ``expected`` and list every disagreement."""
    mismatches: list[str] = []
    game = scheme_game(doc, doc.scheme)
    report: dict[str, Any] = {"scheme": doc.scheme, "game": game_to_json(game)}
    if "game" in expected and not _close(game.payoffs, expected["game"]):
        mismatches.append("output game differs from the expected table")

    if "quotient" in expected and not _close(quotient_game(game).payoffs, expected["quotient"]):
        mismatches.append("quotient game differs from the expected table")

    rows, cols = list(game.row_labels), list(game.col_labels)
    if any(k in expected for k in ("pure_include", "pure_exclude", "mixed_include")):
        eqs = all_equilibria(game)
        report["equilibria"] = [equilibrium_to_json(game, eq) for eq in eqs]
        pure = {(rows[eq.support1[0]], cols[eq.support2[0]]): eq for eq in eqs if eq.kind == "pure"}
        for item in expected.get("pure_include", []):
            key = (item[0], item[1])
            if key not in pure:
                mismatches.append(f"missing pure equilibrium {key}")
            elif len(item) > 2 and not _close(pure[key].payoff, item[2]):
                mismatches.append(f"pure equilibrium {key} pays {tuple(pure[key].payoff)}, expected {tuple(item[2])}")
        for item in expected.get("pure_exclude", []):
            if (item[0], item[1]) in pure:
                mismatches.append(f"unexpected pure equilibrium {(item[0], item[1])}")
        for item in expected.get("mixed_include", []):
            if not any(_close(eq.s1, item["s1"]) and _close(eq.s2, item["s2"]) for eq in eqs):
                mismatches.append(f"missing mixed equilibrium {item}")

    br_results = []
    for item in expected.get("best_responses", []):
        labels = rows if item["player"] == 1 else cols
        got = [labels[k] for k in best_responses(game, item["player"], item["opponent"])]
        br_results.append({**item, "got": got})
        if sorted(got) != sorted(item["expected"]):
            mismatches.append(f"player {item['player']} best responses {got}, expected {item['expected']}")
    if br_results:
        report["best_responses"] = br_results

    if "classification" in expected:
        result = classify_emw(emw_config(doc.game, *_states(doc)))
        report["classification"] = result.kind
        if result.kind != expected["classification"]:
            mismatches.append(f"classified {result.kind}, expected {expected['classification']}")
    return report, mismatches


def reproduce(name: str) -> tuple[dict[str, Any], list[str]]:
    doc = load_fixture(name)
    report, mismatches = check_expected(doc, doc.expected or {})
    report = {"command": "reproduce", "fixture": name, **report, "mismatches": mismatches, "ok": not mismatches}
    return report, mismatches


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def format_game(g: BimatrixGame) -> str:
    cells = [[f"({_fmt(a)}, {_fmt(b)})" for a, b in row] for row in g.payoffs]
    width = max(len(c) for row in cells for c in row)
    width = max(width, *(len(s) for s in g.col_labels))
    lead = max(len(s) for s in g.row_labels)
    lines = [" " * lead + "  " + "  ".join(s.rjust(width) for s in g.col_labels)]
    for label, row in zip(g.row_labels, cells):
        lines.append(label.ljust(lead) + "  " + "  ".join(c.rjust(width) for c in row))
    return "\n".join(lines)


def _game_from_json(obj) -> BimatrixGame:
    return BimatrixGame(np.array(obj["payoffs"]), tuple(obj["row_labels"]), tuple(obj["col_labels"]))


def format_table(report: dict[str, Any]) -> str:
    """Human-readable rendering; numbers rounded to 6 significant digits."""
    out = [f"{report['command']} (scheme: {report.get('scheme', '-')})"]
    if "fixture" in report:
        out[0] = f"reproduce {report['fixture']} (scheme: {report['scheme']})"
    if "game" in report:
        out += ["", format_game(_game_from_json(report["game"]))]
    if "quotient" in report:
        out += ["", "quotient:", format_game(_game_from_json(report["quotient"]))]
    if "params" in report:
        out += ["", "angles: " + "; ".join(f"player {k + 1}: theta={_fmt(p['theta'])} phi={_fmt(p['phi'])}" for k, p in enumerate(report["params"]))]
    if "equilibria" in report:
        out += ["", "equilibria:"]
        for eq in report["equilibria"]:
            s1 = ", ".join(_fmt(x) for x in eq["s1"])
            s2 = ", ".join(_fmt(x) for x in eq["s2"])
            pay = ", ".join(_fmt(x) for x in eq["payoff"])
            out.append(f"  {eq['kind']:5s} [{s1}] x [{s2}] -> ({pay})")
    if report.get("skipped_supports"):
        out.append(f"  ({len(report['skipped_supports'])} degenerate support pairs skipped)")
    for item in report.get("best_responses", []):
        out.append(f"best responses of player {item['player']} to {item['opponent']}: {', '.join(item['got'])}")
    if "classification" in report:
        out += ["", f"classification: {report['classification']}"]
        if report.get("witness"):
            w = report["witness"]
            out.append(f"witness: {w['profile']}  t1={[_fmt(x) for x in w['t1']]}  t2={[_fmt(x) for x in w['t2']]}")
    if "mismatches" in report:
        out.append("")
        out += [f"MISMATCH: {m}" for m in report["mismatches"]] or ["all expectations met"]
    return "\n".join(out)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qgames", description="Quantized bimatrix games: MW and extended MW schemes.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("fixtures", nargs="*", help="fixture ids for 'reproduce' (default: all)")
    parser.add_argument("--input", "-i", default="-", help="problem document (JSON); '-' reads stdin")
    parser.add_argument("--scheme", choices=SCHEMES)
    parser.add_argument("--format", choices=FORMATS)
    parser.add_argument("--tolerance", type=float)
    parser.add_argument("--max-support", type=int)
    return parser


def _emit(report: dict[str, Any], fmt: str) -> None:
    if fmt == "table":
        print(format_table(report))
    else:
        print(json.dumps(report, indent=2))


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.tolerance is not None and not args.tolerance > 0:
        print("qgames: error: --tolerance must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.command != "reproduce" and args.fixtures:
        print(f"qgames: error: unexpected arguments {args.fixtures}", file=sys.stderr)
        return EXIT_USAGE

    if args.command == "reproduce":
        status = EXIT_OK
        for name in args.fixtures or FIXTURES:
            try:
                report, mismatches = reproduce(name)
            except UsageError as exc:
                print(f"qgames: error: {exc}", file=sys.stderr)
                return EXIT_USAGE
            except QGamesError as exc:
                print(f"qgames: error: {exc}", file=sys.stderr)
                return EXIT_COMPUTE
            _emit(report, args.format or "json")
            if mismatches:
                status = EXIT_MISMATCH
        return status

    try:
        if args.input == "-":
            text = sys.stdin.buffer.read()
        else:
            with open(args.input, "rb") as fh:
                text = fh.read()
        doc = parse_problem(text)
    except OSError as exc:
        print(f"qgames: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SchemaError as exc:
        print(f"qgames: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    tol = args.tolerance or doc.tolerance
    try:
        if tol is not None:
            with tolerance(tol):
                report = run(args.command, doc, args.scheme, args.max_support)
        else:
            report = run(args.command, doc, args.scheme, args.max_support)
    except UsageError as exc:
        print(f"qgames: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QGamesError, ValueError) as exc:
        print(f"qgames: error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    _emit(report, args.format or doc.format)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
