"""Command-line interface.

Exit codes: 0 success with every asserted invariant holding, 1 invariant
violation, 2 input error.
"""
import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .af import (
    arg_members, complete_extensions, grounded, is_well_founded, maximal_sets,
    parse_af_text, to_af_text, to_dot,
)
from .config import (
    CHAIN_PRINT_LIMIT, CORE_VERTEX_MAX_PLAYERS, DEFAULT_CHAIN_LENGTH, ENUM_CAP, NODE_CAP,
)
from .core import balance_certificate, core_nonempty, core_vertices
from .correspondence import build_grid_af, check_convexity_not_well_founded, correspondence_report
from .errors import CoopAFError, InessentialGame, InvalidGame
from .game import (
    check_constant_sum, check_convex, check_essential, check_monotonic, check_nonnegative,
    check_superadditive, canonical_is_convex, is_normalized, normalize_01,
    to_canonical_three_player,
)
from .imputation import GridSpec, counterexample_point, half_game
from .io import coalition_key, digest, game_to_dict, loads_game, write_game
from .rational import format_rational, format_vector

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class InvariantViolation(Exception):
    pass


def _envelope(command: str, input_digest: str, body: dict) -> dict:
    return {"tool": "coopaf", "version": __version__, "command": command,
            "input_digest": input_digest, **body}


def _read_input(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidGame(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _kv_table(rows) -> str:
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows) + "\n"


def cmd_analyze(args) -> int:
    raw = _read_input(args.game)
    g = loads_game(raw.decode("utf-8"))
    props = {
        "nonnegative": check_nonnegative(g),
        "monotonic": check_monotonic(g),
        "superadditive": check_superadditive(g),
        "constant_sum": check_constant_sum(g),
        "essential": check_essential(g),
        "convex": check_convex(g),
        "normalized": is_normalized(g),
    }
    body = {"players": g.m, "properties": props, "normalization": None, "canonical": None}
    message = None
    try:
        norm = normalize_01(g)
    except InvalidGame as exc:
        message = f"normalization refused: {exc}"
        body["normalization_error"] = str(exc)
    else:
        body["normalization"] = {
            "K": format_rational(norm.K),
            "shift": [format_rational(c) for c in norm.shift],
            "game": game_to_dict(norm.game),
        }
        if args.normalized_out:
            write_game(norm.game, args.normalized_out)
        if g.m == 3:
            try:
                p = to_canonical_three_player(g)
            except InvalidGame as exc:
                body["canonical_error"] = str(exc)
            else:
                body["canonical"] = {"a": format_rational(p.a), "b": format_rational(p.b),
                                     "c": format_rational(p.c), "convex": canonical_is_convex(p)}
    if args.format == "json":
        _emit(json.dumps(_envelope("analyze", digest(raw), body), indent=2) + "\n", args.out)
    else:
        rows = [("players", g.m)] + [(k, v) for k, v in props.items()]
        if body["normalization"]:
            rows += [("K", body["normalization"]["K"]), ("shift", ",".join(body["normalization"]["shift"]))]
        if message:
            rows.append(("normalization", message))
        if body["canonical"]:
            c = body["canonical"]
            rows.append(("canonical (a,b,c)", f"({c['a']}, {c['b']}, {c['c']})"))
            rows.append(("canonical convex", c["convex"]))
        _emit(_kv_table(rows), args.out)
    return EXIT_OK


def cmd_core(args) -> int:
    raw = _read_input(args.game)
    g = loads_game(raw.decode("utf-8"))
    status = core_nonempty(g)
    cert = balance_certificate(g)
    agree = status.nonempty == cert.balanced
    vertices = None
    if g.m <= args.vertex_cap:
        vertices = core_vertices(g, max_players=args.vertex_cap)
        agree = agree and (len(vertices) > 0) == status.nonempty
    body = {
        "core_nonempty": status.nonempty,
        "core_witness": None if status.witness is None else [format_rational(x) for x in status.witness],
        "balanced": cert.balanced,
        "balanced_value": format_rational(cert.value),
        "balancing_weights": {coalition_key(S): format_rational(w) for S, w in sorted(cert.weights.items())},
        "supercore_nonempty": cert.balanced,
        "bondareva_shapley_agree": agree,
        "core_vertices": None if vertices is None else [[format_rational(x) for x in v] for v in vertices],
    }
    if args.format == "json":
        _emit(json.dumps(_envelope("core", digest(raw), body), indent=2) + "\n", args.out)
    else:
        rows = [
            ("core", "nonempty" if status.nonempty else "empty"),
            ("core witness", "-" if status.witness is None else format_vector(status.witness)),
            ("balanced", cert.balanced),
            ("max balanced value", body["balanced_value"]),
            ("supercore", "nonempty" if cert.balanced else "empty"),
            ("agreement", agree),
        ]
        if vertices is not None:
            rows.append(("core vertices", len(vertices)))
            rows += [("", format_vector(v)) for v in vertices]
        _emit(_kv_table(rows), args.out)
    return EXIT_OK if agree else EXIT_VIOLATION


def cmd_grid_af(args) -> int:
    raw = _read_input(args.game)
    g = loads_game(raw.decode("utf-8"))
    if args.normalize and not is_normalized(g):
        g = normalize_01(g).game
    gaf = build_grid_af(g, GridSpec(args.grid_denominator), node_cap=args.node_cap)
    report = correspondence_report(gaf, enum_cap=args.enum_cap)
    doc = _envelope("grid-af", digest(raw), {"report": report.to_dict()})
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "grid.af"), "w", encoding="utf-8") as fh:
        fh.write(to_af_text(gaf.framework))
    dot = to_dot(gaf.framework, labels=report.points, highlight=grounded(gaf.framework))
    with open(os.path.join(out_dir, "grid.dot"), "w", encoding="utf-8") as fh:
        fh.write(dot)
    with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    elif args.format == "dot":
        sys.stdout.write(dot)
    else:
        sys.stdout.write(report.to_text())
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_semantics(args) -> int:
    raw = _read_input(args.framework)
    fw = parse_af_text(raw.decode("utf-8"))
    G = grounded(fw)
    complete = complete_extensions(fw, cap=args.enum_cap)
    preferred = maximal_sets(complete)
    stable = [S for S in complete if _is_stable(S, fw)]
    fam = lambda F: [[a + 1 for a in arg_members(S)] for S in F]
    inter = fw.full
    for S in complete:
        inter &= S
    ok = G == inter and set(stable) <= set(preferred) <= set(complete) and len(preferred) > 0
    body = {
        "n_args": fw.n_args,
        "n_attacks": fw.n_attacks,
        "grounded": [a + 1 for a in arg_members(G)],
        "complete": fam(complete),
        "preferred": fam(preferred),
        "stable": fam(stable),
        "well_founded": is_well_founded(fw),
    }
    if args.format == "json":
        _emit(json.dumps(_envelope("semantics", digest(raw), body), indent=2) + "\n", args.out)
    elif args.format == "dot":
        _emit(to_dot(fw, highlight=G), args.out)
    else:
        show = lambda F: " ".join("{" + ",".join(map(str, S)) + "}" for S in F) or "(none)"
        rows = [
            ("arguments", fw.n_args), ("attacks", fw.n_attacks),
            ("grounded", show([body["grounded"]])),
            ("complete", show(body["complete"])),
            ("preferred", show(body["preferred"])),
            ("stable", show(body["stable"])),
            ("well-founded", body["well_founded"]),
        ]
        _emit(_kv_table(rows), args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def _is_stable(S, fw):
    plus = 0
    for a in arg_members(S):
        plus |= fw.targets[a]
    return fw.full & ~plus == S


def cmd_counterexample(args) -> int:
    n = args.chain_length
    if n < 0:
        raise InvalidGame("--chain-length must be non-negative")
    shown = min(n, CHAIN_PRINT_LIMIT)
    points = [counterexample_point(i) for i in range(shown + 1)]
    deltas = [points[i + 1][0] - points[i][0] for i in range(shown)]
    passed = check_convexity_not_well_founded(n)
    params = json.dumps({"command": "counterexample", "chain_length": n}, sort_keys=True).encode()
    body = {
        "game": game_to_dict(half_game()),
        "convex": canonical_is_convex(to_canonical_three_player(half_game())),
        "chain_length": n,
        "points": [format_vector(p) for p in points],
        "player1_payoff_deltas": [format_rational(d) for d in deltas],
        "witness_coalition": "1,2",
        "result": "PASS" if passed else "FAIL",
    }
    if args.format == "json":
        _emit(json.dumps(_envelope("counterexample", digest(params), body), indent=2) + "\n", args.out)
    else:
        lines = [f"game: pairs 1/2, grand coalition 1 (convex: {body['convex']})"]
        lines += [f"x^{i} = ({p})" for i, p in enumerate(body["points"])]
        if shown < n:
            lines.append(f"... ({n - shown} more points checked, not shown)")
        lines.append(f"x^(i+1) dominates x^i via {{1,2}} for all i < {n}: {body['result']}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if passed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coopaf", description="TU games, their cores, and the argumentation frameworks of domination.", epilog="exit codes: 0 ok, 1 invariant violation, 2 input error")
    parser.add_argument("--version", action="version", version=f"coopaf {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("analyze", help="valuation properties, normalization, canonical form")
    p.add_argument("game")
    p.add_argument("--normalized-out", help="write the (0,1)-normalized game file here")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("core", help="core, balancedness, supercore, core vertices")
    p.add_argument("game")
    p.add_argument("--vertex-cap", type=int, default=CORE_VERTEX_MAX_PLAYERS,
                   help="largest player count for vertex enumeration")
    common(p)
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("grid-af", help="grid framework over the imputation simplex and correspondence report")
    p.add_argument("game")
    p.add_argument("--grid-denominator", type=_positive, default=4)
    p.add_argument("--node-cap", type=_positive, default=NODE_CAP)
    p.add_argument("--enum-cap", type=_positive, default=ENUM_CAP)
    p.add_argument("--normalize", action="store_true", help="normalize the game first if needed")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--out", help="directory for grid.af, grid.dot, report.json (default .)")
    p.set_defaults(func=cmd_grid_af)

    p = sub.add_parser("semantics", help="grounded/complete/preferred/stable of a framework file")
    p.add_argument("framework")
    p.add_argument("--enum-cap", type=_positive, default=ENUM_CAP)
    common(p, ("text", "json", "dot"))
    p.set_defaults(func=cmd_semantics)

    p = sub.add_parser("counterexample", help="descending domination chain in a convex game")
    p.add_argument("--chain-length", type=int, default=DEFAULT_CHAIN_LENGTH)
    common(p)
    p.set_defaults(func=cmd_counterexample)
    return parser


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except CoopAFError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnicodeDecodeError:
        print("error: input is not valid UTF-8", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
