"""Command-line front end.

Subcommands: validate, eval, table, nash, centipede. Scheme JSON is read
from a path (or stdin when the path is '-') or taken from a named builtin;
table and nash also accept an extensive-game tree JSON. Exit codes: 0 ok,
2 parse error, 3 validation failure, 4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import presets
from .equilibrium import EPSILON, certify_pure, pure_nash
from .evaluation import (
    DEFAULT_BUDGET,
    MixedProfile,
    PureProfile,
    induced_game,
    payoff_mixed,
    payoff_pure,
)
from .extensive import (
    CentipedeSpec,
    make_centipede_scheme,
    tree_from_json,
    verify_centipede_equilibrium,
)
from .games import BudgetError, NormalFormGame, game_to_json, render_csv, render_table
from .oracle import compare_paths, dense_payoff
from .scheme import (
    PlayerStrategy,
    SchemeError,
    SchemeFormatError,
    SchemeSpec,
    scheme_from_json,
    scheme_to_json,
    strategy_digits,
    strategy_space,
    validate,
)
from .states import LocalOperator

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_BUDGET = 4


class ProfileSyntaxError(ValueError):
    """A profile string or mixed-profile document cannot be parsed."""


@dataclass
class RunConfig:
    """Resolved options of one CLI invocation."""

    command: str
    scheme_path: str | None = None
    builtin: str | None = None
    tree_path: str | None = None
    profile: str | None = None
    mixed_path: str | None = None
    fmt: str = "table"
    verify: bool = False
    budget: int = DEFAULT_BUDGET
    epsilon: float = EPSILON
    out: str | None = None
    stages: int | None = None


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("budget must be >= 1")
    return value


def _epsilon(text: str) -> float:
    value = float(text)
    if not 0 < value <= 1e-3:
        raise argparse.ArgumentTypeError("epsilon must be in (0, 1e-3]")
    return value


def parse_profile(spec: SchemeSpec, text: str) -> PureProfile:
    """Parse '<control digits>;<op list>' with op tokens I, X, or S<k>.

    Control digits are one character per player (comma-separated if any
    control radix exceeds 10); the op list assigns one token per operation
    slot in slot order, e.g. '111;I,I,X'.
    """
    if ";" not in text:
        raise ProfileSyntaxError(
            f"profile {text!r} needs the form '<control digits>;<op list>'"
        )
    control_part, op_part = text.split(";", 1)
    control_part = control_part.strip()
    try:
        if "," in control_part:
            digits = [int(d) for d in control_part.split(",")]
        else:
            digits = [int(ch) for ch in control_part]
    except ValueError:
        raise ProfileSyntaxError(f"bad control digits {control_part!r}") from None
    if len(digits) != spec.players:
        raise ProfileSyntaxError(
            f"profile has {len(digits)} control digits for {spec.players} players"
        )
    tokens = [t.strip() for t in op_part.split(",")] if op_part.strip() else []
    if len(tokens) != spec.operation_layout.slots:
        raise ProfileSyntaxError(
            f"profile assigns {len(tokens)} operators "
            f"to {spec.operation_layout.slots} operation slots"
        )
    ops = []
    for token in tokens:
        if token == "I":
            ops.append(LocalOperator(0))
        elif token == "X":
            ops.append(LocalOperator(1))
        elif token.startswith("S") and token[1:].isdigit():
            ops.append(LocalOperator(int(token[1:])))
        else:
            raise ProfileSyntaxError(f"bad operator token {token!r} (use I, X, or S<k>)")
    strategies = []
    for player in range(1, spec.players + 1):
        radix = spec.control_layout.radices[player - 1]
        digit = digits[player - 1]
        if not 0 <= digit < radix:
            raise ProfileSyntaxError(
                f"player {player} control digit {digit} outside radix {radix}"
            )
        strategies.append(
            PlayerStrategy(digit, tuple(ops[s] for s in spec.owned_slots(player)))
        )
    return PureProfile(tuple(strategies))


def parse_mixed(spec: SchemeSpec, doc) -> MixedProfile:
    """Parse a mixed-profile document: one list per player of
    {"strategy": "<digits>", "p": prob} entries, strategy digit strings as in
    the induced game's row labels (projector digit then owned-slot shifts)."""
    if not isinstance(doc, list) or len(doc) != spec.players:
        raise ProfileSyntaxError(
            f"mixed profile must be a list with one entry per player ({spec.players})"
        )
    distributions = []
    for player, entries in enumerate(doc, start=1):
        index_of = {
            strategy_digits(s): i
            for i, s in enumerate(strategy_space(spec, player))
        }
        dist: dict[int, float] = {}
        if not isinstance(entries, list):
            raise ProfileSyntaxError(f"player {player} distribution must be a list")
        for entry in entries:
            try:
                digits = str(entry["strategy"])
                prob = float(entry["p"])
            except (KeyError, TypeError, ValueError):
                raise ProfileSyntaxError(
                    f"bad mixed entry {entry!r} for player {player}"
                ) from None
            if digits not in index_of:
                raise ProfileSyntaxError(
                    f"player {player} has no strategy {digits!r}"
                )
            dist[index_of[digits]] = dist.get(index_of[digits], 0.0) + prob
        distributions.append(dist)
    try:
        return MixedProfile(tuple(distributions))
    except ValueError as exc:
        raise ProfileSyntaxError(str(exc)) from None


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_scheme(config: RunConfig) -> SchemeSpec:
    if config.builtin is not None:
        kind, value = presets.builtin(config.builtin)
        if kind != "scheme":
            raise SchemeError(f"builtin {config.builtin!r} is a game, not a scheme")
        return value
    spec = scheme_from_json(_read_text(config.scheme_path))
    violations = validate(spec)
    if violations:
        raise SchemeError("; ".join(violations))
    return spec


def _load_game_source(config: RunConfig) -> tuple[NormalFormGame, SchemeSpec | None]:
    """A normal-form game plus the scheme it came from, if any."""
    if config.tree_path is not None:
        tree = tree_from_json(_read_text(config.tree_path))
        from .extensive import normal_representation

        return normal_representation(tree, budget=config.budget), None
    if config.builtin is not None:
        kind, value = presets.builtin(config.builtin)
        if kind == "game":
            return value, None
        return induced_game(value, budget=config.budget), value
    spec = _load_scheme(config)
    return induced_game(spec, budget=config.budget), spec


def _format_values(values) -> str:
    return " ".join(format(v, "g") for v in values)


def cmd_validate(config: RunConfig) -> int:
    if config.builtin is not None:
        spec = _load_scheme(config)
        violations = validate(spec)
    else:
        spec = scheme_from_json(_read_text(config.scheme_path))
        violations = validate(spec)
    if violations:
        for violation in violations:
            print(violation)
        return EXIT_INVALID
    print("ok")
    return EXIT_OK


def cmd_eval(config: RunConfig) -> int:
    spec = _load_scheme(config)
    if config.mixed_path is not None:
        mixed = parse_mixed(spec, json.loads(_read_text(config.mixed_path)))
        payoffs = payoff_mixed(spec, mixed)
        profile: PureProfile | MixedProfile = mixed
    else:
        profile = parse_profile(spec, config.profile)
        payoffs = payoff_pure(spec, profile)
    if config.fmt == "json":
        print(json.dumps({"payoffs": list(payoffs)}))
    else:
        print(_format_values(payoffs))
    if config.verify:
        worst = max(
            abs(dense_payoff(spec, profile, p) - payoffs[p - 1])
            for p in range(1, spec.players + 1)
        )
        print(f"oracle discrepancy: {worst:.3e}")
    return EXIT_OK


def cmd_table(config: RunConfig) -> int:
    game, spec = _load_game_source(config)
    if config.fmt == "json":
        print(game_to_json(game))
    elif config.fmt == "csv":
        print(render_csv(game), end="")
    else:
        print(render_table(game), end="")
    if config.verify:
        if spec is None:
            raise SchemeError("--verify needs a scheme source, not a game or tree")
        from .oracle import sample_profiles

        worst = compare_paths(spec, sample_profiles(spec))
        print(f"oracle discrepancy: {worst:.3e}")
    return EXIT_OK


def cmd_nash(config: RunConfig) -> int:
    game, _ = _load_game_source(config)
    certificates = pure_nash(game, eps=config.epsilon)
    if config.fmt == "json":
        print(json.dumps([c.to_json_dict(game) for c in certificates], indent=2))
        return EXIT_OK
    if config.fmt == "csv":
        header = [f"strategy_{p}" for p in range(1, game.players + 1)]
        header += [f"payoff_{p}" for p in range(1, game.players + 1)]
        header += [f"slack_{p}" for p in range(1, game.players + 1)]
        print(",".join(header))
        for cert in certificates:
            row = list(game.profile_labels(cert.profile))
            row += [format(v, "g") for v in cert.payoffs]
            row += [format(v, "g") for v in cert.slacks]
            print(",".join(row))
        return EXIT_OK
    print(f"{len(certificates)} pure Nash equilibri{'um' if len(certificates) == 1 else 'a'}")
    for cert in certificates:
        labels = ", ".join(game.profile_labels(cert.profile))
        print(
            f"  ({labels})  payoffs ({_format_values(cert.payoffs).replace(' ', ',')})"
            f"  slacks ({_format_values(cert.slacks).replace(' ', ',')})"
        )
    return EXIT_OK


def cmd_centipede(config: RunConfig) -> int:
    n = config.stages
    try:
        CentipedeSpec(n)
    except ValueError as exc:
        raise SchemeError(str(exc)) from None
    scheme, designated = make_centipede_scheme(n)
    certificate = verify_centipede_equilibrium(n, eps=config.epsilon)
    out_path = config.out if config.out is not None else f"centipede{n}.json"
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(scheme_to_json(scheme) + "\n")
    if config.fmt == "json":
        doc = certificate.to_json_dict()
        doc["stages"] = n
        doc["scheme_file"] = out_path
        print(json.dumps(doc, indent=2, sort_keys=True))
        return EXIT_OK
    digits = [strategy_digits(s) for s in designated.strategies]
    print(f"stages: {n}")
    print(f"designated profile: (A{digits[0]}, B{digits[1]})")
    print(f"payoff: {_format_values(certificate.payoffs)}")
    print(f"slacks: {_format_values(certificate.slacks)}")
    print(f"verdict: {'VALID' if certificate.valid else 'INVALID'}")
    print(f"scheme written to {out_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgame",
        description="Evaluate quantum game schemes, extract induced games, "
        "and certify Nash equilibria.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        dest="fmt",
        choices=("json", "csv", "table"),
        default="table",
        help="output format (default: table)",
    )
    common.add_argument(
        "--verify",
        action="store_true",
        help="append the dense-oracle payoff discrepancy",
    )
    common.add_argument(
        "--budget",
        type=_positive_int,
        default=DEFAULT_BUDGET,
        help=f"profile enumeration budget (default: {DEFAULT_BUDGET})",
    )
    common.add_argument(
        "--epsilon",
        type=_epsilon,
        default=EPSILON,
        help=f"tie tolerance for equilibrium comparisons (default: {EPSILON})",
    )
    common.add_argument("--builtin", help="use a builtin (pd3, centipede<n>[-classical])")

    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser(
        "validate", parents=[common], help="check a scheme JSON file"
    )
    p_validate.add_argument("scheme", nargs="?", help="scheme JSON path, or - for stdin")

    p_eval = sub.add_parser(
        "eval", parents=[common], help="evaluate a strategy profile's payoffs"
    )
    p_eval.add_argument("scheme", nargs="?", help="scheme JSON path, or - for stdin")
    p_eval.add_argument(
        "--profile",
        help="pure profile '<control digits>;<op list>', ops I, X, or S<k>",
    )
    p_eval.add_argument("--mixed", help="mixed profile JSON path")

    p_table = sub.add_parser(
        "table", parents=[common], help="print the induced normal-form game"
    )
    p_table.add_argument("scheme", nargs="?", help="scheme JSON path, or - for stdin")
    p_table.add_argument("--tree", help="extensive-game tree JSON path")

    p_nash = sub.add_parser(
        "nash", parents=[common], help="enumerate pure Nash equilibria"
    )
    p_nash.add_argument("scheme", nargs="?", help="scheme JSON path, or - for stdin")
    p_nash.add_argument("--tree", help="extensive-game tree JSON path")

    p_cent = sub.add_parser(
        "centipede",
        parents=[common],
        help="generate the n-stage centipede scheme and certify its profile",
    )
    p_cent.add_argument("-n", "--stages", type=int, required=True)
    p_cent.add_argument("--out", help="scheme output path (default: centipede<n>.json)")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        scheme_path=getattr(args, "scheme", None),
        builtin=args.builtin,
        tree_path=getattr(args, "tree", None),
        profile=getattr(args, "profile", None),
        mixed_path=getattr(args, "mixed", None),
        fmt=args.fmt,
        verify=args.verify,
        budget=args.budget,
        epsilon=args.epsilon,
        out=getattr(args, "out", None),
        stages=getattr(args, "stages", None),
    )


_COMMANDS = {
    "validate": cmd_validate,
    "eval": cmd_eval,
    "table": cmd_table,
    "nash": cmd_nash,
    "centipede": cmd_centipede,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _config_from_args(args)
    sources = [
        s
        for s in (config.scheme_path, config.builtin, config.tree_path)
        if s is not None
    ]
    if config.command != "centipede":
        if len(sources) != 1:
            parser.error("give exactly one of: a scheme path, --builtin, or --tree")
        if config.command == "eval" and not (config.profile or config.mixed_path):
            parser.error("eval needs --profile or --mixed")
    try:
        return _COMMANDS[config.command](config)
    except json.JSONDecodeError as exc:
        print(
            f"error: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
            file=sys.stderr,
        )
        return EXIT_PARSE
    except (SchemeFormatError, ProfileSyntaxError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SchemeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
