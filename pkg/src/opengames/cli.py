"""Command-line front end.

Exit codes: 0 success, 1 validation or parse error, 2 enumeration budget
exceeded, 3 internal invariant violation (the two engines disagreed).
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from . import io
from .classical import BayesianGame, ex_ante, ex_interim, ex_post
from .errors import BudgetExceeded, InvariantViolation, OpenGamesError, ValidationError
from .examples import SCENARIOS, check_profile_both, solve_pure
from .laws import run_laws
from .prob import bayes_update, dist_to_json, rational_to_str

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would collide with the budget code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _player_index(g: BayesianGame, raw: str) -> int:
    if raw in g.players:
        return g.players.index(raw)
    if raw.isdigit() and 1 <= int(raw) <= g.n:
        return int(raw) - 1
    raise ValidationError("--player", f"unknown player {raw!r}")


def _types_arg(g: BayesianGame, raw: Optional[Sequence[str]], needed: List[int]) -> dict:
    """Parse ``--types`` given as ``player=label`` pairs or positional labels."""
    raw = list(raw or [])
    out = {}
    if all("=" in item for item in raw):
        for item in raw:
            name, label = item.split("=", 1)
            out[_player_index(g, name)] = label
    elif len(raw) == len(needed):
        out = dict(zip(needed, raw))
    else:
        raise ValidationError("--types", f"expected {len(needed)} label(s) or player=label pairs")
    for i in needed:
        if i not in out:
            raise ValidationError("--types", f"missing type for {g.players[i]}")
        if out[i] not in g.types[i]:
            raise ValidationError(f"--types.{g.players[i]}", f"undeclared type {out[i]!r}")
    return out


def cmd_solve(args) -> object:
    g = io.parse_game(args.game)
    return {"pure_equilibria": [io.profile_to_json(g, s) for s in solve_pure(g)]}


def cmd_check(args) -> object:
    g = io.parse_game(args.game)
    report = check_profile_both(g, io.parse_profile(args.profile, g))
    if not report["agree"]:
        raise InvariantViolation("classical and compositional verdicts differ")
    return report


def cmd_utility(args) -> object:
    g = io.parse_game(args.game)
    s = io.parse_profile(args.profile, g)
    i = _player_index(g, args.player)
    if args.epistemic == "ante":
        value = ex_ante(g, s, i)
    elif args.epistemic == "interim":
        value = ex_interim(g, s, i, _types_arg(g, args.types, [i])[i])
    else:
        types = _types_arg(g, args.types, list(range(g.n)))
        value = ex_post(g, s, tuple(types[j] for j in range(g.n)), i)
    return rational_to_str(value)


def cmd_update(args) -> object:
    prior = io.parse_prior(args.prior)
    if args.observe not in prior.space.factors[1]:
        raise ValidationError("--observe", f"unknown observation {args.observe!r}")
    return dist_to_json(bayes_update(prior, args.observe))


def cmd_laws(args) -> object:
    if args.cases < 1:
        raise ValidationError("--cases", "must be positive")
    report = run_laws(args.cases, args.seed)
    summary = {}
    for fam, laws in report.items():
        summary[fam] = {
            "passed": sum(r["passed"] for r in laws.values()),
            "failed": sum(r["failed"] for r in laws.values()),
            "laws": laws,
        }
    return {"cases": args.cases, "seed": args.seed, "families": summary}


def cmd_examples(args) -> object:
    return SCENARIOS[args.name]()


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="opengames", description="Exact Bayesian open games.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="pure Bayesian Nash equilibria via both engines")
    s.add_argument("game")
    s.add_argument("--pure", action="store_true", required=True)
    s.set_defaults(run=cmd_solve)

    s = sub.add_parser("check", help="is a mixed profile an equilibrium?")
    s.add_argument("game")
    s.add_argument("--profile", required=True)
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("utility", help="expected utility of one player")
    s.add_argument("game")
    s.add_argument("--profile", required=True)
    s.add_argument("--player", required=True, help="player name or 1-based index")
    s.add_argument("--epistemic", choices=("post", "interim", "ante"), required=True)
    s.add_argument("--types", nargs="+", help="type labels, positional or player=label")
    s.set_defaults(run=cmd_utility)

    s = sub.add_parser("update", help="posterior over states after an observation")
    s.add_argument("--prior", required=True)
    s.add_argument("--observe", required=True)
    s.set_defaults(run=cmd_update)

    s = sub.add_parser("laws", help="randomised law suite")
    s.add_argument("--cases", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(run=cmd_laws)

    s = sub.add_parser("examples", help="built-in scenarios")
    s.add_argument("name", choices=sorted(SCENARIOS))
    s.set_defaults(run=cmd_examples)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    try:
        result = args.run(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except OpenGamesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(io.dumps(result))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
