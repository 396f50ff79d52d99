"""Command line: compute, enumerate, verify, simulate and sweep.

Every subcommand except ``sweep`` prints one JSON envelope per game on its
own line. Exit codes: 0 success, 1 the exact routes disagree (``verify``),
2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import sys
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import closedform, enumeration, errata, hypergeom, montecarlo
from .rationals import to_decimal, to_string
from .scenario import (
    KINDS,
    SEGMENTS,
    OutcomePredicate,
    PhasePlan,
    Scenario,
    ValidatedGame,
    ValidationError,
    game_from_dict,
    validate,
)

__all__ = ["main", "build_parser", "ENVELOPE_SCHEMA", "VARIANTS", "SWEEP_COLUMNS"]

VARIANTS = ("mh1", "mh2", "mh3", "mh31", "mh4", "custom")

EXIT_OK, EXIT_DISAGREE, EXIT_INVALID = 0, 1, 2

_FRACTION_PATTERN = r"^-?[0-9]+/[0-9]+$"

_VALUE_SCHEMA = {
    "type": "object",
    "required": ["fraction", "decimal"],
    "properties": {
        "fraction": {"type": "string", "pattern": _FRACTION_PATTERN},
        "decimal": {"type": "string", "pattern": r"^-?[0-9]+\.[0-9]+$"},
        "raw": {"type": "string", "pattern": _FRACTION_PATTERN},
    },
}

ENVELOPE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "montyhall report envelope",
    "type": "object",
    "required": ["variant", "params", "results", "agreement", "errata_notes"],
    "properties": {
        "variant": {"enum": list(VARIANTS)},
        "params": {
            "type": "object",
            "required": ["doors", "cars", "plan", "predicate"],
            "properties": {
                "doors": {"type": "integer", "minimum": 2},
                "cars": {"type": "integer", "minimum": 1},
                "plan": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "oneOf": [
                            {
                                "type": "object",
                                "required": ["pick"],
                                "additionalProperties": False,
                                "properties": {"pick": {"type": "integer", "minimum": 1}},
                            },
                            {
                                "type": "object",
                                "required": ["open"],
                                "additionalProperties": False,
                                "properties": {"open": {"type": "integer", "minimum": 0}},
                            },
                        ]
                    },
                },
                "predicate": {
                    "type": "object",
                    "required": ["segment", "kind"],
                    "properties": {
                        "segment": {"enum": list(SEGMENTS)},
                        "kind": {"enum": list(KINDS)},
                        "k": {"type": "integer", "minimum": 0},
                    },
                },
            },
        },
        "results": {
            "type": "object",
            "minProperties": 1,
            "additionalProperties": _VALUE_SCHEMA,
        },
        "agreement": {"type": "boolean"},
        "errata_notes": {"type": "array", "items": {"type": "string"}},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["quantity", "results", "agreement"],
                "properties": {
                    "quantity": {"type": "string"},
                    "results": {"type": "object", "additionalProperties": _VALUE_SCHEMA},
                    "agreement": {"type": "boolean"},
                },
            },
        },
        "details": {"type": "object"},
        "simulation": {"type": "object"},
        "sequences": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["sequence", "numerator", "denominator", "probability"],
                "properties": {
                    "sequence": {"type": "string", "pattern": "^[cg]+(\\|[cg]+)*$"},
                    "numerator": {"type": "array", "items": {"type": "integer"}},
                    "denominator": {"type": "array", "items": {"type": "integer"}},
                    "probability": {"type": "string", "pattern": _FRACTION_PATTERN},
                },
            },
        },
    },
}

SWEEP_COLUMNS = (
    "doors",
    "cars",
    "pick",
    "open",
    "switch_pick",
    "stay",
    "stay_decimal",
    "switch",
    "switch_decimal",
    "factor",
    "direction",
)


class UsageError(ValueError):
    pass


# -- game construction -----------------------------------------------------------


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _parse_plan(text: str) -> PhasePlan:
    """``p3,o2,p2`` -> [Pick(3), Open(2), Pick(2)]."""
    items = []
    for part in text.split(","):
        part = part.strip()
        kind = {"p": "pick", "o": "open"}.get(part[:1])
        if kind is None or not part[1:].isdigit():
            raise UsageError(f"bad plan element {part!r}; use e.g. p3,o2,p2")
        items.append({kind: int(part[1:])})
    return PhasePlan.from_list(items)


def _parse_range(text: str) -> list[int]:
    """``3``, ``1..4`` or ``1,3,5``."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
            if hi < lo:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return _parse_int_list(text)
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}: {exc}") from None


def _need(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"variant {args.variant} needs {flags}")


def _predicate_from_args(args, default: OutcomePredicate) -> OutcomePredicate:
    if args.segment is None and args.kind is None and args.k is None:
        return default
    kind = args.kind or default.kind
    k = args.k if args.k is not None else (1 if kind in ("at_least", "position_is_car") else None)
    return OutcomePredicate(args.segment or default.segment, kind, k)


def game_from_args(args) -> ValidatedGame:
    v = args.variant
    at_least_one = OutcomePredicate("posterior", "at_least", 1)
    if v == "mh1":
        return validate(Scenario(3, 1), PhasePlan.mh3(1, 1, 1), at_least_one)
    if v == "mh2":
        _need(args, "doors", "cars", "open")
        return validate(Scenario(args.doors, args.cars), PhasePlan.mh3(1, args.open, 1), at_least_one)
    if v in ("mh3", "mh31"):
        _need(args, "doors", "cars", "pick", "open", "switch_pick")
        pred = at_least_one if v == "mh3" else OutcomePredicate("posterior", "all_cars")
        plan = PhasePlan.mh3(args.pick, args.open, args.switch_pick)
        return validate(Scenario(args.doors, args.cars), plan, pred)
    if v == "mh4":
        _need(args, "doors", "cars", "schedule")
        plan = PhasePlan.mh4(_parse_int_list(args.schedule))
        return validate(
            Scenario(args.doors, args.cars), plan, OutcomePredicate("final-round", "at_least", 1)
        )
    _need(args, "doors", "cars")
    if args.plan:
        plan = _parse_plan(args.plan)
    else:
        plan = PhasePlan.mh3(args.pick or 1, 1 if args.open is None else args.open, args.switch_pick or 1)
    pred = _predicate_from_args(args, at_least_one)
    return validate(Scenario(args.doors, args.cars), plan, pred)


def _games(args) -> Iterable[tuple[str, ValidatedGame | Exception]]:
    if not args.config:
        yield args.variant, game_from_args(args)
        return
    with open(args.config, encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("["):
        try:
            entries = [json.dumps(e) for e in json.loads(stripped)]
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad JSON in {args.config}: {exc}") from None
    else:
        entries = [line for line in text.splitlines() if line.strip()]
    for line in entries:
        try:
            yield "custom", game_from_dict(json.loads(line))
        except (ValidationError, json.JSONDecodeError) as exc:
            yield "custom", exc


# -- exact routes ----------------------------------------------------------------------


def _value(x: Fraction, digits: int, raw: tuple[int, int] | None = None) -> dict:
    out = {"fraction": to_string(x), "decimal": to_decimal(x, digits)}
    if raw is not None:
        out["raw"] = f"{raw[0]}/{raw[1]}"
    return out


def _frac_or_none(x: Fraction | None) -> str | None:
    return None if x is None else to_string(x)


def _closed_form_details(game: ValidatedGame, variant: str, digits: int):
    """Closed-form value (+ unreduced form) and supporting numbers, when available."""
    c, d, g = game.cars, game.doors, game.goats
    plan = game.plan
    if variant in ("mh1", "mh2"):
        o = plan.openings[0]
        switch = closedform.mh2_switch_probability(c, d, o)
        factor = closedform.mh2_improvement_factor(d, o)
        stay = Fraction(c, d)
        details = {
            "stay": _value(stay, digits),
            "switch": _value(switch, digits, (c * (d - 1), d * (d - 1 - o))),
            "improvement_factor": _value(factor, digits),
            "direction": "increase" if factor > 1 else "unchanged",
        }
        return switch, (c * (d - 1), d * (d - 1 - o)), details
    if variant == "mh3":
        p, o, q = plan.anterior_picks, plan.openings[0], plan.posterior_picks
        n = closedform.mh3_at_least_one_numerator(c, g, o, p, q)
        den = closedform.mh3_denominator(d, p, o, q)
        report = closedform.mh3_at_least_one_probability(game.scenario, p, o, q)
        details = {
            "numerator": n,
            "denominator": den,
            "stay": _value(report.stay_probability, digits),
            "switch": _value(report.switch_probability, digits, (n, den)),
            "improvement_factor": None
            if report.improvement_factor is None
            else _value(report.improvement_factor, digits),
            "direction": report.direction,
        }
        return report.switch_probability, (n, den), details
    if variant == "mh31":
        p, o, q = plan.anterior_picks, plan.openings[0], plan.posterior_picks
        report = closedform.mh31_all_cars(game.scenario, p, o, q)
        details = {
            "anterior_all_cars": _value(report.stay_probability, digits),
            "posterior_all_cars": _value(report.switch_probability, digits),
            "both_phases_all_cars": _value(report.both_phases, digits),
            "conditional_factor": _value(report.conditional_factor, digits),
            "improvement_factor": None
            if report.improvement_factor is None
            else _value(report.improvement_factor, digits),
            "direction": report.direction,
        }
        return report.switch_probability, None, details
    if variant == "mh4":
        schedule = plan.openings
        num, den = closedform.mh4_switch_terms(c, d, schedule)
        from_stay, from_first = closedform.mh4_improvement_factors(d, schedule)
        details = {
            "switch": _value(Fraction(num, den), digits, (num, den)),
            "improvement_from_stay": _value(from_stay, digits),
            "improvement_from_first_switch": _value(from_first, digits),
        }
        if len(schedule) == 2:
            nums, common = closedform.mh4_door_posteriors_raw(c, d, schedule)
            details["door_posteriors"] = [
                _value(Fraction(k, common), digits, (k, common)) for k in nums
            ]
        return Fraction(num, den), (num, den), details
    value = closedform.closed_form_for(game)
    return value, None, {}


def _secondary_quantities(game: ValidatedGame, variant: str) -> list[tuple[str, ValidatedGame]]:
    pred = game.predicate
    switch_one = pred.kind == "at_least" and pred.k == 1 and pred.segment in ("posterior", "final-round")
    if game.plan.is_three_phase() and switch_one:
        return [("stay", game.with_predicate(OutcomePredicate("anterior", "at_least", 1)))]
    if variant == "mh31":
        return [("anterior_all_cars", game.with_predicate(OutcomePredicate("anterior", "all_cars")))]
    if variant == "mh4" and game.plan.switch_rounds == 2:
        return [
            ("door_posterior_first_pick", game.with_predicate(OutcomePredicate("anterior", "position_is_car", 1))),
            ("door_posterior_first_switch", game.with_predicate(OutcomePredicate("posterior", "position_is_car", 1))),
        ]
    return []


def _route_values(game: ValidatedGame, *, closed: bool, enum: bool, hyper: bool, bound: int) -> dict:
    out: dict[str, Fraction] = {}
    if closed:
        value = closedform.closed_form_for(game)
        if value is not None:
            out["closedform"] = value
    if enum:
        out["enumeration"] = enumeration.outcome_probability(game, bound)
    if hyper:
        value = hypergeom.hypergeom_for(game)
        if value is not None:
            out["hypergeom"] = value
    return out


def _agree(values: dict) -> bool:
    return len(set(values.values())) <= 1


def _envelope(variant: str, game: ValidatedGame, args, *, verify: bool) -> dict:
    digits = args.digits
    primary, raw, details = _closed_form_details(game, variant, digits)
    routes: dict[str, Fraction] = {}
    if primary is not None:
        routes["closedform"] = primary
    if verify or variant == "custom":
        routes["enumeration"] = enumeration.outcome_probability(game, args.enum_bound)
    hyper = hypergeom.hypergeom_for(game)
    if hyper is not None:
        routes["hypergeom"] = hyper
    results = {
        name: _value(v, digits, raw if name == "closedform" else None) for name, v in routes.items()
    }
    env = {
        "variant": variant,
        "params": game.to_dict(),
        "results": results,
        "agreement": _agree(routes),
        "errata_notes": errata.notes_for(game, variant),
    }
    if verify:
        checks = []
        for quantity, sub in _secondary_quantities(game, variant):
            values = _route_values(sub, closed=True, enum=True, hyper=True, bound=args.enum_bound)
            if variant == "mh4":
                idx = 0 if quantity.endswith("first_pick") else 1
                c, d = game.cars, game.doors
                values["closedform"] = closedform.mh4_door_posteriors(c, d, game.plan.openings)[idx]
            checks.append(
                {
                    "quantity": quantity,
                    "results": {k: _value(v, digits) for k, v in values.items()},
                    "agreement": _agree(values),
                }
            )
        env["checks"] = checks
        env["agreement"] = env["agreement"] and all(ch["agreement"] for ch in checks)
    if details:
        env["details"] = details
    return env


# -- subcommands ---------------------------------------------------------------------


def _emit(obj: dict, out) -> None:
    out.write(json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n")


def _error_object(exc: Exception) -> dict:
    return {"error": {"type": type(exc).__name__, "message": str(exc)}}


_INPUT_ERRORS = (
    ValidationError,
    UsageError,
    closedform.DomainError,
    hypergeom.DomainError,
    enumeration.BoundExceeded,
    OSError,
)


def _for_each_game(args, out, handle: Callable[[str, ValidatedGame], tuple[dict, int]]) -> int:
    code = EXIT_OK
    try:
        for variant, game in _games(args):
            if isinstance(game, Exception):
                _emit(_error_object(game), out)
                code = EXIT_INVALID
                continue
            try:
                env, status = handle(variant, game)
            except _INPUT_ERRORS as exc:
                _emit(_error_object(exc), out)
                code = EXIT_INVALID
                continue
            _emit(env, out)
            code = max(code, status)
    except _INPUT_ERRORS as exc:
        _emit(_error_object(exc), out)
        return EXIT_INVALID
    return code


def cmd_compute(args, out) -> int:
    return _for_each_game(args, out, lambda v, g: (_envelope(v, g, args, verify=False), EXIT_OK))


def cmd_verify(args, out) -> int:
    def handle(variant, game):
        env = _envelope(variant, game, args, verify=True)
        return env, EXIT_OK if env["agreement"] else EXIT_DISAGREE

    return _for_each_game(args, out, handle)


def cmd_enumerate(args, out) -> int:
    def handle(variant, game):
        seqs = enumeration.enumerate_sequences(game, args.enum_bound)
        value = enumeration.probability_where(seqs, game.plan, game.predicate)
        mass = sum((w.probability for w in seqs), Fraction(0))
        env = {
            "variant": variant,
            "params": game.to_dict(),
            "results": {"enumeration": _value(value, args.digits)},
            "agreement": True,
            "errata_notes": errata.notes_for(game, variant),
            "details": {"sequence_count": len(seqs), "total_mass": to_string(mass)},
            "sequences": [w.to_dict() for w in seqs],
        }
        return env, EXIT_OK

    return _for_each_game(args, out, handle)


def _exact_value(game: ValidatedGame, bound: int) -> Fraction | None:
    if game.plan.total_picks <= bound:
        return enumeration.outcome_probability(game, bound)
    return closedform.closed_form_for(game)


def cmd_simulate(args, out) -> int:
    workers = args.workers or montecarlo.default_workers()

    def handle(variant, game):
        exact = _exact_value(game, args.enum_bound)
        est = montecarlo.simulate(game, args.trials, args.seed, workers)
        sim = est.to_dict()
        sim["z_score"] = None if exact is None else est.z_score(float(exact))
        sim["fraction"] = to_string(Fraction(est.successes, est.trials))
        if args.compare_policies:
            stay, switch = montecarlo.simulate_policy_comparison(game, args.trials, args.seed, workers)
            sim["stay"] = stay.to_dict()
            sim["switch"] = switch.to_dict()
        env = {
            "variant": variant,
            "params": game.to_dict(),
            "results": {} if exact is None else {"exact": _value(exact, args.digits)},
            "agreement": True,
            "errata_notes": errata.notes_for(game, variant),
            "simulation": sim,
        }
        if exact is None:
            env["results"] = {"montecarlo": _value(Fraction(est.successes, est.trials), args.digits)}
        return env, EXIT_OK

    return _for_each_game(args, out, handle)


def _sweep_rows(args) -> Iterable[list]:
    grids = [_parse_range(getattr(args, name)) for name in ("doors", "cars", "pick", "open", "switch_pick")]
    cells = 1
    for g in grids:
        cells *= len(g)
    if cells > args.max_cells:
        raise UsageError(f"grid has {cells} cells; the cap is {args.max_cells}")
    for d, c, p, o, q in itertools.product(*grids):
        try:
            scenario = Scenario(d, c)
            report = closedform.mh3_at_least_one_probability(scenario, p, o, q)
        except (ValidationError, closedform.DomainError):
            continue
        factor = report.improvement_factor
        yield [
            d,
            c,
            p,
            o,
            q,
            to_string(report.stay_probability),
            to_decimal(report.stay_probability, args.digits),
            to_string(report.switch_probability),
            to_decimal(report.switch_probability, args.digits),
            "" if factor is None else to_string(factor),
            report.direction,
        ]


def cmd_sweep(args, out) -> int:
    try:
        rows = list(_sweep_rows(args))
    except UsageError as exc:
        _emit(_error_object(exc), out)
        return EXIT_INVALID
    if args.format == "json":
        for row in rows:
            _emit(dict(zip(SWEEP_COLUMNS, row)), out)
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        writer.writerows(rows)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------


def _output_flags(default_format: str) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", help="JSON output")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv", help="CSV output (sweep)")
    p.set_defaults(format=default_format)
    p.add_argument("--digits", type=int, default=6, help="decimal places in rendered values (default 6)")
    p.add_argument("--enum-bound", type=int, default=enumeration.DEFAULT_BOUND,
                   help="maximum total picks the enumeration will expand (default 24)")
    return p


def _game_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", metavar="FILE", help="scenario batch: JSON lines or a JSON array")
    p.add_argument("--variant", choices=VARIANTS, default="custom")
    p.add_argument("--doors", type=int)
    p.add_argument("--cars", type=int)
    p.add_argument("--pick", type=int, help="doors picked first")
    p.add_argument("--open", type=int, help="goat doors the host opens")
    p.add_argument("--switch-pick", type=int, help="fresh doors picked after switching")
    p.add_argument("--schedule", help="openings per switch round, e.g. 2,1 (mh4)")
    p.add_argument("--plan", help="custom phase plan, e.g. p3,o2,p2")
    p.add_argument("--segment", choices=SEGMENTS)
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--k", type=int)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="montyhall",
        description="Exact and simulated win probabilities for generalized Monty Hall games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    game, out_json = _game_flags(), _output_flags("json")

    c = sub.add_parser("compute", parents=[out_json, game], help="closed-form and hypergeometric values")
    c.set_defaults(func=cmd_compute)
    e = sub.add_parser("enumerate", parents=[out_json, game], help="list every weighted pick sequence")
    e.set_defaults(func=cmd_enumerate)
    v = sub.add_parser("verify", parents=[out_json, game], help="cross-check all exact routes")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", parents=[out_json, game], help="Monte Carlo estimate")
    s.add_argument("--trials", type=int, default=10**6)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=None, help="processes (default: CPU count)")
    s.add_argument("--compare-policies", action="store_true", help="also estimate stay vs switch")
    s.set_defaults(func=cmd_simulate)

    w = sub.add_parser("sweep", parents=[_output_flags("csv")], help="stay/switch grid as CSV")
    w.add_argument("--doors", required=True, help="e.g. 12, 6..9 or 6,8")
    w.add_argument("--cars", required=True)
    w.add_argument("--pick", required=True)
    w.add_argument("--open", required=True)
    w.add_argument("--switch-pick", required=True)
    w.add_argument("--max-cells", type=int, default=100_000)
    w.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    if getattr(args, "digits", 1) < 1:
        _emit(_error_object(UsageError("--digits must be >= 1")), out)
        return EXIT_INVALID
    return args.func(args, out)


if __name__ == "__main__":
    sys.exit(main())
