"""Command-line entry point: ``equirobust examples`` and ``equirobust analyze``.

Exit codes: 0 success, 1 bad input (unreadable game, unknown example,
malformed parameter), 2 an analysis whose precondition the game fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import ce, dual, nash, robustness, zerosum
from ._rational import format_rational, parse_rational
from .game import Game, GameFormatError, is_quasi_strict, pure_profile
from .registry import REGISTRY, UnknownExampleError, list_examples, make_game

__all__ = ["main", "Report", "ANALYSES", "InputError"]


class InputError(ValueError):
    pass


class PreconditionFailure(ValueError):
    pass


def _fmt(value):
    """Recursively turn Fractions into "p/q" strings and tuples into lists."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str, float)):
        return value
    if isinstance(value, dict):
        return {str(k): _fmt(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, frozenset, set)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_fmt(v) for v in items]
    return str(value)


@dataclass
class Report:
    command: list
    input: dict
    results: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"command": self.command, "input": self.input, "results": self.results, "errors": self.errors}

    @classmethod
    def from_dict(cls, data) -> "Report":
        return cls(data["command"], data["input"], data.get("results", {}), data.get("errors", {}))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text) -> "Report":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# analyses: each takes (game, args) and returns a JSON-ready payload


def _labels(game, profile):
    return [game.labels[i][s] for i, s in enumerate(profile)]


def _ce_unique(game, args):
    unique, mu = ce.is_ce_unique(game)
    out = {"unique": unique, "ce": None, "support": None, "binding": None}
    if unique:
        out["ce"] = _fmt(mu)
        out["support"] = [_labels(game, s) for s in game.profiles() if mu[game.profile_index(s)]]
        out["binding"] = [str(l) for l in sorted(ce.binding_constraints(game, mu))]
    return out


def _ce_vertices(game, args):
    verts = ce.extreme_ce(game)
    return {"count": len(verts), "vertices": _fmt(verts)}


def _nash_report(game):
    if game.num_players == 2:
        return nash.enumerate_nash_bimatrix(game)
    if game.shape == (2, 2, 2):
        return nash.analyze_2x2x2(game)
    pures = [pure_profile(game, s) for s in nash.enumerate_pure_nash(game)]
    return nash.NashReport(equilibria=pures, complete=False, degenerate=False)


def _component(c: nash.Component):
    return {
        "fixed": {str(k): format_rational(v) for k, v in sorted(c.fixed.items())},
        "free": list(c.free),
        "conditions": list(c.conditions),
        "sample": _fmt(c.sample),
        "resolved": c.resolved,
    }


def _nash(game, args):
    rep = _nash_report(game)
    out = {
        "count": rep.count,
        "equilibria": _fmt(rep.equilibria),
        "complete": rep.complete,
        "degenerate": rep.degenerate,
        "components": [_component(c) for c in rep.components],
    }
    if rep.pairing is not None:
        out["pairing"] = [list(p) for p in rep.pairing]
    if rep.quadratic is not None:
        q = rep.quadratic
        out["quadratic"] = {
            "coefficients": _fmt(q.coefficients),
            "discriminant": _fmt(q.discriminant),
            "identically_zero": q.identically_zero,
            "roots": [
                {"interval": _fmt((r.lo, r.hi)), "exact": _fmt(r.exact), "is_equilibrium": r.is_equilibrium}
                for r in q.roots
            ],
        }
    if game.num_players > 2 and game.shape != (2, 2, 2):
        out["note"] = "pure equilibria only for this shape"
    return out


def _symmetric_nash(game, args):
    if not game.is_symmetric():
        raise PreconditionFailure("symmetric-nash needs a symmetric two-player game")
    eqs = nash.enumerate_symmetric_nash(game)
    return {
        "count": len(eqs),
        "equilibria": _fmt([e[0] for e in eqs]),
        "quasi_strict": [is_quasi_strict(game, e) for e in eqs],
    }


def _quasi_strict(game, args):
    rep = _nash_report(game)
    return {
        "equilibria": _fmt(rep.equilibria),
        "quasi_strict": [is_quasi_strict(game, e) for e in rep.equilibria],
        "complete": rep.complete,
    }


def _dual_reduce(game, args):
    alpha, slacks = dual.find_strong_dual_vector(game)
    reduced = dual.reduce_game(game, alpha)
    return {
        "alpha": _fmt(alpha.alpha),
        "slack": {",".join(map(str, s)): format_rational(v) for s, v in slacks.items()},
        "zero_probability_profiles": [list(s) for s in ce.zero_probability_profiles(game)],
        "classes": [[list(members) for members, _ in cls] for cls in reduced.classes],
        "stationary": [[_fmt(pi) for _, pi in cls] for cls in reduced.classes],
        "reduced_game": reduced.game.to_dict(),
    }


def _hs_aux(game, args):
    aux = zerosum.build_auxiliary_game(game)
    sol = zerosum.solve_zero_sum(aux.matrix)
    return {
        "auxiliary": aux.to_dict(),
        "value": format_rational(sol.value),
        "maximizer_optimal_equals_ce": zerosum.maximizer_optimal_equals_ce(game),
    }


def _zerosum(game, args):
    try:
        m = zerosum.MatrixGame.from_game(game)
    except GameFormatError as exc:
        raise PreconditionFailure(str(exc)) from None
    sol = zerosum.solve_zero_sum(m, vertices=True)
    return {
        "matrix": m.to_dict(),
        "value": format_rational(sol.value),
        "row_strategy": _fmt(sol.row_strategy),
        "col_strategy": _fmt(sol.col_strategy),
        "row_face_dimension": sol.row_face_dimension,
        "col_face_dimension": sol.col_face_dimension,
        "row_vertices": _fmt(sol.row_vertices),
        "col_vertices": _fmt(sol.col_vertices),
    }


def _spec(game, args):
    if args.along:
        if not args.example:
            raise InputError("--along needs --example")
        name, _, values = args.along.partition("=")
        example = REGISTRY[args.example]
        if name not in example.params:
            raise InputError(f"{args.example} has no parameter {name!r}")
        if any(k != name for k in args.params):
            raise InputError("--along cannot be combined with --param for other parameters")
        base = dict(zip(example.params, example.defaults))
        base.update(args.params)
        origin = base[name]

        def family(**kw):
            return example(**{**base, name: kw[name] + origin})

        direction = robustness.family_direction(family, name)
        mags = [_rational_arg(v) - origin for v in values.split(",")]
        return robustness.PerturbationSpec(direction=direction, magnitudes=mags, seed=args.seed)
    return robustness.PerturbationSpec(
        delta=args.delta, samples=args.samples, seed=args.seed, grid_denominator=args.grid
    )


def _probe(kind, counter=None):
    def run(game, args):
        spec = _spec(game, args)
        try:
            if kind == "unique-ce":
                rep = robustness.probe_unique_ce(game, spec, workers=args.workers)
            elif kind == "count":
                rep = robustness.probe_count(game, spec, counter, workers=args.workers)
            elif kind == "unique-strict":
                rep = robustness.probe_unique_strict(game, spec, workers=args.workers)
            else:
                rep = robustness.probe_symmetric_unique(game, spec, workers=args.workers)
        except robustness.PreconditionError as exc:
            raise PreconditionFailure(str(exc)) from None
        return rep.to_dict()

    return run


ANALYSES = {
    "ce-unique": _ce_unique,
    "ce-vertices": _ce_vertices,
    "nash": _nash,
    "symmetric-nash": _symmetric_nash,
    "quasi-strict": _quasi_strict,
    "dual-reduce": _dual_reduce,
    "hs-aux": _hs_aux,
    "zerosum": _zerosum,
    "probe-unique-ce": _probe("unique-ce"),
    "probe-count-nash": _probe("count", "nash"),
    "probe-count-extreme-ce": _probe("count", "extreme_ce"),
    "probe-count-symmetric-nash": _probe("count", "symmetric_nash"),
    "probe-unique-strict": _probe("unique-strict"),
    "probe-symmetric-unique": _probe("symmetric"),
}


# ---------------------------------------------------------------------------
# argument handling


def _rational_arg(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not an exact rational (use p/q or an integer): {text!r}") from None


def _param(text):
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected k=v, got {text!r}")
    return key, value


def _parser():
    p = argparse.ArgumentParser(prog="equirobust", description="Exact equilibrium analysis of finite games.")
    sub = p.add_subparsers(dest="command", required=True)
    ex = sub.add_parser("examples", help="list the built-in example games")
    ex.add_argument("--json", metavar="PATH", help="also write the listing as JSON")
    an = sub.add_parser("analyze", help="run analyses on one game")
    src = an.add_mutually_exclusive_group(required=True)
    src.add_argument("--example", metavar="NAME")
    src.add_argument("--file", metavar="PATH", help="game JSON file ('-' for stdin)")
    an.add_argument("--param", action="append", default=[], type=_param, metavar="k=v")
    an.add_argument("--run", action="append", default=[], choices=sorted(ANALYSES), metavar="ANALYSIS",
                    help=f"one of: {', '.join(sorted(ANALYSES))}")
    an.add_argument("--json", metavar="PATH", help="write the report as JSON ('-' for stdout)")
    an.add_argument("--seed", type=int, default=0)
    an.add_argument("--delta", default="1/100", metavar="p/q")
    an.add_argument("--samples", type=int, default=100)
    an.add_argument("--grid", type=int, default=1000, help="perturbations are multiples of 1/GRID")
    an.add_argument("--workers", type=int, default=1)
    an.add_argument("--along", metavar="PARAM=v1,v2",
                    help="probe the example's family at these parameter values instead of sampling")
    return p


def _load_game(args):
    if args.example:
        if args.example not in REGISTRY:
            raise InputError(f"unknown example {args.example!r}; see 'equirobust examples'")
        example = REGISTRY[args.example]
        unknown = set(args.params) - set(example.params)
        if unknown:
            raise InputError(f"{args.example} takes parameters {list(example.params)}, got {sorted(unknown)}")
        return make_game(args.example, **args.params), {"example": args.example, "params": _fmt(args.params)}
    if args.params:
        raise InputError("--param only applies to --example")
    try:
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    try:
        return Game.from_json(text), {"file": args.file}
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {args.file}: {exc}") from None


def _write(path, text):
    if path == "-":
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _summary(name, payload):
    if name == "ce-unique":
        return f"unique={payload['unique']}" + (f" support={payload['support']}" if payload["unique"] else "")
    if name in ("ce-vertices", "symmetric-nash"):
        return f"count={payload['count']}"
    if name == "nash":
        s = f"count={payload['count']} complete={payload['complete']} degenerate={payload['degenerate']}"
        for c in payload["components"]:
            s += f"\n    component: {'; '.join(c['conditions'])}"
        return s
    if name == "quasi-strict":
        return f"quasi_strict={payload['quasi_strict']}"
    if name == "dual-reduce":
        return f"reduced shape={payload['reduced_game']['strategies']}"
    if name == "hs-aux":
        return f"value={payload['value']} maximizer_optimal_equals_ce={payload['maximizer_optimal_equals_ce']}"
    if name == "zerosum":
        return f"value={payload['value']} row_face_dimension={payload['row_face_dimension']} row_vertices={payload['row_vertices']}"
    if name.startswith("probe-"):
        return json.dumps(payload["aggregates"])
    return ""


def _cmd_examples(args):
    listing = [
        {
            "name": e.name,
            "params": list(e.params),
            "defaults": _fmt(e.defaults),
            "reference_values": _fmt(e.reference_values),
            "description": e.description,
        }
        for e in list_examples()
    ]
    for item in listing:
        sig = ", ".join(f"{p}={d}" for p, d in zip(item["params"], item["defaults"]))
        print(f"{item['name']}({sig}): {item['description']}")
    if args.json:
        _write(args.json, json.dumps({"command": ["examples"], "examples": listing}, indent=2))
    return 0


def _cmd_analyze(args, argv):
    try:
        args.params = dict(args.param)
        params = {k: _rational_arg(v) for k, v in args.params.items()}
        args.params = params
        args.delta = _rational_arg(args.delta)
        if args.samples < 0 or args.workers < 1 or args.grid < 1:
            raise InputError("--samples must be >= 0, --workers and --grid >= 1")
        game, source = _load_game(args)
    except (InputError, GameFormatError, UnknownExampleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    source["fingerprint"] = game.fingerprint()
    source["game"] = game.to_dict()
    report = Report(command=["analyze", *argv], input=source)
    runs = args.run or ["ce-unique", "nash"]
    status = 0
    quiet = args.json == "-"
    for name in runs:
        try:
            payload = ANALYSES[name](game, args)
        except InputError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        except (PreconditionFailure, GameFormatError, ValueError) as exc:
            report.errors[name] = str(exc)
            if not quiet:
                print(f"{name}: precondition failed: {exc}", file=sys.stderr)
            status = 2
            continue
        report.results[name] = payload
        if not quiet:
            print(f"{name}: {_summary(name, payload)}")
    if args.json:
        _write(args.json, report.to_json())
    return status


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; bad input is 1 here
        return 0 if exc.code == 0 else 1
    if args.command == "examples":
        return _cmd_examples(args)
    return _cmd_analyze(args, argv[1:])


if __name__ == "__main__":
    sys.exit(main())
