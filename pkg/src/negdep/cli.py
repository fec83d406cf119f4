"""Command-line front end: run JSON scenario files, emit golden reports.

Every subcommand except ``golden`` takes one scenario file whose ``kind``
matches the subcommand, validates its payload against the published schema,
runs the corresponding library operations, and prints a report.  Reports are
deterministic apart from the ``timing_seconds`` field; golden emission leaves
that field out so the files are byte-stable.

Exit codes: 0 success, 1 unreadable or schema-invalid input, 2 domain errors
(violated mathematical preconditions), 3 exhausted enumeration budget.
"""
from __future__ import annotations

import argparse
import dataclasses
import enum
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Union

import jsonschema

from . import __version__
from .construct import (
    build_comonotonic,
    build_pcm,
    decompose_pcm,
    refine_for_marginals,
)
from .dependence import (
    classify_mutual_exclusivity,
    frechet_lower_bound,
    is_comonotonic,
    is_joint_mix,
    is_negatively_associated,
    is_negative_orthant_dependent,
    is_pairwise_counter_monotonic,
    joint_cdf,
)
from .errors import (
    InputError,
    IoError,
    NegdepError,
    ParseError,
    SchemaError,
    TooLarge,
)
from .frechet import (
    classify_both_support,
    construct_pcm_with_marginals,
    joint_mix_feasible,
    supports_pcm,
)
from .rationals import format_rational
from .risk import (
    bernoulli_aggregation_bounds,
    coupling_sum_distribution,
    coupling_vertices,
    es,
    var,
)
from .sharing import (
    Allocation,
    QuantileAgents,
    auction_optimum,
    comonotonic_gap,
    inf_convolution_var,
    levels_for_allocation,
    optimal_allocation,
    verify_pareto,
)
from .space import (
    Composition,
    DiscreteDistribution,
    RandomVariable,
    RandomVector,
    Space,
    make_space,
)

__all__ = ["Report", "run_scenario", "emit_golden", "main", "KINDS"]

KINDS = ("check", "construct", "frechet", "aggregate", "share", "auction")

BUDGET_ENV = "NEGDEP_BUDGET"


# --- encoding ---------------------------------------------------------------------


def _enc(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, DiscreteDistribution):
        return {
            "points": [_enc(p) for p in obj.points],
            "masses": [_enc(m) for m in obj.masses],
        }
    if isinstance(obj, Space):
        return {
            "atoms": list(obj.atoms),
            "masses": [_enc(obj.prob[a]) for a in obj.atoms],
        }
    if isinstance(obj, RandomVariable):
        return [_enc(obj.value[a]) for a in obj.space.atoms]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: _enc(getattr(obj, f.name)) for f in dataclasses.fields(obj)
        }
    if isinstance(obj, dict):
        return {str(k): _enc(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_enc(v) for v in obj]
    if obj is None or isinstance(obj, (bool, int, str, float)):
        return obj
    raise TypeError(f"cannot encode {type(obj).__name__}")


@dataclass(frozen=True)
class Report:
    """Outcome of one scenario run; serialises deterministically sans timing."""

    kind: str
    scenario: dict
    results: dict
    library_version: str
    timing_seconds: Optional[float]

    def to_jsonable(self, include_timing: bool = True) -> dict:
        doc = {
            "kind": self.kind,
            "library_version": self.library_version,
            "scenario": self.scenario,
            "results": _enc(self.results),
        }
        if include_timing and self.timing_seconds is not None:
            doc["timing_seconds"] = self.timing_seconds
        return doc

    def to_json(self, include_timing: bool = True) -> str:
        return (
            json.dumps(self.to_jsonable(include_timing), indent=2, sort_keys=True)
            + "\n"
        )


def render_table(report: Report) -> str:
    """Flat key/value rendering of a report for terminal reading."""
    lines = [f"kind            {report.kind}",
             f"library_version {report.library_version}"]

    def emit(prefix: str, value) -> None:
        if isinstance(value, dict):
            if not value:
                lines.append(f"{prefix}  {{}}")
            for k in sorted(value):
                emit(f"{prefix}.{k}" if prefix else str(k), value[k])
        else:
            rendered = json.dumps(value) if isinstance(value, list) else str(value)
            lines.append(f"{prefix}  {rendered}")

    emit("", _enc(report.results))
    return "\n".join(line for line in lines if line.strip()) + "\n"


# --- scenario parsing --------------------------------------------------------------


def _schema_for(kind: str) -> dict:
    ref = resources.files(__package__) / "schemas" / f"{kind}.json"
    return json.loads(ref.read_text(encoding="utf-8"))


def validate_scenario(doc) -> None:
    """Envelope and payload validation against the published schemas."""
    if not isinstance(doc, dict):
        raise SchemaError("scenario must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise SchemaError(f"unknown scenario kind: {kind!r}")
    payload = doc.get("payload")
    if not isinstance(payload, dict):
        raise SchemaError("scenario payload must be a JSON object")
    stray = set(doc) - {"kind", "payload"}
    if stray:
        raise SchemaError(f"unexpected scenario keys: {sorted(stray)}")
    try:
        jsonschema.validate(payload, _schema_for(kind))
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"payload does not match the {kind} schema: "
                          f"{exc.message}") from exc


def _space(payload) -> Space:
    return make_space(payload["space"])


def _vector(space: Space, rows) -> RandomVector:
    return RandomVector.from_rows(space, rows)


def _marginal(obj) -> DiscreteDistribution:
    return DiscreteDistribution(tuple(obj["points"]), tuple(obj["masses"]))


# --- per-kind runners ---------------------------------------------------------------


def _run_check(payload: dict, budget: Optional[int]) -> dict:
    space = _space(payload)
    vector = _vector(space, payload["vector"])
    na = is_negatively_associated(vector, budget)
    return {
        "pairwise_counter_monotonic": is_pairwise_counter_monotonic(vector),
        "comonotonic": is_comonotonic(vector),
        "mutual_exclusivity": classify_mutual_exclusivity(vector),
        "joint_mix_center": is_joint_mix(vector),
        "negatively_associated": na.negatively_associated,
        "na_witness": na.witness,
        "negative_orthant_dependent": is_negative_orthant_dependent(vector),
    }


def _run_construct(payload: dict, budget: Optional[int]) -> dict:
    op = payload["op"]
    space = _space(payload)
    if op == "build_pcm":
        z = RandomVariable.from_values(space, payload["z"])
        comp = Composition.from_index_lists(space, payload["composition"])
        vector = build_pcm(z, comp, payload["shifts"])
        return {
            "components": list(vector.components),
            "pairwise_counter_monotonic": is_pairwise_counter_monotonic(vector),
            "mutual_exclusivity": classify_mutual_exclusivity(vector),
        }
    if op == "decompose_pcm":
        vector = _vector(space, payload["vector"])
        rep = decompose_pcm(vector)
        index = {a: t for t, a in enumerate(space.atoms)}
        return {
            "kind": rep.kind,
            "z": rep.z,
            "blocks": [sorted(index[a] for a in b) for b in rep.composition.blocks],
            "shifts": list(rep.shifts),
            "total_shift": rep.total_shift,
            "roundtrip_exact": rep.realize() == vector,
        }
    marginals = [_marginal(m) for m in payload["marginals"]]
    target = space
    if payload.get("refine_space"):
        target, _ = refine_for_marginals(space, marginals)
    vector = build_comonotonic(target, marginals)
    return {
        "space": target,
        "components": list(vector.components),
        "comonotonic": is_comonotonic(vector),
    }


def _run_frechet(payload: dict, budget: Optional[int]) -> dict:
    marginals = [_marginal(m) for m in payload["marginals"]]
    support = supports_pcm(marginals)
    form = classify_both_support(marginals)
    feasible = joint_mix_feasible(marginals, budget)
    results = {
        "supports_pcm": support,
        "both_support": None if form is None else _tagged_form(form),
        "joint_mix_feasible": feasible,
        "joint_mix_center": (
            sum((F.mean() for F in marginals), Fraction(0)) if feasible else None
        ),
    }
    if "construct_on" in payload:
        base = make_space(payload["construct_on"])
        built = construct_pcm_with_marginals(base, marginals)
        results["construction"] = {
            "space": built.space,
            "components": list(built.vector.components),
            "matches_frechet_lower_bound": _matches_lower_bound(
                built.vector, marginals, budget
            ),
        }
    return results


def _tagged_form(form) -> dict:
    doc = {"variant": type(form).__name__.removesuffix("Form")}
    doc.update(_enc(form))
    return doc


def _matches_lower_bound(vector, marginals, budget: Optional[int]) -> bool:
    import itertools as _it

    limit = 1_000_000 if budget is None else int(budget)
    grids = [F.points for F in marginals]
    count = 1
    for g in grids:
        count *= len(g)
        if count > limit:
            raise TooLarge(f"{count}+ grid points exceed budget {limit}")
    return all(
        joint_cdf(vector, point) == frechet_lower_bound(marginals, point)
        for point in _it.product(*grids)
    )


def _run_aggregate(payload: dict, budget: Optional[int]) -> dict:
    report = bernoulli_aggregation_bounds(
        payload["n"], payload["epsilon"], payload["alpha"]
    )
    results = {
        "var_worst": report.var_worst,
        "var_best": report.var_best,
        "es_cm": report.es_cm,
        "es_comonotonic": report.es_comonotonic,
        "worst_sum": report.worst_sum,
        "comonotonic_sum": report.comonotonic_sum,
    }
    if payload.get("oracle"):
        marginals = [DiscreteDistribution.bernoulli(report.epsilon)] * report.n
        verts = coupling_vertices(marginals, budget)
        sums = [coupling_sum_distribution(vtx) for vtx in verts]
        results["oracle"] = {
            "vertex_count": len(verts),
            "var_worst_confirmed": max(
                var(d, report.alpha) for d in sums
            ) == report.var_worst,
            "es_min_confirmed": min(
                es(d, report.alpha) for d in sums
            ) == report.es_cm,
        }
    return results


def _run_share(payload: dict, budget: Optional[int]) -> dict:
    op = payload["op"]
    space = _space(payload)
    if op == "optimal":
        total = RandomVariable.from_values(space, payload["total"])
        agents = QuantileAgents(tuple(payload["levels"]))
        alloc = optimal_allocation(total, agents)
        individual = [
            var(X, a)
            for X, a in zip(alloc.components.components, agents.levels)
        ]
        return {
            "inf_convolution": inf_convolution_var(total, agents),
            "space": alloc.space,
            "components": list(alloc.components.components),
            "total": alloc.total,
            "individual_var": individual,
            "sum_var": sum(individual, Fraction(0)),
            "pareto": verify_pareto(alloc, agents),
        }
    vector = _vector(space, payload["components"])
    if "total" in payload:
        alloc = Allocation(vector, RandomVariable.from_values(space, payload["total"]))
    else:
        alloc = Allocation.of_sum(vector)
    if op == "recover_levels":
        agents = levels_for_allocation(alloc)
        return {
            "levels": list(agents.levels),
            "pareto": verify_pareto(alloc, agents),
        }
    agents = QuantileAgents(tuple(payload["levels"]))
    individual = [
        var(X, a) for X, a in zip(alloc.components.components, agents.levels)
    ]
    shared = {
        "compatible": agents.compatible,
        "sum_var": sum(individual, Fraction(0)),
        "inf_convolution": (
            inf_convolution_var(alloc.total, agents) if agents.compatible else None
        ),
    }
    if op == "verify":
        shared["pareto"] = verify_pareto(alloc, agents)
        return shared
    shared["gap"] = comonotonic_gap(alloc, agents)
    return shared


def _run_auction(payload: dict, budget: Optional[int]) -> dict:
    space = _space(payload)
    result = auction_optimum(
        payload["n"], payload["alpha"], space, payload["grid"], budget
    )
    return {
        "value": result.value,
        "maximizer_count": len(result.maximizers),
        "maximizers": [
            list(m.components.components) for m in result.maximizers
        ],
    }


_RUNNERS = {
    "check": _run_check,
    "construct": _run_construct,
    "frechet": _run_frechet,
    "aggregate": _run_aggregate,
    "share": _run_share,
    "auction": _run_auction,
}


# --- entry points ------------------------------------------------------------------


def _load_doc(source: Union[str, Path, dict]) -> dict:
    if isinstance(source, dict):
        return source
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read scenario file {source}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"scenario file {source} is not valid JSON: {exc}") from exc


def run_scenario(
    source: Union[str, Path, dict], budget: Optional[int] = None
) -> Report:
    """Validate and execute one scenario; returns the full report."""
    doc = _load_doc(source)
    validate_scenario(doc)
    kind = doc["kind"]
    started = time.perf_counter()
    results = _RUNNERS[kind](doc["payload"], budget)
    elapsed = time.perf_counter() - started
    return Report(
        kind=kind,
        scenario=doc,
        results=results,
        library_version=__version__,
        timing_seconds=elapsed,
    )


def _ex1_scenario() -> dict:
    """Independent-split allocation of a 10-point uniform total: never optimal."""
    weights = ["1/2", "1/4", "1/4"]
    masses, rows = [], [[], [], []]
    for s in range(1, 11):
        for k, w in enumerate(weights):
            cell = Fraction(w) * Fraction(1, 10)
            masses.append(f"{cell.numerator}/{cell.denominator}")
            for i in range(3):
                rows[i].append(f"{s}/10" if i == k else "0/1")
    return {
        "kind": "share",
        "payload": {
            "op": "verify",
            "space": masses,
            "components": rows,
            "levels": ["1/10", "1/10", "1/10"],
        },
    }


def golden_scenarios() -> dict:
    """The fixed scenario set emitted by the ``golden`` subcommand."""
    return {
        "bernoulli_var_worst.json": {
            "kind": "aggregate",
            "payload": {"n": 3, "epsilon": "1/10", "alpha": "1/4"},
        },
        "lottery_na.json": {
            "kind": "check",
            "payload": {
                "space": ["1/3", "1/3", "1/3"],
                "vector": [
                    ["1", "0", "0"],
                    ["0", "1", "0"],
                    ["0", "0", "1"],
                ],
            },
        },
        "counterexample_ex1.json": _ex1_scenario(),
        "optimal_example.json": {
            "kind": "share",
            "payload": {
                "op": "optimal",
                "space": ["1/10"] * 10,
                "total": [f"{k}/10" for k in range(1, 11)],
                "levels": ["1/10", "1/10", "1/10"],
            },
        },
        "auction.json": {
            "kind": "auction",
            "payload": {
                "n": 2,
                "alpha": "1/2",
                "space": ["1"],
                "grid": ["0", "1/2", "1"],
            },
        },
    }


def emit_golden(outdir: Union[str, Path]) -> list:
    """Write the five golden reports (timing omitted); returns the paths."""
    out = Path(outdir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create {out}: {exc}") from exc
    if not out.is_dir():
        raise IoError(f"{out} is not a directory")
    paths = []
    for name, doc in golden_scenarios().items():
        report = run_scenario(doc)
        try:
            (out / name).write_text(
                report.to_json(include_timing=False), encoding="utf-8"
            )
        except OSError as exc:
            raise IoError(f"cannot write {out / name}: {exc}") from exc
        paths.append(out / name)
    return paths


def _resolve_budget(flag: Optional[int]) -> Optional[int]:
    if flag is not None:
        return flag
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise ParseError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from exc


def main(argv: Optional[list] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="negdep",
        description="Exact checks and constructions for extreme negative "
        "dependence and quantile risk sharing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in KINDS:
        p = sub.add_parser(kind, help=f"run a '{kind}' scenario file")
        p.add_argument("scenario", help="path to the scenario JSON file")
        p.add_argument("--budget", type=int, default=None,
                       help="enumeration budget (overrides $" + BUDGET_ENV + ")")
        p.add_argument("--output", default=None,
                       help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "table"), default="json")
    g = sub.add_parser("golden", help="emit the golden report files")
    g.add_argument("outdir", help="directory to write the golden files into")
    args = parser.parse_args(argv)
    try:
        if args.command == "golden":
            for path in emit_golden(args.outdir):
                print(path)
            return 0
        doc = _load_doc(args.scenario)
        if isinstance(doc, dict) and doc.get("kind") != args.command:
            raise SchemaError(
                f"scenario kind {doc.get('kind')!r} does not match "
                f"subcommand {args.command!r}"
            )
        report = run_scenario(doc, budget=_resolve_budget(args.budget))
        text = report.to_json() if args.format == "json" else render_table(report)
        if args.output:
            try:
                Path(args.output).write_text(text, encoding="utf-8")
            except OSError as exc:
                raise IoError(f"cannot write {args.output}: {exc}") from exc
        else:
            sys.stdout.write(text)
        return 0
    except (InputError, IoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NegdepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
