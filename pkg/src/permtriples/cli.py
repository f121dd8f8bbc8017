"""Command-line interface.

Exit status: 0 completed, 1 counterexample found, 2 input error, 3 capacity error.
Reports go to stdout (or --out); progress and errors go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .algorithms import (
    DEFAULT_ENUMERATION_BOUND,
    DEFAULT_MAX_CATALOG_DEGREE,
    MAX_CATALOG_DEGREE,
    subnormal_chain,
    transitive_groups,
    wielandt_sweep,
    wielandt_verify,
)
from .core import format_cycles
from .errors import CapacityError, InputError, InvariantError
from .triples import descending_chain, is_special, monodromy_splitting, search_special

log = logging.getLogger("permtriples")

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3

COMMANDS = (
    "order",
    "orbit",
    "subnormal",
    "wielandt",
    "triple-check",
    "splitting",
    "chain",
    "search-special",
    "catalog",
)


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    max_degree: int = DEFAULT_MAX_CATALOG_DEGREE
    enumeration_bound: int = DEFAULT_ENUMERATION_BOUND
    jobs: int = 1
    output_format: str = "text"
    point: int | None = None
    out: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if not 1 <= self.max_degree <= MAX_CATALOG_DEGREE:
            raise InputError(f"--max-degree must be between 1 and {MAX_CATALOG_DEGREE}")
        if self.enumeration_bound < 1:
            raise InputError("--bound must be at least 1")
        if self.jobs < 1:
            raise InputError("--jobs must be at least 1")
        if self.output_format not in ("text", "json"):
            raise InputError("--format must be text or json")


@dataclass
class Report:
    data: dict
    text: str
    status: int = EXIT_OK


def _points(ps) -> list[int]:
    return sorted(p + 1 for p in ps)


def _set_text(ps) -> str:
    return "{" + ", ".join(str(p) for p in _points(ps)) + "}"


def _need_inputs(cfg: RunConfig, n: int, what: str) -> None:
    if len(cfg.inputs) != n:
        raise InputError(f"{cfg.command} expects {what}")


def _need_point(cfg: RunConfig, degree: int) -> int:
    if cfg.point is None:
        raise InputError(f"{cfg.command} requires --point")
    if not 1 <= cfg.point <= degree:
        raise InputError(f"--point {cfg.point} out of range 1..{degree}")
    return cfg.point - 1


def _cmd_order(cfg):
    _need_inputs(cfg, 1, "one group file")
    G = io.parse_group_file(cfg.inputs[0])
    data = {
        "degree": G.degree,
        "order": G.order(),
        "base": [b + 1 for b in G.base],
        "transversal_sizes": [len(t) for t in G.transversals],
    }
    return Report(data, f"order {G.order()}")


def _cmd_orbit(cfg):
    _need_inputs(cfg, 1, "one group file")
    G = io.parse_group_file(cfg.inputs[0])
    p = _need_point(cfg, G.degree)
    orb = G.orbit(p)
    return Report({"point": p + 1, "orbit": _points(orb)}, _set_text(orb))


def _cmd_subnormal(cfg):
    _need_inputs(cfg, 2, "a group file G and a subgroup file H")
    G = io.parse_group_file(cfg.inputs[0])
    H = io.parse_group_file(cfg.inputs[1])
    chain = subnormal_chain(H, G)
    if chain is None:
        data = {"subnormal": False, "chain": None}
        text = "subnormal: no"
    else:
        data = {
            "subnormal": True,
            "chain": [io.group_to_json(F) for F in chain.links],
            "chain_orders": [F.order() for F in chain.links],
        }
        names = ["H"] + [io.describe_group(F) for F in chain.links[1:]]
        text = "subnormal: yes\nchain: " + " ◁ ".join(names)
    return Report(data, text)


def _wielandt_json(rep) -> dict:
    return {
        "hypothesis": rep.hypothesis_holds,
        "conclusion": rep.conclusion_holds,
        "witness_g": None if rep.witness_g is None else format_cycles(rep.witness_g),
        "conjugates_checked": rep.conjugates_checked,
    }


def _cmd_wielandt(cfg):
    if not cfg.inputs:
        sweep = wielandt_sweep(cfg.max_degree, jobs=cfg.jobs, bound=cfg.enumeration_bound,
                               catalog_max=cfg.max_degree)
        data = {
            "degrees": list(sweep.degrees),
            "groups_checked": sweep.groups_checked,
            "pairs_checked": sweep.pairs_checked,
            "violations": [
                {"group": io.group_to_json(v.G), "h": io.group_to_json(v.H), "report": _wielandt_json(v.report)}
                for v in sweep.violations
            ],
        }
        text = (
            f"degrees {sweep.degrees[0]}..{sweep.degrees[-1]}: {sweep.groups_checked} groups, "
            f"{sweep.pairs_checked} subgroup pairs, {len(sweep.violations)} violations"
        )
        return Report(data, text, EXIT_COUNTEREXAMPLE if sweep.violations else EXIT_OK)
    _need_inputs(cfg, 2, "a group file G and a subgroup file H, or no files for a sweep")
    G = io.parse_group_file(cfg.inputs[0])
    H = io.parse_group_file(cfg.inputs[1])
    rep = wielandt_verify(H, G, bound=cfg.enumeration_bound)
    text = f"hypothesis: {_yes(rep.hypothesis_holds)}\nconclusion: {_yes(rep.conclusion_holds)}"
    if rep.witness_g is not None:
        text += f"\nwitness g: {format_cycles(rep.witness_g)}"
    if not rep.consistent:
        text += "\nVIOLATION: hypothesis holds but H is not subnormal in G"
    return Report(_wielandt_json(rep), text, EXIT_OK if rep.consistent else EXIT_COUNTEREXAMPLE)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _cmd_triple_check(cfg):
    _need_inputs(cfg, 1, "one triple file")
    t = io.parse_triple_file(cfg.inputs[0])
    rep = is_special(t)
    data = rep.to_json()
    lines = [
        f"trivial: {_yes(rep.is_trivial)}",
        f"condition1: {_yes(rep.condition1)}",
        f"condition2: {_yes(rep.condition2)}",
    ]
    if rep.failing_pair is not None:
        y, z = rep.failing_pair
        lines.append(f"failing pair: ({y + 1}, {z + 1})")
    lines.append(f"special: {_yes(rep.is_special)}")
    status = EXIT_OK
    if rep.is_counterexample:
        lines.append("COUNTEREXAMPLE: non-trivial special triple")
        data = {**data, "triple": io.triple_to_json(t)}
        status = EXIT_COUNTEREXAMPLE
    return Report(data, "\n".join(lines), status)


def _cmd_splitting(cfg):
    _need_inputs(cfg, 1, "one triple file")
    t = io.parse_triple_file(cfg.inputs[0])
    rep = monodromy_splitting(t)
    data = {
        "classes": [_points(c) for c in rep.classes],
        "factor_degree": rep.factor_degree,
        "script_h_order": rep.script_h_order,
    }
    text = (
        "classes: " + " ".join(_set_text(c) for c in rep.classes)
        + f"\nfactor degree: {rep.factor_degree}\norder of generated group: {rep.script_h_order}"
    )
    return Report(data, text)


def _cmd_chain(cfg):
    _need_inputs(cfg, 1, "one triple file")
    t = io.parse_triple_file(cfg.inputs[0])
    y = _need_point(cfg, t.degree)
    chain = descending_chain(t, y)
    data = {
        "point": y + 1,
        "links": [io.group_to_json(F) for F in chain.links],
        "orders": [F.order() for F in chain.links],
        "reached_h": chain.reached_h,
    }
    text = " ▷ ".join(io.describe_group(F) for F in chain.links)
    text += "\nreached H" if chain.reached_h else f"\nstalled at a subgroup of order {chain.fixpoint.order()} != |H|"
    return Report(data, text)


def _cmd_search_special(cfg):
    if cfg.inputs:
        raise InputError("search-special takes no input files")
    if cfg.max_degree < 2:
        raise InputError("search-special needs --max-degree >= 2")
    res = search_special(cfg.max_degree, jobs=cfg.jobs, bound=cfg.enumeration_bound,
                         catalog_max=cfg.max_degree)
    data = {
        "degrees": list(res.degrees),
        "triples_checked": res.triples_checked,
        "counterexamples": [
            {"group": io.group_to_json(c.G), "h_generators": [format_cycles(h) for h in c.H.generators],
             "report": c.report.to_json()}
            for c in res.counterexamples
        ],
        "per_degree": [
            {"degree": s.degree, "transitive_groups": s.groups, "triples": s.triples} for s in res.per_degree
        ],
    }
    text = "\n".join(
        f"degree {s.degree}: {s.groups} transitive groups, {s.triples} triples" for s in res.per_degree
    )
    text += f"\ntriples checked: {res.triples_checked}\ncounterexamples: {len(res.counterexamples)}"
    if res.counterexamples:
        text += "\nFOUND NON-TRIVIAL SPECIAL TRIPLES (see --format json for the full dump)"
    return Report(data, text, EXIT_COUNTEREXAMPLE if res.counterexamples else EXIT_OK)


def _cmd_catalog(cfg):
    if cfg.inputs:
        raise InputError("catalog takes no input files")
    catalogs = [
        transitive_groups(d, max_degree=cfg.max_degree, bound=cfg.enumeration_bound)
        for d in range(1, cfg.max_degree + 1)
    ]
    data = {"catalogs": [io.catalog_to_json(c) for c in catalogs]}
    lines = []
    for c in catalogs:
        lines.append(f"degree {c.degree}: {len(c)} transitive groups up to conjugacy")
        for G in c:
            gens = ", ".join(format_cycles(g) for g in G.generators) or "e"
            lines.append(f"  order {G.order()}: {gens}")
    return Report(data, "\n".join(lines))


HANDLERS = {
    "order": _cmd_order,
    "orbit": _cmd_orbit,
    "subnormal": _cmd_subnormal,
    "wielandt": _cmd_wielandt,
    "triple-check": _cmd_triple_check,
    "splitting": _cmd_splitting,
    "chain": _cmd_chain,
    "search-special": _cmd_search_special,
    "catalog": _cmd_catalog,
}


def render(report: Report, output_format: str) -> str:
    if output_format == "json":
        return json.dumps(report.data, indent=2) + "\n"
    return report.text + "\n"


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        report = HANDLERS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=stderr)
        return EXIT_CAPACITY
    except InvariantError as exc:
        print(f"invariant violated: {exc}", file=stderr)
        return EXIT_COUNTEREXAMPLE
    out = render(report, cfg.output_format)
    if cfg.out:
        Path(cfg.out).write_text(out)
    else:
        stdout.write(out)
    return report.status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permtriples",
        description="Permutation-group checks and exhaustive verification of special triples.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("inputs", nargs="*", help="group or triple JSON files")
    parser.add_argument("--max-degree", type=int, default=DEFAULT_MAX_CATALOG_DEGREE)
    parser.add_argument("--bound", type=int, default=DEFAULT_ENUMERATION_BOUND,
                        help="largest group order that may be enumerated element by element")
    parser.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--point", type=int, help="1-based point")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(name)s: %(message)s")
    try:
        cfg = RunConfig(
            command=args.command,
            inputs=args.inputs,
            max_degree=args.max_degree,
            enumeration_bound=args.bound,
            jobs=args.jobs,
            output_format=args.format,
            point=args.point,
            out=args.out,
        )
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
