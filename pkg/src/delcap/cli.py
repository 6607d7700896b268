"""Command-line surface: build coefficient tables, evaluate and sweep
bounds, print limiting slopes, and run the lemma suite.

Exit codes: 0 success, 1 usage or input error, 2 lemma violation,
3 solver non-convergence. Bound values are emitted as CSV with header
`kind,params,d,value,side,tolerance`; floats are printed with repr so
identical runs produce identical bytes.
"""

import argparse
import dataclasses
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .baa import DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE
from .bounds import (BoundSpec, compose_best_upper, d_grid, evaluate_bound,
                     limit_large_d_c2, limit_small_d_c2, limit_small_d_c3,
                     resolve_l_max, sweep_bound)
from .channel import DEFAULT_ENTRY_BUDGET
from .errors import DelcapError, ParameterError, SolverNotConvergedError
from .lemmas import conjecture2_report, verify_lemma_suite
from .tables import (DEFAULT_DIAGONAL_L_MAX, DEFAULT_L_MAX, CoefficientTable,
                     load_table, populate_table, save_table, serialize_table)

CSV_HEADER = "kind,params,d,value,side,tolerance"
DEFAULT_GRID = (0.01, 0.99, 0.01)

# anything deeper than this needs --allow-long; keeps casual runs quick
LONG_RUN_LIMIT = 14


@dataclass
class RunConfig:
    command: str
    kind: str = None
    L: int = None
    R: int = None
    D: int = None
    l_max: int = None
    diagonal_l_max: int = None
    d: float = None
    grid: tuple = None
    solver_tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    entry_budget: int = DEFAULT_ENTRY_BUDGET
    cache_path: str = None
    output_path: str = None
    tail_cut: int = None
    policy: str = "optimized"
    allow_long: bool = False
    jobs: int = 1


def _grid_triple(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected START:STOP:STEP, got {text!r}")
    try:
        return tuple(float(part) for part in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"non-numeric field in {text!r}") from None


def _add_bound_flags(parser):
    parser.add_argument(
        "--kind", required=True,
        choices=("c1_star", "c2_star", "c3", "c4", "lower", "erasure", "best"),
        help="bound family; `lower` picks its input via --policy, `best` "
             "(sweep only) composes the table-backed upper bounds")
    parser.add_argument("--L", type=int, help="block length for c3/c4/lower"
                        " (for `best`, adds a c4 spec at this L)")
    parser.add_argument("--R", type=int, help="survivor count for c2_star")
    parser.add_argument("--D", type=int, help="deletion count for c1_star; "
                        "omit in sweeps to scan D and keep the per-d minimum")
    parser.add_argument("--tail-cut", dest="tail_cut", type=int,
                        help="truncate the c1_star series at this block "
                             "length instead of closing it geometrically")
    parser.add_argument("--policy", choices=("optimized", "iud"),
                        default="optimized",
                        help="input distribution for `lower`: solver-"
                             "optimized or uniform")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="delcap",
        description="Certified capacity bounds for the iid binary "
                    "deletion channel.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", dest="cache_path", metavar="PATH",
                        help="coefficient table file; read by every "
                             "command, written only by `table`")
    common.add_argument("--out", dest="output_path", metavar="PATH",
                        help="write output here instead of stdout")
    common.add_argument("--tol", dest="solver_tolerance", type=float,
                        default=DEFAULT_TOLERANCE,
                        help="certified bracket width for capacity solves"
                             " (bits)")
    common.add_argument("--max-iter", dest="max_iterations", type=int,
                        default=DEFAULT_MAX_ITERATIONS,
                        help="iteration ceiling per capacity solve")
    common.add_argument("--entry-budget", dest="entry_budget", type=int,
                        default=DEFAULT_ENTRY_BUDGET,
                        help="refuse channel builds above this many matrix"
                             " entries")
    common.add_argument("--l-max", dest="l_max", type=int,
                        help="largest block length served from the table")
    common.add_argument("--jobs", type=int, default=1,
                        help="worker threads for table builds and sweeps")
    common.add_argument("--allow-long", dest="allow_long",
                        action="store_true",
                        help=f"permit depths past {LONG_RUN_LIMIT} (hours"
                             " of runtime)")

    p_table = sub.add_parser(
        "table", parents=[common],
        help="populate the coefficient table and print it")
    p_table.add_argument("--diag-l-max", dest="diagonal_l_max", type=int,
                         help="extend the single-deletion diagonal past"
                              " --l-max")

    p_bound = sub.add_parser("bound", parents=[common],
                             help="evaluate one bound at one d")
    _add_bound_flags(p_bound)
    p_bound.add_argument("--d", type=float, required=True,
                         help="deletion probability")

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="CSV of one bound over a d-grid")
    _add_bound_flags(p_sweep)
    p_sweep.add_argument("--d-grid", dest="grid", type=_grid_triple,
                         metavar="START:STOP:STEP",
                         help="inclusive grid (default 0.01:0.99:0.01)")

    p_limits = sub.add_parser(
        "limits", parents=[common],
        help="limiting slopes of the bounds at d->0 and d->1")
    p_limits.add_argument("--L", type=int,
                          help="block length for the c3 small-d slope")
    p_limits.add_argument("--R", type=int,
                          help="survivor count for the c2_star slopes")

    sub.add_parser("verify", parents=[common],
                   help="run the lemma suite against the table")
    return parser


def parse_args(argv=None):
    namespace = build_parser().parse_args(argv)
    known = {f.name for f in dataclasses.fields(RunConfig)}
    return RunConfig(**{key: value for key, value in vars(namespace).items()
                        if key in known})


def _usage(message):
    print(f"error: {message}", file=sys.stderr)
    return 1


def _gate_long(config, value, what):
    if value > LONG_RUN_LIMIT and not config.allow_long:
        raise ParameterError(
            f"{what}={value} exceeds the quick-run limit {LONG_RUN_LIMIT};"
            " pass --allow-long to proceed")


def _table_kwargs(config):
    return dict(tolerance=config.solver_tolerance,
                max_iterations=config.max_iterations,
                entry_budget=config.entry_budget)


def _load_context_table(config):
    if config.cache_path and os.path.exists(config.cache_path):
        return load_table(config.cache_path, **_table_kwargs(config))
    return CoefficientTable(l_max=0, **_table_kwargs(config))


def _default_depth(config, table):
    # a loaded cache speaks for itself; a fresh table gets the stock depth
    if table.l_max == 0 and not table.entries:
        table.l_max = config.l_max if config.l_max is not None else DEFAULT_L_MAX
    return config.l_max if config.l_max is not None else table.l_max


def _family_l_max(config, table, kind, **anchor):
    if config.l_max is not None:
        return config.l_max
    return resolve_l_max(table, kind, **anchor)


def _write_output(config, text):
    if config.output_path:
        Path(config.output_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _format_params(parameters):
    return ";".join(f"{key}={parameters[key]}" for key in sorted(parameters))


def _csv(rows):
    lines = [CSV_HEADER]
    for kind, parameters, d, value, side, tolerance in rows:
        lines.append(f"{kind},{_format_params(parameters)},{d!r},{value!r},"
                     f"{side},{tolerance!r}")
    return "\n".join(lines) + "\n"


def _run_table(config):
    l_max = config.l_max if config.l_max is not None else DEFAULT_L_MAX
    if config.diagonal_l_max is not None:
        diag = config.diagonal_l_max
    elif config.l_max is None:
        diag = DEFAULT_DIAGONAL_L_MAX
    else:
        diag = l_max
    if diag < l_max:
        return _usage("--diag-l-max must be at least --l-max")
    _gate_long(config, max(l_max, diag), "l_max")
    table = _load_context_table(config)
    table.l_max = max(table.l_max, l_max)
    populate_table(table, diagonal_l_max=max(diag, table.l_max),
                   jobs=config.jobs)
    if config.cache_path:
        save_table(table, config.cache_path)
    _write_output(config, serialize_table(table))
    return 0


def _resolve_kind_spec(config, table):
    kind, tol = config.kind, config.solver_tolerance
    if kind == "erasure":
        return BoundSpec("erasure", {}, tol)
    if kind in ("c3", "c4", "lower"):
        if config.L is None:
            raise ParameterError(f"--kind {kind} needs --L")
        if kind == "c3":
            return BoundSpec("c3", {"L": config.L}, tol)
        if kind == "c4":
            return BoundSpec("c4", {"L": config.L}, tol)
        actual = "lower_opt" if config.policy == "optimized" else "lower_iud"
        return BoundSpec(actual, {"L": config.L}, tol)
    if kind == "c1_star":
        if config.D is None:
            raise ParameterError(
                "--kind c1_star needs --D here; only sweeps may omit it")
        parameters = {"D": config.D,
                      "l_max": _family_l_max(config, table, "c1_star",
                                             D=config.D)}
        if config.tail_cut is not None:
            parameters["tail_cut"] = config.tail_cut
        return BoundSpec("c1_star", parameters, tol)
    if kind == "c2_star":
        if config.R is None:
            raise ParameterError("--kind c2_star needs --R")
        return BoundSpec("c2_star",
                         {"R": config.R,
                          "l_max": _family_l_max(config, table, "c2_star",
                                                 R=config.R)}, tol)
    raise ParameterError(f"--kind {kind} is not a single bound")


def _prepare_table_for_spec(config, table, spec):
    if spec.kind == "c3":
        needed = spec.parameters["L"]
    elif spec.kind in ("c1_star", "c2_star"):
        needed = spec.parameters["l_max"]
    else:
        needed = 0
    if needed:
        _gate_long(config, needed, "l_max")
        table.l_max = max(table.l_max, needed)
    if spec.kind in ("c4", "lower_opt", "lower_iud"):
        _gate_long(config, spec.parameters["L"], "L")


def _run_bound(config):
    if config.kind == "best":
        return _usage("--kind best is available in sweep only")
    table = _load_context_table(config)
    if config.kind in ("c1_star", "c2_star") and config.l_max is None:
        _default_depth(config, table)
    spec = _resolve_kind_spec(config, table)
    _prepare_table_for_spec(config, table, spec)
    value = evaluate_bound(spec, config.d, table)
    rows = [(spec.kind, spec.parameters, config.d, value, spec.side,
             spec.solver_tolerance)]
    _write_output(config, _csv(rows))
    return 0


def _sweep_c1_scan(config, table, grid):
    top = _default_depth(config, table)
    _gate_long(config, top, "l_max")
    specs = []
    for D in range(top + 1):
        parameters = {"D": D,
                      "l_max": _family_l_max(config, table, "c1_star", D=D)}
        if config.tail_cut is not None:
            parameters["tail_cut"] = config.tail_cut
        specs.append(BoundSpec("c1_star", parameters, config.solver_tolerance))
    table.l_max = max(table.l_max, top)
    rows = []
    for d in grid:
        if d == 0.0 or d == 1.0:
            rows.append(("c1_star", specs[0].parameters, d, 1.0 - d, "upper",
                         config.solver_tolerance))
            continue
        best_value, best_spec = None, None
        for spec in specs:
            value = evaluate_bound(spec, d, table)
            if best_value is None or value < best_value:
                best_value, best_spec = value, spec
        rows.append(("c1_star", best_spec.parameters, d, best_value, "upper",
                     config.solver_tolerance))
    return rows


def _sweep_best(config, table, grid):
    top = _default_depth(config, table)
    _gate_long(config, top, "l_max")
    table.l_max = max(table.l_max, top)
    tol = config.solver_tolerance
    specs = []
    for D in range(top + 1):
        specs.append(BoundSpec(
            "c1_star", {"D": D, "l_max": _family_l_max(config, table,
                                                       "c1_star", D=D)}, tol))
    for R in range(top + 1):
        specs.append(BoundSpec(
            "c2_star", {"R": R, "l_max": _family_l_max(config, table,
                                                       "c2_star", R=R)}, tol))
    for L in range(1, top + 1):
        specs.append(BoundSpec("c3", {"L": L}, tol))
    if config.L is not None:
        _gate_long(config, config.L, "L")
        specs.append(BoundSpec("c4", {"L": config.L}, tol))
    rows = []
    for d in grid:
        if d == 0.0 or d == 1.0:
            rows.append(("best", {"winner": "erasure"}, d, 1.0 - d, "upper",
                         tol))
            continue
        value, winner = compose_best_upper(d, specs, table)
        parameters = dict(winner.parameters)
        parameters["winner"] = winner.kind
        rows.append(("best", parameters, d, value, "upper", tol))
    return rows


def _run_sweep(config):
    grid = d_grid(*(config.grid if config.grid is not None else DEFAULT_GRID))
    table = _load_context_table(config)
    if config.kind == "best":
        rows = _sweep_best(config, table, grid)
    elif config.kind == "c1_star" and config.D is None:
        rows = _sweep_c1_scan(config, table, grid)
    else:
        spec = _resolve_kind_spec(config, table)
        _prepare_table_for_spec(config, table, spec)
        curve = sweep_bound(spec, grid, table, jobs=config.jobs)
        rows = [(spec.kind, spec.parameters, d, value, side,
                 spec.solver_tolerance)
                for (d, value, side) in curve.points]
    _write_output(config, _csv(rows))
    return 0


def _run_limits(config):
    if config.L is None and config.R is None:
        return _usage("limits needs --L and/or --R")
    table = _load_context_table(config)
    _default_depth(config, table)
    tol = config.solver_tolerance
    rows = []
    if config.L is not None:
        _gate_long(config, config.L, "L")
        table.l_max = max(table.l_max, config.L)
        rows.append(("limit_small_d_c3", {"L": config.L}, 0.0,
                     limit_small_d_c3(config.L, table), "lower", tol))
    if config.R is not None:
        _gate_long(config, config.R + 1, "L")
        table.l_max = max(table.l_max, config.R + 1)
        rows.append(("limit_small_d_c2", {"R": config.R}, 0.0,
                     limit_small_d_c2(config.R, table), "lower", tol))
        lm = _family_l_max(config, table, "c2_star", R=config.R)
        _gate_long(config, lm, "l_max")
        table.l_max = max(table.l_max, lm)
        rows.append(("limit_large_d_c2", {"R": config.R, "l_max": lm}, 1.0,
                     limit_large_d_c2(config.R, lm, table), "upper", tol))
    _write_output(config, _csv(rows))
    return 0


def _run_verify(config):
    table = _load_context_table(config)
    depth = _default_depth(config, table)
    _gate_long(config, depth, "l_max")
    table.l_max = max(table.l_max, depth)
    populate_table(table, diagonal_l_max=table.l_max, jobs=config.jobs)
    reports = verify_lemma_suite(table)
    _write_output(config,
                  "".join(report.summary() + "\n" for report in reports))
    observation = conjecture2_report(table)
    print(f"observation: {observation.summary()}", file=sys.stderr)
    return 2 if any(report.violations for report in reports) else 0


_HANDLERS = {
    "table": _run_table,
    "bound": _run_bound,
    "sweep": _run_sweep,
    "limits": _run_limits,
    "verify": _run_verify,
}


def run(config):
    return _HANDLERS[config.command](config)


def main(argv=None):
    try:
        config = parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags and 0 on --help; fold the former
        # into the documented usage status
        return 0 if (exc.code or 0) == 0 else 1
    try:
        return run(config)
    except SolverNotConvergedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DelcapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
