"""Command-line entry point.

Subcommands: gen-population, build-io, simulate, sweep, calibrate. All
commands are pure functions of (config file, seed) to output bytes. Exit
codes: 0 success, 2 configuration error, 3 runtime failure.
"""

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import calibrate, output
from .population import PopulationConfig, build_population
from .simulation import ScenarioConfig, Simulation, cached_world
from .util import ConfigError, RunError

EXIT_CONFIG = 2
EXIT_RUNTIME = 3
WORKERS_ENV = "EPIECON_WORKERS"


def _load_json(path):
    try:
        with open(path) as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as err:
        raise ConfigError(f"config file {path} is not valid JSON: {err}")


def _workers(args):
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return max(1, int(getattr(args, "workers", 1) or 1))


def cmd_gen_population(args):
    started = time.time()
    config = PopulationConfig.from_dict(_load_json(args.config))
    pop = build_population(config, args.seed)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    pop.to_csv(outdir / "population.csv")
    import hashlib

    blob = json.dumps(config.to_dict(), sort_keys=True, default=float).encode()
    output.write_manifest(
        outdir, hashlib.sha256(blob).hexdigest(), [args.seed],
        ["population.csv"], time.time() - started,
        extra={"n_persons": pop.n, "n_households": pop.n_households},
    )
    print(f"wrote population of {pop.n} persons to {outdir}")
    return 0


def cmd_build_io(args):
    started = time.time()
    cfg = _load_json(args.config)
    from .simulation import _build_io

    io = _build_io(cfg)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    io.to_dataframe().to_csv(outdir / "io_table.csv")
    io.value_added_frame().to_csv(outdir / "io_value_added.csv", index=False)
    import hashlib

    blob = json.dumps(cfg, sort_keys=True, default=float).encode()
    output.write_manifest(
        outdir, hashlib.sha256(blob).hexdigest(), [0],
        ["io_table.csv", "io_value_added.csv"], time.time() - started,
    )
    print(f"wrote two-region tables to {outdir}")
    return 0


def cmd_simulate(args):
    started = time.time()
    scenario = ScenarioConfig.from_dict(_load_json(args.config))
    seed = args.seed if args.seed is not None else (scenario.seeds[0] if scenario.seeds else 1)
    world = cached_world(scenario)
    result = Simulation(world, scenario, seed).run()
    output.write_run(args.out, result, scenario.config_hash(), started, profile=args.profile)
    print(f"simulated {scenario.name!r} seed {seed}: {result.summary}")
    return 0


def _sweep_cell(job):
    """Run one (cell, seed) and write its output directory; returns the
    aggregate row only (keeps inter-process traffic small)."""
    scenario_dict, seed, cell_dir, profile, started = job
    scenario = ScenarioConfig.from_dict(scenario_dict)
    world = cached_world(scenario)
    result = Simulation(world, scenario, seed).run()
    output.write_run(cell_dir, result, scenario.config_hash(), started, profile=profile)
    return {
        "closure_set": scenario.closure_set,
        "fear_multiplier": scenario.fear["multiplier"],
        "measures_start": scenario.timeline["measures_start"],
        "seed": seed,
        "mean_unemployment": result.summary["mean_unemployment"],
        "cumulative_deaths": result.summary["cumulative_deaths"],
        "cumulative_reported_deaths": result.summary["cumulative_reported_deaths"],
        "total_infected": result.summary["total_infected"],
    }


def cmd_sweep(args):
    started = time.time()
    grid = _load_json(args.config)
    base = grid.get("scenario")
    if base is None:
        raise ConfigError("sweep config needs a 'scenario' entry")
    closure_sets = grid.get("closure_sets", [base.get("closure_set", "non-essential")])
    fears = grid.get("fear_multipliers", [1.0])
    measures = grid.get("measures_starts", ["baseline"])
    seeds = grid.get("seeds", base.get("seeds", [1]))
    if not closure_sets or not fears or not measures or not seeds:
        raise ConfigError("sweep grid is empty")

    from .coupling import InterventionTimeline

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    jobs, cells = [], []
    for closure in closure_sets:
        for fear in fears:
            for when in measures:
                cell = {k: v for k, v in base.items()}
                cell["closure_set"] = closure
                cell["fear"] = dict(cell.get("fear", {}), multiplier=float(fear))
                timeline = InterventionTimeline.with_measures(when) if isinstance(when, str) \
                    else InterventionTimeline.from_dict(when)
                cell["timeline"] = timeline.to_dict()
                name = output.sweep_cell_name(closure, float(fear), str(when))
                cell["name"] = name
                ScenarioConfig.from_dict(cell)   # validate early
                cells.append(name)
                for seed in seeds:
                    jobs.append(
                        (cell, int(seed), outdir / name / f"seed{seed}",
                         args.profile, started)
                    )

    workers = _workers(args)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_cell, jobs, chunksize=1))
    else:
        rows = [_sweep_cell(job) for job in jobs]
    output.write_sweep_tables(outdir, rows)
    output.write_manifest(
        outdir, "sweep", seeds, ["runs.csv", "aggregate.csv"] + cells,
        time.time() - started,
    )
    print(f"swept {len(cells)} cells x {len(seeds)} seeds into {outdir}")
    return 0


def cmd_calibrate(args):
    started = time.time()
    spec = _load_json(args.config)
    scenario = spec.get("scenario")
    if scenario is None:
        raise ConfigError("calibrate config needs a 'scenario' entry")
    priors = calibrate.PriorBox(spec.get("priors", {})).validate()
    thresholds = calibrate.Thresholds(**spec.get("thresholds", {})).validate()
    n_samples = int(spec.get("n_samples", 1000))
    seed = int(spec.get("seed", 0))

    targets_spec = spec.get("targets", {})
    if targets_spec.get("mode") == "ground-truth":
        targets = calibrate.ground_truth_targets(
            scenario, targets_spec["params"], int(targets_spec.get("seed", 12345))
        )
    else:
        targets = calibrate.TargetSet(
            weekly_deaths_per_1000=np.asarray(targets_spec["weekly_deaths_per_1000"], dtype=float),
            econ_drops={k: float(v) for k, v in targets_spec["econ_drops"].items()},
        ).validate()

    runner = calibrate.scenario_runner(scenario)
    result = calibrate.abc_reject(
        runner, priors, targets, thresholds, n_samples, seed, workers=_workers(args)
    )
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    result.to_csv(outdir / "abc_samples.csv")
    result.accepted.to_csv(outdir / "abc_accepted.csv", index=False)
    import hashlib

    blob = json.dumps(spec, sort_keys=True, default=float).encode()
    output.write_manifest(
        outdir, hashlib.sha256(blob).hexdigest(), [seed],
        ["abc_samples.csv", "abc_accepted.csv"], time.time() - started,
        extra={"n_accepted": int(len(result.accepted)), "n_samples": n_samples},
    )
    print(f"accepted {len(result.accepted)} of {n_samples} combinations -> {outdir}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="epiecon",
        description="Coupled epidemic / two-region economy simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-population", help="generate a synthetic population CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_population)

    p = sub.add_parser("build-io", help="build the two-region input-output tables")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build_io)

    p = sub.add_parser("simulate", help="run one scenario")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--profile", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="run a counterfactual scenario grid")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--profile", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("calibrate", help="ABC rejection calibration")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_calibrate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except RunError as err:
        print(f"runtime failure: {err}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
