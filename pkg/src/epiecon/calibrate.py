"""Rejection-sampling calibration of the free behavioural parameters.

Parameter combinations are drawn uniformly from a prior box, each one is run
with its own seed, and a combination is kept when every summary statistic
falls within its threshold of the target. Accepted combinations form the
posterior; counterfactual runs draw from them uniformly.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from .util import ConfigError, RunError, rng_for

CALIBRATED_PARAMS = (
    "beta", "fear_epidemic", "fear_ratio", "fear_unemployment",
    "realloc_share", "gamma_hire", "gamma_fire",
)

ECON_STATS = (
    "ny_employment", "ny_gdp", "us_gdp",
    "other_final_demand", "cf_consumption", "ncf_consumption",
)


@dataclass
class PriorBox:
    """Uniform ranges per calibrated parameter."""

    ranges: dict

    def validate(self):
        for name, (lo, hi) in self.ranges.items():
            if name not in CALIBRATED_PARAMS:
                raise ConfigError(f"prior for unknown parameter {name!r}")
            if not lo < hi:
                raise ConfigError(f"prior for {name}: lower bound must be below upper")
        return self

    def sample(self, n, seed):
        rng = rng_for(seed, 40)
        names = sorted(self.ranges)
        draws = {
            name: rng.uniform(*self.ranges[name], size=n) for name in names
        }
        return pd.DataFrame(draws)


@dataclass
class Thresholds:
    deaths: float = 0.012          # weekly deaths per 1000 persons
    ny: float = 0.01               # NY employment and GDP drop error
    us: float = 0.02               # US-wide GDP / consumption drop error
    other: float = 0.04            # other final demand drop error

    def validate(self):
        if min(self.deaths, self.ny, self.us, self.other) <= 0:
            raise ConfigError("thresholds must be positive")
        return self


@dataclass
class TargetSet:
    weekly_deaths_per_1000: np.ndarray
    econ_drops: dict = field(default_factory=dict)

    def validate(self):
        missing = set(ECON_STATS) - set(self.econ_drops)
        if missing:
            raise ConfigError(f"target set misses statistics: {sorted(missing)}")
        return self


def q2_mask(timeline):
    return np.array([timeline.date_of(t).month in (4, 5, 6) for t in range(timeline.n_days)])


def run_summaries(frames, timeline, n_persons):
    """Calibration statistics from one run's output frames.

    Economic drops are the Q2 mean of the quantity relative to its initial
    steady-state value, minus one; the death statistic is the weekly reported
    death count per 1000 persons.
    """
    agg = frames["econ_aggregate"]
    mask = q2_mask(timeline)

    def drop(col):
        series = agg[col].to_numpy()
        return float((series[mask] / series[0]).mean() - 1.0)

    reported = agg["reported_deaths"].to_numpy()
    n_weeks = len(reported) // 7
    weekly = reported[: n_weeks * 7].reshape(n_weeks, 7).sum(axis=1)
    return {
        "weekly_deaths_per_1000": weekly * 1000.0 / n_persons,
        "ny_employment": drop("employment_local"),
        "ny_gdp": drop("gdp_local"),
        "us_gdp": drop("gdp_total"),
        "other_final_demand": drop("other_demand_realized"),
        "cf_consumption": drop("consumption_customer_facing"),
        "ncf_consumption": drop("consumption_other"),
    }


def summary_errors(summary, targets: TargetSet):
    """Absolute errors of one run's summaries against the targets; the death
    curve error is the mean absolute weekly deviation per 1000."""
    model = np.asarray(summary["weekly_deaths_per_1000"], dtype=float)
    target = np.asarray(targets.weekly_deaths_per_1000, dtype=float)
    n = min(len(model), len(target))
    errors = {"deaths": float(np.mean(np.abs(model[:n] - target[:n])))}
    for stat in ECON_STATS:
        errors[stat] = abs(summary[stat] - targets.econ_drops[stat])
    return errors


def accept(errors, thresholds: Thresholds):
    """Pure accept/reject decision from one run's summary errors."""
    limit = {
        "deaths": thresholds.deaths,
        "ny_employment": thresholds.ny,
        "ny_gdp": thresholds.ny,
        "us_gdp": thresholds.us,
        "cf_consumption": thresholds.us,
        "ncf_consumption": thresholds.us,
        "other_final_demand": thresholds.other,
    }
    return all(errors[k] <= limit[k] for k in limit)


def _evaluate(args):
    runner, params, run_seed, index = args
    return index, runner(params, run_seed)


@dataclass
class AbcResult:
    table: pd.DataFrame       # all samples with errors and the accepted flag
    accepted: pd.DataFrame    # accepted parameter rows

    def to_csv(self, path):
        self.table.to_csv(path, index=False)


def abc_reject(runner, priors: PriorBox, targets: TargetSet, thresholds: Thresholds,
               n_samples, seed, workers=1):
    """Rejection calibration: run every sampled combination with its own seed
    and keep those within thresholds.

    ``runner(params: dict, seed: int) -> summary dict`` must be a pure
    function of its arguments. Raises RunError with nearest-miss diagnostics
    when nothing is accepted.
    """
    priors.validate()
    targets.validate()
    thresholds.validate()
    samples = priors.sample(n_samples, seed)
    jobs = [
        (runner, samples.iloc[i].to_dict(), seed + 1 + i, i)
        for i in range(n_samples)
    ]
    results = [None] * n_samples
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for index, summary in pool.map(_evaluate, jobs, chunksize=4):
                results[index] = summary
    else:
        for job in jobs:
            index, summary = _evaluate(job)
            results[index] = summary

    rows = []
    for i, summary in enumerate(results):
        errors = summary_errors(summary, targets)
        row = dict(samples.iloc[i])
        row["sample"] = i
        row["run_seed"] = seed + 1 + i
        row.update({f"err_{k}": v for k, v in errors.items()})
        row.update({f"sum_{k}": summary[k] for k in ECON_STATS})
        row["accepted"] = accept(errors, thresholds)
        rows.append(row)
    table = pd.DataFrame(rows)
    accepted = table[table["accepted"]].reset_index(drop=True)
    if accepted.empty:
        nearest = {
            col: float(table[col].min()) for col in table.columns if col.startswith("err_")
        }
        raise RunError(f"ABC accepted nothing out of {n_samples}; nearest misses: {nearest}")
    return AbcResult(table=table, accepted=accepted)


def posterior_sample(accepted: pd.DataFrame, n_draws, seed):
    """Uniform-with-replacement draws over the accepted combinations."""
    if len(accepted) == 0:
        raise ValueError("cannot sample from an empty accepted set")
    rng = rng_for(seed, 41)
    idx = rng.integers(len(accepted), size=n_draws)
    return accepted.iloc[idx].reset_index(drop=True)


def apply_params(scenario_dict, params):
    """Scenario dict with the calibrated parameters substituted in."""
    out = {k: (dict(v) if isinstance(v, dict) else v) for k, v in scenario_dict.items()}
    for name, value in params.items():
        value = float(value)
        if name == "beta":
            out["epi"]["beta"] = value
        elif name == "fear_epidemic":
            out["fear"]["fear_epidemic"] = value
        elif name == "fear_ratio":
            out["fear"]["fear_ratio"] = value
        elif name in ("fear_unemployment", "realloc_share", "gamma_hire", "gamma_fire"):
            out["econ"][name] = value
        else:
            raise ConfigError(f"cannot place parameter {name!r} in a scenario")
    return out


class ScenarioRunner:
    """Picklable runner over one scenario family; the world is shared across
    samples since the calibrated parameters only affect run-time dynamics."""

    def __init__(self, scenario_dict):
        self.scenario_dict = scenario_dict

    def __call__(self, params, run_seed):
        from .simulation import ScenarioConfig, Simulation, cached_world

        cfg = ScenarioConfig.from_dict(apply_params(self.scenario_dict, params))
        world = cached_world(cfg)
        result = Simulation(world, cfg, run_seed).run()
        return run_summaries(result.frames, cfg.timeline_config(), world.population.n)


def scenario_runner(scenario_dict):
    return ScenarioRunner(scenario_dict)


def ground_truth_targets(scenario_dict, params, seed):
    """Targets generated by a known-parameter run (recovery mode)."""
    runner = scenario_runner(scenario_dict)
    summary = runner(params, seed)
    return TargetSet(
        weekly_deaths_per_1000=np.asarray(summary["weekly_deaths_per_1000"]),
        econ_drops={k: summary[k] for k in ECON_STATS},
    )
