"""Scenario configuration, world construction and the daily step loop.

A *world* is everything reusable across runs of one scenario family:
population, contact templates, the two-region input-output system and the
consumption groups. A *run* adds stochastic dynamics on top with its own
seed. The step order is fixed: economy (using yesterday's reported deaths),
hiring/firing, network filtering (today's fired/home sets, yesterday's
deaths), transmission plus progression, then today's deaths are recorded.
"""

import hashlib
import json
import logging
import time
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from . import contacts, coupling, econ, econio, epidemic, shocks
from .industries import (
    CUSTOMER_FACING,
    ESSENTIAL_LOCAL,
    ESSENTIAL_REST,
    N_INDUSTRIES,
    N_OCCUPATIONS,
)
from .population import PopulationConfig, assign_household_groups, build_population
from .util import ConfigError, rng_for

logger = logging.getLogger(__name__)


@dataclass
class ScenarioConfig:
    """Complete declarative description of one simulation scenario."""

    name: str = "scenario"
    world_seed: int = 0
    population: dict = field(default_factory=dict)
    visit_model: dict = field(default_factory=dict)
    io: dict = field(default_factory=dict)
    consumption: dict = field(default_factory=dict)
    epi: dict = field(default_factory=dict)
    econ: dict = field(default_factory=dict)
    fear: dict = field(default_factory=dict)
    timeline: dict = field(default_factory=dict)
    closure_set: str = "non-essential"
    schools_closed: bool = True
    wfh_mandated: bool = True
    epidemic_reopening: bool = False
    essential_local: list | None = None
    essential_rest: list | None = None
    rest_deaths: dict = field(default_factory=lambda: {"kind": "zeros"})
    gov_shock: float = -0.05
    other_shock: float = 0.30
    seeds: list = field(default_factory=lambda: [1])

    def to_dict(self):
        return {k: v for k, v in self.__dict__.items()}

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        if "epidemic_reopening_flag" in data:
            data["epidemic_reopening"] = data.pop("epidemic_reopening_flag")
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ConfigError(f"scenario: unknown fields {sorted(extra)}")
        cfg = cls(**data)
        cfg.population_config()      # validates
        cfg.timeline_config()
        cfg.fear_config()
        cfg.econ_config()
        cfg.epi_config()
        if cfg.closure_set not in shocks.CLOSURE_SETS:
            raise ConfigError(
                f"closure_set {cfg.closure_set!r} not in {shocks.CLOSURE_SETS}"
            )
        return cfg

    def population_config(self):
        return PopulationConfig.from_dict(self.population)

    def timeline_config(self):
        return coupling.InterventionTimeline.from_dict(self.timeline)

    def fear_config(self):
        return coupling.FearParams(**self.fear).validate()

    def econ_config(self):
        return econ.EconParams(**self.econ).validate()

    def epi_config(self):
        known = {
            "n_latent", "target_exposed", "reference_population", "max_attempts",
        }
        params = {k: v for k, v in self.epi.items() if k not in known}
        for key in ("symptomatic_prob", "ifr"):
            if key in params:
                params[key] = tuple(params[key])
        return epidemic.EpiParams(**params).validate()

    def world_key(self):
        """Hash of the run-independent part of the scenario."""
        payload = {
            "world_seed": self.world_seed,
            "population": self.population,
            "visit_model": self.visit_model,
            "io": self.io,
            "consumption": self.consumption,
            "epi_enabled": self.epi.get("n_latent", 10) > 0,
        }
        blob = json.dumps(payload, sort_keys=True, default=float)
        return hashlib.sha256(blob.encode()).hexdigest()

    def config_hash(self):
        blob = json.dumps(self.to_dict(), sort_keys=True, default=float)
        return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class World:
    population: object
    contact_world: object            # None when the epidemic is disabled
    io: econio.TwoRegionIO
    groups: econ.ConsumptionGroups
    rest_inperson_share: np.ndarray
    rest_labor_weight: np.ndarray
    worker_quintile: np.ndarray      # -1 for non-workers
    income_band_of_group: np.ndarray
    n_income_bands: int


def _build_io(io_cfg):
    mu = econio.MakeUse(
        V=np.asarray(io_cfg["V"], dtype=float),
        U=np.asarray(io_cfg["U"], dtype=float),
        q=np.asarray(io_cfg["q"], dtype=float),
        g=np.asarray(io_cfg["g"], dtype=float),
        h=np.asarray(io_cfg["h"], dtype=float),
        f_c=np.asarray(io_cfg["f_c"], dtype=float),
    )
    Z, A, f, x = econio.make_use_to_industry(mu)
    return econio.regionalize(
        A,
        f,
        y_region=np.asarray(io_cfg["y_region"], dtype=float),
        y_nation=np.asarray(io_cfg["y_nation"], dtype=float),
        delta=float(io_cfg.get("delta", 0.15)),
        x=x,
    )


def _quintiles(values, mask=None):
    """Quintile index (0=lowest) within the masked subset; -1 outside."""
    out = np.full(len(values), -1, dtype=np.int64)
    sel = np.ones(len(values), dtype=bool) if mask is None else np.asarray(mask, dtype=bool)
    if sel.sum() == 0:
        return out
    vals = np.asarray(values, dtype=float)[sel]
    edges = np.quantile(vals, [0.2, 0.4, 0.6, 0.8])
    out[sel] = np.searchsorted(edges, vals, side="right")
    return out


def build_world(scenario: ScenarioConfig):
    """Deterministic world from the scenario's run-independent parts."""
    pop_cfg = scenario.population_config()
    pop = build_population(pop_cfg, scenario.world_seed)

    epi_enabled = scenario.epi.get("n_latent", 10) > 0
    contact_world = None
    if epi_enabled:
        vm = dict(scenario.visit_model)
        n_places = int(vm.pop("n_places", max(40, pop.n // 8)))
        cbg_size = int(vm.pop("cbg_size", 15))
        school_age = tuple(vm.pop("school_age", (5, 18)))
        kappas = vm.pop("kappa", None)
        visit_cfg = contacts.VisitModelConfig(**vm)
        places = contacts.make_places(n_places, scenario.world_seed)
        templates = contacts.build_templates(
            pop, places, visit_cfg, scenario.world_seed,
            cbg_size=cbg_size, kappas=kappas, school_age=school_age,
        )
        contact_world = contacts.ContactWorld(templates, pop.n)

    io = _build_io(scenario.io)

    cons = scenario.consumption
    age_edges = cons.get("age_edges", [0, 25, 35, 45, 55, 65, 200])
    income_edges = cons.get(
        "income_edges", [0, 15e3, 30e3, 40e3, 50e3, 70e3, 100e3, 1e12]
    )
    n_income_bands = len(income_edges) - 1
    assign_household_groups(pop, age_edges, income_edges)
    n_groups = (len(age_edges) - 1) * n_income_bands
    pattern = np.asarray(
        cons.get("spending_pattern", np.ones((n_groups, N_INDUSTRIES))), dtype=float
    )
    if pattern.shape != (n_groups, N_INDUSTRIES):
        raise ConfigError("consumption spending_pattern must be n_groups x n_industries")

    n_g = np.bincount(pop.hh_group, minlength=n_groups).astype(float)
    weight = pattern * n_g[:, None]
    totals = weight.sum(axis=0)
    shares = np.divide(weight, totals[None, :], out=np.zeros_like(weight), where=totals > 0)
    # industries nobody weights explicitly still get their baseline demand,
    # spread per household
    if np.any(totals == 0) and n_g.sum() > 0:
        shares[:, totals == 0] = (n_g / n_g.sum())[:, None]
    c_local = io.final_demand("consumption", "local")
    baseline = np.concatenate(
        [shares * c_local[None, :N_INDUSTRIES], shares * c_local[None, N_INDUSTRIES:]],
        axis=1,
    )
    rest_baseline = io.final_demand("consumption", "rest")

    hh_income = pop.household_income()
    hh_quintile = _quintiles(hh_income)
    groups = econ.ConsumptionGroups(
        baseline=baseline,
        rest_baseline=rest_baseline,
        hh_group=pop.hh_group,
        head_person=pop.head,
        hh_quintile=hh_quintile,
        head_initially_employed=pop.employed[pop.head],
    )

    occ_shares = np.asarray(pop_cfg.occupation_shares, dtype=float)
    rli = np.asarray(pop_cfg.remote_labor_index, dtype=float)
    rest_inperson = 1.0 - occ_shares @ rli
    rest_weight = io.x_rest / io.x_rest.sum()

    worker_quintile = _quintiles(pop.income, mask=pop.employed)
    income_band_of_group = np.arange(n_groups) % n_income_bands

    return World(
        population=pop,
        contact_world=contact_world,
        io=io,
        groups=groups,
        rest_inperson_share=rest_inperson,
        rest_labor_weight=rest_weight,
        worker_quintile=worker_quintile,
        income_band_of_group=income_band_of_group,
        n_income_bands=n_income_bands,
    )


_WORLD_CACHE = {}


def cached_world(scenario: ScenarioConfig):
    key = scenario.world_key()
    if key not in _WORLD_CACHE:
        if len(_WORLD_CACHE) >= 2:
            _WORLD_CACHE.clear()
        _WORLD_CACHE[key] = build_world(scenario)
    return _WORLD_CACHE[key]


def _rest_deaths_series(spec, n_days):
    kind = spec.get("kind", "zeros")
    if kind == "zeros":
        return np.zeros(n_days)
    if kind == "wave":
        return shocks.logistic_wave(
            n_days, spec["peak"], spec["peak_day"], spec["width"]
        )
    if kind == "file":
        return shocks.load_rest_deaths(spec["path"], n_days)
    raise ConfigError(f"rest_deaths kind {kind!r} not recognized")


@dataclass
class RunResult:
    frames: dict
    summary: dict
    timings: dict
    seed: int
    scenario_name: str


class Simulation:
    """One seeded run of a scenario on a prebuilt world."""

    def __init__(self, world: World, scenario: ScenarioConfig, seed):
        self.world = world
        self.scenario = scenario
        self.seed = int(seed)
        self.timeline = scenario.timeline_config()
        self.fear = scenario.fear_config()
        self.epi_params = scenario.epi_config()
        n_days = self.timeline.n_days

        ess_local = np.asarray(
            scenario.essential_local if scenario.essential_local is not None else ESSENTIAL_LOCAL,
            dtype=float,
        )
        ess_rest = np.asarray(
            scenario.essential_rest if scenario.essential_rest is not None else ESSENTIAL_REST,
            dtype=float,
        )
        measures, relax = self.timeline.measures_day, self.timeline.relax_day
        self.schedules = {
            "s_local": shocks.build_supply_shocks(
                ess_local, n_days, measures, relax, scenario.closure_set
            ),
            "s_rest": shocks.build_supply_shocks(
                ess_rest, n_days, measures, relax, scenario.closure_set
            ),
            "gov": shocks.step_series(n_days, measures, scenario.gov_shock),
            "other": shocks.step_series(n_days, measures, scenario.other_shock),
        }
        epi_relax = relax if scenario.epidemic_reopening else n_days
        self.s_epi = shocks.build_supply_shocks(
            ess_local, n_days, measures, epi_relax, scenario.closure_set
        )
        self.rest_deaths = _rest_deaths_series(scenario.rest_deaths, n_days)

        self.econ_sim = econ.EconSim(
            io=world.io,
            population=world.population,
            groups=world.groups,
            params=scenario.econ_config(),
            schedules=self.schedules,
            rest_inperson_share=world.rest_inperson_share,
            rest_labor_weight=world.rest_labor_weight,
            rng=rng_for(self.seed, 1),
        )

        self.n_latent = int(scenario.epi.get("n_latent", 10))
        self.epi_state = None
        self.burn_days = 0
        if self.n_latent > 0:
            ref = float(scenario.epi.get("reference_population", world.population.n))
            target_full = float(scenario.epi.get("target_exposed", self.n_latent))
            target = max(1, int(np.ceil(target_full * world.population.n / ref)))
            self.epi_state, self.burn_days = epidemic.seed_epidemic(
                world.population,
                world.contact_world,
                self.epi_params,
                n_latent=self.n_latent,
                target_exposed=target,
                seed=self.seed,
                start_weekday=self.timeline.weekday(0),
                max_attempts=int(scenario.epi.get("max_attempts", 5)),
            )
        self.rng_epi = rng_for(self.seed, 2)
        self.rng_filters = rng_for(self.seed, 3)

    def _reported(self, day):
        if self.epi_state is None:
            return 0
        return epidemic.reported_deaths(self.epi_state, day)

    def run(self):
        t0 = time.perf_counter()
        world, scenario = self.world, self.scenario
        pop = world.population
        timeline = self.timeline
        n_days = timeline.n_days
        rec = Recorder(world, timeline, n_days)
        timings = {"econ": 0.0, "epidemic": 0.0}

        for t in range(n_days):
            deaths_prev = self._reported(t - 1)
            rest_prev = self.rest_deaths[t - 1] if t >= 1 else 0.0
            lam_local = coupling.behavior_change(self.fear.phi_economic, deaths_prev)
            lam_rest = coupling.behavior_change(self.fear.phi_economic, rest_prev)

            tick = time.perf_counter()
            out = self.econ_sim.step(t, lam_local, lam_rest)
            timings["econ"] += time.perf_counter() - tick

            new_infections = np.empty(0, dtype=np.int64)
            if self.epi_state is not None:
                fired_mask = self.econ_sim.init_employed & ~self.econ_sim.employed_flags
                filters = coupling.contact_filters(
                    self.fear,
                    deaths_prev,
                    self.s_epi[t],
                    t,
                    timeline.measures_day,
                    scenario.schools_closed,
                    scenario.wfh_mandated,
                    can_wfh_workers=pop.can_wfh & self.econ_sim.employed_flags,
                    fired_mask=fired_mask,
                    rng=self.rng_filters,
                )
                tick = time.perf_counter()
                new_infections = epidemic.transmission_step(
                    world.contact_world, timeline.weekday(t), self.epi_state,
                    self.epi_params, filters, self.rng_epi, t,
                )
                epidemic.progression_step(self.epi_state, self.epi_params, self.rng_epi, t)
                timings["epidemic"] += time.perf_counter() - tick

            rec.record(
                t,
                econ_sim=self.econ_sim,
                econ_out=out,
                epi_state=self.epi_state,
                reported_today=self._reported(t),
                deaths_used_by_econ=deaths_prev,
                new_infections=new_infections,
                lam_eco=lam_local,
                lam_epi=coupling.behavior_change(self.fear.phi_epidemic, deaths_prev),
            )

        frames = rec.frames(self.epi_state)
        timings["total"] = time.perf_counter() - t0
        return RunResult(
            frames=frames,
            summary=rec.summary(),
            timings=timings,
            seed=self.seed,
            scenario_name=scenario.name,
        )


class Recorder:
    """Accumulates per-day outputs and converts them to tidy frames."""

    def __init__(self, world: World, timeline, n_days):
        self.world = world
        self.timeline = timeline
        n2 = 2 * world.io.n
        pop = world.population
        self.n_days = n_days
        self.n_tracts = int(pop.tract.max()) + 1
        self.comp = np.zeros((n_days, 7), dtype=np.int64)
        self.reported = np.zeros(n_days, dtype=np.int64)
        self.new_inf = np.zeros(n_days, dtype=np.int64)
        self.inf_by_layer = np.zeros((n_days, 4), dtype=np.int64)
        self.used_deaths = np.zeros(n_days)
        self.lam_eco = np.zeros(n_days)
        self.lam_epi = np.zeros(n_days)
        self.l_p = np.zeros((n_days, n2))
        self.l_h = np.zeros((n_days, n2))
        self.x = np.zeros((n_days, n2))
        self.d = np.zeros((n_days, n2))
        self.cap = np.zeros((n_days, n2))
        self.c_real = np.zeros((n_days, n2))
        self.z_rows = np.zeros((n_days, n2))
        self.va = np.zeros((n_days, n2))
        self.gov_real = np.zeros((n_days, n2))
        self.other_real = np.zeros((n_days, n2))
        self.unemployment = np.zeros(n_days)
        self.occ_employed = np.zeros((n_days, N_OCCUPATIONS), dtype=np.int64)
        self.tract_employed = np.zeros((n_days, self.n_tracts), dtype=np.int64)
        self.band_consumption = np.zeros((n_days, world.n_income_bands))
        self.quintile_consumption = np.zeros((n_days, 5))
        self.quintile_workers = np.zeros((n_days, 5), dtype=np.int64)
        self._init_employed_total = float(pop.employed.sum())
        self._init_quintile_workers = np.bincount(
            world.worker_quintile[world.worker_quintile >= 0], minlength=5
        )

    def record(self, t, econ_sim, econ_out, epi_state, reported_today,
               deaths_used_by_econ, new_infections, lam_eco, lam_epi):
        w = self.world
        if epi_state is not None:
            self.comp[t] = epi_state.counts()
        else:
            self.comp[t, epidemic.S] = w.population.n
        self.reported[t] = reported_today
        self.new_inf[t] = len(new_infections)
        if epi_state is not None and len(new_infections):
            # transmission appends one provenance block per day
            if len(epi_state.log_day) and epi_state.log_day[-1][0] == t:
                self.inf_by_layer[t] = np.bincount(epi_state.log_layer[-1], minlength=4)
        self.used_deaths[t] = deaths_used_by_econ
        self.lam_eco[t] = lam_eco
        self.lam_epi[t] = lam_epi

        self.l_p[t] = econ_out["l_p"]
        self.l_h[t] = econ_out["l_h"]
        self.x[t] = econ_out["x"]
        self.d[t] = econ_out["d"]
        self.cap[t] = econ_out["cap"]
        self.c_real[t] = econ_out["c_realized"]
        self.z_rows[t] = econ_out["z_rows"]
        self.va[t] = econ_out["va"]
        self.gov_real[t] = econ_out["gov_realized"]
        self.other_real[t] = econ_out["other_realized"]

        flags = econ_sim.employed_flags
        employed_now = float(flags.sum())
        self.unemployment[t] = 1.0 - employed_now / self._init_employed_total

        pop = w.population
        workers = econ_sim.init_employed
        self.occ_employed[t] = np.bincount(
            pop.occupation[workers & flags], minlength=N_OCCUPATIONS
        )
        self.tract_employed[t] = np.bincount(
            pop.tract[workers & flags], minlength=self.n_tracts
        )
        q = w.worker_quintile
        self.quintile_workers[t] = np.bincount(
            q[(q >= 0) & flags], minlength=5
        )
        # realized consumption by household income band and quintile
        ratio = econ_out["ratio"]
        group_real = econ_out["c_groups_demand"] * ratio[None, :]
        by_group = group_real.sum(axis=1)
        np.add.at(self.band_consumption[t], w.income_band_of_group, by_group)
        self.quintile_consumption[t] = econ_sim.quintile_consumption(econ_out).sum(axis=0)

    # ------------------------------------------------------------------

    def _dates(self):
        return [self.timeline.date_of(t).isoformat() for t in range(self.n_days)]

    def frames(self, epi_state):
        w = self.world
        n = w.io.n
        days = np.arange(self.n_days)
        epi_frame = pd.DataFrame(
            {
                "day": days,
                "date": self._dates(),
                **{
                    name.lower(): self.comp[:, i]
                    for i, name in enumerate(epidemic.COMPARTMENT_NAMES)
                },
                "reported_deaths": self.reported,
                "new_infections": self.new_inf,
                **{
                    f"inf_{layer}": self.inf_by_layer[:, i]
                    for i, layer in enumerate(contacts.LAYERS)
                },
            }
        )

        region = np.array(["local"] * n + ["rest"] * n, dtype=object)
        econ_industry = pd.DataFrame(
            {
                "day": np.repeat(days, 2 * n),
                "region": np.tile(region, self.n_days),
                "industry": np.tile(np.tile(np.arange(n), 2), self.n_days),
                "employed_inperson": self.l_p.ravel(),
                "employed_fromhome": self.l_h.ravel(),
                "output": self.x.ravel(),
                "demand": self.d.ravel(),
                "capacity": self.cap.ravel(),
                "consumption_realized": self.c_real.ravel(),
                "intermediate_realized": self.z_rows.ravel(),
                "gov_realized": self.gov_real.ravel(),
                "other_realized": self.other_real.ravel(),
                "value_added": self.va.ravel(),
            }
        )

        cf2 = np.concatenate([CUSTOMER_FACING, CUSTOMER_FACING])
        econ_aggregate = pd.DataFrame(
            {
                "day": days,
                "date": self._dates(),
                "unemployment_rate": self.unemployment,
                "gdp_local": self.va[:, :n].sum(axis=1),
                "gdp_total": self.va.sum(axis=1),
                "employment_local": (self.l_p[:, :n] + self.l_h[:, :n]).sum(axis=1),
                "consumption_customer_facing": self.c_real[:, cf2].sum(axis=1),
                "consumption_other": self.c_real[:, ~cf2].sum(axis=1),
                "other_demand_realized": self.other_real.sum(axis=1),
                "gov_demand_realized": self.gov_real.sum(axis=1),
                "reported_deaths": self.reported,
                "deaths_used_by_econ": self.used_deaths,
                "lambda_eco": self.lam_eco,
                "lambda_epi": self.lam_epi,
            }
        )

        occ = pd.DataFrame(
            {
                "day": np.repeat(days, N_OCCUPATIONS),
                "occupation": np.tile(np.arange(N_OCCUPATIONS), self.n_days),
                "employed": self.occ_employed.ravel(),
            }
        )
        tract = pd.DataFrame(
            {
                "day": np.repeat(days, self.n_tracts),
                "tract_id": np.tile(np.arange(self.n_tracts), self.n_days),
                "employed": self.tract_employed.ravel(),
            }
        )
        bands = pd.DataFrame(
            {
                "day": np.repeat(days, self.world.n_income_bands),
                "income_band": np.tile(np.arange(self.world.n_income_bands), self.n_days),
                "consumption_realized": self.band_consumption.ravel(),
            }
        )
        quintiles = pd.DataFrame(
            {
                "day": np.repeat(days, 5),
                "quintile": np.tile(np.arange(5), self.n_days),
                "consumption_realized": self.quintile_consumption.ravel(),
                "workers_employed": self.quintile_workers.ravel(),
                "workers_initial": np.tile(self._init_quintile_workers, self.n_days),
            }
        )
        if epi_state is not None:
            infections = epi_state.infection_frame(w.population)
            if len(infections):
                infections["income_quintile"] = w.worker_quintile[
                    infections["person_id"].to_numpy()
                ]
            else:
                infections["income_quintile"] = np.empty(0, dtype=np.int64)
        else:
            infections = pd.DataFrame(
                columns=["day", "person_id", "source_id", "layer", "industry",
                         "age", "age_band", "occupation", "income", "income_quintile"]
            )
        return {
            "epidemic": epi_frame,
            "econ_industry": econ_industry,
            "econ_aggregate": econ_aggregate,
            "econ_occupation": occ,
            "econ_tract": tract,
            "econ_income_bands": bands,
            "econ_quintiles": quintiles,
            "infections": infections,
        }

    def summary(self):
        return {
            "mean_unemployment": float(self.unemployment.mean()),
            "cumulative_deaths": int(self.comp[-1, epidemic.D]),
            "cumulative_reported_deaths": int(self.reported.sum()),
            "total_infected": int(self.world.population.n - self.comp[-1, epidemic.S]),
        }


def run_scenario(scenario: ScenarioConfig, seed, world=None):
    """Build (or reuse) the world and execute one seeded run."""
    if world is None:
        world = cached_world(scenario)
    return Simulation(world, scenario, seed).run()


def run_summary_job(args):
    """(scenario_dict, seed) -> run summary dict; picklable worker for pools."""
    scenario_dict, seed = args
    scenario = ScenarioConfig.from_dict(scenario_dict)
    result = run_scenario(scenario, seed)
    return result.summary


def quintile_drops(frames):
    """Mean employment and consumption drops by income quintile over the
    simulation period, from one run's output frames."""
    q = frames["econ_quintiles"]
    workers = q.pivot(index="day", columns="quintile", values="workers_employed").to_numpy()
    initial = q[q["day"] == 0].sort_values("quintile")["workers_initial"].to_numpy().astype(float)
    emp_drop = 1.0 - (workers / initial).mean(axis=0)
    cons = q.pivot(index="day", columns="quintile", values="consumption_realized").to_numpy()
    cons_drop = 1.0 - (cons / cons[0]).mean(axis=0)
    return emp_drop, cons_drop


def run_distribution_job(args):
    """(scenario_dict, seed) -> (summary, employment drop by quintile,
    consumption drop by quintile); picklable worker for pools."""
    scenario_dict, seed = args
    scenario = ScenarioConfig.from_dict(scenario_dict)
    result = run_scenario(scenario, seed)
    emp_drop, cons_drop = quintile_drops(result.frames)
    return result.summary, emp_drop, cons_drop
