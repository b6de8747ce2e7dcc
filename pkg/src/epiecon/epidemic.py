"""Stochastic discrete-time disease dynamics on the daily contact network.

Compartments: susceptible, latent, pre-symptomatic, infectious symptomatic,
infectious asymptomatic, removed (isolated, no longer infectious) and dead.
Latent and pre-symptomatic stages have fixed lengths; the infectious stage is
geometric; deaths follow removal after a fixed delay and are reported with a
notification lag.
"""

from dataclasses import dataclass

import numpy as np
import pandas as pd

from .contacts import LAYERS, N_INDUSTRIES
from .util import ConfigError, RunError, rng_for

S, L, P_S, I_S, I_A, R, D = range(7)
COMPARTMENT_NAMES = ("S", "L", "P_S", "I_S", "I_A", "R", "D")
NEVER = np.iinfo(np.int64).min // 4

_AGE_BAND_EDGES = (10, 20, 30, 40, 50, 60, 70, 80)


@dataclass
class EpiParams:
    """Transmission and progression parameters.

    ``beta`` is the per-contact-weight daily transmission rate of symptomatic
    cases; asymptomatic cases transmit at ``r_asym * beta``. The
    pre-symptomatic rate is derived so that the expected share of
    pre-symptomatic transmission equals ``presym_share``.
    """

    beta: float = 0.004
    r_asym: float = 0.5
    presym_share: float = 0.5
    incubation_days: int = 5
    presym_days: int = 2
    mean_infectious_days: float = 2.5
    isolation_to_death_days: float = 12.5
    notify_delay_days: int = 7
    outdoor_factor: float = 0.05
    symptomatic_prob: tuple = (0.181, 0.181, 0.225, 0.225, 0.300, 0.300, 0.360, 0.360, 0.646)
    ifr: tuple = (
        0.0000161, 0.0000695, 0.000309, 0.000844, 0.00161,
        0.00595, 0.0193, 0.0428, 0.078,
    )
    child_susceptibility: float = 0.56
    child_age_max: int = 18

    def validate(self):
        if self.beta < 0 or self.r_asym < 0 or self.outdoor_factor < 0:
            raise ConfigError("epidemic rates must be nonnegative")
        if not 0 <= self.presym_share < 1:
            raise ConfigError("presym_share must lie in [0, 1)")
        if self.presym_days >= self.incubation_days:
            raise ConfigError("pre-symptomatic period must be shorter than incubation")
        p = np.asarray(self.symptomatic_prob)
        f = np.asarray(self.ifr)
        if np.any((p <= 0) | (p > 1)):
            raise ConfigError("symptomatic probabilities must lie in (0, 1]")
        if np.any(f / p > 1):
            raise ConfigError("ifr / symptomatic probability exceeds 1 for some age band")
        return self

    def age_band(self, ages):
        return np.searchsorted(np.asarray(_AGE_BAND_EDGES), ages, side="right")

    def susceptibility(self, ages):
        return np.where(ages <= self.child_age_max, self.child_susceptibility, 1.0)

    def beta_presym(self, ages):
        """Pre-symptomatic rate implied by the target transmission share.

        With share k, the pre-symptomatic stage (length presym_days) must
        carry k/(1-k) of the expected post-incubation transmission
        (population-weighted mix of symptomatic and asymptomatic rates over
        the mean infectious duration).
        """
        p_mean = float(np.mean(np.asarray(self.symptomatic_prob)[self.age_band(ages)]))
        beta_bar = p_mean * self.beta + (1.0 - p_mean) * self.r_asym * self.beta
        k = self.presym_share
        return beta_bar * self.mean_infectious_days * k / ((1.0 - k) * self.presym_days)


class EpiState:
    """Per-person compartment and scheduled transition days."""

    def __init__(self, population, params: EpiParams):
        n = population.n
        self.params = params.validate()
        self.comp = np.full(n, S, dtype=np.int8)
        self.t_presym = np.full(n, NEVER, dtype=np.int64)
        self.t_infectious = np.full(n, NEVER, dtype=np.int64)
        self.t_removed = np.full(n, NEVER, dtype=np.int64)
        self.t_dead = np.full(n, NEVER, dtype=np.int64)
        self.t_report = np.full(n, NEVER, dtype=np.int64)
        self.will_symptomatic = np.zeros(n, dtype=bool)
        self.age_band = params.age_band(population.age)
        self.chi = params.susceptibility(population.age)
        self.beta_s = params.beta_presym(population.age)
        self.ever_exposed = 0
        # infection provenance log
        self.log_day = []
        self.log_person = []
        self.log_source = []
        self.log_layer = []
        self.log_industry = []

    @property
    def n(self):
        return len(self.comp)

    def counts(self):
        return np.bincount(self.comp, minlength=7)

    def any_active(self):
        return bool(np.any((self.comp == L) | (self.comp == P_S)
                           | (self.comp == I_S) | (self.comp == I_A)))

    def expose(self, persons, day, source, layer, industry):
        self.comp[persons] = L
        self.t_presym[persons] = day + (self.params.incubation_days - self.params.presym_days)
        self.t_infectious[persons] = day + self.params.incubation_days
        self.ever_exposed += len(persons)
        self.log_day.append(np.full(len(persons), day, dtype=np.int64))
        self.log_person.append(np.asarray(persons, dtype=np.int64))
        self.log_source.append(np.asarray(source, dtype=np.int64))
        self.log_layer.append(np.asarray(layer, dtype=np.int64))
        self.log_industry.append(np.asarray(industry, dtype=np.int64))

    def shift_times(self, offset):
        for arr in (self.t_presym, self.t_infectious, self.t_removed,
                    self.t_dead, self.t_report):
            arr += offset
        for arr in self.log_day:
            arr += offset

    def infection_frame(self, population):
        if not self.log_day:
            return pd.DataFrame(
                columns=["day", "person_id", "source_id", "layer", "industry",
                         "age", "age_band", "occupation", "income"]
            )
        day = np.concatenate(self.log_day)
        person = np.concatenate(self.log_person)
        source = np.concatenate(self.log_source)
        layer = np.concatenate(self.log_layer)
        industry = np.concatenate(self.log_industry)
        return pd.DataFrame(
            {
                "day": day,
                "person_id": person,
                "source_id": source,
                "layer": np.array(LAYERS, dtype=object)[layer],
                "industry": industry,
                "age": population.age[person],
                "age_band": self.age_band[person],
                "occupation": population.occupation[person],
                "income": population.income[person],
            }
        )


@dataclass
class DayFilters:
    """Network filtering handed over by the coupling layer for one day.

    ``community_survival`` has one survival probability per industry plus a
    final entry for venues without an industry; ``workplace_absent`` marks
    workers missing from the workplace layer (fired or working from home).
    """

    community_survival: np.ndarray
    workplace_absent: np.ndarray
    schools_open: bool = True

    @classmethod
    def open_world(cls, n_persons):
        return cls(
            community_survival=np.ones(N_INDUSTRIES + 1),
            workplace_absent=np.zeros(n_persons, dtype=bool),
            schools_open=True,
        )


_LAYER_INDEX = {name: i for i, name in enumerate(LAYERS)}


def transmission_step(world, weekday, state: EpiState, params: EpiParams,
                      filters: DayFilters, rng, day):
    """One day of per-edge transmission; returns newly exposed person ids.

    Every susceptible-infectious edge fires independently with probability
    (1 - exp(-beta_type * w)) * chi(susceptible); outdoor community venues
    attenuate the weight; community edges additionally survive the day's
    closure/fear filter; workplace edges require both endpoints present.
    """
    infectious = np.flatnonzero(
        (state.comp == P_S) | (state.comp == I_S) | (state.comp == I_A)
    )
    if len(infectious) == 0:
        return np.empty(0, dtype=np.int64)

    beta_by_comp = np.zeros(7)
    beta_by_comp[I_S] = params.beta
    beta_by_comp[I_A] = params.r_asym * params.beta

    cand_dst, cand_src, cand_layer, cand_ind = [], [], [], []
    for layer in LAYERS:
        if layer == "school" and not filters.schools_open:
            continue
        adj = world.layer_day(layer, weekday)
        src, dst, w, ind, outdoor = adj.edges_from(infectious)
        if len(src) == 0:
            continue
        alive = state.comp[dst] == S
        if layer == "workplace":
            alive &= ~(filters.workplace_absent[src] | filters.workplace_absent[dst])
        src, dst, w, ind, outdoor = (a[alive] for a in (src, dst, w, ind, outdoor))
        if len(src) == 0:
            continue
        if layer == "community":
            surv = filters.community_survival[np.where(ind < 0, N_INDUSTRIES, ind)]
            keep = rng.random(len(src)) < surv
            src, dst, w, ind, outdoor = (a[keep] for a in (src, dst, w, ind, outdoor))
            if len(src) == 0:
                continue
            w = np.where(outdoor, w * params.outdoor_factor, w)
        beta = np.where(state.comp[src] == P_S, state.beta_s, beta_by_comp[state.comp[src]])
        prob = (1.0 - np.exp(-beta * w)) * state.chi[dst]
        fired = rng.random(len(src)) < prob
        if fired.any():
            cand_dst.append(dst[fired])
            cand_src.append(src[fired])
            cand_layer.append(np.full(int(fired.sum()), _LAYER_INDEX[layer], dtype=np.int64))
            cand_ind.append(ind[fired])

    if not cand_dst:
        return np.empty(0, dtype=np.int64)
    dst = np.concatenate(cand_dst)
    src = np.concatenate(cand_src)
    layer = np.concatenate(cand_layer)
    ind = np.concatenate(cand_ind)
    # A person hit over several edges is infected once; provenance takes the
    # first firing edge in layer-canonical order.
    uniq, first = np.unique(dst, return_index=True)
    state.expose(uniq, day, src[first], layer[first], ind[first])
    return uniq


def progression_step(state: EpiState, params: EpiParams, rng, day):
    """Scheduled stage transitions for one day."""
    to_presym = np.flatnonzero((state.comp == L) & (state.t_presym == day))
    state.comp[to_presym] = P_S

    to_inf = np.flatnonzero((state.comp == P_S) & (state.t_infectious == day))
    if len(to_inf):
        sympt = rng.random(len(to_inf)) < np.asarray(params.symptomatic_prob)[state.age_band[to_inf]]
        state.will_symptomatic[to_inf] = sympt
        state.comp[to_inf] = np.where(sympt, I_S, I_A)
        state.t_removed[to_inf] = day + rng.geometric(1.0 / params.mean_infectious_days, len(to_inf))

    to_rem = np.flatnonzero(((state.comp == I_S) | (state.comp == I_A))
                            & (state.t_removed == day))
    if len(to_rem):
        sympt = state.comp[to_rem] == I_S
        state.comp[to_rem] = R
        candidates = to_rem[sympt]
        if len(candidates):
            p = np.asarray(params.symptomatic_prob)[state.age_band[candidates]]
            f = np.asarray(params.ifr)[state.age_band[candidates]]
            dies = rng.random(len(candidates)) < f / p
            doomed = candidates[dies]
            if len(doomed):
                delay = params.isolation_to_death_days
                whole = int(np.floor(delay))
                extra = rng.random(len(doomed)) < (delay - whole)
                state.t_dead[doomed] = day + whole + extra
                state.t_report[doomed] = state.t_dead[doomed] + params.notify_delay_days

    to_dead = np.flatnonzero((state.comp == R) & (state.t_dead == day))
    state.comp[to_dead] = D
    return state


def reported_deaths(state: EpiState, day):
    """Deaths whose notification lands on ``day``."""
    return int(np.sum(state.t_report == day))


def seed_epidemic(population, world, params: EpiParams, n_latent, target_exposed,
                  seed, start_weekday=0, max_attempts=5, max_burn_days=1500):
    """Burn the epidemic in from a handful of latent cases.

    The dynamics run on the unfiltered pre-pandemic network until the
    cumulative number of ever-exposed persons reaches ``target_exposed``;
    scheduled transition days are then shifted so that calendar day 0 is the
    day the target was reached. Raises RunError if the epidemic keeps dying
    out.
    """
    if n_latent < 1:
        raise ConfigError("n_latent must be at least 1")
    filters = DayFilters.open_world(population.n)
    for attempt in range(max_attempts):
        rng = rng_for(seed, 20, attempt)
        state = EpiState(population, params)
        first = rng.choice(population.n, size=min(n_latent, population.n), replace=False)
        state.expose(first, 0, np.full(len(first), -1), np.full(len(first), 0), np.full(len(first), -1))
        # seeding is exogenous: not an edge-borne infection, drop from the log
        state.log_day, state.log_person = [], []
        state.log_source, state.log_layer, state.log_industry = [], [], []

        burn = 0
        while burn < max_burn_days:
            if state.ever_exposed >= target_exposed:
                state.shift_times(-burn)
                return state, burn
            if not state.any_active():
                break
            weekday = (start_weekday + burn) % 7
            transmission_step(world, weekday, state, params, filters, rng, burn)
            progression_step(state, params, rng, burn)
            burn += 1
    raise RunError(
        f"epidemic seeding failed: never reached {target_exposed} exposed "
        f"after {max_attempts} attempts"
    )
