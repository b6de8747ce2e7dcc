"""Synthetic population: households, ages, jobs, occupations, incomes.

The generator fills census tracts with persons grouped into households, then
layers on employment (tract x age-band rates), industry (tract shares),
occupation (industry shares allocated with tract-level weights), the ability
to work from home (per-occupation remote-labor index) and income (log-normal
per industry-occupation pair with age, tract and global rescaling stages).
"""

from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from scipy.stats import norm

from .industries import (
    INDUSTRY_CODES,
    N_INDUSTRIES,
    N_OCCUPATIONS,
    OCCUPATION_CODES,
    REMOTE_LABOR_INDEX,
)
from .util import ConfigError, rng_for

ADULT_AGE = 18
QUANTILE_PROBS = (0.10, 0.25, 0.50, 0.75, 0.90)

_EPI_STATES = ("S", "L", "P_S", "I_S", "I_A", "R", "D")


def _check_shares(name, arr, axis=-1, tol=1e-9):
    arr = np.asarray(arr, dtype=float)
    if np.any(arr < -tol):
        raise ConfigError(f"{name}: negative share entries")
    sums = arr.sum(axis=axis)
    if np.any(np.abs(sums - 1.0) > tol):
        raise ConfigError(f"{name}: share vectors must sum to 1 (got {sums})")
    return arr


@dataclass
class PopulationConfig:
    """Declarative inputs for the synthetic population.

    All share tables must sum to one along their last axis; income quantiles
    must be strictly increasing. ``employment_rates`` may contain NaN only for
    (tract, band) cells that never occur.
    """

    tract_populations: list            # persons per tract
    age_values: list                   # support of the age distribution (years)
    age_probs: list
    household_size_probs: list         # P(size = i+1)
    employment_age_edges: list         # band edges, half-open [e0, e1), ...
    employment_rates: list             # n_tracts x n_bands
    industry_shares: list              # n_tracts x n_industries
    occupation_shares: list            # n_industries x n_occupations
    tract_occupation_shares: list      # n_tracts x n_occupations
    income_quantiles: list             # n_industries x n_occupations x 5
    earnings_age_edges: list
    earnings_age_scalars: list
    remote_labor_index: list = field(default_factory=lambda: REMOTE_LABOR_INDEX.tolist())
    tract_mean_household_income: list | None = None
    retirement_ratio: float = 0.60     # 65+ mean income vs 55-64 mean
    mean_income_target: float | None = None

    def validate(self):
        pops = np.asarray(self.tract_populations, dtype=int)
        if len(pops) == 0 or np.any(pops < 0):
            raise ConfigError("tract_populations: need nonnegative counts")
        _check_shares("age_probs", self.age_probs)
        if len(self.age_values) != len(self.age_probs):
            raise ConfigError("age distribution: values and probs differ in length")
        _check_shares("household_size_probs", self.household_size_probs)
        rates = np.asarray(self.employment_rates, dtype=float)
        if rates.shape != (len(pops), len(self.employment_age_edges) - 1):
            raise ConfigError("employment_rates: shape must be n_tracts x n_bands")
        with np.errstate(invalid="ignore"):
            if np.any((rates < 0) | (rates > 1)):
                raise ConfigError("employment_rates: rates must lie in [0, 1]")
        _check_shares("industry_shares", self.industry_shares)
        _check_shares("occupation_shares", self.occupation_shares)
        _check_shares("tract_occupation_shares", self.tract_occupation_shares)
        q = np.asarray(self.income_quantiles, dtype=float)
        if q.shape != (N_INDUSTRIES, N_OCCUPATIONS, len(QUANTILE_PROBS)):
            raise ConfigError("income_quantiles: shape must be industries x occupations x 5")
        finite = ~np.isnan(q).any(axis=-1)
        if np.any(np.diff(q[finite], axis=-1) <= 0):
            raise ConfigError("income_quantiles: quantiles must be strictly increasing")
        rli = np.asarray(self.remote_labor_index, dtype=float)
        if np.any((rli < 0) | (rli > 1)):
            raise ConfigError("remote_labor_index: values must lie in [0, 1]")
        if len(self.earnings_age_scalars) != len(self.earnings_age_edges) - 1:
            raise ConfigError("earnings_age_scalars: one scalar per age band required")
        return self

    def to_dict(self):
        return {k: (v.tolist() if isinstance(v, np.ndarray) else v)
                for k, v in self.__dict__.items()}

    @classmethod
    def from_dict(cls, data):
        known = {f for f in cls.__dataclass_fields__}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"population config: unknown fields {sorted(extra)}")
        return cls(**data).validate()


class Population:
    """Array-backed person and household table.

    Persons of one household are contiguous; households are contiguous per
    tract. ``industry``/``occupation`` use -1 for "none". ``employed`` is the
    only attribute mutated after generation (by the labor market).
    """

    def __init__(self, household_id, tract, age):
        n = len(age)
        self.person_id = np.arange(n, dtype=np.int64)
        self.household_id = np.asarray(household_id, dtype=np.int64)
        self.tract = np.asarray(tract, dtype=np.int64)
        self.age = np.asarray(age, dtype=np.int64)
        self.employed = np.zeros(n, dtype=bool)
        self.industry = np.full(n, -1, dtype=np.int64)
        self.occupation = np.full(n, -1, dtype=np.int64)
        self.can_wfh = np.zeros(n, dtype=bool)
        self.income = np.zeros(n, dtype=float)

        # household index: start offset and size per household id
        ids, starts, sizes = np.unique(self.household_id, return_index=True, return_counts=True)
        order = np.argsort(starts)
        self.hh_start = starts[order]
        self.hh_size = sizes[order]
        self.hh_tract = self.tract[self.hh_start]
        self.head = self.hh_start.copy()           # recomputed once incomes exist
        self.hh_group = np.full(len(ids), -1, dtype=np.int64)

    @property
    def n(self):
        return len(self.person_id)

    @property
    def n_households(self):
        return len(self.hh_start)

    @property
    def adult(self):
        return self.age >= ADULT_AGE

    def household_income(self):
        return np.add.reduceat(self.income, self.hh_start)

    def assign_heads(self):
        """Head = member with the highest income; ties go to the lowest id."""
        for h in range(self.n_households):
            lo = self.hh_start[h]
            hi = lo + self.hh_size[h]
            self.head[h] = lo + int(np.argmax(self.income[lo:hi]))
        return self

    def to_dataframe(self, epi_state=None):
        ind = np.array([""] + INDUSTRY_CODES, dtype=object)[self.industry + 1]
        occ = np.array([""] + OCCUPATION_CODES, dtype=object)[self.occupation + 1]
        state = epi_state if epi_state is not None else np.full(self.n, "S", dtype=object)
        return pd.DataFrame(
            {
                "person_id": self.person_id,
                "household_id": self.household_id,
                "tract_id": self.tract,
                "age": self.age,
                "employed": self.employed.astype(int),
                "industry": ind,
                "occupation": occ,
                "can_wfh": self.can_wfh.astype(int),
                "income": self.income,
                "epi_state": state,
            }
        )

    def to_csv(self, path, epi_state=None):
        self.to_dataframe(epi_state).to_csv(path, index=False)

    def content_hash(self):
        import hashlib

        digest = hashlib.sha256()
        for arr in (self.household_id, self.tract, self.age, self.employed,
                    self.industry, self.occupation, self.can_wfh, self.income):
            digest.update(np.ascontiguousarray(arr).tobytes())
        return digest.hexdigest()


def generate_population(config: PopulationConfig, seed):
    """Create persons with ages and household structure, tract by tract.

    Ages are i.i.d. from the configured distribution (so population-level age
    shares match it); persons are dealt into households drawn from the size
    distribution, with one adult planted in each household first so that no
    household is children-only.
    """
    config.validate()
    rng = rng_for(seed, 0)
    ages_all, households_all, tracts_all = [], [], []
    sizes = np.arange(1, len(config.household_size_probs) + 1)
    size_probs = np.asarray(config.household_size_probs, dtype=float)
    age_values = np.asarray(config.age_values, dtype=int)
    age_probs = np.asarray(config.age_probs, dtype=float)
    next_hh = 0
    for t, n in enumerate(np.asarray(config.tract_populations, dtype=int)):
        if n == 0:
            continue
        ages = rng.choice(age_values, size=n, p=age_probs)
        n_adults = int(np.sum(ages >= ADULT_AGE))
        if n_adults == 0:
            raise ConfigError(
                f"age distribution produced no adults in tract {t}; "
                "households need at least one adult"
            )
        # Deal household sizes until the tract is full, then truncate.
        hh_sizes = []
        remaining = n
        while remaining > 0:
            s = int(rng.choice(sizes, p=size_probs))
            s = min(s, remaining)
            hh_sizes.append(s)
            remaining -= s
        hh_sizes = np.asarray(hh_sizes, dtype=int)
        if len(hh_sizes) > n_adults:
            # Too few adults to head every household: merge the tail.
            extra = hh_sizes[n_adults:].sum()
            hh_sizes = hh_sizes[:n_adults]
            hh_sizes[-1] += extra

        adult_idx = np.flatnonzero(ages >= ADULT_AGE)
        child_idx = np.flatnonzero(ages < ADULT_AGE)
        rng.shuffle(adult_idx)
        rng.shuffle(child_idx)
        heads = adult_idx[: len(hh_sizes)]
        rest = np.concatenate([adult_idx[len(hh_sizes):], child_idx])
        rng.shuffle(rest)

        slot_hh = np.repeat(np.arange(len(hh_sizes)), hh_sizes - 1)
        member_order = np.concatenate([heads, rest])
        hh_of_person = np.concatenate(
            [np.arange(len(hh_sizes)), slot_hh]
        )
        # Reorder so household members sit contiguously.
        order = np.argsort(hh_of_person, kind="stable")
        ages_all.append(ages[member_order[order]])
        households_all.append(hh_of_person[order] + next_hh)
        tracts_all.append(np.full(n, t, dtype=np.int64))
        next_hh += len(hh_sizes)

    return Population(
        household_id=np.concatenate(households_all),
        tract=np.concatenate(tracts_all),
        age=np.concatenate(ages_all),
    )


def _band_of(values, edges, table_name):
    edges = np.asarray(edges, dtype=float)
    idx = np.searchsorted(edges, values, side="right") - 1
    if np.any((idx < 0) | (idx >= len(edges) - 1)):
        raise ConfigError(f"{table_name}: value outside configured bands")
    return idx


def assign_employment_industry(pop: Population, config: PopulationConfig, seed):
    """Bernoulli employment by (tract, age band), categorical industry by tract."""
    rng = rng_for(seed, 1)
    rates = np.asarray(config.employment_rates, dtype=float)
    adults = np.flatnonzero(pop.adult)
    bands = _band_of(pop.age[adults], config.employment_age_edges, "employment_age_edges")
    r = rates[pop.tract[adults], bands]
    if np.any(np.isnan(r)):
        i = int(np.flatnonzero(np.isnan(r))[0])
        raise ConfigError(
            f"employment_rates: missing rate for tract {pop.tract[adults][i]}, "
            f"age band {bands[i]}"
        )
    pop.employed[:] = False
    pop.employed[adults] = rng.random(len(adults)) < r

    shares = np.asarray(config.industry_shares, dtype=float)
    workers = np.flatnonzero(pop.employed)
    pop.industry[:] = -1
    # Draw industries tract by tract (categorical with that tract's shares).
    for t in np.unique(pop.tract[workers]):
        sel = workers[pop.tract[workers] == t]
        pop.industry[sel] = rng.choice(N_INDUSTRIES, size=len(sel), p=shares[t])
    pop.occupation[:] = -1
    pop.can_wfh[:] = False
    return pop


def assign_occupations(pop: Population, config: PopulationConfig, seed):
    """Occupation counts per industry are multinomial in the industry's
    occupation shares; specific workers are picked with probability
    proportional to their tract's share of that occupation."""
    rng = rng_for(seed, 2)
    occ_shares = np.asarray(config.occupation_shares, dtype=float)
    tract_shares = np.asarray(config.tract_occupation_shares, dtype=float)
    pop.occupation[:] = -1
    for k in range(N_INDUSTRIES):
        workers = np.flatnonzero(pop.employed & (pop.industry == k))
        if len(workers) == 0:
            continue
        if occ_shares[k].sum() <= 0:
            raise ConfigError(f"occupation_shares: industry {k} has all-zero shares")
        counts = rng.multinomial(len(workers), occ_shares[k])
        pool = workers.copy()
        for o in np.flatnonzero(counts)[:-1] if np.any(counts) else []:
            take = int(counts[o])
            w = tract_shares[pop.tract[pool], o]
            if w.sum() <= 0:
                w = np.ones(len(pool))
            chosen = rng.choice(len(pool), size=take, replace=False, p=w / w.sum())
            pop.occupation[pool[chosen]] = o
            pool = np.delete(pool, chosen)
        last = int(np.flatnonzero(counts)[-1]) if np.any(counts) else None
        if last is not None:
            pop.occupation[pool] = last
    return pop


def assign_wfh(pop: Population, config: PopulationConfig, seed):
    """Work-from-home capability is Bernoulli in the occupation's RLI."""
    rng = rng_for(seed, 3)
    rli = np.asarray(config.remote_labor_index, dtype=float)
    if np.any((rli < 0) | (rli > 1)):
        raise ConfigError("remote_labor_index: values must lie in [0, 1]")
    pop.can_wfh[:] = False
    workers = np.flatnonzero(pop.employed & (pop.occupation >= 0))
    pop.can_wfh[workers] = rng.random(len(workers)) < rli[pop.occupation[workers]]
    return pop


def fit_lognormal_quantiles(quantiles):
    """Least-squares (mu, sigma) of a log-normal from five quantiles at
    probabilities (.10, .25, .50, .75, .90)."""
    q = np.asarray(quantiles, dtype=float)
    if q.shape != (len(QUANTILE_PROBS),):
        raise ValueError("expected exactly five quantiles")
    if np.any(q <= 0):
        raise ValueError("quantiles must be positive for a log-normal fit")
    z = norm.ppf(QUANTILE_PROBS)
    y = np.log(q)
    zc = z - z.mean()
    sigma = float(zc @ (y - y.mean()) / (zc @ zc))
    mu = float(y.mean() - sigma * z.mean())
    if sigma <= 0:
        raise ValueError("degenerate quantiles: fitted sigma is not positive")
    return mu, sigma


def assign_income(pop: Population, config: PopulationConfig, seed):
    """Income pipeline: pair log-normals, age-band proportionality, tract
    household-mean matching, retiree income, global mean normalization."""
    rng = rng_for(seed, 4)
    _draw_pair_incomes(pop, config, rng)
    _rescale_age_bands(pop, config)
    _rescale_tracts(pop, config)
    _assign_retiree_income(pop, config, rng)
    _normalize_global(pop, config)
    pop.assign_heads()
    return pop


def _draw_pair_incomes(pop, config, rng):
    q = np.asarray(config.income_quantiles, dtype=float)
    pop.income[:] = 0.0
    workers = np.flatnonzero(pop.employed)
    pairs = pop.industry[workers] * N_OCCUPATIONS + pop.occupation[workers]
    for pair in np.unique(pairs):
        k, o = divmod(int(pair), N_OCCUPATIONS)
        if np.any(np.isnan(q[k, o])):
            raise ConfigError(
                f"income_quantiles: missing quantiles for industry {k}, occupation {o}"
            )
        mu, sigma = fit_lognormal_quantiles(q[k, o])
        sel = workers[pairs == pair]
        pop.income[sel] = rng.lognormal(mu, sigma, size=len(sel))


def _rescale_age_bands(pop, config):
    workers = np.flatnonzero(pop.employed)
    bands = _band_of(pop.age[workers], config.earnings_age_edges, "earnings_age_edges")
    scalars = np.asarray(config.earnings_age_scalars, dtype=float)
    present = np.unique(bands)
    counts = np.bincount(bands, minlength=len(scalars))
    total = pop.income[workers].sum()
    norm_c = total / float(counts @ scalars) if counts @ scalars > 0 else 1.0
    for b in present:
        sel = workers[bands == b]
        mean_b = pop.income[sel].mean()
        if mean_b > 0:
            pop.income[sel] *= scalars[b] * norm_c / mean_b


def _rescale_tracts(pop, config):
    if config.tract_mean_household_income is None:
        return
    targets = np.asarray(config.tract_mean_household_income, dtype=float)
    hh_income = pop.household_income()
    for t in range(len(targets)):
        hh_sel = np.flatnonzero(pop.hh_tract == t)
        if len(hh_sel) == 0:
            continue
        mean_t = hh_income[hh_sel].mean()
        if mean_t > 0:
            pop.income[pop.tract == t] *= targets[t] / mean_t


def _assign_retiree_income(pop, config, rng):
    retirees = np.flatnonzero(~pop.employed & (pop.age >= 65))
    if len(retirees) == 0:
        return
    workers = np.flatnonzero(pop.employed & (pop.income > 0))
    if len(workers) == 0:
        return
    logs = np.log(pop.income[workers])
    draws = rng.lognormal(float(logs.mean()), float(logs.std()), size=len(retirees))
    ref = (pop.age >= 55) & (pop.age <= 64)
    old = pop.age >= 65
    if not ref.any():
        pop.income[retirees] = draws
        return
    target_total = config.retirement_ratio * pop.income[ref].mean() * old.sum()
    employed_old = pop.income[old & pop.employed].sum()
    scale = (target_total - employed_old) / draws.sum()
    pop.income[retirees] = draws * max(scale, 0.0)


def _normalize_global(pop, config):
    if config.mean_income_target is None:
        return
    mean = pop.income.mean()
    if mean > 0:
        pop.income *= config.mean_income_target / mean


def assign_household_groups(pop: Population, age_edges, income_edges):
    """Group households by head age band x household income band; the group
    index is ``age_band * n_income_bands + income_band``."""
    head_age = pop.age[pop.head]
    age_band = np.clip(
        np.searchsorted(np.asarray(age_edges, dtype=float), head_age, side="right") - 1,
        0,
        len(age_edges) - 2,
    )
    hh_inc = pop.household_income()
    inc_band = np.clip(
        np.searchsorted(np.asarray(income_edges, dtype=float), hh_inc, side="right") - 1,
        0,
        len(income_edges) - 2,
    )
    pop.hh_group = age_band * (len(income_edges) - 1) + inc_band
    return pop.hh_group


def build_population(config: PopulationConfig, seed):
    """Run the full generation pipeline with one master seed."""
    pop = generate_population(config, seed)
    assign_employment_industry(pop, config, seed)
    assign_occupations(pop, config, seed)
    assign_wfh(pop, config, seed)
    assign_income(pop, config, seed)
    return pop
