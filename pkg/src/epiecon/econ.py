"""Daily economic dynamics on the two-region input-output system.

Each step: industries adjust labor toward demand- and closure-constrained
targets (individual workers are hired/fired at random in the local region,
the rest region is a continuum); households form consumption demand shifted
by pandemic fear and income effects; orders plus final demand give total
demand; production is capped by labor capacity and rationed pro rata.
"""

from dataclasses import dataclass

import numpy as np

from .industries import CUSTOMER_FACING, N_INDUSTRIES
from .util import ConfigError, stochastic_round


@dataclass
class EconParams:
    gamma_hire: float = 0.2
    gamma_fire: float = 0.3
    fear_unemployment: float = 0.3   # consumption cut of unemployed-head households
    realloc_share: float = 0.3      # share of avoided risky spending redirected

    def validate(self):
        if not (0 < self.gamma_hire <= 1 and 0 < self.gamma_fire <= 1):
            raise ConfigError("hiring/firing speeds must lie in (0, 1]")
        if not (0 <= self.fear_unemployment <= 1):
            raise ConfigError("fear_unemployment must lie in [0, 1]")
        if not (0 <= self.realloc_share <= 1):
            raise ConfigError("realloc_share must lie in [0, 1]")
        return self


def labor_demand(l_prev, l0, x0, d_prev, cap_prev):
    """Labor demanded: previous level plus the constant-labor-share response
    to yesterday's demand/capacity gap."""
    coeff = np.divide(l0, x0, out=np.zeros_like(l0, dtype=float), where=x0 > 0)
    return l_prev + coeff * (d_prev - cap_prev)


def labor_targets(l_d_inperson, l_d_fromhome, supply_shock, l0_inperson, l0_fromhome):
    """Closure-capped in-person target and initial-level-capped from-home
    target, both nonnegative."""
    cap_inperson = (1.0 - supply_shock) * l0_inperson
    t_p = np.clip(np.minimum(cap_inperson, l_d_inperson), 0.0, None)
    t_h = np.clip(np.minimum(l0_fromhome, l_d_fromhome), 0.0, None)
    return t_p, t_h


def update_labor(l_prev, target, gamma_hire, gamma_fire):
    """Partial adjustment toward the target: hiring and firing speeds differ."""
    gap = target - l_prev
    speed = np.where(gap >= 0, gamma_hire, gamma_fire)
    return l_prev + speed * gap


def pro_rata_ration(x, claims_pos_total, claims_neg_total):
    """Common realized/claim ratio for positive claims; negative claims pass
    through unscaled. Returns the ratio clipped to [0, 1]."""
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(
            claims_pos_total > 0,
            (x - claims_neg_total) / claims_pos_total,
            1.0,
        )
    return np.clip(ratio, 0.0, 1.0)


def orders_and_total_demand(A, x_prev, c_demand, gov_demand, other_demand):
    """Intermediate orders anticipate yesterday's output; total demand adds
    household, government and other final demand. Returns (orders, d)."""
    orders = A * x_prev[None, :]
    d = orders.sum(axis=1) + c_demand + gov_demand + other_demand
    return orders, d


def produce_and_ration(d, cap, orders, c_demand, gov_demand, other_demand):
    """Output is demand capped by capacity; shortfalls hit every positive
    claim at one common ratio while negative claims pass through.

    Returns (x, ratio, realized orders, realized consumption, realized
    government demand, realized other demand).
    """
    x = np.maximum(np.minimum(d, cap), 0.0)
    neg = np.minimum(other_demand, 0.0)
    ratio = pro_rata_ration(x, d - neg, neg)
    Z = orders * ratio[:, None]
    c_real = c_demand * ratio
    gov_real = gov_demand * ratio
    other_real = np.where(other_demand >= 0, other_demand * ratio, other_demand)
    return x, ratio, Z, c_real, gov_real, other_real


class LaborLists:
    """Per-industry employed/fired id lists for one worker type.

    Firing moves uniformly random ids from the employed list to the fired
    pool; hiring draws them back. Worker type and industry never change.
    """

    def __init__(self, population, can_wfh_value):
        sel = population.employed & (population.can_wfh == can_wfh_value)
        self.employed = [
            population.person_id[sel & (population.industry == k)].copy()
            for k in range(N_INDUSTRIES)
        ]
        self.fired = [np.empty(0, dtype=np.int64) for _ in range(N_INDUSTRIES)]

    def counts(self):
        return np.array([len(e) for e in self.employed], dtype=np.int64)

    def apply_delta(self, k, delta, rng, employed_flags):
        """Hire (delta > 0) or fire (delta < 0) |delta| workers of industry k,
        clamped to list sizes. Returns the moved person ids."""
        if delta == 0:
            return np.empty(0, dtype=np.int64)
        if delta < 0:
            m = min(-int(delta), len(self.employed[k]))
            if m == 0:
                return np.empty(0, dtype=np.int64)
            pick = rng.choice(len(self.employed[k]), size=m, replace=False)
            moved = self.employed[k][pick]
            self.employed[k] = np.delete(self.employed[k], pick)
            self.fired[k] = np.concatenate([self.fired[k], moved])
            employed_flags[moved] = False
        else:
            m = min(int(delta), len(self.fired[k]))
            if m == 0:
                return np.empty(0, dtype=np.int64)
            pick = rng.choice(len(self.fired[k]), size=m, replace=False)
            moved = self.fired[k][pick]
            self.fired[k] = np.delete(self.fired[k], pick)
            self.employed[k] = np.concatenate([self.employed[k], moved])
            employed_flags[moved] = True
        return moved


def apply_hiring_firing(lists_inperson: LaborLists, lists_fromhome: LaborLists,
                        deltas_inperson, deltas_fromhome, rng, employed_flags):
    """Apply integer hiring/firing deltas per industry for both worker types.

    Returns (fired_today, hired_today) person-id arrays.
    """
    fired, hired = [], []
    for lists, deltas in ((lists_inperson, deltas_inperson), (lists_fromhome, deltas_fromhome)):
        for k in range(N_INDUSTRIES):
            moved = lists.apply_delta(k, int(deltas[k]), rng, employed_flags)
            if deltas[k] < 0:
                fired.append(moved)
            elif deltas[k] > 0:
                hired.append(moved)
    cat = lambda parts: np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
    return cat(fired), cat(hired)


class ConsumptionGroups:
    """Age-income consumption groups of local households.

    ``baseline`` is groups x 2n (local industries first) with column sums
    equal to baseline consumption by locals; the rest region's aggregate
    household demand is one extra baseline row.
    """

    def __init__(self, baseline, rest_baseline, hh_group, head_person, hh_quintile,
                 head_initially_employed):
        self.baseline = np.asarray(baseline, dtype=float)
        self.rest_baseline = np.asarray(rest_baseline, dtype=float)
        self.hh_group = np.asarray(hh_group, dtype=np.int64)
        self.head_person = np.asarray(head_person, dtype=np.int64)
        self.hh_quintile = np.asarray(hh_quintile, dtype=np.int64)
        self.head_init_employed = np.asarray(head_initially_employed, dtype=bool)
        self.n_groups = self.baseline.shape[0]
        self.n_households = np.bincount(self.hh_group, minlength=self.n_groups).astype(float)
        # households per (group, quintile) for distributional reporting
        self.n_gq = np.zeros((self.n_groups, 5))
        np.add.at(self.n_gq, (self.hh_group, self.hh_quintile), 1.0)

    def unemployed_heads(self, employed_flags):
        """Heads counted as unemployed only relative to the pre-pandemic
        state: initial unemployment is zero by convention."""
        unemp = self.head_init_employed & ~employed_flags[self.head_person]
        u_g = np.bincount(self.hh_group, weights=unemp, minlength=self.n_groups)
        u_gq = np.zeros((self.n_groups, 5))
        np.add.at(u_gq, (self.hh_group[unemp], self.hh_quintile[unemp]), 1.0)
        return u_g, u_gq


def consumption_demand(groups: ConsumptionGroups, lambda_by_industry, customer_facing,
                       fear_unemployment, realloc_share, unemployed_g,
                       rest_income_effect):
    """Group consumption demand: baseline x pandemic preference x income effect.

    ``lambda_by_industry`` is the fear-driven demand reduction per industry
    (zero for non-customer-facing ones). Customer-facing rows scale by
    (1 - lambda); the others gain the redirected share of avoided spending.
    Returns (demand per group x industry, rest-region demand row).
    """
    lam = np.asarray(lambda_by_industry, dtype=float)
    cf = np.asarray(customer_facing, dtype=bool)

    def preference(baseline_rows):
        saved = baseline_rows @ lam
        base_ncf = baseline_rows @ (~cf).astype(float)
        with np.errstate(divide="ignore", invalid="ignore"):
            boost = np.where(base_ncf > 0, 1.0 + realloc_share * saved / base_ncf, 1.0)
        pref = np.empty_like(baseline_rows)
        pref[:, cf] = baseline_rows[:, cf] * (1.0 - lam[cf])[None, :]
        pref[:, ~cf] = baseline_rows[:, ~cf] * boost[:, None]
        return pref

    income_effect = 1.0 - fear_unemployment * np.divide(
        unemployed_g, groups.n_households,
        out=np.zeros_like(unemployed_g, dtype=float),
        where=groups.n_households > 0,
    )
    local = preference(groups.baseline) * income_effect[:, None]
    rest = preference(groups.rest_baseline[None, :])[0] * rest_income_effect
    return local, rest


class EconSim:
    """Mutable economic state advanced one day at a time.

    Index convention: 2n region-industries, local region first. The local
    region is micro-founded (integer worker lists); the rest region evolves
    the same equations on fractional aggregates.
    """

    def __init__(self, io, population, groups: ConsumptionGroups, params: EconParams,
                 schedules, rest_inperson_share, rest_labor_weight, rng):
        self.params = params.validate()
        self.rng = rng
        self.n = io.n
        self.population = population
        self.groups = groups
        self.A = io.A
        self.x0 = io.x.copy()
        self.customer_facing = np.concatenate([CUSTOMER_FACING, CUSTOMER_FACING])
        self.gov0 = io.final_demand("government", "local") + io.final_demand("government", "rest")
        self.other0 = io.final_demand("other", "local") + io.final_demand("other", "rest")
        self.schedules = schedules  # dict: s_local, s_rest (days x n), gov, other (days,)

        # local micro labor
        self.lists_p = LaborLists(population, can_wfh_value=False)
        self.lists_h = LaborLists(population, can_wfh_value=True)
        self.employed_flags = population.employed.copy()
        self.init_employed = population.employed.copy()
        self.local_l0_p = self.lists_p.counts().astype(float)
        self.local_l0_h = self.lists_h.counts().astype(float)

        # rest region continuum labor
        w = np.asarray(rest_labor_weight, dtype=float)
        share = np.asarray(rest_inperson_share, dtype=float)
        self.rest_l0_p = w * share
        self.rest_l0_h = w * (1.0 - share)
        self.rest_l_p = self.rest_l0_p.copy()
        self.rest_l_h = self.rest_l0_h.copy()

        self.l0_p = np.concatenate([self.local_l0_p, self.rest_l0_p])
        self.l0_h = np.concatenate([self.local_l0_h, self.rest_l0_h])
        self.l0_tot = self.l0_p + self.l0_h

        self.x_prev = self.x0.copy()
        self.d_prev = self.x0.copy()
        self.cap_prev = self.x0.copy()

    def _labor_counts(self):
        local_p = self.lists_p.counts().astype(float)
        local_h = self.lists_h.counts().astype(float)
        return (np.concatenate([local_p, self.rest_l_p]),
                np.concatenate([local_h, self.rest_l_h]))

    def capacity(self, l_p, l_h):
        l_tot = l_p + l_h
        frac = np.divide(l_tot, self.l0_tot, out=np.ones_like(l_tot), where=self.l0_tot > 0)
        return frac * self.x0

    def step(self, t, lambda_eco_local, lambda_eco_rest):
        """Advance one day. Returns a dict of realized quantities and the
        day's fired/hired person ids."""
        n = self.n
        p = self.params
        s_local = self.schedules["s_local"][t]
        s_rest = self.schedules["s_rest"][t]
        s = np.concatenate([s_local, s_rest])

        # 1. labor decisions from yesterday's demand/capacity
        l_p_prev, l_h_prev = self._labor_counts()
        l_d_p = labor_demand(l_p_prev, self.l0_p, self.x0, self.d_prev, self.cap_prev)
        l_d_h = labor_demand(l_h_prev, self.l0_h, self.x0, self.d_prev, self.cap_prev)
        t_p, t_h = labor_targets(l_d_p, l_d_h, s, self.l0_p, self.l0_h)
        new_p = update_labor(l_p_prev, t_p, p.gamma_hire, p.gamma_fire)
        new_h = update_labor(l_h_prev, t_h, p.gamma_hire, p.gamma_fire)

        # 2. micro hiring/firing in the local region (stochastic rounding of
        # the day's fractional deltas keeps expectations intact)
        delta_p = stochastic_round(new_p[:n] - l_p_prev[:n], self.rng)
        delta_h = stochastic_round(new_h[:n] - l_h_prev[:n], self.rng)
        fired_today, hired_today = apply_hiring_firing(
            self.lists_p, self.lists_h, delta_p, delta_h, self.rng, self.employed_flags
        )
        self.rest_l_p = new_p[n:]
        self.rest_l_h = new_h[n:]
        l_p_now, l_h_now = self._labor_counts()

        # 3. consumption demand using yesterday's reported deaths
        lam = np.where(
            self.customer_facing,
            np.concatenate([np.full(n, lambda_eco_local), np.full(n, lambda_eco_rest)]),
            0.0,
        )
        u_g, u_gq = self.groups.unemployed_heads(self.employed_flags)
        rest_total0 = self.rest_l0_p.sum() + self.rest_l0_h.sum()
        rest_total = self.rest_l_p.sum() + self.rest_l_h.sum()
        rest_ie = 1.0 - p.fear_unemployment * (rest_total0 - rest_total) / rest_total0
        c_groups, c_rest = consumption_demand(
            self.groups, lam, self.customer_facing, p.fear_unemployment,
            p.realloc_share, u_g, rest_ie,
        )
        c_d = c_groups.sum(axis=0) + c_rest

        # 4. orders and total demand
        gov_d = (1.0 - self.schedules["gov"][t]) * self.gov0
        other_d = (1.0 - self.schedules["other"][t]) * self.other0
        orders, d = orders_and_total_demand(self.A, self.x_prev, c_d, gov_d, other_d)

        # 5. production and pro-rata rationing
        cap = self.capacity(l_p_now, l_h_now)
        x, ratio, Z, c_real, gov_real, other_real = produce_and_ration(
            d, cap, orders, c_d, gov_d, other_d
        )
        va = x - Z.sum(axis=0)

        out = {
            "fired": fired_today,
            "hired": hired_today,
            "l_p": l_p_now,
            "l_h": l_h_now,
            "x": x,
            "d": d,
            "cap": cap,
            "ratio": ratio,
            "z_rows": Z.sum(axis=1),
            "c_demand": c_d,
            "c_realized": c_real,
            "c_groups_demand": c_groups,
            "gov_realized": gov_real,
            "other_realized": other_real,
            "va": va,
            "u_gq": u_gq,
            "income_effect_groups": 1.0 - p.fear_unemployment * np.divide(
                u_g, self.groups.n_households,
                out=np.zeros_like(u_g), where=self.groups.n_households > 0,
            ),
            "lambda_vec": lam,
        }
        self.x_prev = x
        self.d_prev = d
        self.cap_prev = cap
        return out

    def quintile_consumption(self, out):
        """Realized household consumption by local household income quintile."""
        p = self.params
        lam = out["lambda_vec"]
        eff = self.groups.n_gq - p.fear_unemployment * out["u_gq"]
        base = self.groups.baseline
        with np.errstate(divide="ignore", invalid="ignore"):
            per_hh = np.where(
                self.groups.n_households[:, None] > 0,
                base / self.groups.n_households[:, None],
                0.0,
            )
        cf = self.customer_facing
        pref = np.empty_like(per_hh)
        pref[:, cf] = per_hh[:, cf] * (1.0 - lam[cf])[None, :]
        saved = per_hh @ lam
        base_ncf = per_hh @ (~cf).astype(float)
        with np.errstate(divide="ignore", invalid="ignore"):
            boost = np.where(base_ncf > 0, 1.0 + p.realloc_share * saved / base_ncf, 1.0)
        pref[:, ~cf] = per_hh[:, ~cf] * boost[:, None]
        scaled = pref * out["ratio"][None, :]
        return scaled.T @ eff  # industries x quintiles -> summed later
