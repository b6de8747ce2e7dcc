"""Shipped demo fixtures: a desk-scale population recipe, a balanced
make/use system and full scenario assembly.

These are plausible synthetic inputs at the documented granularity (20
industries, 22 occupations), not real survey data. All generators are
deterministic in their arguments.
"""

import numpy as np
from scipy.stats import norm

from .industries import N_INDUSTRIES, N_OCCUPATIONS, REMOTE_LABOR_INDEX
from .population import QUANTILE_PROBS

# index shorthands into the industry table
AGRI, MINING, UTIL, CONSTR, MANUF, WHOLESALE, RETAIL, TRANSP, INFO, FINANCE, \
    REALEST, PROF, MGMT, ADMIN, EDU, HEALTH, ARTS, ACCOM, OTHER, PUBLIC = range(20)

# occupation index shorthands (SOC major group order)
O_MGMT, O_BIZ, O_COMP, O_ARCH, O_SCI, O_COMM, O_LEGAL, O_EDU, O_ARTS, O_HCPRACT, \
    O_HCSUP, O_PROT, O_FOOD, O_CLEAN, O_CARE, O_SALES, O_OFFICE, O_FARM, O_CONSTR, \
    O_INSTALL, O_PROD, O_TRANSP = range(22)

INDUSTRY_SHARE_BASE = np.array([
    0.002, 0.002, 0.005, 0.050, 0.050, 0.025, 0.100, 0.050, 0.030, 0.070,
    0.030, 0.090, 0.012, 0.050, 0.110, 0.160, 0.035, 0.080, 0.050, 0.049,
])
INDUSTRY_INCOME_FACTOR = np.array([
    0.70, 1.60, 1.90, 1.20, 1.20, 1.30, 0.80, 1.00, 2.00, 2.20,
    1.40, 1.80, 2.10, 0.90, 1.00, 1.10, 0.85, 0.65, 0.85, 1.20,
])
OCCUPATION_INCOME_FACTOR = np.array([
    2.00, 1.60, 1.90, 1.70, 1.50, 1.00, 2.20, 1.10, 1.20, 1.60, 0.65,
    1.00, 0.60, 0.65, 0.65, 0.90, 0.90, 0.60, 1.00, 1.00, 0.85, 0.80,
])

WHITE_COLLAR_IND = (INFO, FINANCE, PROF, MGMT)
SERVICE_IND = (RETAIL, ADMIN, ACCOM, OTHER)
KNOWLEDGE_OCC = (O_MGMT, O_BIZ, O_COMP, O_ARCH, O_SCI, O_LEGAL, O_ARTS)
MANUAL_OCC = (O_FOOD, O_CLEAN, O_PROD, O_TRANSP, O_HCSUP, O_CARE, O_CONSTR,
              O_INSTALL, O_FARM)

# dominant occupations per industry; the remainder is spread uniformly
_OCC_CORE = {
    AGRI: {O_FARM: 0.45, O_TRANSP: 0.10, O_PROD: 0.08},
    MINING: {O_CONSTR: 0.35, O_INSTALL: 0.12, O_PROD: 0.10},
    UTIL: {O_INSTALL: 0.25, O_PROD: 0.15, O_ARCH: 0.08},
    CONSTR: {O_CONSTR: 0.50, O_INSTALL: 0.10, O_MGMT: 0.08},
    MANUF: {O_PROD: 0.40, O_INSTALL: 0.08, O_TRANSP: 0.08},
    WHOLESALE: {O_SALES: 0.20, O_TRANSP: 0.20, O_OFFICE: 0.15},
    RETAIL: {O_SALES: 0.45, O_TRANSP: 0.08, O_OFFICE: 0.10},
    TRANSP: {O_TRANSP: 0.55, O_INSTALL: 0.08},
    INFO: {O_COMP: 0.25, O_ARTS: 0.15, O_BIZ: 0.10},
    FINANCE: {O_BIZ: 0.30, O_OFFICE: 0.20, O_MGMT: 0.10, O_COMP: 0.08, O_SALES: 0.08},
    REALEST: {O_SALES: 0.30, O_OFFICE: 0.20, O_CLEAN: 0.08},
    PROF: {O_COMP: 0.18, O_BIZ: 0.15, O_ARCH: 0.12, O_LEGAL: 0.10, O_SCI: 0.08},
    MGMT: {O_MGMT: 0.30, O_BIZ: 0.20, O_OFFICE: 0.15},
    ADMIN: {O_CLEAN: 0.25, O_OFFICE: 0.20, O_PROT: 0.08},
    EDU: {O_EDU: 0.50, O_OFFICE: 0.10},
    HEALTH: {O_HCPRACT: 0.35, O_HCSUP: 0.20, O_CARE: 0.08, O_OFFICE: 0.10},
    ARTS: {O_ARTS: 0.30, O_CARE: 0.12, O_FOOD: 0.08, O_SALES: 0.08},
    ACCOM: {O_FOOD: 0.60, O_CLEAN: 0.08, O_CARE: 0.05},
    OTHER: {O_CARE: 0.25, O_INSTALL: 0.15, O_CLEAN: 0.10},
    PUBLIC: {O_PROT: 0.25, O_OFFICE: 0.25, O_COMM: 0.10, O_LEGAL: 0.05},
}


def occupation_share_matrix():
    shares = np.zeros((N_INDUSTRIES, N_OCCUPATIONS))
    for k in range(N_INDUSTRIES):
        core = _OCC_CORE[k]
        row = np.full(N_OCCUPATIONS, (1.0 - sum(core.values())) / N_OCCUPATIONS)
        for o, v in core.items():
            row[o] += v
        shares[k] = row / row.sum()
    return shares


def income_quantile_table(sigma=0.55, base_median=32_000.0):
    z = norm.ppf(QUANTILE_PROBS)
    med = base_median * INDUSTRY_INCOME_FACTOR[:, None] * OCCUPATION_INCOME_FACTOR[None, :]
    return med[:, :, None] * np.exp(sigma * z)[None, None, :]


def demo_population_config(n_tracts=25, tract_population=400):
    """Population recipe with income-stratified industry and occupation
    placement across tracts (tract index orders income)."""
    ranks = np.linspace(0.0, 1.0, n_tracts) if n_tracts > 1 else np.array([0.5])

    ages = np.arange(90)
    age_w = np.where(ages < 18, 1.10, np.where(ages < 65, 1.50, 0.55))
    age_probs = age_w / age_w.sum()

    emp_edges = [18, 20, 25, 35, 45, 55, 62, 65, 70, 200]
    emp_rates = [0.35, 0.65, 0.80, 0.80, 0.78, 0.72, 0.45, 0.18, 0.05]

    ind_shares = np.tile(INDUSTRY_SHARE_BASE / INDUSTRY_SHARE_BASE.sum(), (n_tracts, 1))
    for t, r in enumerate(ranks):
        row = ind_shares[t].copy()
        row[list(WHITE_COLLAR_IND)] *= 0.5 + r
        row[list(SERVICE_IND)] *= 1.5 - r
        ind_shares[t] = row / row.sum()

    occ_shares = occupation_share_matrix()
    national_occ = (INDUSTRY_SHARE_BASE / INDUSTRY_SHARE_BASE.sum()) @ occ_shares
    tract_occ = np.tile(national_occ, (n_tracts, 1))
    for t, r in enumerate(ranks):
        row = tract_occ[t].copy()
        row[list(KNOWLEDGE_OCC)] *= 0.5 + r
        row[list(MANUAL_OCC)] *= 1.5 - r
        tract_occ[t] = row / row.sum()

    return {
        "tract_populations": [int(tract_population)] * n_tracts,
        "age_values": ages.tolist(),
        "age_probs": age_probs.tolist(),
        "household_size_probs": [0.28, 0.34, 0.16, 0.12, 0.06, 0.04],
        "employment_age_edges": emp_edges,
        "employment_rates": [emp_rates] * n_tracts,
        "industry_shares": ind_shares.tolist(),
        "occupation_shares": occ_shares.tolist(),
        "tract_occupation_shares": tract_occ.tolist(),
        "income_quantiles": income_quantile_table().tolist(),
        "earnings_age_edges": [18, 20, 25, 35, 45, 55, 65, 200],
        "earnings_age_scalars": [494, 616, 876, 1047, 1039, 1053, 942],
        "remote_labor_index": REMOTE_LABOR_INDEX.tolist(),
        "tract_mean_household_income": (55_000 + 105_000 * ranks ** 1.3).tolist(),
        "retirement_ratio": 0.60,
        "mean_income_target": 75_000.0,
    }


def demo_make_use():
    """Balanced national make/use system built backwards from a target
    industry flow table, so the industry-technology transformation recovers
    it exactly."""
    productivity = np.array([
        1.2, 3.0, 4.0, 1.3, 2.5, 2.5, 1.0, 1.4, 3.0, 3.0,
        5.0, 2.0, 2.5, 1.0, 0.8, 0.9, 0.9, 0.8, 0.9, 1.1,
    ])
    x = INDUSTRY_SHARE_BASE / INDUSTRY_SHARE_BASE.sum() * productivity
    x = x / x.sum() * 2_000_000.0   # national gross output, arbitrary money units

    # input recipe: services every industry buys + a few specific channels
    A = np.zeros((N_INDUSTRIES, N_INDUSTRIES))
    A[PROF, :] += 0.050
    A[FINANCE, :] += 0.030
    A[REALEST, :] += 0.030
    A[UTIL, :] += 0.012
    A[ADMIN, :] += 0.025
    A[INFO, :] += 0.020
    A[WHOLESALE, :] += 0.020
    A[TRANSP, :] += 0.022
    A[MGMT, :] += 0.015
    A[MANUF, [CONSTR, MANUF, WHOLESALE, RETAIL, AGRI, MINING]] += 0.10
    A[AGRI, [MANUF, ACCOM]] += [0.04, 0.06]
    A[MINING, [UTIL, MANUF, CONSTR]] += [0.12, 0.04, 0.03]
    A[CONSTR, [REALEST, UTIL]] += [0.06, 0.04]
    A[OTHER, [ACCOM, ARTS]] += 0.02
    np.fill_diagonal(A, A.diagonal() + 0.06)
    A = np.maximum(A, 0.006)      # every industry buys a sliver of everything

    # cap each industry's intermediate sales so final demand stays positive
    row_sales = A @ x
    scale = np.minimum(1.0, 0.70 * x / row_sales)
    A = A * scale[:, None]
    f_tot = x - A @ x
    Z = A * x[None, :]

    # split final demand: government and investment/export patterns first,
    # household consumption absorbs the rest
    assert np.all(f_tot > 0)
    gov_share = np.zeros(N_INDUSTRIES)
    gov_share[[PUBLIC, EDU, HEALTH]] = [0.88, 0.35, 0.22]
    other_share = np.zeros(N_INDUSTRIES)
    other_share[[MANUF, CONSTR, INFO, PROF, MGMT, WHOLESALE, MINING, AGRI, UTIL]] = [
        0.45, 0.80, 0.30, 0.30, 0.60, 0.40, 0.50, 0.40, 0.30,
    ]
    G = gov_share * f_tot
    other = other_share * f_tot
    c = f_tot - G - other
    f = np.stack([c, G, other], axis=1)

    # make table: industries mostly produce their own commodity
    g = x.copy()                      # no scrap
    V = np.diag(0.96 * g)
    V += 0.02 * np.roll(np.diag(g), 1, axis=1)
    V += 0.02 * np.roll(np.diag(g), -1, axis=1)
    q = V.sum(axis=0)
    T = V / q[None, :]
    U = np.linalg.solve(T, Z)
    f_c = np.linalg.solve(T, f)

    va = x - Z.sum(axis=0)
    y_nation = va
    region_share = np.array([
        0.010, 0.008, 0.045, 0.050, 0.020, 0.050, 0.060, 0.060, 0.110, 0.120,
        0.090, 0.100, 0.090, 0.060, 0.080, 0.070, 0.080, 0.070, 0.070, 0.060,
    ])
    y_region = region_share * y_nation

    return {
        "V": V.tolist(),
        "U": U.tolist(),
        "q": q.tolist(),
        "g": g.tolist(),
        "h": np.zeros(N_INDUSTRIES).tolist(),
        "f_c": f_c.tolist(),
        "y_region": y_region.tolist(),
        "y_nation": y_nation.tolist(),
        "delta": 0.15,
    }


def demo_spending_pattern(n_age_bands=6, n_income_bands=7):
    """Per-household yearly spending pattern by age-income group: the poor
    weight housing and utilities, the rich weight contact-heavy services;
    spending levels rise with income."""
    base = np.zeros(N_INDUSTRIES)
    base[[REALEST, HEALTH, RETAIL, ACCOM, MANUF, FINANCE, UTIL, TRANSP, ARTS,
          EDU, INFO, OTHER, AGRI, PROF, WHOLESALE, PUBLIC, ADMIN]] = [
        0.22, 0.14, 0.13, 0.09, 0.08, 0.07, 0.045, 0.05, 0.045,
        0.05, 0.035, 0.05, 0.005, 0.02, 0.005, 0.01, 0.005,
    ]
    pattern = np.zeros((n_age_bands * n_income_bands, N_INDUSTRIES))
    for a in range(n_age_bands):
        age_rank = a / max(n_age_bands - 1, 1)
        for s in range(n_income_bands):
            inc_rank = s / max(n_income_bands - 1, 1)
            row = base.copy()
            row[[ARTS, ACCOM, EDU]] *= 0.55 + 0.9 * inc_rank
            row[REALEST] *= 1.45 - 0.9 * inc_rank
            row[UTIL] *= 1.30 - 0.6 * inc_rank
            row[HEALTH] *= 0.60 + 0.8 * age_rank
            row[REALEST] *= 1.30 - 0.6 * age_rank
            row[ARTS] *= 1.20 - 0.4 * age_rank
            level = 0.45 + 1.10 * inc_rank
            pattern[a * n_income_bands + s] = row / row.sum() * level
    return pattern


def demo_scenario(n_persons=10_000, name="empirical", closure_set="non-essential",
                  fear_multiplier=1.0, measures="baseline", seeds=(1, 2, 3),
                  epidemic_enabled=True, beta=0.0024, fear_epidemic=0.10,
                  fear_ratio=1.0, world_seed=7, **overrides):
    """Assemble a complete scenario dict at the requested population size."""
    from .coupling import InterventionTimeline

    tract_population = 400
    n_tracts = max(2, round(n_persons / tract_population))
    timeline = InterventionTimeline.with_measures(measures)
    scenario = {
        "name": name,
        "world_seed": world_seed,
        "population": demo_population_config(n_tracts, tract_population),
        "visit_model": {
            "n_places": max(40, n_persons // 8),
            "cbg_size": 25,
            "personal_places": 6,
            "weekday_visit_prob": 0.33,
            "weekend_visit_prob": 0.5,
        },
        "io": demo_make_use(),
        "consumption": {
            "age_edges": [0, 25, 35, 45, 55, 65, 200],
            "income_edges": [0, 15e3, 30e3, 40e3, 50e3, 70e3, 100e3, 1e12],
            "spending_pattern": demo_spending_pattern().tolist(),
        },
        "epi": {
            "beta": beta,
            "n_latent": 10 if epidemic_enabled else 0,
            "target_exposed": 165,
            "reference_population": 416_442,
        },
        "econ": {
            "gamma_hire": 0.2,
            "gamma_fire": 0.5,
            "fear_unemployment": 0.25,
            "realloc_share": 0.35,
        },
        "fear": {
            "fear_epidemic": fear_epidemic,
            "fear_ratio": fear_ratio,
            "multiplier": fear_multiplier,
        },
        "timeline": timeline.to_dict(),
        "closure_set": closure_set,
        "schools_closed": True,
        "wfh_mandated": True,
        "epidemic_reopening": False,
        "rest_deaths": {
            "kind": "wave",
            "peak": 0.8 * n_persons / 10_000,
            "peak_day": 60,
            "width": 12.0,
        },
        "gov_shock": -0.05,
        "other_shock": 0.30,
        "seeds": list(seeds),
    }
    scenario.update(overrides)
    return scenario
