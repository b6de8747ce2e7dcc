"""Exogenous series: industry supply shocks, outside-region death counts,
government and other final-demand shocks."""

import numpy as np
import pandas as pd

from .industries import CUSTOMER_FACING, N_INDUSTRIES
from .util import ConfigError

CLOSURE_SETS = (
    "non-essential",
    "customer-facing-100",
    "customer-facing-75",
    "customer-facing-50",
    "customer-facing-25",
    "all-open",
)


def closure_severity(essential_scores, closure_set, customer_facing=None):
    """Per-industry supply shock level in force while closures apply.

    Non-essential closures shut the non-essential share of every industry;
    customer-facing closures only touch the seven customer-facing industries
    and scale their non-essential share by the named fraction.
    """
    ess = np.asarray(essential_scores, dtype=float)
    if np.any((ess < 0) | (ess > 1)):
        raise ConfigError("essential scores must lie in [0, 1]")
    cf = CUSTOMER_FACING if customer_facing is None else np.asarray(customer_facing, dtype=bool)
    if closure_set == "all-open":
        return np.zeros_like(ess)
    if closure_set == "non-essential":
        return 1.0 - ess
    if closure_set.startswith("customer-facing-"):
        fraction = float(closure_set.rsplit("-", 1)[1]) / 100.0
        return np.where(cf, fraction * (1.0 - ess), 0.0)
    raise ConfigError(f"unknown closure set {closure_set!r}; expected one of {CLOSURE_SETS}")


def build_supply_shocks(essential_scores, n_days, measures_day, relax_day,
                        closure_set, customer_facing=None):
    """Daily supply-shock schedule (n_days x n_industries): the closure level
    between measures start and relaxation, zero elsewhere."""
    level = closure_severity(essential_scores, closure_set, customer_facing)
    s = np.zeros((n_days, len(level)))
    lo = max(int(measures_day), 0)
    hi = min(int(relax_day), n_days)
    if lo < hi:
        s[lo:hi] = level
    return s


def logistic_wave(n_days, peak, peak_day, width):
    """Smooth single-wave death series: peak * 4 * sigma * (1 - sigma) with
    sigma the logistic of (t - peak_day) / width."""
    t = np.arange(n_days, dtype=float)
    sig = 1.0 / (1.0 + np.exp(-(t - peak_day) / width))
    return peak * 4.0 * sig * (1.0 - sig)


def rest_deaths_from_frame(frame, n_days):
    """Exogenous outside-region death series from a (day, deaths) table.

    The series must cover days 0..n_days-1 without gaps; missing days are
    reported in the error.
    """
    days = frame["day"].to_numpy(dtype=int)
    need = np.arange(n_days)
    missing = np.setdiff1d(need, days)
    if missing.size:
        raise ConfigError(f"rest-region death series has gaps at days {missing.tolist()}")
    series = np.zeros(n_days)
    sel = (days >= 0) & (days < n_days)
    series[days[sel]] = frame["deaths"].to_numpy(dtype=float)[sel]
    if np.any(series < 0):
        raise ConfigError("rest-region death series must be nonnegative")
    return series


def load_rest_deaths(path, n_days):
    return rest_deaths_from_frame(pd.read_csv(path), n_days)


def step_series(n_days, start_day, value):
    """Series that is 0 before ``start_day`` and ``value`` afterwards."""
    out = np.zeros(n_days)
    out[max(int(start_day), 0):] = value
    return out


def schedule_frame(s_local, s_rest, gov, other, rest_deaths):
    """Audit dump of all exogenous series."""
    n_days = len(gov)
    cols = {"day": np.arange(n_days), "gov_shock": gov, "other_shock": other,
            "rest_deaths": rest_deaths}
    for k in range(N_INDUSTRIES):
        cols[f"s_local_{k}"] = s_local[:, k]
        cols[f"s_rest_{k}"] = s_rest[:, k]
    return pd.DataFrame(cols)
