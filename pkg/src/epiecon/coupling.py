"""Fear-of-infection behaviour, intervention timeline and network filters.

Everything that crosses the epidemic/economic boundary lives here: both
modules only ever see quantities the other produced the previous day.
"""

from dataclasses import dataclass
from datetime import date, timedelta

import numpy as np

from .contacts import N_INDUSTRIES
from .epidemic import DayFilters
from .industries import CUSTOMER_FACING
from .util import ConfigError


def behavior_change(phi, deaths_prev):
    """Share of risky activity avoided given yesterday's reported deaths:
    1 - exp(-phi * D). Zero deaths means no change; saturates toward 1."""
    if phi < 0 or deaths_prev < 0:
        raise ValueError("fear sensitivity and deaths must be nonnegative")
    return 1.0 - np.exp(-phi * deaths_prev)


@dataclass
class FearParams:
    """Fear sensitivities: the epidemic channel scales contacts, the economic
    channel scales consumption; the two are tied by a fixed ratio. The
    scenario multiplier scales both channels."""

    fear_epidemic: float = 0.02
    fear_ratio: float = 1.0          # economic = ratio * epidemic
    multiplier: float = 1.0

    def validate(self):
        if self.fear_epidemic < 0 or self.fear_ratio < 0 or self.multiplier < 0:
            raise ConfigError("fear parameters must be nonnegative")
        return self

    @property
    def phi_epidemic(self):
        return self.multiplier * self.fear_epidemic

    @property
    def phi_economic(self):
        return self.multiplier * self.fear_epidemic * self.fear_ratio


def consumption_reduction(fear: FearParams, deaths_prev, customer_facing=None):
    """Per-industry demand reduction: fear applies to customer-facing
    industries only."""
    cf = CUSTOMER_FACING if customer_facing is None else np.asarray(customer_facing, dtype=bool)
    lam = behavior_change(fear.phi_economic, deaths_prev)
    return lam * cf.astype(float)


@dataclass
class InterventionTimeline:
    """Simulation calendar. Dates are inclusive; protective measures start on
    ``measures_start``; economic closures lift on ``closure_relax``; school
    closures and work-from-home mandates persist to the end."""

    start: date = date(2020, 2, 12)
    measures_start: date = date(2020, 3, 16)
    closure_relax: date = date(2020, 5, 15)
    end: date = date(2020, 6, 30)

    MEASURES_EARLY = date(2020, 2, 17)
    MEASURES_BASELINE = date(2020, 3, 16)
    MEASURES_LATE = date(2020, 3, 30)

    def validate(self):
        if not (self.start <= self.measures_start <= self.closure_relax <= self.end):
            raise ConfigError("timeline dates must be ordered start <= measures <= relax <= end")
        return self

    @property
    def n_days(self):
        return (self.end - self.start).days + 1

    @property
    def measures_day(self):
        return (self.measures_start - self.start).days

    @property
    def relax_day(self):
        return (self.closure_relax - self.start).days

    def date_of(self, day):
        return self.start + timedelta(days=int(day))

    def weekday(self, day):
        return self.date_of(day).weekday()

    @classmethod
    def with_measures(cls, when):
        starts = {"early": cls.MEASURES_EARLY, "baseline": cls.MEASURES_BASELINE,
                  "late": cls.MEASURES_LATE}
        if when not in starts:
            raise ConfigError(f"measures_start must be one of {sorted(starts)} or a date")
        return cls(measures_start=starts[when]).validate()

    def to_dict(self):
        return {
            "start": self.start.isoformat(),
            "measures_start": self.measures_start.isoformat(),
            "closure_relax": self.closure_relax.isoformat(),
            "end": self.end.isoformat(),
        }

    @classmethod
    def from_dict(cls, data):
        fields = {}
        for key in ("start", "measures_start", "closure_relax", "end"):
            if key in data:
                value = data[key]
                fields[key] = date.fromisoformat(value) if isinstance(value, str) else value
        return cls(**fields).validate()


def contact_filters(fear: FearParams, deaths_prev, s_epi_row, day, measures_day,
                    schools_closed, wfh_mandated, can_wfh_workers, fired_mask, rng):
    """Build the day's network filters from yesterday's reported deaths.

    Community edges tagged with industry k survive with probability
    (1 - fear reduction * customer_facing_k) * (1 - closure_k); venues with no
    industry feel the fear reduction but never closures. Work-from-home
    capable workers stay away with the fear-reduction probability, or always
    under a mandate; fired workers are absent regardless.
    """
    lam_epi = behavior_change(fear.phi_epidemic, deaths_prev)
    survival = np.empty(N_INDUSTRIES + 1)
    survival[:N_INDUSTRIES] = (1.0 - lam_epi * CUSTOMER_FACING) * (1.0 - np.asarray(s_epi_row))
    survival[N_INDUSTRIES] = 1.0 - lam_epi

    absent = np.asarray(fired_mask, dtype=bool).copy()
    measures_on = day >= measures_day
    if wfh_mandated and measures_on:
        absent |= can_wfh_workers
    elif lam_epi > 0:
        voluntary = can_wfh_workers & (rng.random(len(absent)) < lam_epi)
        absent |= voluntary

    schools_open = not (schools_closed and measures_on)
    return DayFilters(
        community_survival=survival,
        workplace_absent=absent,
        schools_open=schools_open,
    )
