"""Two-region input-output system construction.

Starting from national make/use tables, derives industry-by-industry flows
(industry technology assumption), then splits them into a local region and
the rest of the country with the Flegg location quotient. Final demand is
carried in three components: private consumption, government, and other
(investment plus net exports, which may be negative).
"""

from dataclasses import dataclass

import numpy as np
import pandas as pd

from .util import exact_complement_split

FD_COMPONENTS = ("consumption", "government", "other")
LOCAL, REST = 0, 1
REGION_LABELS = ("local", "rest")


class IOError_(ValueError):
    """Raised for singular or inconsistent input-output data."""


@dataclass
class MakeUse:
    """National make/use system.

    V: industry x commodity make matrix; U: commodity x industry use matrix;
    q/g: commodity/industry outputs; h: scrap by industry; f_c: commodity x 3
    final demand (consumption, government, other).
    """

    V: np.ndarray
    U: np.ndarray
    q: np.ndarray
    g: np.ndarray
    h: np.ndarray
    f_c: np.ndarray

    def validate(self):
        n = len(self.g)
        if self.V.shape != (n, n) or self.U.shape != (n, n):
            raise IOError_("V and U must be square with matching dimensions")
        if self.f_c.shape != (n, len(FD_COMPONENTS)):
            raise IOError_("f_c must be commodity x 3")
        x = self.g - self.h
        if np.any(x < 0):
            raise IOError_("industry output net of scrap must be nonnegative")
        return self


def make_use_to_industry(mu: MakeUse):
    """Industry-technology transformation of a make/use system.

    Returns (Z, A, f, x): intermediate flows, technical coefficients,
    industry final demand (n x 3) and industry output net of scrap.
    """
    mu.validate()
    x = mu.g - mu.h
    if np.any(x <= 0):
        bad = [i for i, v in enumerate(x) if v <= 0]
        raise IOError_(f"zero industry output, cannot invert: industries {bad}")
    if np.any(mu.q <= 0):
        bad = [i for i, v in enumerate(mu.q) if v <= 0]
        raise IOError_(f"zero commodity output, cannot invert: commodities {bad}")

    T = (mu.g / x)[:, None] * mu.V / mu.q[None, :]
    Z = T @ mu.U
    A = Z / x[None, :]
    f = T @ mu.f_c
    return Z, A, f, x


def location_quotients(y_region, y_nation, delta=0.15):
    """Simple and cross-industry location quotients plus the size factor.

    SLQ_k compares industry k's GDP share in the region to the national one;
    CILQ compares pairs of industries; the size factor shrinks coefficients
    more for smaller regions (exponent ``delta``).
    """
    y_region = np.asarray(y_region, dtype=float)
    y_nation = np.asarray(y_nation, dtype=float)
    if np.any(y_nation <= 0):
        raise IOError_("national industry GDP must be strictly positive")
    if np.any(y_region <= 0):
        raise IOError_("regional industry GDP must be strictly positive")
    share_r = y_region / y_region.sum()
    share_n = y_nation / y_nation.sum()
    slq = share_r / share_n
    cilq = slq[:, None] / slq[None, :]
    lam = np.log2(1.0 + y_region.sum() / y_nation.sum()) ** delta
    return slq, cilq, lam


def _flq_rho(y_region, y_nation, delta, force_unit_lambda=False):
    slq, cilq, lam = location_quotients(y_region, y_nation, delta)
    if force_unit_lambda:
        lam = 1.0
    flq = lam * cilq
    np.fill_diagonal(flq, lam * slq)
    return np.minimum(flq, 1.0), flq


def _split_components(residual, national_f):
    """Distribute residual final demand over the three components using each
    industry's national component shares; all-zero rows fall back to 'other'."""
    totals = national_f.sum(axis=1)
    shares = np.zeros_like(national_f)
    nz = totals != 0
    shares[nz] = national_f[nz] / totals[nz, None]
    shares[~nz, FD_COMPONENTS.index("other")] = 1.0
    return residual[:, None] * shares


@dataclass
class TwoRegionIO:
    """Block input-output system for the local region and the rest.

    Block naming is origin->destination: ``A_lr`` holds coefficients for
    goods produced locally and used by rest-region industries. Final-demand
    blocks (n x 3) follow the same convention, destination meaning the
    consuming region's agents.
    """

    A_ll: np.ndarray
    A_rl: np.ndarray
    A_lr: np.ndarray
    A_rr: np.ndarray
    Z_ll: np.ndarray
    Z_rl: np.ndarray
    Z_lr: np.ndarray
    Z_rr: np.ndarray
    f_ll: np.ndarray
    f_lr: np.ndarray
    f_rl: np.ndarray
    f_rr: np.ndarray
    x_local: np.ndarray
    x_rest: np.ndarray
    va_local: np.ndarray
    va_rest: np.ndarray
    rho_local: np.ndarray
    rho_rest: np.ndarray
    rho_f: np.ndarray

    @property
    def n(self):
        return len(self.x_local)

    # Stacked 2n views (local industries first) used by the dynamic model.

    @property
    def A(self):
        return np.block([[self.A_ll, self.A_lr], [self.A_rl, self.A_rr]])

    @property
    def Z(self):
        return np.block([[self.Z_ll, self.Z_lr], [self.Z_rl, self.Z_rr]])

    @property
    def x(self):
        return np.concatenate([self.x_local, self.x_rest])

    @property
    def va(self):
        return np.concatenate([self.va_local, self.va_rest])

    def final_demand(self, component, destination):
        """Stacked 2n vector of one final-demand component bought by one
        region's agents, indexed by producing industry."""
        c = FD_COMPONENTS.index(component)
        if destination == "local":
            return np.concatenate([self.f_ll[:, c], self.f_rl[:, c]])
        return np.concatenate([self.f_lr[:, c], self.f_rr[:, c]])

    def validate(self, rel_tol=1e-6):
        A = self.A_ll + self.A_rl
        B = self.A_lr + self.A_rr
        if not np.array_equal(A, B):
            raise IOError_("block coefficient constraints disagree between regions")
        fd = self.f_ll.sum(axis=1) + self.f_lr.sum(axis=1)
        row = self.Z_ll.sum(axis=1) + self.Z_lr.sum(axis=1) + fd
        scale = np.maximum(np.abs(self.x_local), 1e-300)
        if np.max(np.abs(row - self.x_local) / scale) > rel_tol:
            raise IOError_("local row identity x = Z.1 + f violated")
        fd = self.f_rl.sum(axis=1) + self.f_rr.sum(axis=1)
        row = self.Z_rl.sum(axis=1) + self.Z_rr.sum(axis=1) + fd
        scale = np.maximum(np.abs(self.x_rest), 1e-300)
        if np.max(np.abs(row - self.x_rest) / scale) > rel_tol:
            raise IOError_("rest row identity x = Z.1 + f violated")
        return self

    def to_dataframe(self):
        """Flows table in block layout: rows are origins, columns are
        destination industries, then final demand by destination region."""
        n = self.n
        labels = [f"{REGION_LABELS[r]}:{i}" for r in (LOCAL, REST) for i in range(n)]
        data = {}
        Z = self.Z
        for col, lab in enumerate(labels):
            data[f"Z->{lab}"] = Z[:, col]
        for c, comp in enumerate(FD_COMPONENTS):
            data[f"{comp}->local"] = np.concatenate([self.f_ll[:, c], self.f_rl[:, c]])
        for c, comp in enumerate(FD_COMPONENTS):
            data[f"{comp}->rest"] = np.concatenate([self.f_lr[:, c], self.f_rr[:, c]])
        data["x"] = self.x
        frame = pd.DataFrame(data, index=pd.Index(labels, name="origin"))
        return frame

    def value_added_frame(self):
        n = self.n
        return pd.DataFrame(
            {
                "region": [REGION_LABELS[LOCAL]] * n + [REGION_LABELS[REST]] * n,
                "industry": list(range(n)) * 2,
                "value_added": self.va,
            }
        )


def regionalize(A, f, y_region, y_nation, delta=0.15, x=None):
    """Split national coefficients and final demand into two-region blocks.

    ``A`` and ``f`` are the national technical coefficients and final demand
    (industry x 3). ``x`` (national gross output) is solved from the Leontief
    identity when not supplied. Residual final demand (exports of each region
    to the other beyond modeled flows) is allocated across components by
    national shares; a negative residual is an error naming the industries.
    """
    A = np.asarray(A, dtype=float)
    f = np.asarray(f, dtype=float)
    y_region = np.asarray(y_region, dtype=float)
    y_nation = np.asarray(y_nation, dtype=float)
    n = A.shape[0]

    if x is None:
        x = np.linalg.solve(np.eye(n) - A, f.sum(axis=1))
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise IOError_("national gross output must be strictly positive")

    rho_local, flq_local = _flq_rho(y_region, y_nation, delta)
    A_ll, A_rl = exact_complement_split(A, rho_local)

    y_rest = y_nation - y_region
    if np.any(y_rest <= 0):
        raise IOError_("region GDP must be strictly below national GDP per industry")
    rho_rest, _ = _flq_rho(y_rest, y_nation, delta, force_unit_lambda=True)
    A_rr, A_lr = exact_complement_split(A, rho_rest)

    x_local = x * (y_region / y_nation)
    x_rest = x - x_local

    Z_ll = A_ll * x_local[None, :]
    Z_rl = A_rl * x_local[None, :]
    Z_rr = A_rr * x_rest[None, :]
    Z_lr = A_lr * x_rest[None, :]

    # Regional purchase coefficients for final demand use the diagonal FLQ.
    rho_f = np.minimum(np.diag(flq_local), 1.0)
    f_total = f.sum()
    if f_total <= 0:
        raise IOError_("national final demand must be positive in total")
    spend_local = f_total * (y_region.sum() / y_nation.sum())
    demand_by_locals = f * (spend_local / f_total)
    f_ll = rho_f[:, None] * demand_by_locals
    f_rl = demand_by_locals - f_ll

    resid_local = x_local - Z_ll.sum(axis=1) - Z_lr.sum(axis=1) - f_ll.sum(axis=1)
    resid_rest = x_rest - Z_rl.sum(axis=1) - Z_rr.sum(axis=1) - f_rl.sum(axis=1)
    tol = -1e-9 * max(float(x.max()), 1.0)
    bad = np.flatnonzero((resid_local < tol) | (resid_rest < tol))
    if bad.size:
        raise IOError_(
            "negative residual final demand for industries "
            f"{bad.tolist()}; increase delta or adjust regional GDP"
        )
    f_lr = _split_components(resid_local, f)
    f_rr = _split_components(resid_rest, f)

    va_local = x_local - Z_ll.sum(axis=0) - Z_rl.sum(axis=0)
    va_rest = x_rest - Z_lr.sum(axis=0) - Z_rr.sum(axis=0)

    return TwoRegionIO(
        A_ll=A_ll, A_rl=A_rl, A_lr=A_lr, A_rr=A_rr,
        Z_ll=Z_ll, Z_rl=Z_rl, Z_lr=Z_lr, Z_rr=Z_rr,
        f_ll=f_ll, f_lr=f_lr, f_rl=f_rl, f_rr=f_rr,
        x_local=x_local, x_rest=x_rest,
        va_local=va_local, va_rest=va_rest,
        rho_local=rho_local, rho_rest=rho_rest, rho_f=rho_f,
    ).validate()
