"""Four-layer weighted contact network built from synthetic visit logs.

Community and workplace layers are temporal (one template per day of week,
rebuilt from co-location weights); household and school layers are static
complete graphs. After thresholding, every layer is rescaled so that its mean
edge weight equals the layer's contact-rate constant kappa.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from .industries import (
    COMMUNITY_WEIGHT,
    N_INDUSTRIES,
    NO_INDUSTRY,
    VENUE_COUNT_WEIGHT,
)
from .util import ConfigError, group_pairs, rng_for

logger = logging.getLogger(__name__)

LAYERS = ("household", "school", "workplace", "community")
DEFAULT_KAPPA = {"household": 4.11, "school": 11.41, "workplace": 8.07, "community": 2.79}
EDGE_THRESHOLD = 0.01
N_WEEKDAYS = 7


@dataclass
class Places:
    """Community venues: industry id (NO_INDUSTRY for non-economic venues)
    and whether the venue is outdoors."""

    industry: np.ndarray
    outdoor: np.ndarray

    @property
    def n(self):
        return len(self.industry)


def make_places(n_places, seed, no_industry_share=0.12, outdoor_prob=0.7):
    """Venue table with industry mix proportional to real venue counts."""
    rng = rng_for(seed, 10)
    weights = np.concatenate([VENUE_COUNT_WEIGHT, [no_industry_share * VENUE_COUNT_WEIGHT.sum() / (1 - no_industry_share)]])
    weights = weights / weights.sum()
    kinds = rng.choice(len(weights), size=n_places, p=weights)
    industry = np.where(kinds == N_INDUSTRIES, NO_INDUSTRY, kinds).astype(np.int64)
    outdoor = (industry == NO_INDUSTRY) & (rng.random(n_places) < outdoor_prob)
    return Places(industry=industry, outdoor=outdoor)


@dataclass
class VisitModelConfig:
    """Synthetic visit generator knobs.

    Each person keeps a personal list of favourite venues (repeats allowed,
    drawn with popularity weights); on each template day every list slot is
    visited independently with the weekday/weekend probability, for a
    log-normal number of minutes.
    """

    personal_places: int = 6
    weekday_visit_prob: float = 0.33
    weekend_visit_prob: float = 0.5
    minutes_log_mean: float = 3.8     # ~45 minutes
    minutes_log_sigma: float = 0.6
    industry_popularity: np.ndarray | None = None   # defaults to observed foot traffic
    no_industry_popularity: float = 0.05

    def popularity(self):
        pop = np.asarray(
            self.industry_popularity if self.industry_popularity is not None else COMMUNITY_WEIGHT,
            dtype=float,
        )
        if pop.shape != (N_INDUSTRIES,):
            raise ConfigError("industry_popularity must have one weight per industry")
        return pop


@dataclass
class VisitLog:
    """Per template day (Mon=0..Sun=6): person, place and minutes arrays."""

    person: list
    place: list
    minutes: list

    def day(self, weekday):
        return self.person[weekday], self.place[weekday], self.minutes[weekday]


def synth_visits(population, places: Places, config: VisitModelConfig, seed):
    """Generate weekday/weekend visit templates for every person."""
    rng = rng_for(seed, 11)
    n = population.n
    if config.weekday_visit_prob > 0 or config.weekend_visit_prob > 0:
        if places.n == 0:
            raise ConfigError("visit model: no community places but nonzero visit rate")

    pop_weights = config.popularity()
    counts = np.bincount(places.industry[places.industry >= 0], minlength=N_INDUSTRIES)
    place_w = np.zeros(places.n)
    mask = places.industry >= 0
    place_w[mask] = pop_weights[places.industry[mask]] / np.maximum(
        counts[places.industry[mask]], 1
    )
    none_mask = places.industry == NO_INDUSTRY
    n_none = int(none_mask.sum())
    if n_none:
        place_w[none_mask] = (
            config.no_industry_popularity * pop_weights.sum() / max(1 - config.no_industry_popularity, 1e-9) / n_none
        )
    if place_w.sum() <= 0:
        place_w[:] = 1.0
    place_w = place_w / place_w.sum()

    favourites = rng.choice(places.n, size=(n, config.personal_places), p=place_w)

    person_t, place_t, minutes_t = [], [], []
    for weekday in range(N_WEEKDAYS):
        p_visit = config.weekend_visit_prob if weekday >= 5 else config.weekday_visit_prob
        go = rng.random(favourites.shape) < p_visit
        who, slot = np.nonzero(go)
        minutes = rng.lognormal(config.minutes_log_mean, config.minutes_log_sigma, size=len(who))
        person_t.append(who.astype(np.int64))
        place_t.append(favourites[who, slot].astype(np.int64))
        minutes_t.append(np.maximum(minutes, 1.0))
    return VisitLog(person=person_t, place=place_t, minutes=minutes_t)


@dataclass
class EdgeSet:
    """Canonical edge list for one layer (i < j, sorted by (i, j))."""

    i: np.ndarray
    j: np.ndarray
    w: np.ndarray
    industry: np.ndarray
    outdoor: np.ndarray
    place: np.ndarray

    @classmethod
    def empty(cls):
        z = np.empty(0, dtype=np.int64)
        return cls(z, z.copy(), np.empty(0), z.copy(), np.empty(0, dtype=bool), z.copy())

    @property
    def n_edges(self):
        return len(self.i)

    def canonicalize(self):
        lo = np.minimum(self.i, self.j)
        hi = np.maximum(self.i, self.j)
        keep = lo != hi
        order = np.lexsort((hi[keep], lo[keep]))
        return EdgeSet(
            i=lo[keep][order],
            j=hi[keep][order],
            w=self.w[keep][order],
            industry=self.industry[keep][order],
            outdoor=self.outdoor[keep][order],
            place=self.place[keep][order],
        )


def community_weights(visits: VisitLog, places: Places, template_day, threshold=EDGE_THRESHOLD):
    """Co-location weights: for persons i, j the weight is the sum over venues
    of the product of their time shares spent there. Each retained edge is
    tagged with its dominant venue (largest per-venue term).

    Returns (EdgeSet, removed_weight_share).
    """
    person, place, minutes = visits.day(template_day)
    if len(person) == 0:
        return EdgeSet.empty(), 0.0
    n_places = places.n
    key = person * n_places + place
    uniq, inv = np.unique(key, return_inverse=True)
    t_ip = np.bincount(inv, weights=minutes)
    u_person = (uniq // n_places).astype(np.int64)
    u_place = (uniq % n_places).astype(np.int64)
    t_i = np.bincount(u_person, weights=t_ip)
    share = t_ip / t_i[u_person]

    left, right = group_pairs(u_place)
    keep = u_person[left] < u_person[right]
    left, right = left[keep], right[keep]
    if len(left) == 0:
        return EdgeSet.empty(), 0.0
    contrib = share[left] * share[right]
    pair_key = u_person[left] * np.int64(len(t_i) + 1) + u_person[right]
    pairs, pinv = np.unique(pair_key, return_inverse=True)
    w = np.bincount(pinv, weights=contrib)

    # Dominant venue per pair: sort contributions within pair, take the last.
    order = np.lexsort((contrib, pinv))
    last = np.concatenate([np.flatnonzero(np.diff(pinv[order])), [len(order) - 1]])
    dom = u_place[left[order[last]]]
    dom_sorted = np.empty(len(pairs), dtype=np.int64)
    dom_sorted[pinv[order[last]]] = dom

    total_w = w.sum()
    mask = w > threshold
    removed_share = float((total_w - w[mask].sum()) / total_w) if total_w > 0 else 0.0
    es = EdgeSet(
        i=(pairs[mask] // np.int64(len(t_i) + 1)).astype(np.int64),
        j=(pairs[mask] % np.int64(len(t_i) + 1)).astype(np.int64),
        w=w[mask],
        industry=places.industry[dom_sorted[mask]],
        outdoor=places.outdoor[dom_sorted[mask]],
        place=dom_sorted[mask],
    ).canonicalize()
    return es, removed_share


def assign_workplaces(population, cbg_size, seed, n_poi_choices=(1, 2, 3, 4, 5, 6)):
    """Bin workers of each industry into workplace census block groups of
    roughly ``cbg_size`` workers; each CBG gets a venue count drawn from
    ``n_poi_choices``. Returns (cbg id per person with -1 for non-workers,
    venue count per cbg, industry per cbg)."""
    rng = rng_for(seed, 12)
    cbg = np.full(population.n, -1, dtype=np.int64)
    n_poi, cbg_industry = [], []
    next_id = 0
    for k in range(N_INDUSTRIES):
        workers = np.flatnonzero(population.employed & (population.industry == k))
        if len(workers) == 0:
            continue
        rng.shuffle(workers)
        n_groups = max(1, round(len(workers) / cbg_size))
        assignment = np.arange(len(workers)) % n_groups
        cbg[workers] = next_id + assignment
        n_poi.extend(rng.choice(n_poi_choices, size=n_groups).tolist())
        cbg_industry.extend([k] * n_groups)
        next_id += n_groups
    return cbg, np.asarray(n_poi, dtype=np.int64), np.asarray(cbg_industry, dtype=np.int64)


def workplace_weights(population, workplace_cbg, n_poi_per_cbg, threshold=EDGE_THRESHOLD):
    """Complete graph within each workplace CBG, weight 1 / venue count."""
    assigned = np.flatnonzero(workplace_cbg >= 0)
    if len(assigned) == 0:
        return EdgeSet.empty()
    used = np.unique(workplace_cbg[assigned])
    if np.any(n_poi_per_cbg[used] <= 0):
        bad = used[n_poi_per_cbg[used] <= 0]
        raise ConfigError(f"workplace CBGs with zero venues but assigned workers: {bad.tolist()}")
    left, right = group_pairs(workplace_cbg[assigned])
    keep = assigned[left] < assigned[right]
    a, b = assigned[left[keep]], assigned[right[keep]]
    w = 1.0 / n_poi_per_cbg[workplace_cbg[a]]
    mask = w > threshold
    return EdgeSet(
        i=a[mask],
        j=b[mask],
        w=w[mask],
        industry=population.industry[a[mask]],
        outdoor=np.zeros(int(mask.sum()), dtype=bool),
        place=workplace_cbg[a[mask]],
    ).canonicalize()


def _complete_groups(member_codes, members):
    """Complete graph with weight 1/(group size - 1) inside each code group."""
    left, right = group_pairs(member_codes)
    keep = members[left] < members[right]
    a, b = members[left[keep]], members[right[keep]]
    sizes = np.bincount(member_codes)
    w = 1.0 / (sizes[member_codes[left[keep]]] - 1.0)
    return EdgeSet(
        i=a,
        j=b,
        w=w,
        industry=np.full(len(a), NO_INDUSTRY, dtype=np.int64),
        outdoor=np.zeros(len(a), dtype=bool),
        place=np.full(len(a), -1, dtype=np.int64),
    ).canonicalize()


def household_weights(population):
    """Static household layer: weight 1/(household size - 1)."""
    multi = population.hh_size[population.household_id] > 1
    members = np.flatnonzero(multi)
    if len(members) == 0:
        return EdgeSet.empty()
    return _complete_groups(population.household_id[members], members)


def school_weights(population, school_age=(5, 18)):
    """All children of one tract share one school; weight 1/(school size - 1)."""
    lo, hi = school_age
    kids = np.flatnonzero((population.age >= lo) & (population.age < hi))
    if len(kids) == 0:
        return EdgeSet.empty()
    tract = population.tract[kids]
    counts = np.bincount(tract)
    kids = kids[counts[tract] > 1]
    if len(kids) == 0:
        return EdgeSet.empty()
    return _complete_groups(population.tract[kids], kids)


@dataclass
class ContactTemplates:
    """Frozen pre-pandemic network templates plus layer scaling state."""

    community: list                      # EdgeSet per weekday
    workplace: list                      # EdgeSet per weekday
    household: EdgeSet
    school: EdgeSet
    kappa: dict = field(default_factory=lambda: dict(DEFAULT_KAPPA))
    layer_means: dict = field(default_factory=dict)
    removed_weight_share: float = 0.0
    scaled: bool = False

    def layer_edges(self, layer):
        if layer == "community":
            return self.community
        if layer == "workplace":
            return self.workplace
        if layer == "household":
            return [self.household]
        if layer == "school":
            return [self.school]
        raise KeyError(layer)


def scale_layers(templates: ContactTemplates, kappas=None):
    """Rescale each layer so its mean raw edge weight over the template
    period becomes the layer's kappa. The raw means are frozen; later
    filtering never re-normalizes."""
    if templates.scaled:
        raise ValueError("templates already scaled")
    kappas = dict(DEFAULT_KAPPA if kappas is None else kappas)
    for layer in LAYERS:
        # templates may alias one edge set across several weekdays
        edge_sets = list({id(e): e for e in templates.layer_edges(layer)}.values())
        weights = np.concatenate([e.w for e in edge_sets]) if edge_sets else np.empty(0)
        if weights.size == 0:
            logger.warning("layer %s is empty; kappa scaling skipped", layer)
            continue
        mean = float(weights.mean())
        templates.layer_means[layer] = mean
        factor = kappas[layer] / mean
        for e in edge_sets:
            e.w = e.w * factor
    templates.kappa = kappas
    templates.scaled = True
    return templates


def build_templates(population, places, visit_config, seed, cbg_size=15,
                    kappas=None, threshold=EDGE_THRESHOLD, school_age=(5, 18)):
    """Full network build: visits, four layers, thresholding, kappa scaling."""
    visits = synth_visits(population, places, visit_config, seed)
    community, removed = [], []
    for weekday in range(N_WEEKDAYS):
        edges, rem = community_weights(visits, places, weekday, threshold)
        community.append(edges)
        removed.append(rem)
    cbg, n_poi, _ = assign_workplaces(population, cbg_size, seed)
    work_all = workplace_weights(population, cbg, n_poi, threshold)
    workplace = [work_all if weekday < 5 else EdgeSet.empty() for weekday in range(N_WEEKDAYS)]
    templates = ContactTemplates(
        community=community,
        workplace=workplace,
        household=household_weights(population),
        school=school_weights(population, school_age),
        removed_weight_share=float(np.mean(removed)) if removed else 0.0,
    )
    return scale_layers(templates, kappas)


def pick_template(weekday, variants, rng):
    """Uniform choice among the template variants matching a weekday."""
    if isinstance(variants, EdgeSet):
        return variants
    if len(variants) == 1:
        return variants[0]
    return variants[int(rng.integers(len(variants)))]


def _filter_edges(edges: EdgeSet, keep):
    return EdgeSet(
        i=edges.i[keep], j=edges.j[keep], w=edges.w[keep],
        industry=edges.industry[keep], outdoor=edges.outdoor[keep],
        place=edges.place[keep],
    )


def network_for_day(templates: ContactTemplates, weekday, filters, rng):
    """The day's filtered four-layer network as explicit edge lists.

    Selects the templates matching the weekday, then applies the coupling
    filters: per-edge closure/fear survival in the community layer, absence
    masks in the workplace layer, school layer removal. The transmission
    stepper applies the same filters lazily; this materialized form exists
    for tests, export and inspection.
    """
    community = pick_template(weekday, templates.community[weekday], rng)
    workplace = pick_template(weekday, templates.workplace[weekday], rng)
    out = {"household": templates.household}
    out["school"] = templates.school if filters.schools_open else EdgeSet.empty()

    surv = filters.community_survival[
        np.where(community.industry < 0, len(filters.community_survival) - 1,
                 community.industry)
    ]
    out["community"] = _filter_edges(community, rng.random(community.n_edges) < surv)

    absent = filters.workplace_absent
    keep = ~(absent[workplace.i] | absent[workplace.j]) if workplace.n_edges else np.empty(0, dtype=bool)
    out["workplace"] = _filter_edges(workplace, keep)
    return out


# ---------------------------------------------------------------------------
# Adjacency views for fast per-day queries during transmission.
# ---------------------------------------------------------------------------


@dataclass
class DirectedAdj:
    """Edge list duplicated in both directions and sorted by source."""

    indptr: np.ndarray
    dst: np.ndarray
    w: np.ndarray
    industry: np.ndarray
    outdoor: np.ndarray
    src: np.ndarray

    @classmethod
    def from_edges(cls, edges: EdgeSet, n):
        src = np.concatenate([edges.i, edges.j])
        dst = np.concatenate([edges.j, edges.i])
        w = np.concatenate([edges.w, edges.w])
        ind = np.concatenate([edges.industry, edges.industry])
        out = np.concatenate([edges.outdoor, edges.outdoor])
        order = np.argsort(src, kind="stable")
        src, dst, w, ind, out = src[order], dst[order], w[order], ind[order], out[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)
        return cls(indptr=indptr, dst=dst, w=w, industry=ind, outdoor=out, src=src)

    def edges_from(self, sources):
        """Gather all directed edges whose source is in ``sources``."""
        counts = self.indptr[sources + 1] - self.indptr[sources]
        total = int(counts.sum())
        if total == 0:
            z = np.empty(0, dtype=np.int64)
            return z, z, np.empty(0), z, np.empty(0, dtype=bool)
        starts = np.repeat(self.indptr[sources], counts)
        offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        idx = starts + offsets
        return self.src[idx], self.dst[idx], self.w[idx], self.industry[idx], self.outdoor[idx]


class ContactWorld:
    """Scaled templates compiled into per-weekday adjacency structures."""

    def __init__(self, templates: ContactTemplates, n_persons):
        if not templates.scaled:
            raise ValueError("templates must be kappa-scaled first")
        self.templates = templates
        self.n = n_persons
        self.adj = {
            "community": [DirectedAdj.from_edges(e, n_persons) for e in templates.community],
            "workplace": [DirectedAdj.from_edges(e, n_persons) for e in templates.workplace],
            "household": [DirectedAdj.from_edges(templates.household, n_persons)],
            "school": [DirectedAdj.from_edges(templates.school, n_persons)],
        }

    def layer_day(self, layer, weekday):
        variants = self.adj[layer]
        if layer in ("household", "school"):
            return variants[0]
        return variants[weekday]


# ---------------------------------------------------------------------------
# CSV export / import of the frozen templates.
# ---------------------------------------------------------------------------


def templates_to_frame(templates: ContactTemplates):
    rows = []
    for layer in LAYERS:
        edge_sets = templates.layer_edges(layer)
        for day, e in enumerate(edge_sets):
            rows.append(
                pd.DataFrame(
                    {
                        "layer": layer,
                        "template_day": day if layer in ("community", "workplace") else -1,
                        "i": e.i,
                        "j": e.j,
                        "weight": e.w,
                        "place": e.place,
                        "industry": e.industry,
                        "outdoor": e.outdoor.astype(int),
                    }
                )
            )
    return pd.concat(rows, ignore_index=True) if rows else pd.DataFrame()


def save_templates(templates: ContactTemplates, path):
    templates_to_frame(templates).to_csv(path, index=False)


def load_templates(path, kappa=None):
    frame = pd.read_csv(path)
    def subset(layer, day=None):
        sel = frame["layer"] == layer
        if day is not None:
            sel &= frame["template_day"] == day
        part = frame[sel]
        return EdgeSet(
            i=part["i"].to_numpy(np.int64),
            j=part["j"].to_numpy(np.int64),
            w=part["weight"].to_numpy(float),
            industry=part["industry"].to_numpy(np.int64),
            outdoor=part["outdoor"].to_numpy(bool),
            place=part["place"].to_numpy(np.int64),
        )

    templates = ContactTemplates(
        community=[subset("community", d) for d in range(N_WEEKDAYS)],
        workplace=[subset("workplace", d) for d in range(N_WEEKDAYS)],
        household=subset("household"),
        school=subset("school"),
        kappa=dict(DEFAULT_KAPPA if kappa is None else kappa),
    )
    templates.scaled = True          # exports are written after scaling
    return templates
