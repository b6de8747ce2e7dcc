import numpy as np
import pytest

from epiecon import contacts
from epiecon.contacts import (
    ContactTemplates,
    EdgeSet,
    Places,
    VisitLog,
    VisitModelConfig,
    assign_workplaces,
    community_weights,
    household_weights,
    make_places,
    network_for_day,
    scale_layers,
    school_weights,
    synth_visits,
    workplace_weights,
)
from epiecon.epidemic import DayFilters
from epiecon.industries import N_INDUSTRIES, NO_INDUSTRY
from epiecon.util import ConfigError


def visit_log_for(entries):
    """entries: dict day -> list of (person, place, minutes)."""
    person, place, minutes = [], [], []
    for day in range(7):
        rows = entries.get(day, [])
        person.append(np.array([r[0] for r in rows], dtype=np.int64))
        place.append(np.array([r[1] for r in rows], dtype=np.int64))
        minutes.append(np.array([r[2] for r in rows], dtype=float))
    return VisitLog(person=person, place=place, minutes=minutes)


def two_places():
    return Places(industry=np.array([6, NO_INDUSTRY]), outdoor=np.array([False, True]))


def test_zero_visit_rate_empty_template(small_pop):
    places = make_places(30, seed=0)
    cfg = VisitModelConfig(weekday_visit_prob=0.0, weekend_visit_prob=0.0)
    log = synth_visits(small_pop, places, cfg, seed=1)
    assert all(len(log.person[d]) == 0 for d in range(7))


def test_no_places_with_positive_rate_is_config_error(small_pop):
    places = Places(industry=np.empty(0, dtype=int), outdoor=np.empty(0, dtype=bool))
    with pytest.raises(ConfigError):
        synth_visits(small_pop, places, VisitModelConfig(), seed=1)


def test_single_place_two_visitors_meet():
    log = visit_log_for({0: [(0, 0, 60.0), (1, 0, 60.0)]})
    edges, _ = community_weights(log, two_places(), 0)
    assert edges.n_edges == 1
    assert edges.w[0] == pytest.approx(1.0)
    assert (edges.i[0], edges.j[0]) == (0, 1)


def test_time_share_arithmetic():
    # i splits 2h+2h over p0,p1; j spends 1h at p0 only -> w = (1/2)*(1) = 0.5
    log = visit_log_for({0: [(0, 0, 120.0), (0, 1, 120.0), (1, 0, 60.0)]})
    edges, _ = community_weights(log, two_places(), 0)
    assert edges.n_edges == 1
    assert edges.w[0] == pytest.approx(0.5)
    assert edges.industry[0] == 6          # the shared venue's industry


def test_threshold_drops_weak_links():
    # weight 0.005 < 0.01: each of i, j spends 1/10 of their time at the
    # shared venue on one side and 1/2 on the other
    log = visit_log_for({0: [(0, 0, 10.0), (0, 1, 190.0), (1, 0, 10.0), (1, 1, 30.0)]})
    places = Places(industry=np.array([6, 16]), outdoor=np.array([False, False]))
    edges, removed = community_weights(log, places, 0, threshold=0.01)
    weights = dict(zip(zip(edges.i, edges.j), edges.w))
    # shared-time weight: 0.05*0.25 + 0.95*0.75 survives; rebuild by hand
    w_manual = (10 / 200) * (10 / 40) + (190 / 200) * (30 / 40)
    assert weights[(0, 1)] == pytest.approx(w_manual)
    # construct a genuinely weak pair
    log2 = visit_log_for({0: [(0, 0, 1.0), (0, 1, 99.0), (1, 0, 99.0), (1, 1, 1.0)]})
    edges2, removed2 = community_weights(log2, places, 0, threshold=0.01)
    # w = 0.01*0.99 + 0.99*0.01 = 0.0198 > threshold stays; shrink further
    log3 = visit_log_for({0: [(0, 0, 1.0), (0, 1, 199.0), (1, 0, 199.0), (1, 1, 1.0)]})
    # hmm: 0.005*0.995*2 = 0.00995 < 0.01 -> dropped
    edges3, removed3 = community_weights(log3, places, 0, threshold=0.01)
    assert edges3.n_edges == 0
    assert removed3 == pytest.approx(1.0)


def test_dominant_place_tags_edge():
    # pair shares two venues; the larger-contribution one wins the tag
    places = Places(industry=np.array([6, 17]), outdoor=np.array([False, False]))
    log = visit_log_for({0: [(0, 0, 30.0), (0, 1, 90.0), (1, 0, 30.0), (1, 1, 90.0)]})
    edges, _ = community_weights(log, places, 0)
    assert edges.n_edges == 1
    assert edges.industry[0] == 17


def test_visit_popularity_ratio():
    # two industries with 9:1 popularity and equal venue counts
    class Pop:
        n = 4000
    places = Places(
        industry=np.array([6] * 200 + [16] * 200),
        outdoor=np.zeros(400, dtype=bool),
    )
    weights = np.zeros(N_INDUSTRIES)
    weights[6] = 9.0
    weights[16] = 1.0
    cfg = VisitModelConfig(personal_places=2, weekday_visit_prob=0.5,
                           industry_popularity=weights, no_industry_popularity=0.0)
    log = synth_visits(Pop(), places, cfg, seed=3)
    person, place, minutes = log.day(0)
    assert len(person) > 2000
    share = np.mean(places.industry[place] == 6)
    assert abs(share - 0.9) < 0.02


def test_workplace_weights_values(small_pop):
    cbg = np.full(small_pop.n, -1, dtype=np.int64)
    workers = np.flatnonzero(small_pop.employed)[:6]
    cbg[workers[:3]] = 0          # same CBG, n_poi 1
    cbg[workers[3:5]] = 1         # same CBG, n_poi 4
    cbg[workers[5]] = 2           # alone
    n_poi = np.array([1, 4, 2])
    edges = workplace_weights(small_pop, cbg, n_poi)
    by_pair = {(i, j): w for i, j, w in zip(edges.i, edges.j, edges.w)}
    a, b, c = sorted(workers[:3])
    assert by_pair[(a, b)] == pytest.approx(1.0)
    d, e = sorted(workers[3:5])
    assert by_pair[(d, e)] == pytest.approx(0.25)
    # different CBGs -> no edge; singleton -> no edge
    assert len(by_pair) == 4


def test_workplace_zero_poi_is_config_error(small_pop):
    cbg = np.full(small_pop.n, -1, dtype=np.int64)
    workers = np.flatnonzero(small_pop.employed)[:2]
    cbg[workers] = 0
    with pytest.raises(ConfigError):
        workplace_weights(small_pop, cbg, np.array([0]))


def test_workplace_threshold():
    class Pop:
        n = 4
        employed = np.ones(4, dtype=bool)
        industry = np.zeros(4, dtype=np.int64)
    cbg = np.zeros(4, dtype=np.int64)
    edges = workplace_weights(Pop(), cbg, np.array([200]))   # w = 0.005 <= 0.01
    assert edges.n_edges == 0


def test_household_weights(small_pop):
    edges = household_weights(small_pop)
    sizes = small_pop.hh_size[small_pop.household_id[edges.i]]
    assert np.allclose(edges.w, 1.0 / (sizes - 1))
    # a size-2 household gives weight 1, size-5 gives 0.25
    for n_h, expect in ((2, 1.0), (5, 0.25)):
        hh = np.flatnonzero(small_pop.hh_size == n_h)
        if len(hh):
            sel = small_pop.household_id[edges.i] == hh[0]
            assert np.allclose(edges.w[sel], expect)
    # singles contribute no edges
    singles = np.flatnonzero(small_pop.hh_size == 1)
    members = np.isin(small_pop.household_id[edges.i], singles)
    assert not members.any()
    # complete graphs: edge count per household = n(n-1)/2
    per_hh = np.bincount(small_pop.household_id[edges.i],
                         minlength=small_pop.n_households)
    expect = small_pop.hh_size * (small_pop.hh_size - 1) // 2
    assert np.array_equal(per_hh, expect)


def test_school_weights_triangle():
    class Pop:
        age = np.array([10, 11, 12, 40, 9])
        tract = np.array([0, 0, 0, 0, 1])
    edges = school_weights(Pop())
    assert edges.n_edges == 3            # triangle among the three tract-0 kids
    assert np.allclose(edges.w, 0.5)
    # the lone tract-1 child has no edges
    assert 4 not in set(edges.i) | set(edges.j)


def test_school_edge_count_combinatorics(small_pop):
    edges = school_weights(small_pop)
    kids = (small_pop.age >= 5) & (small_pop.age < 18)
    per_tract = np.bincount(small_pop.tract[kids])
    expect = int(np.sum(per_tract * (per_tract - 1) / 2))
    assert edges.n_edges == expect


def make_static_templates(house_w):
    z = EdgeSet.empty()
    house = EdgeSet(
        i=np.array([0, 2]), j=np.array([1, 3]), w=np.asarray(house_w, dtype=float),
        industry=np.array([-1, -1]), outdoor=np.array([False, False]),
        place=np.array([-1, -1]),
    )
    return ContactTemplates(
        community=[z] * 7, workplace=[z] * 7, household=house, school=EdgeSet.empty()
    )


def test_scale_layers_uniform_weights_hit_kappa():
    templates = make_static_templates([1.0, 1.0])
    scale_layers(templates)
    assert np.allclose(templates.household.w, 4.11)


def test_scale_layers_scale_invariance():
    a = make_static_templates([0.5, 1.5])
    scale_layers(a)
    b = make_static_templates([1.0, 3.0])    # doubled raw weights
    scale_layers(b)
    assert np.allclose(a.household.w, b.household.w)


def test_scaled_layer_means_equal_kappa(small_world):
    templates = small_world.contact_world.templates
    for layer, kappa in contacts.DEFAULT_KAPPA.items():
        sets = {id(e): e for e in templates.layer_edges(layer)}.values()
        weights = np.concatenate([e.w for e in sets if e.n_edges])
        assert abs(weights.mean() / kappa - 1.0) < 1e-9


def test_removed_weight_share_small(small_world):
    assert small_world.contact_world.templates.removed_weight_share < 0.10


def test_canonical_ordering(small_world):
    templates = small_world.contact_world.templates
    for layer in contacts.LAYERS:
        for e in {id(s): s for s in templates.layer_edges(layer)}.values():
            assert np.all(e.i < e.j)
            order = np.lexsort((e.j, e.i))
            assert np.array_equal(order, np.arange(e.n_edges))


def test_double_scaling_rejected(small_world):
    with pytest.raises(ValueError):
        scale_layers(small_world.contact_world.templates)


def test_network_for_day_no_filters(small_world):
    templates = small_world.contact_world.templates
    rng = np.random.default_rng(0)
    filters = DayFilters.open_world(small_world.population.n)
    day = network_for_day(templates, 2, filters, rng)
    assert day["community"].n_edges == templates.community[2].n_edges
    assert day["workplace"].n_edges == templates.workplace[2].n_edges
    assert day["school"].n_edges == templates.school.n_edges


def test_network_for_day_school_closure(small_world):
    templates = small_world.contact_world.templates
    filters = DayFilters.open_world(small_world.population.n)
    filters.schools_open = False
    day = network_for_day(templates, 0, filters, np.random.default_rng(0))
    assert day["school"].n_edges == 0


def test_network_for_day_full_closure_removes_tagged_edges(small_world):
    templates = small_world.contact_world.templates
    filters = DayFilters.open_world(small_world.population.n)
    k = 6   # retail
    filters.community_survival = np.ones(N_INDUSTRIES + 1)
    filters.community_survival[k] = 0.0
    day = network_for_day(templates, 0, filters, np.random.default_rng(0))
    assert not np.any(day["community"].industry == k)
    # other industries untouched
    base = templates.community[0]
    assert day["community"].n_edges == int(np.sum(base.industry != k))


def test_templates_csv_roundtrip(tmp_path, small_world):
    templates = small_world.contact_world.templates
    path = tmp_path / "templates.csv"
    contacts.save_templates(templates, path)
    loaded = contacts.load_templates(path)
    for layer in contacts.LAYERS:
        orig_sets = templates.layer_edges(layer)
        load_sets = loaded.layer_edges(layer)
        for a, b in zip(orig_sets, load_sets):
            assert np.array_equal(a.i, b.i)
            assert np.array_equal(a.j, b.j)
            assert np.allclose(a.w, b.w)
            assert np.array_equal(a.industry, b.industry)


def test_workplace_assignment_bins_by_industry(small_pop):
    cbg, n_poi, cbg_industry = assign_workplaces(small_pop, cbg_size=10, seed=4)
    workers = small_pop.employed
    assert np.all(cbg[workers] >= 0)
    assert np.all(cbg[~workers] == -1)
    # all workers in one CBG share the industry
    for c in range(len(n_poi)):
        members = np.flatnonzero(cbg == c)
        assert len(set(small_pop.industry[members])) == 1
        assert small_pop.industry[members[0]] == cbg_industry[c]
