import numpy as np
import pytest
from epiecon.contacts import ContactTemplates, ContactWorld, EdgeSet, scale_layers
from epiecon.epidemic import (
    DayFilters,
    EpiParams,
    EpiState,
    I_A,
    I_S,
    L,
    P_S,
    R,
    S,
    progression_step,
    reported_deaths,
    seed_epidemic,
    transmission_step,
)
from epiecon.util import ConfigError, RunError


class FakePop:
    """Minimal population stand-in for epidemic unit tests."""

    def __init__(self, ages):
        self.age = np.asarray(ages, dtype=np.int64)
        self.n = len(self.age)
        self.occupation = np.full(self.n, -1, dtype=np.int64)
        self.income = np.zeros(self.n)


def tiny_world(n, edges, weights, kappa_override=None):
    """Household-only world with given raw edges; weights pass through by
    setting kappa to the mean raw weight."""
    i = np.array([e[0] for e in edges], dtype=np.int64)
    j = np.array([e[1] for e in edges], dtype=np.int64)
    w = np.asarray(weights, dtype=float)
    house = EdgeSet(i=i, j=j, w=w, industry=np.full(len(i), -1, dtype=np.int64),
                    outdoor=np.zeros(len(i), dtype=bool),
                    place=np.full(len(i), -1, dtype=np.int64))
    z = EdgeSet.empty()
    templates = ContactTemplates(community=[z] * 7, workplace=[z] * 7,
                                 household=house, school=EdgeSet.empty())
    kappa = dict(household=float(np.mean(w)), school=1, workplace=1, community=1)
    if kappa_override:
        kappa.update(kappa_override)
    scale_layers(templates, kappa)
    return ContactWorld(templates, n)


def test_zero_weight_edge_never_fires():
    # dummy edge (2, 3) keeps the layer mean positive; the probed edge has w=0
    world = tiny_world(4, [(0, 1), (2, 3)], [0.0, 2.0],
                       kappa_override={"household": 1.0})
    params = EpiParams(beta=5.0).validate()
    pop = FakePop([30, 30, 30, 30])
    state = EpiState(pop, params)
    rng = np.random.default_rng(0)
    hits = 0
    filters = DayFilters.open_world(4)
    for _ in range(2000):
        state.comp[0] = I_S
        state.comp[1] = S
        state.comp[2:] = R
        hits += len(transmission_step(world, 0, state, params, filters, rng, 0))
    assert hits == 0


def infection_rate(world, params, src_comp, dst_age, trials=20_000, seed=0):
    pop = FakePop([30, dst_age])
    state = EpiState(pop, params)
    rng = np.random.default_rng(seed)
    filters = DayFilters.open_world(2)
    hits = 0
    for _ in range(trials):
        state.comp[0] = src_comp
        state.comp[1] = S
        hits += len(transmission_step(world, 0, state, params, filters, rng, 0))
    return hits / trials


def test_transmission_probability_formula():
    world = tiny_world(2, [(0, 1)], [1.0])
    params = EpiParams(beta=0.3).validate()
    expect = 1.0 - np.exp(-0.3)
    rate = infection_rate(world, params, I_S, dst_age=30)
    se = np.sqrt(expect * (1 - expect) / 20_000)
    assert abs(rate - expect) < 4 * se
    assert expect == pytest.approx(0.25918, abs=1e-4)


def test_asymptomatic_relative_infectiousness():
    world = tiny_world(2, [(0, 1)], [1.0])
    params = EpiParams(beta=0.3, r_asym=0.5).validate()
    expect = 1.0 - np.exp(-0.15)
    rate = infection_rate(world, params, I_A, dst_age=30)
    assert abs(rate - expect) < 4 * np.sqrt(expect * (1 - expect) / 20_000)


def test_child_susceptibility_multiplies_probability():
    world = tiny_world(2, [(0, 1)], [1.0])
    params = EpiParams(beta=0.3).validate()
    expect = (1.0 - np.exp(-0.3)) * 0.56
    rate = infection_rate(world, params, I_S, dst_age=10)
    assert abs(rate - expect) < 4 * np.sqrt(expect * (1 - expect) / 20_000)


def test_two_infectious_neighbors_monte_carlo():
    # union probability over two independent edges, against the closed form
    w1, w2 = 0.8, 0.3
    world = tiny_world(3, [(0, 2), (1, 2)], [w1, w2],
                       kappa_override={"household": np.mean([w1, w2])})
    params = EpiParams(beta=0.5).validate()
    p1 = 1.0 - np.exp(-0.5 * w1)
    p2 = 1.0 - np.exp(-0.5 * w2)
    expect = 1.0 - (1.0 - p1) * (1.0 - p2)
    pop = FakePop([30, 30, 30])
    state = EpiState(pop, params)
    rng = np.random.default_rng(7)
    filters = DayFilters.open_world(3)
    trials = 100_000
    hits = 0
    for _ in range(trials):
        state.comp[:2] = I_S
        state.comp[2] = S
        hits += len(transmission_step(world, 0, state, params, filters, rng, 0))
    rate = hits / trials
    assert abs(rate - expect) < 3 * np.sqrt(expect * (1 - expect) / trials)


def test_progression_timing():
    params = EpiParams().validate()      # eps 5, gamma 2
    pop = FakePop([40])
    state = EpiState(pop, params)
    state.expose(np.array([0]), day=3, source=np.array([-1]),
                 layer=np.array([0]), industry=np.array([-1]))
    rng = np.random.default_rng(0)
    assert state.comp[0] == L
    for day in range(4, 12):
        progression_step(state, params, rng, day)
        if day < 6:
            assert state.comp[0] == L
        elif day < 8:
            assert state.comp[0] == P_S
        elif day == 8:
            assert state.comp[0] in (I_S, I_A)
            break


def test_death_probability_for_oldest_band():
    params = EpiParams().validate()
    n = 40_000
    pop = FakePop([85] * n)
    state = EpiState(pop, params)
    state.comp[:] = I_S
    state.t_removed[:] = 5
    rng = np.random.default_rng(1)
    progression_step(state, params, rng, 5)
    assert np.all(state.comp == R)
    frac = np.mean(state.t_dead[: n] > 0)
    expect = 0.078 / 0.646
    assert expect == pytest.approx(0.1207, abs=1e-3)
    assert abs(frac - expect) < 4 * np.sqrt(expect * (1 - expect) / n)


def test_asymptomatic_never_die():
    params = EpiParams().validate()
    pop = FakePop([85] * 5000)
    state = EpiState(pop, params)
    state.comp[:] = I_A
    state.t_removed[:] = 2
    rng = np.random.default_rng(2)
    progression_step(state, params, rng, 2)
    assert np.all(state.comp == R)
    assert not np.any(state.t_dead > 0)


def test_death_reporting_delay():
    params = EpiParams().validate()
    pop = FakePop([85] * 400)
    state = EpiState(pop, params)
    assert reported_deaths(state, 0) == 0
    state.comp[:] = I_S
    state.t_removed[:] = 30
    rng = np.random.default_rng(3)
    progression_step(state, params, rng, 30)
    doomed = state.t_dead > 0
    assert doomed.any()
    # delay split between 12 and 13 days, reported 7 days later
    assert set(np.unique(state.t_dead[doomed])) <= {42, 43}
    assert np.all(state.t_report[doomed] == state.t_dead[doomed] + 7)
    total = int(doomed.sum())
    assert reported_deaths(state, 49) + reported_deaths(state, 50) == total
    assert reported_deaths(state, 30) == 0


def test_reported_cumulative_lags_actual(small_scenario_dict):
    from epiecon.simulation import ScenarioConfig, build_world, Simulation

    sc = ScenarioConfig.from_dict(small_scenario_dict)
    world = build_world(sc)
    res = Simulation(world, sc, seed=3).run()
    epi = res.frames["epidemic"]
    dead = epi["d"].to_numpy()
    cum_rep = epi["reported_deaths"].to_numpy().cumsum()
    assert np.all(cum_rep <= dead + 1e-9)


def test_mean_infectious_duration():
    params = EpiParams().validate()
    n = 30_000
    pop = FakePop([40] * n)
    state = EpiState(pop, params)
    state.comp[:] = P_S
    state.t_infectious[:] = 10
    rng = np.random.default_rng(4)
    progression_step(state, params, rng, 10)
    durations = state.t_removed - 10
    assert abs(durations.mean() - 2.5) < 0.05
    assert durations.min() >= 1


def test_symptomatic_share_by_age():
    params = EpiParams().validate()
    n = 30_000
    pop = FakePop([85] * n)
    state = EpiState(pop, params)
    state.comp[:] = P_S
    state.t_infectious[:] = 0
    rng = np.random.default_rng(5)
    progression_step(state, params, rng, 0)
    share = np.mean(state.comp == I_S)
    assert abs(share - 0.646) < 0.01


def test_ifr_exceeding_symptomatic_prob_rejected():
    with pytest.raises(ConfigError):
        EpiParams(symptomatic_prob=(0.1,) * 9, ifr=(0.2,) * 9).validate()


def test_presym_rate_closure():
    params = EpiParams(beta=0.3).validate()
    ages = np.array([30] * 50 + [85] * 50)
    beta_s = params.beta_presym(ages)
    p_mean = np.mean(np.asarray(params.symptomatic_prob)[params.age_band(ages)])
    beta_bar = p_mean * 0.3 + (1 - p_mean) * 0.15
    # with a 50% pre-symptomatic share: beta_s * presym_days = beta_bar * mu
    assert beta_s * params.presym_days == pytest.approx(beta_bar * params.mean_infectious_days)


def test_seeding_scaling_and_failure():
    from epiecon import presets
    from epiecon.simulation import ScenarioConfig, build_world, Simulation

    sc_dict = presets.demo_scenario(n_persons=1200, seeds=[1])
    sc_dict["epi"]["beta"] = 0.0
    sc = ScenarioConfig.from_dict(sc_dict)
    world = build_world(sc)
    # target scales as ceil(165 * 1200/416442) = 1 <= 10 seeds: instant success
    sim = Simulation(world, sc, seed=1)
    assert sim.burn_days == 0
    # an unreachable target with beta = 0 exhausts the retries
    with pytest.raises(RunError):
        seed_epidemic(world.population, world.contact_world, sc.epi_config(),
                      n_latent=5, target_exposed=50, seed=1, max_attempts=2)


def test_compartment_conservation(small_world, small_scenario_dict):
    from epiecon.simulation import ScenarioConfig, Simulation

    sc = ScenarioConfig.from_dict(small_scenario_dict)
    res = Simulation(small_world, sc, seed=9).run()
    epi = res.frames["epidemic"]
    totals = epi[["s", "l", "p_s", "i_s", "i_a", "r", "d"]].sum(axis=1)
    assert np.all(totals == small_world.population.n)


def test_infection_provenance_complete(small_world, small_scenario_dict):
    from epiecon.simulation import ScenarioConfig, Simulation

    sc = ScenarioConfig.from_dict(small_scenario_dict)
    res = Simulation(small_world, sc, seed=10).run()
    inf = res.frames["infections"]
    epi = res.frames["epidemic"]
    # every calendar-day infection is logged with its layer (burn-in rows
    # carry negative days)
    assert inf[inf.day >= 0].shape[0] == epi["new_infections"].sum()
    assert set(inf["layer"]).issubset({"household", "school", "workplace", "community"})


def test_fired_workers_generate_no_workplace_infections(small_world, small_scenario_dict):
    from epiecon.simulation import ScenarioConfig, Simulation

    # every worker fired: the workplace layer must produce zero infections
    sc_dict = {k: v for k, v in small_scenario_dict.items()}
    sc_dict = ScenarioConfig.from_dict(sc_dict)
    world = small_world
    params = sc_dict.epi_config()
    pop = world.population
    state = EpiState(pop, params)
    seeds = np.flatnonzero(pop.employed)[:30]
    state.comp[seeds] = I_S
    filters = DayFilters.open_world(pop.n)
    filters.workplace_absent = pop.employed.copy()   # everyone fired
    rng = np.random.default_rng(11)
    for day in range(5):
        transmission_step(world.contact_world, day % 5, state, params, filters, rng, day)
    inf = state.infection_frame(pop)
    assert not (inf["layer"] == "workplace").any()


def test_monotone_in_beta():
    from epiecon import presets
    from epiecon.simulation import ScenarioConfig, build_world, Simulation

    deaths = {}
    for beta in (0.0024, 0.0036):
        sc = ScenarioConfig.from_dict(
            presets.demo_scenario(n_persons=1200, beta=beta, seeds=[1])
        )
        world = build_world(sc)
        totals = [
            Simulation(world, sc, seed=s).run().summary["cumulative_deaths"]
            for s in range(50)
        ]
        deaths[beta] = np.mean(totals)
    assert deaths[0.0036] >= deaths[0.0024]
