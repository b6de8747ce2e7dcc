"""One coupled run of the empirical scenario.

Simulates 140 days at 10,000 agents: measures start March 16, closures relax
May 15, schools and work-from-home stay on. Prints the epidemic trajectory
alongside unemployment and the fear-of-infection feedback.
"""

from epiecon import presets
from epiecon.simulation import ScenarioConfig, Simulation, build_world

scenario = ScenarioConfig.from_dict(presets.demo_scenario(n_persons=10_000))
world = build_world(scenario)
result = Simulation(world, scenario, seed=1).run()

agg = result.frames["econ_aggregate"]
epi = result.frames["epidemic"]
print(f"{'day':>4s} {'date':>12s} {'infected':>9s} {'rep.deaths':>10s} "
      f"{'unemp':>7s} {'lambda_eco':>10s}")
for t in (0, 20, 33, 45, 60, 75, 93, 110, 139):
    infected = world.population.n - epi["s"].iloc[t]
    print(f"{t:>4d} {agg['date'].iloc[t]:>12s} {infected:>9d} "
          f"{epi['reported_deaths'].iloc[t]:>10d} "
          f"{agg['unemployment_rate'].iloc[t]:>7.1%} "
          f"{agg['lambda_eco'].iloc[t]:>10.3f}")

print(f"\nsummary: {result.summary}")
by_layer = {c: int(epi[c].sum()) for c in
            ("inf_household", "inf_school", "inf_workplace", "inf_community")}
print(f"infections by layer: {by_layer}")
print(f"timings: {result.timings}")
