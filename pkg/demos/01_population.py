"""Build a synthetic population and look at its joint structure.

Generates 10,000 persons in 25 tracts, then prints the marginals that the
generator is supposed to respect: age mix, employment by age band, the
industry-income gradient, and the work-from-home share by occupation.
"""

import numpy as np

from epiecon import presets
from epiecon.industries import INDUSTRY_NAMES, OCCUPATION_TITLES
from epiecon.population import PopulationConfig, build_population

config = PopulationConfig.from_dict(presets.demo_population_config(25, 400))
pop = build_population(config, seed=42)

print(f"persons: {pop.n}, households: {pop.n_households}")
print(f"children (<18): {np.mean(pop.age < 18):.1%}")
print(f"adults employed: {pop.employed[pop.adult].mean():.1%}")
print(f"mean income: ${pop.income.mean():,.0f}")

print("\nmean personal income by industry (employed):")
for k in np.argsort([pop.income[pop.industry == k].mean() if (pop.industry == k).any()
                     else 0 for k in range(20)])[::-1][:6]:
    sel = pop.industry == k
    if sel.any():
        print(f"  {INDUSTRY_NAMES[k]:<40s} ${pop.income[sel].mean():>9,.0f}"
              f"  ({sel.sum()} workers)")

print("\nwork-from-home share for selected occupations:")
for o in (0, 2, 12, 20):
    sel = pop.occupation == o
    if sel.any():
        print(f"  {OCCUPATION_TITLES[o]:<40s} {pop.can_wfh[sel].mean():.0%}")

ratio = pop.income[pop.age >= 65].mean() / pop.income[(pop.age >= 55) & (pop.age <= 64)].mean()
print(f"\n65+ mean income vs 55-64: {ratio:.0%} (target 60%)")

pop.to_csv("demos/output_population.csv")
print("\nwrote demos/output_population.csv")
