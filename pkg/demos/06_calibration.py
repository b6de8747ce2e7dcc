"""Ground-truth recovery with rejection calibration.

Generates target summaries from a known-parameter run, then calibrates the
transmission rate and fear sensitivity against them. The accepted set should
concentrate around the true values.
"""

import numpy as np

from epiecon import calibrate, presets

if __name__ == "__main__":
    scenario = presets.demo_scenario(n_persons=4000)
    truth = {"beta": 0.0024, "fear_epidemic": 0.10}
    targets = calibrate.ground_truth_targets(scenario, truth, seed=777)
    print("target weekly deaths per 1000:",
          np.round(targets.weekly_deaths_per_1000, 2))

    priors = calibrate.PriorBox({
        "beta": (0.0012, 0.0048),
        "fear_epidemic": (0.02, 0.40),
    })
    thresholds = calibrate.Thresholds(deaths=0.2, ny=0.02, us=0.03, other=0.04)
    runner = calibrate.scenario_runner(scenario)
    result = calibrate.abc_reject(runner, priors, targets, thresholds,
                                  n_samples=60, seed=31, workers=2)

    print(f"\naccepted {len(result.accepted)} of 60 combinations")
    print(f"beta:          truth {truth['beta']:.4f}, "
          f"posterior median {result.accepted['beta'].median():.4f}")
    print(f"fear_epidemic: truth {truth['fear_epidemic']:.2f}, "
          f"posterior median {result.accepted['fear_epidemic'].median():.2f}")

    draws = calibrate.posterior_sample(result.accepted, 5, seed=1)
    print("\nposterior draws for counterfactual runs:")
    print(draws[["beta", "fear_epidemic"]].round(4).to_string(index=False))
