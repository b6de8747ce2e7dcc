"""CSV/JSON output layout and run manifests.

Every output directory receives exactly one ``manifest.json`` recording the
config hash, seeds, package version, written files and wall-clock time.
"""

import json
import time
from pathlib import Path

import numpy as np
import pandas as pd

from . import __version__

FRAME_FILES = {
    "epidemic": "epidemic.csv",
    "econ_industry": "econ_industry.csv",
    "econ_aggregate": "econ_aggregate.csv",
    "econ_occupation": "econ_occupation.csv",
    "econ_tract": "econ_tract.csv",
    "econ_income_bands": "econ_income_bands.csv",
    "econ_quintiles": "econ_quintiles.csv",
    "infections": "infections.csv",
}


def write_manifest(outdir, config_hash, seeds, outputs, wall_clock, extra=None):
    outdir = Path(outdir)
    manifest = {
        "config_hash": config_hash,
        "seeds": list(map(int, np.atleast_1d(seeds))),
        "version": __version__,
        "outputs": sorted(outputs),
        "wall_clock_s": round(float(wall_clock), 3),
    }
    if extra:
        manifest.update(extra)
    path = outdir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def write_run(outdir, result, config_hash, started, profile=False):
    """One run's frames as CSVs plus the manifest."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for key, frame in result.frames.items():
        name = FRAME_FILES.get(key, f"{key}.csv")
        frame.to_csv(outdir / name, index=False)
        written.append(name)
    summary_path = outdir / "summary.json"
    summary_path.write_text(json.dumps(result.summary, indent=2, sort_keys=True) + "\n")
    written.append("summary.json")
    if profile:
        (outdir / "timings.json").write_text(
            json.dumps(result.timings, indent=2, sort_keys=True) + "\n"
        )
        written.append("timings.json")
    write_manifest(outdir, config_hash, [result.seed], written,
                   time.time() - started, extra={"scenario": result.scenario_name})
    return outdir


def sweep_cell_name(closure_set, fear_multiplier, measures):
    fear = f"{fear_multiplier:g}".replace(".", "p")
    return f"{closure_set}__fear{fear}__{measures}"


def write_sweep_tables(outdir, run_rows):
    """Per-run table and the per-cell aggregate (means over seeds)."""
    outdir = Path(outdir)
    runs = pd.DataFrame(run_rows)
    runs = runs.sort_values(["closure_set", "fear_multiplier", "measures_start", "seed"])
    runs.to_csv(outdir / "runs.csv", index=False)
    agg = (
        runs.groupby(["closure_set", "fear_multiplier", "measures_start"], sort=True)
        .agg(
            mean_unemployment=("mean_unemployment", "mean"),
            cumulative_deaths=("cumulative_deaths", "mean"),
            n_runs=("seed", "count"),
        )
        .reset_index()
    )
    agg.to_csv(outdir / "aggregate.csv", index=False)
    return runs, agg
