import json
import subprocess
import sys
from pathlib import Path

import pytest

PLOTS_DIR = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(PLOTS_DIR))


@pytest.fixture(scope="session")
def sweep_dir(tmp_path_factory):
    """A small real sweep produced through the simulator's CLI; the plotting
    package only ever sees these files."""
    root = tmp_path_factory.mktemp("sweep_inputs")
    build = subprocess.run(
        [
            sys.executable,
            "-c",
            "import json, sys\n"
            "from epiecon import presets\n"
            "sc = presets.demo_scenario(n_persons=1200, seeds=[1, 2])\n"
            "grid = {'scenario': sc,\n"
            "        'closure_sets': ['non-essential', 'all-open'],\n"
            "        'fear_multipliers': [1.0],\n"
            "        'measures_starts': ['baseline'],\n"
            "        'seeds': [1, 2]}\n"
            f"json.dump(grid, open({str(root / 'grid.json')!r}, 'w'))\n",
        ],
        capture_output=True,
        text=True,
    )
    assert build.returncode == 0, build.stderr
    out = root / "sweep"
    run = subprocess.run(
        [sys.executable, "-m", "epiecon.cli", "sweep",
         "--config", str(root / "grid.json"), "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert run.returncode == 0, run.stderr
    return out


@pytest.fixture(scope="session")
def run_dir(sweep_dir):
    """One run directory from the sweep (full per-day CSVs)."""
    return sweep_dir / "non-essential__fear1__baseline" / "seed1"
