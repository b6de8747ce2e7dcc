import hashlib
import json
from pathlib import Path

import pandas as pd
import pytest

from figures import SCHEMAS, FigureSpec, SchemaError, load_inputs, render
from render import main as render_main


def file_hash(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def spec_for(kind, sweep_dir, run_dir, out_dir):
    inputs = {
        "deaths_vs_unemployment_scatter": {"aggregate": sweep_dir / "aggregate.csv"},
        "time_series_pair": {"econ_aggregate": run_dir / "econ_aggregate.csv"},
        "industry_bars": {"econ_industry": run_dir / "econ_industry.csv"},
        "income_group_lines": {"econ_income_bands": run_dir / "econ_income_bands.csv"},
        "infections_by_layer_stack": {"epidemic": run_dir / "epidemic.csv"},
    }[kind]
    return FigureSpec(
        kind=kind,
        inputs={k: str(v) for k, v in inputs.items()},
        output=str(out_dir / f"{kind}.png"),
    )


@pytest.mark.parametrize("kind", sorted(SCHEMAS))
def test_render_all_kinds(kind, sweep_dir, run_dir, tmp_path):
    spec = spec_for(kind, sweep_dir, run_dir, tmp_path)
    out = render(spec)
    assert out.exists() and out.stat().st_size > 2_000


def test_rendering_never_mutates_inputs_and_is_byte_stable(sweep_dir, run_dir, tmp_path):
    spec = spec_for("time_series_pair", sweep_dir, run_dir, tmp_path)
    source = Path(spec.inputs["econ_aggregate"])
    before = file_hash(source)
    first = render(spec)
    h1 = file_hash(first)
    second = render(spec)
    assert file_hash(second) == h1
    assert file_hash(source) == before


def test_missing_column_named_in_error(run_dir, tmp_path):
    frame = pd.read_csv(run_dir / "econ_aggregate.csv")
    broken = tmp_path / "broken.csv"
    frame.drop(columns=["unemployment_rate"]).to_csv(broken, index=False)
    spec = FigureSpec(
        kind="time_series_pair",
        inputs={"econ_aggregate": str(broken)},
        output=str(tmp_path / "x.png"),
    )
    with pytest.raises(SchemaError, match="unemployment_rate"):
        render(spec)


def test_unknown_kind_rejected(tmp_path):
    spec = FigureSpec(kind="pie_of_everything", inputs={}, output=str(tmp_path / "x.png"))
    with pytest.raises(SchemaError, match="unknown figure kind"):
        load_inputs(spec)


def test_schema_round_trip(sweep_dir, run_dir, tmp_path):
    # every documented schema loads from the CLI outputs with the columns the
    # figures need, and the figure spec survives a JSON round trip
    for kind in SCHEMAS:
        spec = spec_for(kind, sweep_dir, run_dir, tmp_path)
        frames = load_inputs(spec)
        for name, cols in SCHEMAS[kind].items():
            assert set(cols) <= set(frames[name].columns)
        blob = json.dumps(spec.to_dict())
        back = FigureSpec.from_dict(json.loads(blob))
        assert back == spec


def test_render_script_exit_codes(sweep_dir, run_dir, tmp_path, capsys):
    spec = spec_for("infections_by_layer_stack", sweep_dir, run_dir, tmp_path)
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec.to_dict()))
    assert render_main(["--spec", str(path)]) == 0
    bad = tmp_path / "bad_spec.json"
    bad.write_text(json.dumps({"kind": "nope", "inputs": {}, "output": "x.png"}))
    assert render_main(["--spec", str(bad)]) == 1
    assert "schema error" in capsys.readouterr().err


def test_acceptance_10_all_kinds_from_sweep_outputs(sweep_dir, run_dir, tmp_path):
    # acceptance: every figure kind renders from real sweep outputs and the
    # schemas round-trip
    rendered = []
    for kind in sorted(SCHEMAS):
        spec = spec_for(kind, sweep_dir, run_dir, tmp_path)
        load_inputs(spec)
        rendered.append(render(spec))
    assert all(p.exists() for p in rendered)
    print(f"\n[ACCEPTANCE 10] PASS: {len(rendered)} figure kinds rendered "
          "from sweep outputs; schema round trip holds")
