"""Figure rendering from simulator CSV outputs.

Five figure kinds, each reading one or two of the documented CSV schemas.
No simulation logic lives here: inputs are plain files, outputs are images,
and inputs are never modified. Styling is minimal and data-faithful (no
smoothing).
"""

import json
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


class SchemaError(ValueError):
    """An input CSV does not carry the columns the figure needs."""


# figure kind -> {input name: required columns}
SCHEMAS = {
    "deaths_vs_unemployment_scatter": {
        "aggregate": ["closure_set", "fear_multiplier", "measures_start",
                      "mean_unemployment", "cumulative_deaths"],
    },
    "time_series_pair": {
        "econ_aggregate": ["day", "unemployment_rate", "reported_deaths"],
    },
    "industry_bars": {
        "econ_industry": ["day", "region", "industry",
                          "employed_inperson", "employed_fromhome"],
    },
    "income_group_lines": {
        "econ_income_bands": ["day", "income_band", "consumption_realized"],
    },
    "infections_by_layer_stack": {
        "epidemic": ["day", "inf_household", "inf_school",
                     "inf_workplace", "inf_community"],
    },
}

FIGURE_KINDS = tuple(SCHEMAS)


@dataclass
class FigureSpec:
    kind: str
    inputs: dict          # input name -> csv path
    output: str

    @classmethod
    def from_dict(cls, data):
        missing = {"kind", "inputs", "output"} - set(data)
        if missing:
            raise SchemaError(f"figure spec misses fields: {sorted(missing)}")
        return cls(kind=data["kind"], inputs=dict(data["inputs"]),
                   output=data["output"])

    @classmethod
    def from_json(cls, path):
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self):
        return {"kind": self.kind, "inputs": dict(self.inputs), "output": self.output}


def load_inputs(spec: FigureSpec):
    """Read and schema-check every input CSV for the figure kind."""
    if spec.kind not in SCHEMAS:
        raise SchemaError(f"unknown figure kind {spec.kind!r}; "
                          f"expected one of {sorted(SCHEMAS)}")
    needed = SCHEMAS[spec.kind]
    missing_inputs = set(needed) - set(spec.inputs)
    if missing_inputs:
        raise SchemaError(f"{spec.kind}: missing inputs {sorted(missing_inputs)}")
    frames = {}
    for name, columns in needed.items():
        path = spec.inputs[name]
        try:
            frame = pd.read_csv(path)
        except FileNotFoundError:
            raise SchemaError(f"{name}: file not found: {path}")
        for col in columns:
            if col not in frame.columns:
                raise SchemaError(f"{name} ({path}): missing column {col!r}")
        frames[name] = frame
    return frames


def _scatter(frames, ax):
    agg = frames["aggregate"]
    markers = {m: s for m, s in zip(sorted(agg["measures_start"].unique()),
                                    ["o", "s", "^", "D", "v"])}
    for (closure, measures), part in agg.groupby(["closure_set", "measures_start"]):
        ax.scatter(part["mean_unemployment"] * 100, part["cumulative_deaths"],
                   s=30 + 40 * part["fear_multiplier"].clip(0, 2),
                   marker=markers[measures], alpha=0.8,
                   label=f"{closure} ({measures})")
    ax.set_xlabel("mean unemployment rate (%)")
    ax.set_ylabel("cumulative deaths")
    ax.legend(fontsize=7)
    ax.set_title("deaths vs unemployment across scenarios")


def _time_series_pair(frames, axes):
    agg = frames["econ_aggregate"]
    ax1, ax2 = axes
    ax1.plot(agg["day"], agg["unemployment_rate"] * 100, color="tab:blue")
    ax1.set_ylabel("unemployment (%)")
    ax2.plot(agg["day"], agg["reported_deaths"], color="tab:red")
    ax2.set_ylabel("reported deaths/day")
    ax2.set_xlabel("day")
    ax1.set_title("unemployment and deaths over time")


def _industry_bars(frames, ax):
    ind = frames["econ_industry"]
    local = ind[ind["region"] == "local"].copy()
    local["employed"] = local["employed_inperson"] + local["employed_fromhome"]
    first = local[local["day"] == local["day"].min()].set_index("industry")["employed"]
    mean = local.groupby("industry")["employed"].mean()
    share = (mean / first.replace(0, 1)).sort_values()
    ax.barh(share.index.astype(str), share.to_numpy(), color="tab:blue")
    ax.axvline(1.0, color="grey", lw=0.8)
    ax.set_xlabel("mean employment / initial")
    ax.set_ylabel("industry")
    ax.set_title("employment by industry (local region)")


def _income_group_lines(frames, ax):
    bands = frames["econ_income_bands"]
    for band, part in bands.groupby("income_band"):
        base = part["consumption_realized"].iloc[0]
        if base <= 0:
            continue
        ax.plot(part["day"], part["consumption_realized"] / base,
                label=f"band {band}")
    ax.set_xlabel("day")
    ax.set_ylabel("consumption / initial")
    ax.legend(fontsize=7)
    ax.set_title("household consumption by income band")


def _infections_stack(frames, ax):
    epi = frames["epidemic"]
    layers = ["inf_household", "inf_school", "inf_workplace", "inf_community"]
    ax.stackplot(epi["day"], [epi[c] for c in layers],
                 labels=[c.removeprefix("inf_") for c in layers], alpha=0.85)
    ax.set_xlabel("day")
    ax.set_ylabel("new infections/day")
    ax.legend(fontsize=7)
    ax.set_title("infections by layer")


def render(spec: FigureSpec):
    """Validate inputs and write the figure image; returns the output path."""
    frames = load_inputs(spec)
    if spec.kind == "time_series_pair":
        fig, axes = plt.subplots(2, 1, figsize=(7, 5), sharex=True)
        _time_series_pair(frames, axes)
    else:
        fig, ax = plt.subplots(figsize=(7, 5))
        {
            "deaths_vs_unemployment_scatter": _scatter,
            "industry_bars": _industry_bars,
            "income_group_lines": _income_group_lines,
            "infections_by_layer_stack": _infections_stack,
        }[spec.kind](frames, ax)
    fig.tight_layout()
    out = Path(spec.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return out
