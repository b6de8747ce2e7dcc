#!/usr/bin/env python3
"""Render one figure from a JSON spec.

Usage: python plots/render.py --spec figure.json

The spec carries the figure kind, the input CSV paths and the output image
path, e.g.:

    {"kind": "time_series_pair",
     "inputs": {"econ_aggregate": "out/run/econ_aggregate.csv"},
     "output": "out/fig/unemployment_deaths.png"}
"""

import argparse
import sys

from figures import FigureSpec, SchemaError, render


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--spec", required=True, help="path to a figure spec JSON")
    args = parser.parse_args(argv)
    try:
        out = render(FigureSpec.from_json(args.spec))
    except SchemaError as err:
        print(f"schema error: {err}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
