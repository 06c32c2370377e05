#!/usr/bin/env python3
"""Generate the two demo overlay datasets as CSV.

Writes half_sine_extension.csv (truncation ({1,2,3,4}, 40, 2) of
1 + sin(x)/2 on [-1, 1]) and bump_extension.csv (truncation
({2,4,6,8}, 20, sqrt(2)) of 1 - exp(-1/x^2) on [0.2, 1.5]), then prints
the worst deviation of each truncation from the function it extends.

Render the overlays with the frontend package:

    node frontend/dist/render.js artifacts/half_sine_extension.csv artifacts/half_sine.svg
"""

import argparse
import math
from pathlib import Path

from geoprod.cli import main as cli_main


def run(outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    jobs = [
        (
            "half_sine_extension.csv",
            ["extend", "--fn", "half-sine", "--smax", "1,2,3,4", "--n", "40",
             "--r", "2", "--grid", "-1:1:201"],
        ),
        (
            "bump_extension.csv",
            ["extend", "--fn", "bump", "--smax", "2,4,6,8", "--n", "20",
             "--r", repr(math.sqrt(2)), "--grid", "0.2:1.5:131"],
        ),
    ]
    for name, args in jobs:
        path = outdir / name
        code = cli_main(args + ["--format", "csv", "--out", str(path)])
        if code != 0:
            raise SystemExit(code)
        worst = max(
            abs(float(line.split(",")[2]) - float(line.split(",")[4]))
            for line in path.read_text().splitlines()[1:]
        )
        print(f"{path}: {sum(1 for _ in path.open()) - 1} rows, max |ext - f| = {worst:.3e}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="artifacts", type=Path)
    run(parser.parse_args().outdir)
