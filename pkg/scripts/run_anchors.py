"""Run every experiment config in scripts/configs through the CLI.

Reports land in ``<out>/<config stem>.{csv,json,dat}``. Usage::

    python3 scripts/run_anchors.py [--out runs] [--only loja_f2 artin_f2]
"""

import argparse
import glob
import os
import sys
import time

from serival.lab.cli import main as cli_main

HERE = os.path.dirname(os.path.abspath(__file__))

COMMANDS = {
    "loja": "loja", "dioph": "dioph", "artin": "artin", "greenberg": "greenberg",
    "izumi": "izumi", "family": "dioph",
}


def configs(only):
    for path in sorted(glob.glob(os.path.join(HERE, "configs", "*.cfg"))):
        stem = os.path.splitext(os.path.basename(path))[0]
        if not only or stem in only:
            yield stem, path


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="runs")
    ap.add_argument("--only", nargs="*", default=[])
    args = ap.parse_args(argv)
    worst = 0
    for stem, path in configs(set(args.only)):
        command = COMMANDS[stem.split("_")[0]]
        print(f"== {stem} ({command})", flush=True)
        t0 = time.perf_counter()
        code = cli_main([command, "--config", path, "--out", os.path.join(args.out, stem), "--quiet"])
        print(f"   exit {code}, {time.perf_counter() - t0:.1f}s", flush=True)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
