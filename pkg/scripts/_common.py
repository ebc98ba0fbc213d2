"""Small helpers shared by the experiment scripts."""

from __future__ import annotations

import argparse
import csv
import dataclasses
from pathlib import Path


def parse_config(cls, description: str):
    """Build a dataclass instance from command-line overrides of its fields."""
    parser = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        default = f.default if f.default is not dataclasses.MISSING else f.default_factory()
        if isinstance(default, bool):
            parser.add_argument(f"--{f.name.replace('_', '-')}", dest=f.name, action="store_true",
                                default=default)
        elif isinstance(default, tuple):
            parser.add_argument(f"--{f.name.replace('_', '-')}", dest=f.name, type=type(default[0]),
                                nargs="+", default=default)
        else:
            parser.add_argument(f"--{f.name.replace('_', '-')}", dest=f.name, type=type(default),
                                default=default)
    ns = parser.parse_args()
    values = {k: tuple(v) if isinstance(v, list) else v for k, v in vars(ns).items()}
    return cls(**values)


def write_csv(path: Path, header: list[str], rows) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(["%.12g" % v if isinstance(v, float) else v for v in row])
    print(f"wrote {path}")
    return path


def pyplot():
    """matplotlib.pyplot with a non-interactive backend, or None if unavailable."""
    try:
        import matplotlib
    except ImportError:
        print("matplotlib not installed; skipping figures")
        return None
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt
