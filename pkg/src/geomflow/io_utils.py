"""Deterministic CSV/JSON output helpers for the experiment runner."""

from __future__ import annotations

import json
import os
import time
from pathlib import Path

from . import __version__

CSV_FLOAT = "%.17g"


def format_value(v) -> str:
    if isinstance(v, float):
        return CSV_FLOAT % v
    return str(v)


def write_csv(path: Path, header: list[str], rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    path.write_text("\n".join(lines) + "\n", newline="\n")
    return path


def write_manifest(path: Path, experiment: str, parameters: dict, tolerances: dict,
                   outputs: list[Path], wall_time: float) -> Path:
    path = Path(path)
    payload = {
        "experiment": experiment,
        "parameters": parameters,
        "tolerances": tolerances,
        "outputs": [os.fspath(p) for p in outputs],
        "wall_time_seconds": wall_time,
        "version": __version__,
    }
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


class ExperimentWriter:
    """Collects data files for one experiment and writes the manifest last."""

    def __init__(self, out_dir, experiment: str, parameters: dict, tolerances: dict | None = None):
        self.out_dir = Path(out_dir)
        self.experiment = experiment
        self.parameters = dict(parameters)
        self.tolerances = dict(tolerances or {})
        self.outputs: list[Path] = []
        self._t0 = time.time()

    def csv(self, name: str, header: list[str], rows) -> Path:
        path = write_csv(self.out_dir / name, header, rows)
        self.outputs.append(path)
        return path

    def text(self, name: str, content: str) -> Path:
        path = self.out_dir / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, newline="\n")
        self.outputs.append(path)
        return path

    def finish(self) -> Path:
        return write_manifest(self.out_dir / f"{self.experiment}_manifest.json",
                              self.experiment, self.parameters, self.tolerances,
                              self.outputs, time.time() - self._t0)
