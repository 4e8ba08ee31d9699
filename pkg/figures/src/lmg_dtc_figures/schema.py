"""Shared reader for the sweep CSV schemas.

A sweep file is `# config:` comment lines (key=value), one header row
naming the columns, then comma-separated data rows; dft-line files also
carry `# done ...` marker comments.  The columns identify the sweep mode:

  uniform-scan      h, D_avg, F_avg
  decorrelator-map  h1, h2, D_avg
  fotoc-map         h1, h2, F_avg
  dft-line          h1, h2, observable, freq, magnitude
"""

from dataclasses import dataclass

import numpy as np

MODE_COLUMNS = {
    "uniform-scan": ("h", "D_avg", "F_avg"),
    "decorrelator-map": ("h1", "h2", "D_avg"),
    "fotoc-map": ("h1", "h2", "F_avg"),
    "dft-line": ("h1", "h2", "observable", "freq", "magnitude"),
}

# which sweep modes each figure kind accepts
KIND_MODES = {
    "curves": ("uniform-scan",),
    "heatmap": ("decorrelator-map", "fotoc-map"),
    "dft-density": ("dft-line",),
}


class SchemaError(Exception):
    """Input file does not match the schema the renderer needs."""


@dataclass
class SweepData:
    path: str
    mode: str
    config: dict
    columns: tuple
    rows: list


def read_sweep_file(path) -> SweepData:
    config = {}
    columns = None
    rows = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line.startswith("# config:"):
                key, _, value = line[len("# config:"):].strip().partition("=")
                config[key.strip()] = value.strip()
                continue
            if line.startswith("#"):
                continue
            if columns is None:
                columns = tuple(line.split(","))
                continue
            rows.append(line.split(","))
    if columns is None:
        raise SchemaError(f"{path}: no header row found; not a sweep data file")
    for mode, cols in MODE_COLUMNS.items():
        if columns == cols:
            detected = mode
            break
    else:
        raise SchemaError(f"{path}: columns {','.join(columns)} match no sweep mode")
    declared = config.get("mode")
    if declared is not None and declared != detected:
        raise SchemaError(f"{path}: header declares mode {declared} but columns are those of {detected}")
    return SweepData(path=str(path), mode=detected, config=config, columns=columns, rows=rows)


def expect_kind(data: SweepData, kind: str) -> SweepData:
    allowed = KIND_MODES[kind]
    if data.mode not in allowed:
        want = " or ".join(allowed)
        raise SchemaError(
            f"{data.path} is a {data.mode} sweep (columns {','.join(data.columns)}); "
            f"the {kind} renderer needs a {want} file (columns {','.join(MODE_COLUMNS[allowed[0]])})"
        )
    return data


def numeric_columns(data: SweepData, names) -> dict:
    idx = {name: data.columns.index(name) for name in names}
    out = {name: np.empty(len(data.rows)) for name in names}
    for i, row in enumerate(data.rows):
        for name, col in idx.items():
            out[name][i] = float(row[col])
    return out


def map_grid(data: SweepData):
    """(h1 axis, h2 axis, value grid) of a decorrelator/fotoc map file."""
    value_col = data.columns[2]
    cols = numeric_columns(data, ("h1", "h2", value_col))
    h1_axis = np.unique(cols["h1"])
    h2_axis = np.unique(cols["h2"])
    if len(h1_axis) * len(h2_axis) != len(data.rows):
        raise SchemaError(f"{data.path}: rows do not fill an h1 x h2 grid")
    grid = cols[value_col].reshape(len(h1_axis), len(h2_axis))
    return h1_axis, h2_axis, grid


def density_grid(data: SweepData, observable=None):
    """(h2 axis, freq axis, magnitude grid) of a dft-line file."""
    observables = sorted({row[2] for row in data.rows})
    if observable is None:
        observable = observables[0]
    elif observable not in observables:
        raise SchemaError(f"{data.path}: observable {observable} not present (has {observables})")
    rows = [row for row in data.rows if row[2] == observable]
    h2 = np.array([float(r[1]) for r in rows])
    freq = np.array([float(r[3]) for r in rows])
    mags = np.array([float(r[4]) for r in rows])
    h2_axis = np.unique(h2)
    freq_axis = np.unique(freq)
    if len(h2_axis) * len(freq_axis) != len(rows):
        raise SchemaError(f"{data.path}: rows do not fill an h2 x freq grid for {observable}")
    order = np.lexsort((freq, h2))
    grid = mags[order].reshape(len(h2_axis), len(freq_axis))
    return h2_axis, freq_axis, grid, observable
