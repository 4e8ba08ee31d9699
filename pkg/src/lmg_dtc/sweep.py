"""Deterministic parameter sweeps over drive amplitudes, with resume.

Four modes produce the standard maps and density data as comma-separated
text files:

  uniform-scan      h, D_avg, F_avg           (h1 = h2 = h line)
  decorrelator-map  h1, h2, D_avg             (mean-field stability map)
  fotoc-map         h1, h2, F_avg             (quantum scrambling map)
  dft-line          h1, h2, observable, freq, magnitude   (spectra vs h2)

Every file starts with `# config:` comment lines embedding the physics and
grid parameters (one key=value per line, re-feedable as a config file),
followed by a header row naming the columns.  Values are printed with 12
significant digits; rows appear in deterministic grid order regardless of
the worker count, so identical configs yield byte-identical files.

Grid points are independent; execution farms them to a process pool and a
single writer emits buffered results in grid order, appending record by
record so an interrupted run leaves a valid prefix that resume_sweep can
complete without recomputing finished points.

Every point is evaluated under a single BLAS thread (serial and parallel
alike): multi-threaded kernels reorder reductions and shift the last digit,
which would break the byte-identity guarantees.  To reproduce one row in
isolation, run the same call under threadpoolctl.threadpool_limits(1).
"""

import io
import os
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass, fields, replace
from functools import partial

import numpy as np

from threadpoolctl import threadpool_limits

from . import diagnostics, quantum, semiclassical

__all__ = [
    "SweepConfig",
    "SweepSummary",
    "SweepConfigMismatch",
    "SweepFileCollision",
    "run_sweep",
    "resume_sweep",
    "parse_key_value_text",
]

MODES = ("uniform-scan", "decorrelator-map", "fotoc-map", "dft-line")

# Keys embedded in the `# config:` header, in emission order.  Execution
# details (out, workers) are deliberately excluded: files must be identical
# across worker counts.
_EMBED_KEYS = (
    "mode", "j",
    "h1-min", "h1-max", "h1-points",
    "h2-min", "h2-max", "h2-points",
    "n-spins", "cycles", "window-start", "window-end",
    "delta", "epsilon", "observable", "source",
    "init-theta1", "init-phi1", "init-theta2", "init-phi2",
)


class SweepConfigMismatch(Exception):
    """Existing file does not belong to this configuration."""


class SweepFileCollision(Exception):
    """Output file already has content; resume or remove it."""


@dataclass(frozen=True)
class SweepConfig:
    """Grid, physics parameters, and execution settings for one sweep."""

    mode: str
    j: float = 0.5
    h1_min: float = 0.0
    h1_max: float = 1.0
    h1_points: int = 101
    h2_min: float = 0.0
    h2_max: float = 1.0
    h2_points: int = 101
    n_spins: int = 100
    cycles: int = 1000
    window_start: int = 500
    window_end: int = 1000
    delta: float = 1e-4
    epsilon: float = 0.01
    observable: str = "lz"
    source: str = "semiclassical"
    init_theta1: float = 0.0
    init_phi1: float = 0.0
    init_theta2: float = 0.0
    init_phi2: float = 0.0
    out: str = "sweep.csv"
    workers: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.h1_points < 1 or self.h2_points < 1:
            raise ValueError("grid point counts must be >= 1")
        if self.h1_min > self.h1_max or self.h2_min > self.h2_max:
            raise ValueError("grid ranges must have min <= max")
        if self.mode == "dft-line":
            if self.h1_points != 1:
                raise ValueError("dft-line sweeps fix h1; set h1-points to 1")
            if not 0 <= self.window_start < self.window_end <= self.cycles + 1:
                raise ValueError(f"DFT window [{self.window_start},{self.window_end}) outside 0..cycles")
            if self.window_end - self.window_start < 8:
                raise ValueError("DFT window must hold at least 8 cycles")
            for obs in self.observables():
                if obs not in ("lz", "lz1", "lz2"):
                    raise ValueError(f"unknown observable {obs!r}")
        else:
            if not 0 <= self.window_start <= self.window_end <= self.cycles:
                raise ValueError(f"averaging window [{self.window_start},{self.window_end}] outside 0..cycles")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        for lo, hi, name in ((self.h1_min, self.h1_max, "h1"), (self.h2_min, self.h2_max, "h2")):
            if lo < 0.0 or hi > 1.0:
                warnings.warn(f"{name} range [{lo}, {hi}] leaves [0, 1]; the model is defined but unmapped there")

    def observables(self):
        return tuple(s.strip() for s in self.observable.split(",") if s.strip())

    def init_angles(self):
        return (self.init_theta1, self.init_phi1, self.init_theta2, self.init_phi2)

    def grid(self):
        """Grid points in deterministic row-major order."""
        h1 = np.linspace(self.h1_min, self.h1_max, self.h1_points)
        h2 = np.linspace(self.h2_min, self.h2_max, self.h2_points)
        if self.mode == "uniform-scan":
            return [(float(h),) for h in h1]
        return [(float(a), float(b)) for a in h1 for b in h2]

    def columns(self):
        return {
            "uniform-scan": ("h", "D_avg", "F_avg"),
            "decorrelator-map": ("h1", "h2", "D_avg"),
            "fotoc-map": ("h1", "h2", "F_avg"),
            "dft-line": ("h1", "h2", "observable", "freq", "magnitude"),
        }[self.mode]


@dataclass
class SweepSummary:
    mode: str
    grid_points: int
    computed_points: int
    rows: int
    wall_time: float
    stable_fraction: dict


def _fmt(x) -> str:
    return format(float(x), ".12g")


def config_header_lines(config: SweepConfig) -> list:
    values = {
        "mode": config.mode,
        "j": _fmt(config.j),
        "h1-min": _fmt(config.h1_min), "h1-max": _fmt(config.h1_max), "h1-points": str(config.h1_points),
        "h2-min": _fmt(config.h2_min), "h2-max": _fmt(config.h2_max), "h2-points": str(config.h2_points),
        "n-spins": str(config.n_spins), "cycles": str(config.cycles),
        "window-start": str(config.window_start), "window-end": str(config.window_end),
        "delta": _fmt(config.delta), "epsilon": _fmt(config.epsilon),
        "observable": config.observable, "source": config.source,
        "init-theta1": _fmt(config.init_theta1), "init-phi1": _fmt(config.init_phi1),
        "init-theta2": _fmt(config.init_theta2), "init-phi2": _fmt(config.init_phi2),
    }
    return [f"# config: {key}={values[key]}" for key in _EMBED_KEYS]


def parse_key_value_text(text) -> dict:
    """Parse flat key=value text: plain lines or `# config:` comment lines.

    Other comment lines and blanks are skipped, so sweep output files are
    directly re-feedable as config files.
    """
    out = {}
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("# config:"):
            line = line[len("# config:"):].strip()
        elif not line or line.startswith("#") or "=" not in line:
            continue
        if "=" not in line:
            continue
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


# ---------------------------------------------------------------------------
# Point evaluation (top-level for pickling into worker processes)


def _eval_point(config: SweepConfig, point):
    window = (config.window_start, config.window_end)
    angles = config.init_angles()
    if config.mode == "uniform-scan":
        (h,) = point
        init = semiclassical.bloch_pair_from_angles(*angles)
        d_avg = semiclassical.time_averaged_decorrelator(
            init, semiclassical.DriveParams(config.j, h, h, config.delta), window)
        model = quantum.QuantumModel(config.n_spins, config.j, h, h)
        f_avg = quantum.time_averaged_fotoc(model, config.epsilon, window,
                                            quantum.init_coherent(model, *angles))
        return (d_avg, f_avg)
    h1, h2 = point
    if config.mode == "decorrelator-map":
        init = semiclassical.bloch_pair_from_angles(*angles)
        d_avg = semiclassical.time_averaged_decorrelator(
            init, semiclassical.DriveParams(config.j, h1, h2, config.delta), window)
        return (d_avg,)
    if config.mode == "fotoc-map":
        model = quantum.QuantumModel(config.n_spins, config.j, h1, h2)
        f_avg = quantum.time_averaged_fotoc(model, config.epsilon, window,
                                            quantum.init_coherent(model, *angles))
        return (f_avg,)
    # dft-line: one spectrum per requested observable
    all_series = diagnostics.observable_series(
        config.source, config.j, h1, h2, config.cycles, config.n_spins, angles)
    return tuple(diagnostics.dft_magnitude(all_series[obs], window).mags for obs in config.observables())


def _record_lines(config: SweepConfig, point, values) -> list:
    if config.mode != "dft-line":
        return [",".join(list(map(_fmt, point)) + list(map(_fmt, values)))]
    h1, h2 = point
    lines = []
    m = config.window_end - config.window_start
    for obs, mags in zip(config.observables(), values):
        for k in range(m):
            lines.append(f"{_fmt(h1)},{_fmt(h2)},{obs},{_fmt(k / m)},{_fmt(mags[k])}")
    lines.append(f"# done h1={_fmt(h1)} h2={_fmt(h2)}")
    return lines


def _expected_key_prefixes(config: SweepConfig, point):
    """Per-line leading fields of a record, for resume validation."""
    if config.mode != "dft-line":
        return [",".join(map(_fmt, point))]
    h1, h2 = point
    m = config.window_end - config.window_start
    out = []
    for obs in config.observables():
        out.extend(f"{_fmt(h1)},{_fmt(h2)},{obs},{_fmt(k / m)}" for k in range(m))
    out.append(f"# done h1={_fmt(h1)} h2={_fmt(h2)}")
    return out


def _values_parse(config: SweepConfig, line) -> bool:
    """True if the non-key columns of a data line are finite numbers."""
    if line.startswith("#"):
        return True
    n_keys = len(line.split(",")) - (2 if config.mode == "uniform-scan" else 1)
    try:
        tail = line.split(",")[n_keys:]
        return all(np.isfinite(float(v)) for v in tail)
    except ValueError:
        return False


# ---------------------------------------------------------------------------


def _stable_updates(config: SweepConfig, values, stable_counts):
    if config.mode == "uniform-scan":
        stable_counts["D_avg"] += values[0] < semiclassical.STABILITY_THRESHOLD
        stable_counts["F_avg"] += values[1] < semiclassical.STABILITY_THRESHOLD
    elif config.mode == "decorrelator-map":
        stable_counts["D_avg"] += values[0] < semiclassical.STABILITY_THRESHOLD
    elif config.mode == "fotoc-map":
        stable_counts["F_avg"] += values[0] < semiclassical.STABILITY_THRESHOLD


# Grid points use small dense kernels; one BLAS thread per evaluation keeps
# worker processes from oversubscribing cores and keeps serial and parallel
# runs on the same code path bit for bit.
_worker_limiter = None


def _init_worker():
    global _worker_limiter
    _worker_limiter = threadpool_limits(limits=1, user_api="blas")


def _compute_and_write(config: SweepConfig, out_file, points, stable_counts):
    """Evaluate points (in parallel if configured) and append records in order."""
    rows = 0
    if not points:
        return rows
    evaluate = partial(_eval_point, config)
    if config.workers == 1:
        limiter = threadpool_limits(limits=1, user_api="blas")
        results = map(evaluate, points)
        pool = None
    else:
        limiter = nullcontext()
        pool = ProcessPoolExecutor(max_workers=config.workers, initializer=_init_worker)
        chunk = max(1, len(points) // (config.workers * 8))
        results = pool.map(evaluate, points, chunksize=chunk)
    try:
        with limiter:
            for point, values in zip(points, results):
                _stable_updates(config, values, stable_counts)
                lines = _record_lines(config, point, values)
                out_file.write("\n".join(lines) + "\n")
                out_file.flush()
                rows += sum(not ln.startswith("#") for ln in lines)
    finally:
        if pool is not None:
            pool.shutdown()
    return rows


def _print_summary(summary: SweepSummary, config: SweepConfig):
    parts = [
        f"sweep {summary.mode}: {summary.grid_points} grid points",
        f"{summary.computed_points} computed",
        f"{summary.rows} data rows",
        f"{summary.wall_time:.2f} s wall",
    ]
    print(", ".join(parts))
    for column, fraction in summary.stable_fraction.items():
        print(f"  stable fraction ({column} < {semiclassical.STABILITY_THRESHOLD:g}): {fraction:.4f}")


def run_sweep(config: SweepConfig) -> SweepSummary:
    """Run a fresh sweep to config.out; refuses to overwrite existing data."""
    path = config.out
    if os.path.exists(path) and os.path.getsize(path) > 0:
        raise SweepFileCollision(f"{path} already has content; pass resume or remove the file")
    t0 = time.time()
    points = config.grid()
    stable_counts = dict.fromkeys([c for c in config.columns() if c in ("D_avg", "F_avg")], 0)
    with open(path, "w") as fh:
        fh.write("\n".join(config_header_lines(config)) + "\n")
        fh.write(",".join(config.columns()) + "\n")
        rows = _compute_and_write(config, fh, points, stable_counts)
    summary = SweepSummary(
        mode=config.mode, grid_points=len(points), computed_points=len(points), rows=rows,
        wall_time=time.time() - t0,
        stable_fraction={k: v / len(points) for k, v in stable_counts.items()},
    )
    _print_summary(summary, config)
    return summary


def _validate_prefix(config: SweepConfig, lines):
    """Match existing lines against the expected file; return (n_complete, n_lines_kept).

    Raises SweepConfigMismatch when the file cannot belong to this config;
    a trailing partial record is simply not counted.
    """
    header = config_header_lines(config)
    expected_head = header + [",".join(config.columns())]
    if lines[: len(expected_head)] != expected_head[: len(lines)]:
        embedded = parse_key_value_text("\n".join(lines[: len(header)]))
        expected = parse_key_value_text("\n".join(header))
        differing = sorted(k for k in expected if embedded.get(k) != expected[k])
        raise SweepConfigMismatch(f"existing file does not match config (differs in: {', '.join(differing) or 'header layout'})")
    if len(lines) <= len(expected_head):
        return 0, len(lines)

    data = lines[len(expected_head):]
    complete = 0
    kept = len(expected_head)
    cursor = 0
    for point in config.grid():
        prefixes = _expected_key_prefixes(config, point)
        block = data[cursor : cursor + len(prefixes)]
        ok = len(block) == len(prefixes)
        if ok:
            for got, want in zip(block, prefixes):
                if got.startswith("#"):
                    if got != want:
                        ok = False
                        break
                elif got[: len(want)] != want or not got[len(want):].startswith(","):
                    ok = False
                    break
                elif not _values_parse(config, got):
                    ok = False
                    break
        if not ok:
            # Partial/torn final record is normal after an interrupt; any
            # valid-looking line that disagrees with the grid means the file
            # belongs to something else.
            leftovers = data[cursor:]
            if len(leftovers) > len(prefixes):
                raise SweepConfigMismatch("existing rows do not follow the config grid order")
            for got, want in zip(leftovers, prefixes):
                if got[: len(want)] != want and not want.startswith(got):
                    raise SweepConfigMismatch(f"existing row {got[:60]!r} does not match expected grid point")
            break
        complete += 1
        kept += len(prefixes)
        cursor += len(prefixes)
    else:
        if cursor < len(data):
            raise SweepConfigMismatch("existing file has rows beyond the config grid")
    return complete, kept


def resume_sweep(config: SweepConfig, path=None) -> SweepSummary:
    """Complete a partial sweep file; finished grid points are not recomputed.

    The final file is identical to a fresh run.  Raises SweepConfigMismatch
    if the existing rows do not belong to this config.
    """
    path = config.out if path is None else path
    if not os.path.exists(path):
        return run_sweep(replace(config, out=path))
    with open(path) as fh:
        content = fh.read()
    if content == "":
        os.remove(path)
        return run_sweep(replace(config, out=path))
    lines = content.splitlines()
    n_complete, n_kept = _validate_prefix(config, lines)

    t0 = time.time()
    points = config.grid()
    header = config_header_lines(config) + [",".join(config.columns())]
    kept_lines = lines[:n_kept] if n_kept > len(header) else header
    stable_counts = dict.fromkeys([c for c in config.columns() if c in ("D_avg", "F_avg")], 0)
    rows = 0
    # Re-count stability over the kept prefix so the summary covers the grid.
    for line in kept_lines[len(header):]:
        if line.startswith("#"):
            continue
        rows += 1
        if stable_counts:
            tail = [float(v) for v in line.split(",")[len(point_key_columns(config)):]]
            _stable_updates(config, tuple(tail), stable_counts)

    buffer = io.StringIO()
    rows += _compute_and_write(config, buffer, points[n_complete:], stable_counts)
    with open(path, "w") as fh:
        fh.write("\n".join(kept_lines) + "\n")
        fh.write(buffer.getvalue())
    summary = SweepSummary(
        mode=config.mode, grid_points=len(points), computed_points=len(points) - n_complete,
        rows=rows, wall_time=time.time() - t0,
        stable_fraction={k: v / len(points) for k, v in stable_counts.items()},
    )
    _print_summary(summary, config)
    return summary


def point_key_columns(config: SweepConfig):
    return ("h",) if config.mode == "uniform-scan" else ("h1", "h2")
