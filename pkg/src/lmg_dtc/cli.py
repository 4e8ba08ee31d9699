"""Command-line interface: trajectories, diagnostics, and sweeps.

Parameters come from built-in defaults, overridden by an optional flat
key=value config file (--config), overridden in turn by explicit flags.
Every output file echoes the resolved parameters as `# config:` comment
lines, so an output file can itself be passed back via --config to
reproduce the run.
"""

import argparse
import sys
import warnings

import numpy as np

from . import __version__, diagnostics, quantum, semiclassical, sweep

_FMT = sweep._fmt

# Parameter keys shared by config files and flags (flag --foo-bar <-> key foo-bar).
_KEY_SPECS = {
    "j": (float, "interaction strength J (dimensionless; drive period is 1)"),
    "h1": (float, "region-1 drive amplitude (x rotation angle is 2*pi*h1)"),
    "h2": (float, "region-2 drive amplitude"),
    "n-spins": (int, "total spin count N, even (quantum runs use j = N/4 per region)"),
    "cycles": (int, "number of drive periods to evolve"),
    "window-start": (int, "first cycle of the analysis window"),
    "window-end": (int, "last cycle (inclusive) for averages; end (exclusive) for spectra"),
    "delta": (float, "drive shift of the decorrelator companion trajectory"),
    "epsilon": (float, "collective phase kick strength of the scrambling probe"),
    "mode": (str, "sweep mode: uniform-scan | decorrelator-map | fotoc-map | dft-line"),
    "observable": (str, "series to analyze: lz | lz1 | lz2 (comma list for dft-line sweeps)"),
    "source": (str, "dynamics route for spectra: semiclassical | quantum"),
    "h1-min": (float, "sweep grid: lowest h1"),
    "h1-max": (float, "sweep grid: highest h1"),
    "h1-points": (int, "sweep grid: number of h1 points"),
    "h2-min": (float, "sweep grid: lowest h2"),
    "h2-max": (float, "sweep grid: highest h2"),
    "h2-points": (int, "sweep grid: number of h2 points"),
    "init-theta1": (float, "initial polar angle of region 1 (radians; 0 = +z)"),
    "init-phi1": (float, "initial azimuth of region 1 (radians)"),
    "init-theta2": (float, "initial polar angle of region 2"),
    "init-phi2": (float, "initial azimuth of region 2"),
    "out": (str, "output file path"),
    "workers": (int, "parallel worker processes for sweeps"),
}

_DEFAULTS = {
    "j": 0.5, "h1": 0.5, "h2": 0.5, "n-spins": 100, "cycles": 1000,
    "window-start": 500, "window-end": 1000, "delta": 1e-4, "epsilon": 0.01,
    "mode": "uniform-scan", "observable": "lz", "source": "semiclassical",
    "h1-min": 0.0, "h1-max": 1.0, "h1-points": 101,
    "h2-min": 0.0, "h2-max": 1.0, "h2-points": 101,
    "init-theta1": 0.0, "init-phi1": 0.0, "init-theta2": 0.0, "init-phi2": 0.0,
    "out": "", "workers": 1,
}

_SUBCOMMAND_KEYS = {
    "traj-sc": ("j", "h1", "h2", "cycles", "init-theta1", "init-phi1", "init-theta2", "init-phi2"),
    "traj-q": ("j", "h1", "h2", "n-spins", "cycles",
               "init-theta1", "init-phi1", "init-theta2", "init-phi2"),
    "decorrelator": ("j", "h1", "h2", "cycles", "window-start", "window-end", "delta",
                     "init-theta1", "init-phi1", "init-theta2", "init-phi2"),
    "fotoc": ("j", "h1", "h2", "n-spins", "cycles", "window-start", "window-end", "epsilon",
              "init-theta1", "init-phi1", "init-theta2", "init-phi2"),
    "dft": ("j", "h1", "h2", "n-spins", "cycles", "window-start", "window-end",
            "observable", "source", "init-theta1", "init-phi1", "init-theta2", "init-phi2"),
    "sweep": ("mode", "j", "h1-min", "h1-max", "h1-points", "h2-min", "h2-max", "h2-points",
              "n-spins", "cycles", "window-start", "window-end", "delta", "epsilon",
              "observable", "source", "init-theta1", "init-phi1", "init-theta2", "init-phi2"),
}

# Keys where the defaults table is overridden per subcommand when the user
# gives neither a flag nor a config entry.
_MODE_GRID_DEFAULTS = {
    "uniform-scan": {"h1-points": 201},
    "dft-line": {"h1-points": 1, "h2-points": 201, "window-start": 0, "window-end": 1000},
}
_DFT_SINGLE_DEFAULTS = {"window-start": 0, "window-end": 1000}


class CliError(Exception):
    pass


def _add_key_flags(parser, keys):
    for key in keys:
        typ, help_text = _KEY_SPECS[key]
        parser.add_argument(f"--{key}", type=typ, default=None, metavar=key.upper().replace("-", "_"),
                            help=f"{help_text} (default: {_DEFAULTS[key]})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lmg-dtc",
        description="Periodically driven two-region collective-spin model: "
                    "stroboscopic trajectories, stability diagnostics, subharmonic "
                    "spectra, and phase-map sweeps.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "traj-sc": "thermodynamic-limit stroboscopic trajectory of the two Bloch vectors",
        "traj-q": "exact finite-N stroboscopic expectation series",
        "decorrelator": "trajectory-divergence series under a small drive shift (mean-field)",
        "fotoc": "fidelity out-of-time-order correlator series (quantum)",
        "dft": "DFT magnitudes and time-crystal classification of one observable",
        "sweep": "grids over drive amplitudes: stability maps, scans, spectral lines",
    }
    for name, keys in _SUBCOMMAND_KEYS.items():
        p = sub.add_parser(name, help=descriptions[name], description=descriptions[name])
        p.add_argument("--config", default=None, metavar="FILE",
                       help="flat key=value file (sweep/trajectory outputs are re-feedable)")
        p.add_argument("--out", default=None, metavar="FILE",
                       help=f"output file path (default: {name}.csv)")
        _add_key_flags(p, keys)
        if name == "sweep":
            p.add_argument("--workers", type=int, default=None,
                           help="parallel worker processes (default: 1)")
            p.add_argument("--resume", action="store_true",
                           help="complete an interrupted sweep file instead of refusing to overwrite")
    return parser


def _resolve(args, keys):
    """defaults < config file < explicit flags, all validated by key."""
    values = {k: _DEFAULTS[k] for k in keys}
    if args.command == "sweep":
        requested_mode = getattr(args, "mode", None)
        mode = requested_mode
        if mode is None and args.config:
            mode = _read_config(args.config, keys).get("mode")
        values.update(_MODE_GRID_DEFAULTS.get(mode or values["mode"], {}))
    elif args.command == "dft":
        values.update(_DFT_SINGLE_DEFAULTS)
    if args.config:
        values.update(_read_config(args.config, keys))
    for key in keys:
        flag_value = getattr(args, key.replace("-", "_"), None)
        if flag_value is not None:
            values[key] = flag_value
    for key in ("h1", "h2", "h1-min", "h1-max", "h2-min", "h2-max"):
        if key in values and not 0.0 <= values[key] <= 1.0:
            print(f"warning: {key}={values[key]:g} is outside [0, 1]; "
                  "the model is defined there but unmapped", file=sys.stderr)
    return values


def _read_config(path, keys):
    try:
        with open(path) as fh:
            raw = sweep.parse_key_value_text(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read config file: {exc}")
    out = {}
    for key, value in raw.items():
        if key not in _KEY_SPECS:
            raise CliError(f"unknown config key {key!r} in {path}")
        if key not in keys:
            continue  # output headers may carry keys other subcommands use
        typ, _ = _KEY_SPECS[key]
        try:
            out[key] = typ(value)
        except ValueError:
            raise CliError(f"config key {key} has non-{typ.__name__} value {value!r}")
    return out


def _header_lines(values, keys):
    return [f"# config: {k}={v if isinstance(v, str) else (_FMT(v) if isinstance(v, float) else v)}"
            for k, v in ((k, values[k]) for k in keys)]


def _write_table(path, header_lines, columns, rows):
    with open(path, "w") as fh:
        fh.write("\n".join(header_lines) + "\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(cell if isinstance(cell, str) else _FMT(cell) for cell in row) + "\n")


def _averaging_window(values):
    start, end = values["window-start"], values["window-end"]
    if not 0 <= start <= end <= values["cycles"]:
        raise CliError(f"averaging window [{start},{end}] must sit inside 0..cycles")
    return start, end


def _dft_window(values):
    start, end = values["window-start"], values["window-end"]
    if not 0 <= start < end <= values["cycles"] + 1:
        raise CliError(f"DFT window [{start},{end}) must sit inside the computed series")
    if end - start < 8:
        raise CliError("DFT window must hold at least 8 cycles")
    return start, end


def _angles(values):
    return (values["init-theta1"], values["init-phi1"], values["init-theta2"], values["init-phi2"])


def _run_traj_sc(values, out, keys):
    init = semiclassical.bloch_pair_from_angles(*_angles(values))
    params = semiclassical.DriveParams(values["j"], values["h1"], values["h2"])
    traj = semiclassical.run_trajectory(init, params, values["cycles"])
    rows = [
        (n, *traj.l1[n], *traj.l2[n], *traj.total[n])
        for n in range(values["cycles"] + 1)
    ]
    _write_table(out, _header_lines(values, keys),
                 ("n", "l1x", "l1y", "l1z", "l2x", "l2y", "l2z", "lx", "ly", "lz"), rows)
    print(f"wrote {len(rows)} cycles to {out}")


def _run_traj_q(values, out, keys):
    model = quantum.QuantumModel(values["n-spins"], values["j"], values["h1"], values["h2"])
    state = quantum.init_coherent(model, *_angles(values))
    series = quantum.run_quantum_trajectory(model, values["cycles"], state)
    rows = [
        (n, series.lz1[n], series.lz2[n], series.lz[n],
         series.lx1[n], series.lx2[n], series.ly1[n], series.ly2[n])
        for n in range(values["cycles"] + 1)
    ]
    _write_table(out, _header_lines(values, keys),
                 ("n", "lz1", "lz2", "lz", "lx1", "lx2", "ly1", "ly2"), rows)
    print(f"wrote {len(rows)} cycles to {out}")


def _run_decorrelator(values, out, keys):
    window = _averaging_window(values)
    init = semiclassical.bloch_pair_from_angles(*_angles(values))
    params = semiclassical.DriveParams(values["j"], values["h1"], values["h2"], values["delta"])
    series = semiclassical.decorrelator_series(init, params, values["cycles"])
    rows = [(n, series.total[n], series.region1[n], series.region2[n])
            for n in range(values["cycles"] + 1)]
    _write_table(out, _header_lines(values, keys), ("n", "d", "d1", "d2"), rows)
    avg = float(series.total[window[0] : window[1] + 1].mean())
    verdict = "stable" if avg < semiclassical.STABILITY_THRESHOLD else "unstable"
    print(f"wrote {len(rows)} cycles to {out}; window [{window[0]},{window[1]}] "
          f"average D = {_FMT(avg)} ({verdict})")


def _run_fotoc(values, out, keys):
    window = _averaging_window(values)
    model = quantum.QuantumModel(values["n-spins"], values["j"], values["h1"], values["h2"])
    state = quantum.init_coherent(model, *_angles(values))
    series = quantum.fotoc_series(model, values["epsilon"], values["cycles"], state)
    rows = list(enumerate(series))
    _write_table(out, _header_lines(values, keys), ("n", "f"), rows)
    avg = float(series[window[0] : window[1] + 1].mean())
    print(f"wrote {len(rows)} cycles to {out}; window [{window[0]},{window[1]}] "
          f"average F = {_FMT(avg)}")


def _run_dft(values, out, keys):
    window = _dft_window(values)
    obs = values["observable"]
    if obs not in ("lz", "lz1", "lz2"):
        raise CliError(f"observable must be lz, lz1 or lz2, got {obs!r}")
    if values["source"] not in ("semiclassical", "quantum", "sc", "q"):
        raise CliError(f"source must be semiclassical or quantum, got {values['source']!r}")
    series = diagnostics.observable_series(
        values["source"], values["j"], values["h1"], values["h2"],
        values["cycles"], values["n-spins"], _angles(values))
    spec = diagnostics.dft_magnitude(series[obs], window)
    rows = list(zip(spec.freqs, spec.mags))
    _write_table(out, _header_lines(values, keys), ("freq", "magnitude"), rows)
    cls = diagnostics.classify_dtc(spec)
    print(f"wrote {len(rows)} bins to {out}; {obs} classification: {cls.label} "
          f"(peak f={_FMT(cls.peak_freq)}, ratio={_FMT(cls.peak_ratio)})")


def _run_sweep(values, out, args):
    config = sweep.SweepConfig(
        mode=values["mode"], j=values["j"],
        h1_min=values["h1-min"], h1_max=values["h1-max"], h1_points=values["h1-points"],
        h2_min=values["h2-min"], h2_max=values["h2-max"], h2_points=values["h2-points"],
        n_spins=values["n-spins"], cycles=values["cycles"],
        window_start=values["window-start"], window_end=values["window-end"],
        delta=values["delta"], epsilon=values["epsilon"],
        observable=values["observable"], source=values["source"],
        init_theta1=values["init-theta1"], init_phi1=values["init-phi1"],
        init_theta2=values["init-theta2"], init_phi2=values["init-phi2"],
        out=out, workers=args.workers if args.workers is not None else _DEFAULTS["workers"],
    )
    if args.resume:
        sweep.resume_sweep(config)
    else:
        sweep.run_sweep(config)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            keys = _SUBCOMMAND_KEYS[args.command]
            values = _resolve(args, keys)
            out = args.out or f"{args.command}.csv"
            if args.command == "traj-sc":
                _run_traj_sc(values, out, keys)
            elif args.command == "traj-q":
                _run_traj_q(values, out, keys)
            elif args.command == "decorrelator":
                _run_decorrelator(values, out, keys)
            elif args.command == "fotoc":
                _run_fotoc(values, out, keys)
            elif args.command == "dft":
                _run_dft(values, out, keys)
            else:
                _run_sweep(values, out, args)
    except (CliError, ValueError, sweep.SweepConfigMismatch, sweep.SweepFileCollision, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
