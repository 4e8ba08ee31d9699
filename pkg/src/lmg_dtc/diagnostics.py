"""Subharmonic spectral analysis and time-crystal order classification.

A p-DTC announces itself as a dominant DFT peak at frequency 1/p (in units
of the drive frequency).  classify_dtc separates three outcomes: a locked
subharmonic order, a period-T response (all weight at f=0), and everything
else (chaotic or unlocked quasi-periodic motion).
"""

from dataclasses import dataclass

import numpy as np

from . import quantum, semiclassical

__all__ = [
    "PERIOD_T_WEIGHT_RATIO",
    "DEFAULT_MAX_ORDER",
    "DEFAULT_DOMINANCE",
    "Spectrum",
    "DtcClassification",
    "dft_magnitude",
    "classify_dtc",
    "dft_density_line",
    "observable_series",
]

# Nonzero-frequency spectral power below this fraction of the f=0 power
# marks a drive-synchronized (period-T) response.
PERIOD_T_WEIGHT_RATIO = 1e-3
DEFAULT_MAX_ORDER = 12
# The dominant peak (plus its mirror bin) must carry at least this fraction
# of the nonzero-frequency power; rejects broadband chaotic spectra while
# accepting leakage-broadened locked peaks.
DEFAULT_DOMINANCE = 0.5


@dataclass(frozen=True)
class Spectrum:
    """DFT magnitudes of a stroboscopic series over a half-open cycle window.

    freqs[k] = k/M in units of the drive frequency; mags are |X_k|/M so a
    unit constant gives mags[0] = 1.
    """

    freqs: np.ndarray
    mags: np.ndarray
    window: tuple


@dataclass(frozen=True)
class DtcClassification:
    """order=p for a locked p-DTC, else None with label 'period-T' or 'none'."""

    order: int | None
    peak_freq: float
    peak_ratio: float
    label: str


def dft_magnitude(series, window) -> Spectrum:
    """Rectangular-window DFT magnitudes of series[start:stop].

    window is half-open [start, stop) with at least 8 samples; magnitudes
    are normalized by the window length M and no tapering is applied.
    """
    series = np.asarray(series)
    start, stop = int(window[0]), int(window[1])
    m = stop - start
    if m < 8:
        raise ValueError(f"window {window} has {m} samples; need at least 8")
    if start < 0 or stop > len(series):
        raise ValueError(f"window {window} outside series of length {len(series)}")
    mags = np.abs(np.fft.fft(series[start:stop])) / m
    return Spectrum(freqs=np.arange(m) / m, mags=mags, window=(start, stop))


def classify_dtc(spec: Spectrum, max_order=DEFAULT_MAX_ORDER, dominance=DEFAULT_DOMINANCE) -> DtcClassification:
    """Identify the subharmonic order of a spectrum, if any.

    The f=0 bin is excluded; the largest remaining magnitude (its mirror bin
    folded in) must carry at least `dominance` of the nonzero-frequency
    power and sit within one frequency bin of 1/p for some p <= max_order.
    Near-zero nonzero-frequency weight is labeled period-T instead.
    """
    if max_order < 2:
        raise ValueError(f"max_order must be >= 2, got {max_order}")
    if not 0 < dominance < 1:
        raise ValueError(f"dominance must be in (0, 1), got {dominance}")
    mags = spec.mags
    m = len(mags)
    power = mags**2
    nonzero_power = float(power[1:].sum())
    if nonzero_power < PERIOD_T_WEIGHT_RATIO * power[0]:
        return DtcClassification(order=None, peak_freq=0.0, peak_ratio=0.0, label="period-T")
    if nonzero_power <= 0.0:  # all-zero spectrum
        return DtcClassification(order=None, peak_freq=0.0, peak_ratio=0.0, label="none")
    k = 1 + int(np.argmax(mags[1:]))
    mirror = m - k
    peak_power = float(power[k]) + (float(power[mirror]) if mirror != k else 0.0)
    ratio = peak_power / nonzero_power
    peak_freq = min(k, mirror) / m
    if ratio >= dominance:
        best = min(range(2, max_order + 1), key=lambda p: abs(peak_freq - 1.0 / p))
        if abs(peak_freq - 1.0 / best) <= 1.0 / m + 1e-12:
            return DtcClassification(order=best, peak_freq=peak_freq, peak_ratio=ratio, label=f"{best}-DTC")
    return DtcClassification(order=None, peak_freq=peak_freq, peak_ratio=ratio, label="none")


_OBSERVABLES = ("lz", "lz1", "lz2")


def observable_series(source, j_coupling, h1, h2, n_cycles, n_spins=100, init_angles=None):
    """Stroboscopic lz/lz1/lz2 series from either dynamics route."""
    angles = (0.0, 0.0, 0.0, 0.0) if init_angles is None else tuple(init_angles)
    if source in ("semiclassical", "sc"):
        init = semiclassical.bloch_pair_from_angles(*angles)
        params = semiclassical.DriveParams(j_coupling, h1, h2)
        traj = semiclassical.run_trajectory(init, params, n_cycles)
        return {"lz": traj.total[:, 2], "lz1": traj.l1[:, 2], "lz2": traj.l2[:, 2]}
    if source in ("quantum", "q"):
        model = quantum.QuantumModel(n_spins, j_coupling, h1, h2)
        state = quantum.init_coherent(model, *angles)
        series = quantum.run_quantum_trajectory(model, n_cycles, state)
        return {"lz": series.lz, "lz1": series.lz1, "lz2": series.lz2}
    raise ValueError(f"source must be 'semiclassical' or 'quantum', got {source!r}")


def dft_density_line(j_coupling, h1, h2_values, window, source="semiclassical", observable="lz",
                     n_spins=100, init_angles=None) -> list[Spectrum]:
    """One spectrum per h2 value at fixed h1, for density plotting.

    source selects the thermodynamic-limit map or the finite-N quantum run;
    observable is one of lz, lz1, lz2; window is the half-open DFT window.
    """
    if observable not in _OBSERVABLES:
        raise ValueError(f"observable must be one of {_OBSERVABLES}, got {observable!r}")
    h2_values = np.asarray(h2_values, dtype=float)
    if h2_values.ndim != 1 or (len(h2_values) > 1 and not np.all(np.diff(h2_values) > 0)):
        raise ValueError("h2_values must be a monotonically increasing 1-D grid")
    n_cycles = int(window[1]) - 1
    out = []
    for h2 in h2_values:
        series = observable_series(source, j_coupling, h1, h2, n_cycles, n_spins, init_angles)
        out.append(dft_magnitude(series[observable], window))
    return out
