"""Spectral analysis: DFT identities, classifier behavior, density lines."""

import numpy as np
import pytest

from lmg_dtc import Spectrum, classify_dtc, dft_density_line, dft_magnitude, observable_series


def test_constant_series_concentrates_at_zero():
    spec = dft_magnitude(np.full(64, 3.5), (0, 64))
    assert spec.mags[0] == pytest.approx(3.5, abs=1e-12)
    assert np.max(spec.mags[1:]) < 1e-12
    assert spec.freqs[1] == pytest.approx(1 / 64)


def test_alternating_series_peaks_at_half():
    spec = dft_magnitude((-1.0) ** np.arange(40), (0, 40))
    assert spec.mags[20] == pytest.approx(1.0, abs=1e-12)
    assert np.sum(spec.mags > 1e-10) == 1


def test_cosine_six_splits_between_mirror_bins():
    n = np.arange(120)
    spec = dft_magnitude(np.cos(2 * np.pi * n / 6), (0, 120))
    assert spec.mags[20] == pytest.approx(0.5, abs=1e-12)
    assert spec.mags[100] == pytest.approx(0.5, abs=1e-12)


def test_window_selects_cycles():
    series = np.concatenate([np.zeros(50), (-1.0) ** np.arange(50)])
    spec = dft_magnitude(series, (50, 100))
    assert spec.window == (50, 100)
    assert spec.mags[25] == pytest.approx(1.0, abs=1e-12)


def test_window_validation():
    with pytest.raises(ValueError):
        dft_magnitude(np.zeros(100), (0, 7))
    with pytest.raises(ValueError):
        dft_magnitude(np.zeros(100), (50, 120))
    with pytest.raises(ValueError):
        dft_magnitude(np.zeros(100), (-5, 20))


def test_parseval():
    rng = np.random.default_rng(5)
    series = rng.normal(size=257)
    spec = dft_magnitude(series, (0, 257))
    lhs = float(np.sum(spec.mags**2)) * 257
    rhs = float(np.sum(series**2))
    assert abs(lhs - rhs) / rhs < 1e-8


def test_linearity_in_amplitude():
    rng = np.random.default_rng(6)
    series = rng.normal(size=64)
    base = dft_magnitude(series, (0, 64))
    scaled = dft_magnitude(-2.5 * series, (0, 64))
    assert np.allclose(scaled.mags, 2.5 * base.mags, atol=1e-12)


def test_real_input_mirror_symmetry():
    rng = np.random.default_rng(7)
    spec = dft_magnitude(rng.normal(size=101), (0, 101))
    assert np.allclose(spec.mags[1:], spec.mags[1:][::-1], atol=1e-10)


def test_classify_alternating_is_order_two():
    spec = dft_magnitude((-1.0) ** np.arange(200), (0, 200))
    cls = classify_dtc(spec)
    assert cls.order == 2
    assert cls.label == "2-DTC"
    assert cls.peak_freq == pytest.approx(0.5)
    assert cls.peak_ratio == pytest.approx(1.0)


def test_classify_constant_is_period_t():
    cls = classify_dtc(dft_magnitude(np.full(64, 2.0), (0, 64)))
    assert cls.order is None
    assert cls.label == "period-T"


def test_classify_cosine_ten():
    spec = dft_magnitude(np.cos(2 * np.pi * np.arange(400) / 10), (0, 400))
    assert classify_dtc(spec).order == 10


@pytest.mark.parametrize("p", range(2, 13))
def test_classify_synthetic_orders(p):
    m = p * 40
    spec = dft_magnitude(np.cos(2 * np.pi * np.arange(m) / p), (0, m))
    cls = classify_dtc(spec)
    assert cls.order == p
    assert abs(cls.peak_freq - 1.0 / p) <= 1.0 / m


def test_classify_scale_invariant():
    series = np.cos(2 * np.pi * np.arange(240) / 6) + 0.3 * np.cos(2 * np.pi * np.arange(240) / 3)
    a = classify_dtc(dft_magnitude(series, (0, 240)))
    b = classify_dtc(dft_magnitude(1742.0 * series, (0, 240)))
    assert (a.order, a.label) == (b.order, b.label)
    assert a.peak_ratio == pytest.approx(b.peak_ratio, rel=1e-12)


def test_classify_broadband_is_none():
    rng = np.random.default_rng(8)
    cls = classify_dtc(dft_magnitude(rng.normal(size=500), (0, 500)))
    assert cls.order is None
    assert cls.label == "none"
    assert cls.peak_ratio < 0.5


def test_classify_degenerate_spectrum():
    cls = classify_dtc(Spectrum(freqs=np.arange(16) / 16, mags=np.zeros(16), window=(0, 16)))
    assert cls.order is None and cls.peak_ratio == 0.0


def test_classify_unlocked_frequency_is_none():
    # strong single peak away from every 1/p stays unclassified
    spec = dft_magnitude(np.cos(2 * np.pi * 0.43 * np.arange(1000)), (0, 1000))
    assert classify_dtc(spec).order is None


def test_classify_parameter_validation():
    spec = dft_magnitude(np.ones(16), (0, 16))
    with pytest.raises(ValueError):
        classify_dtc(spec, max_order=1)
    with pytest.raises(ValueError):
        classify_dtc(spec, dominance=1.5)


def test_density_line_consistent_with_direct_spectrum():
    specs = dft_density_line(0.5, 0.5, [0.5], (0, 200), source="semiclassical", observable="lz")
    series = observable_series("semiclassical", 0.5, 0.5, 0.5, 199)
    direct = dft_magnitude(series["lz"], (0, 200))
    assert np.allclose(specs[0].mags, direct.mags, atol=1e-14)


def test_density_line_regional_coexistence():
    # around (h1, h2) = (0.5, 0.17): region 2 responds at 1/6 while region 1
    # stays period-doubled
    specs2 = dft_density_line(0.5, 0.5, [0.17], (0, 996), observable="lz2")
    cls2 = classify_dtc(specs2[0])
    assert cls2.order == 6
    specs1 = dft_density_line(0.5, 0.5, [0.17], (0, 996), observable="lz1")
    assert classify_dtc(specs1[0]).order == 2


def test_density_line_total_shows_both_orders():
    spec = dft_density_line(0.5, 0.17, [0.5], (0, 996), observable="lz")[0]
    m = 996
    folded = spec.mags[1 : m // 2 + 1].copy()
    folded[: m // 2 - 1] += spec.mags[m // 2 + 1 :][::-1]
    top = np.argsort(folded)[::-1][:2] + 1
    freqs = sorted(k / m for k in top)
    assert abs(freqs[0] - 1 / 6) <= 1 / m
    assert abs(freqs[1] - 1 / 2) <= 1 / m


def test_density_line_validation():
    with pytest.raises(ValueError):
        dft_density_line(0.5, 0.5, [0.3, 0.2], (0, 64))
    with pytest.raises(ValueError):
        dft_density_line(0.5, 0.5, [0.3], (0, 64), observable="lx")
    with pytest.raises(ValueError):
        dft_density_line(0.5, 0.5, [0.3], (0, 64), source="exact")


def test_quantum_density_line_matches_quantum_run():
    specs = dft_density_line(0.5, 0.5, [0.5], (0, 64), source="quantum", observable="lz", n_spins=8)
    assert classify_dtc(specs[0]).order == 2
