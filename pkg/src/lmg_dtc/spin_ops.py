"""Collective spin-j operators, x-rotations, and Ising half-period phases.

Everything downstream (exact Floquet evolution, oracles) is assembled from
the three constructions in this module.  Basis convention, fixed once and
used by every module and file format: |j,m> ordered m = j, j-1, ..., -j,
and product states indexed row-major with the region-1 index outermost.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpinMatrices",
    "DiagonalPhases",
    "build_spin_matrices",
    "magnetic_numbers",
    "x_rotation",
    "y_rotation",
    "interaction_half_phases",
]


@dataclass(frozen=True)
class SpinMatrices:
    """Dense spin-j matrices in the |j,m> basis (m descending)."""

    j: float
    dim: int
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray


@dataclass(frozen=True)
class DiagonalPhases:
    """Unit-modulus diagonal of the half-period Ising propagator.

    values[i1*d + i2] = exp(-i*(4J/N)*(m1+m2)^2) with m_r = j - i_r and
    d = N/2 + 1 the per-region basis size.
    """

    n_spins: int
    j_coupling: float
    values: np.ndarray


def _two_j(j) -> int:
    two = int(round(2 * float(j)))
    if abs(2 * float(j) - two) > 1e-9 or two < 1:
        raise ValueError(f"spin magnitude must be a positive integer or half-integer, got {j}")
    return two


def magnetic_numbers(j) -> np.ndarray:
    """m values j, j-1, ..., -j as a float array."""
    two = _two_j(j)
    return (two - 2 * np.arange(two + 1)) / 2.0


# Eigendecompositions of sx, keyed by 2j.  One diagonalization serves every
# rotation angle at that j (sweeps revisit the same j thousands of times).
_SPIN_CACHE: dict[int, SpinMatrices] = {}
_SX_EIG_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}
_SY_EIG_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def build_spin_matrices(j) -> SpinMatrices:
    """Construct dense sx, sy, sz for spin j via the ladder elements.

    Raises ValueError unless 2j is a positive integer.
    """
    two = _two_j(j)
    cached = _SPIN_CACHE.get(two)
    if cached is not None:
        return cached
    jj = two / 2.0
    m = magnetic_numbers(jj)
    dim = two + 1
    # <j,m+1| S+ |j,m> = sqrt(j(j+1) - m(m+1)); with m descending this sits
    # on the first superdiagonal.
    raise_elems = np.sqrt(jj * (jj + 1) - m[1:] * (m[1:] + 1))
    s_plus = np.zeros((dim, dim), dtype=complex)
    s_plus[np.arange(dim - 1), np.arange(1, dim)] = raise_elems
    s_minus = s_plus.conj().T
    mats = SpinMatrices(
        j=jj,
        dim=dim,
        sx=0.5 * (s_plus + s_minus),
        sy=-0.5j * (s_plus - s_minus),
        sz=np.diag(m).astype(complex),
    )
    _SPIN_CACHE[two] = mats
    return mats


def _axis_rotation(j, phi, axis) -> np.ndarray:
    two = _two_j(j)
    if not np.isfinite(phi):
        raise ValueError(f"rotation angle must be finite, got {phi}")
    cache = _SX_EIG_CACHE if axis == "x" else _SY_EIG_CACHE
    eig = cache.get(two)
    if eig is None:
        mats = build_spin_matrices(j)
        eig = np.linalg.eigh(mats.sx if axis == "x" else mats.sy)
        cache[two] = eig
    w, v = eig
    # exp(-i*phi*S) from the spectral decomposition: unitary up to rounding.
    return (v * np.exp(-1j * phi * w)) @ v.conj().T


def x_rotation(j, phi) -> np.ndarray:
    """Unitary exp(-i*phi*Sx) for spin j (dense (2j+1)^2 matrix)."""
    return _axis_rotation(j, phi, "x")


def y_rotation(j, phi) -> np.ndarray:
    """Unitary exp(-i*phi*Sy); used to build spin coherent states."""
    return _axis_rotation(j, phi, "y")


def interaction_half_phases(n_spins, j_coupling) -> DiagonalPhases:
    """Diagonal of the half-period propagator of the Ising coupling.

    The all-to-all sigma^z*sigma^z coupling acts over half a drive period
    as a pure phase per product-basis element, depending on m1+m2 only:
    exp(-i*(4J/N)*(m1+m2)^2).
    """
    n = int(n_spins)
    if n != n_spins or n < 2 or n % 2:
        raise ValueError(f"n_spins must be an even integer >= 2, got {n_spins}")
    m = magnetic_numbers(n / 4.0)
    msum = m[:, None] + m[None, :]
    values = np.exp(-1j * (4.0 * j_coupling / n) * msum**2)
    return DiagonalPhases(n_spins=n, j_coupling=float(j_coupling), values=values.ravel())
