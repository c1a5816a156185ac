"""Floating-point spectral analysis.

Everything here is double precision by design: spectrum histograms over
the torsion characters, the diffraction intensity on a grid, the Hilbert
transform of the level-density measure, and the Mahler-measure limit of
the spectral polynomials.  Exact counterparts (moments, polynomials) live
in the other modules and are used as inputs, never recomputed here.

The torus log-average, the stabilized polynomial limit and the moment
series are three independent numerical routes to the same Mahler measure;
the test suite checks them against each other and against closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SizeLimit, SpectrumProximity
from .lattice import LatticeBasis, WeightedPointSet, difference_lattice
from .laurent import diffraction_polynomial
from .moments import moment_sequence
from .specpoly import character_values

DEFAULT_FLOAT_CAP = 10**7
DEFAULT_SERIES_CAP = 1024


@dataclass(frozen=True)
class SpectrumHistogram:
    """Sorted character values at level N with clustered levels.

    Clusters are maximal runs separated by gaps above the tolerance; the
    histogram is flagged ambiguous when two clusters approach within ten
    tolerances, rather than silently merging them.
    """

    N: int
    values: np.ndarray
    clusters: tuple[tuple[float, int], ...]
    support: tuple[float, float]
    tolerance: float
    min_gap: float
    ambiguous: bool

    def multiplicity_near(self, level: float, tol: float | None = None) -> int:
        tol = self.tolerance if tol is None else tol
        for value, mult in self.clusters:
            if abs(value - level) <= tol:
                return mult
        return 0


def _values(ps: WeightedPointSet, N: int, basis: LatticeBasis | None = None):
    if basis is None:
        basis = difference_lattice(ps)
    w = diffraction_polynomial(ps, basis)
    return character_values(w, N)


def diffraction_field(ps: WeightedPointSet, resolution: int) -> np.ndarray:
    """Squared diffraction intensity on the uniform resolution^n grid of the
    fundamental domain (lattice coordinates)."""
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    return _values(ps, resolution)


def spectrum(
    ps: WeightedPointSet,
    N: int,
    tolerance: float | None = None,
    float_cap: int = DEFAULT_FLOAT_CAP,
) -> SpectrumHistogram:
    """All N^n character values, sorted and clustered."""
    n = ps.dimension
    if N**n > float_cap:
        raise SizeLimit(f"{N**n} character values exceed cap {float_cap}")
    C2 = ps.total_weight**2
    tol = 1e-6 * C2 if tolerance is None else tolerance
    vals = np.sort(_values(ps, N).ravel())
    clusters = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > tol:
            chunk = vals[start:i]
            clusters.append((float(chunk.mean()), len(chunk)))
            start = i
    gaps = [
        clusters[i + 1][0] - clusters[i][0] for i in range(len(clusters) - 1)
    ]
    min_gap = min(gaps) if gaps else math.inf
    return SpectrumHistogram(
        N=N,
        values=vals,
        clusters=tuple(clusters),
        support=(float(vals[0]), float(vals[-1])),
        tolerance=tol,
        min_gap=min_gap,
        ambiguous=min_gap < 10 * tol,
    )


def empirical_cdf(hist: SpectrumHistogram, r: float) -> Fraction:
    """Fraction of stored values <= r, exact over the stored multiset."""
    return Fraction(int((hist.values <= r).sum()), len(hist.values))


# -- Hilbert transform ----------------------------------------------------------


def _series_length(ratio: float, scale: float, tol: float, cap: int) -> int:
    # smallest K with ratio^(K+1) / scale < tol
    if not 0 < ratio < 1:
        raise ValueError("series method needs |z| above the spectrum top")
    K = max(1, math.ceil(math.log(tol * scale) / math.log(ratio)) + 1)
    if K > cap:
        raise SizeLimit(
            f"series needs {K} moments (cap {cap}); z is too close to the "
            "spectrum top for the moment series"
        )
    return K


def hilbert_transform(
    ps: WeightedPointSet,
    z: complex,
    method: str = "moment-series",
    tol: float = 1e-10,
    float_cap: int = DEFAULT_FLOAT_CAP,
    series_cap: int = DEFAULT_SERIES_CAP,
) -> complex:
    """Stieltjes transform of the level density at z.

    moment-series: sum of m_k / z^(k+1) with a geometric tail bound below
    tol (requires |z| > total_weight^2).  spectrum-average: average of
    1/(z - value) over the characters, level doubled until stable.
    """
    C2 = ps.total_weight**2
    if method == "moment-series":
        ratio = C2 / abs(z)
        K = _series_length(ratio, abs(z) - C2, tol, series_cap)
        w = diffraction_polynomial(ps, difference_lattice(ps))
        m = moment_sequence(w, K)
        # sum m_k / z^(k+1) as (m_k / C2^k) * (C2/z)^k / z: both factors
        # stay bounded however large the integer moments get
        zinv = 1 / complex(z)
        base = C2 * zinv
        acc = 0j
        scaled = 1 + 0j
        c2pow = 1
        for k in range(K + 1):
            acc += float(Fraction(m[k], c2pow)) * scaled * zinv
            scaled *= base
            c2pow *= C2
        return acc
    if method == "spectrum-average":
        prev = None
        N = 16
        while N ** ps.dimension <= float_cap:
            vals = _values(ps, N).ravel()
            cur = complex(np.mean(1.0 / (complex(z) - vals)))
            if prev is not None and abs(cur - prev) < tol:
                return cur
            prev = cur
            N *= 2
        raise SizeLimit("spectrum average did not stabilize within the cap")
    raise ValueError(f"unknown method {method!r}")


# -- Mahler measure ---------------------------------------------------------------


@dataclass(frozen=True)
class MahlerResult:
    value: float
    error: float
    method: str


def _log_average(ps, N, z, tol_abs, basis=None) -> float:
    vals = _values(ps, N, basis).ravel()
    diffs = np.abs(complex(z) - vals)
    if diffs.min() < tol_abs:
        raise SpectrumProximity(
            f"{z} is within {tol_abs} of an observed spectrum value"
        )
    return float(np.mean(np.log(diffs)))


def mahler_measure(
    ps: WeightedPointSet,
    z: complex,
    method: str = "limit",
    tol: float = 1e-3,
    resolution: int = 128,
    float_cap: int = DEFAULT_FLOAT_CAP,
    series_cap: int = DEFAULT_SERIES_CAP,
) -> MahlerResult:
    """exp(-average of log|z - value|) over the full torus, three ways.

    limit: follow exp(-log avg at level N) along a doubling ladder until
    two successive estimates differ by less than tol.  moment-series:
    |exp(sum m_k/k z^-k) / z| with the tail bounded below tol (needs
    |z| > total_weight^2).  torus-quadrature: one uniform grid log-average
    at the given resolution, with the half-resolution difference as the
    error estimate.
    """
    C2 = ps.total_weight**2
    proximity = 1e-6 * C2
    if method == "limit":
        basis = difference_lattice(ps)
        prev = None
        N = 16
        while N ** ps.dimension <= float_cap:
            cur = math.exp(-_log_average(ps, N, z, proximity, basis))
            if prev is not None and abs(cur - prev) < tol:
                return MahlerResult(cur, abs(cur - prev), method)
            prev = cur
            N *= 2
        raise SizeLimit("limit method did not stabilize within the float cap")
    if method == "moment-series":
        ratio = C2 / abs(z)
        K = _series_length(ratio, (1 - ratio), tol / 10, series_cap)
        w = diffraction_polynomial(ps, difference_lattice(ps))
        m = moment_sequence(w, K)
        zinv = 1 / complex(z)
        base = C2 * zinv
        acc = 0j
        scaled = base  # (C2/z)^k, bounded; m_k/C2^k in (0,1]
        c2pow = C2
        for k in range(1, K + 1):
            acc += float(Fraction(m[k], c2pow)) / k * scaled
            scaled *= base
            c2pow *= C2
        value = abs(zinv * np.exp(acc))
        tail = ratio ** (K + 1) / ((K + 1) * (1 - ratio))
        return MahlerResult(float(value), float(value * tail), method)
    if method == "torus-quadrature":
        coarse = math.exp(-_log_average(ps, max(resolution // 2, 2), z, proximity))
        fine = math.exp(-_log_average(ps, resolution, z, proximity))
        return MahlerResult(fine, abs(fine - coarse), method)
    raise ValueError(f"unknown method {method!r}")
