"""Spectral-coincidence statistics, identical-pair search, depth correction.

The chance that two independently strained emitters land within one
lifetime-limited linewidth of each other is what makes "identical
photons" from separate sites possible at all; these helpers quantify
that chance analytically and by Monte Carlo, rank candidate pairs, and
undo the refractive-index distortion of confocal depth scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import rng as _rng
from .levels import GAUSSIAN_FWHM_OVER_SIGMA


@dataclass(frozen=True)
class PairReport:
    """A candidate identical pair: indices, detuning, widths, overlap."""

    index_i: int
    index_j: int
    detuning_mhz: float
    width_i_mhz: float
    width_j_mhz: float
    overlap_metric: float

    def __post_init__(self) -> None:
        if self.index_i >= self.index_j:
            raise ValueError("pair indices must satisfy i < j")
        if self.detuning_mhz < 0:
            raise ValueError("detuning must be non-negative")
        if not 0.0 <= self.overlap_metric <= 1.0 + 1e-12:
            raise ValueError("overlap metric must lie in [0, 1]")


def coincidence_probability_analytic(
    inhom_fwhm_ghz: float, window_mhz: float, half_window: bool = False
) -> float:
    """P(|f1 - f2| <= window) for two draws from one Gaussian distribution.

    The difference of two independent N(0, sigma^2) draws is
    N(0, 2 sigma^2), so the probability is erf(window / (2 sigma)) with
    sigma = FWHM / (2 sqrt(2 ln 2)).  ``half_window`` restricts the
    acceptance to half the stated window (the alternative reading of
    "within one linewidth").
    """
    if not inhom_fwhm_ghz > 0:
        raise ValueError("inhomogeneous FWHM must be positive")
    if window_mhz < 0:
        raise ValueError("window must be non-negative")
    window_ghz = window_mhz / 1e3
    if half_window:
        window_ghz *= 0.5
    sigma = inhom_fwhm_ghz / GAUSSIAN_FWHM_OVER_SIGMA
    return math.erf(window_ghz / (2.0 * sigma))


def coincidence_probability_mc(
    inhom_fwhm_ghz: float,
    window_mhz: float,
    trials: int = 1_000_000,
    seed: int = 0,
    half_window: bool = False,
) -> tuple[float, float]:
    """Monte Carlo estimate of the coincidence probability with its
    binomial standard error.

    Draws ``trials`` independent emitter pairs on the Monte Carlo
    sub-stream of ``seed``; deterministic for a fixed seed.  Requires at
    least 1000 trials for a meaningful binomial error.
    """
    if trials < 1000:
        raise ValueError("need at least 1000 trials")
    if not inhom_fwhm_ghz > 0:
        raise ValueError("inhomogeneous FWHM must be positive")
    if window_mhz < 0:
        raise ValueError("window must be non-negative")
    window_ghz = window_mhz / 1e3
    if half_window:
        window_ghz *= 0.5
    sigma = inhom_fwhm_ghz / GAUSSIAN_FWHM_OVER_SIGMA
    gen = _rng.generator(seed, _rng.STREAM_MC_TRIALS)
    f1 = sigma * _rng.normal_deviates(gen, trials)
    f2 = sigma * _rng.normal_deviates(gen, trials)
    hits = int(np.count_nonzero(np.abs(f1 - f2) <= window_ghz))
    p = hits / trials
    stderr = math.sqrt(max(p * (1.0 - p), 0.0) / trials)
    return p, stderr


def lorentzian_overlap(
    center1_mhz: float, fwhm1_mhz: float, center2_mhz: float, fwhm2_mhz: float
) -> float:
    """Normalized cross-correlation of two unit-area Lorentzians, in [0, 1].

    With half-widths g = FWHM/2, G = g1 + g2 and detuning d the metric
    is 2 sqrt(g1 g2) G / (G^2 + d^2): exactly 1 for identical lines,
    0.5 for equal widths at detuning G, and 0 in the far-detuned limit.
    Any common frequency unit works as long as all four arguments share it.
    """
    if not (fwhm1_mhz > 0 and fwhm2_mhz > 0):
        raise ValueError("linewidths must be positive")
    g1, g2 = 0.5 * fwhm1_mhz, 0.5 * fwhm2_mhz
    big_g = g1 + g2
    delta = abs(center1_mhz - center2_mhz)
    return 2.0 * math.sqrt(g1 * g2) * big_g / (big_g * big_g + delta * delta)


def find_identical_pairs(
    emitters: Sequence[tuple[float, float]], max_detuning_mhz: float
) -> list[PairReport]:
    """All emitter pairs within a detuning threshold, nearest first.

    ``emitters`` holds ``(center_ghz, fwhm_mhz)`` per emitter, matching
    the output of resonance extraction.  Pairs are reported with indices
    i < j into the input list, sorted by ascending detuning, each with
    its Lorentzian overlap metric.
    """
    if max_detuning_mhz < 0:
        raise ValueError("detuning threshold must be non-negative")
    reports: list[PairReport] = []
    for i in range(len(emitters)):
        center_i, width_i = emitters[i]
        for j in range(i + 1, len(emitters)):
            center_j, width_j = emitters[j]
            detuning = abs(center_i - center_j) * 1e3
            if detuning <= max_detuning_mhz:
                reports.append(
                    PairReport(
                        index_i=i,
                        index_j=j,
                        detuning_mhz=detuning,
                        width_i_mhz=width_i,
                        width_j_mhz=width_j,
                        overlap_metric=lorentzian_overlap(
                            center_i * 1e3, width_i, center_j * 1e3, width_j
                        ),
                    )
                )
    reports.sort(key=lambda r: (r.detuning_mhz, r.index_i, r.index_j))
    return reports


def depth_correction(
    numerical_aperture: float,
    n_outside: float,
    n_inside: float,
    observed_depth_um: float,
) -> tuple[float, float]:
    """Correct a confocal depth reading for the index mismatch.

    The marginal-ray factor is
    tan(asin(0.5 NA / n_outside)) / tan(asin(0.5 NA / n_inside));
    for NA 0.95 between vacuum and diamond this is 2.67, so an apparent
    1.2 um depth is really about 3.2 um.  Returns (factor,
    corrected_depth).
    """
    if not numerical_aperture > 0:
        raise ValueError("numerical aperture must be positive")
    half_na = 0.5 * numerical_aperture
    if half_na >= n_outside or half_na >= n_inside:
        raise ValueError("0.5*NA must be smaller than both refractive indices")
    factor = math.tan(math.asin(half_na / n_outside)) / math.tan(math.asin(half_na / n_inside))
    return factor, factor * observed_depth_um
