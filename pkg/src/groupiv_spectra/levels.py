"""Electronic level structure of a group-IV center and analytic line shapes.

Both the ground and excited state are split by the spin-orbit
interaction, giving four optical transitions.  With the zero-phonon
C line as the frequency reference the offsets are

    C = 0,  D = -gs,  A = +es,  B = +es - gs   (GHz)

so A > B > C > D whenever the excited-state splitting exceeds the
ground-state one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .spectra import Spectrum
from .units import BOLTZMANN, PLANCK

TRANSITION_LABELS = ("A", "B", "C", "D")
LINE_KINDS = ("lorentzian", "gaussian")

# FWHM = 2*sqrt(2*ln 2) * sigma for a Gaussian.
GAUSSIAN_FWHM_OVER_SIGMA = 2.0 * math.sqrt(2.0 * math.log(2.0))


@dataclass(frozen=True)
class LevelStructure:
    """ZPL center, state splittings and excited-state lifetime."""

    zpl_center_thz: float
    gs_splitting_ghz: float
    es_splitting_ghz: float
    lifetime_ns: float

    def __post_init__(self) -> None:
        for name in ("zpl_center_thz", "gs_splitting_ghz", "es_splitting_ghz", "lifetime_ns"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


#: Default SnV level structure.  The ZPL center and the 821 GHz
#: ground-state splitting are measured values; the 3000 GHz
#: excited-state splitting is a literature default (not measured here)
#: and should be overridden when a better number is available.
SNV_LEVELS = LevelStructure(
    zpl_center_thz=484.130,
    gs_splitting_ghz=821.0,
    es_splitting_ghz=3000.0,
    lifetime_ns=6.0,
)


@dataclass(frozen=True)
class LineShapeSpec:
    """One analytic line: kind, center/FWHM in GHz, peak height in counts."""

    kind: str
    center_ghz: float
    fwhm_ghz: float
    amplitude: float

    def __post_init__(self) -> None:
        kind = self.kind.strip().lower()
        if kind not in LINE_KINDS:
            raise ValueError(f"line kind must be one of {LINE_KINDS}")
        object.__setattr__(self, "kind", kind)
        if not self.fwhm_ghz > 0:
            raise ValueError("fwhm must be positive")
        if self.amplitude < 0:
            raise ValueError("amplitude must be non-negative")


ArrayLike = Union[float, np.ndarray]


def lorentzian_profile(f: ArrayLike, center: float, fwhm: float) -> ArrayLike:
    """Peak-height-1 Lorentzian: (G/2)^2 / ((f-c)^2 + (G/2)^2)."""
    half = 0.5 * fwhm
    return half * half / ((np.asarray(f, dtype=float) - center) ** 2 + half * half)


def gaussian_profile(f: ArrayLike, center: float, fwhm: float) -> ArrayLike:
    """Peak-height-1 Gaussian: exp(-4 ln2 (f-c)^2 / G^2)."""
    d = np.asarray(f, dtype=float) - center
    return np.exp(-4.0 * math.log(2.0) * d * d / (fwhm * fwhm))


def evaluate_line(spec: LineShapeSpec, f: ArrayLike) -> ArrayLike:
    """Counts of one line at frequency offset(s) f (GHz)."""
    if spec.kind == "lorentzian":
        return spec.amplitude * lorentzian_profile(f, spec.center_ghz, spec.fwhm_ghz)
    return spec.amplitude * gaussian_profile(f, spec.center_ghz, spec.fwhm_ghz)


def transition_offsets(levels: LevelStructure) -> dict[str, float]:
    """A-D line positions in GHz relative to the C line.

    Offset arithmetic is exact: C - D equals the ground-state splitting
    bit for bit.
    """
    gs = levels.gs_splitting_ghz
    es = levels.es_splitting_ghz
    return {"A": es, "B": es - gs, "C": 0.0, "D": -gs}


def transition_frequencies(levels: LevelStructure) -> dict[str, float]:
    """Absolute A-D transition frequencies in THz.

    Derived from :func:`transition_offsets`; absolute THz values carry
    ordinary float rounding of order 1e-13 relative.
    """
    return {
        label: levels.zpl_center_thz + offset / 1e3
        for label, offset in transition_offsets(levels).items()
    }


def thermal_population(splitting_ghz: float, temperature_k: float) -> float:
    """Boltzmann occupation of the upper of two levels split by ``splitting_ghz``.

    p = exp(-h*delta/kT) / (1 + exp(-h*delta/kT)), strictly inside
    (0, 0.5) for finite positive temperature.
    """
    if not splitting_ghz > 0:
        raise ValueError("splitting must be positive")
    if not temperature_k > 0:
        raise ValueError("temperature must be positive")
    x = PLANCK * splitting_ghz * 1e9 / (BOLTZMANN * temperature_k)
    w = math.exp(-x)
    return w / (1.0 + w)


def pl_line_amplitudes(
    levels: LevelStructure, temperature_k: float, branching: float = 0.5
) -> dict[str, float]:
    """Peak heights of the four lines per unit total emission.

    A and B carry the thermal occupation of the upper excited-state
    level, C and D its complement; ``branching`` is the fraction of each
    excited level's emission terminating on the lower ground-state level
    (the A and C lines).  The four amplitudes always sum to one, so the
    integrated intensity is temperature independent.
    """
    if not 0.0 <= branching <= 1.0:
        raise ValueError("branching must lie in [0, 1]")
    upper = thermal_population(levels.es_splitting_ghz, temperature_k)
    return {
        "A": upper * branching,
        "B": upper * (1.0 - branching),
        "C": (1.0 - upper) * branching,
        "D": (1.0 - upper) * (1.0 - branching),
    }


def pl_spectrum(
    levels: LevelStructure,
    temperature_k: float,
    per_line_fwhm_ghz: float,
    axis_offsets_ghz: np.ndarray,
    branching: float = 0.5,
) -> Spectrum:
    """Four-line photoluminescence spectrum on an offset grid (GHz from C).

    A and B are weighted by the thermal occupation of the upper
    excited-state level, C and D by its complement.  ``branching`` is
    the fraction of each excited level's emission that terminates on the
    lower ground-state level (the A and C lines); the default 0.5 is the
    neutral 1:1 split.  Peak heights per unit total emission keep the
    integrated intensity independent of temperature.
    """
    axis = np.asarray(axis_offsets_ghz, dtype=float)
    if axis.size == 0:
        raise ValueError("frequency grid is empty")
    if not per_line_fwhm_ghz > 0:
        raise ValueError("per-line FWHM must be positive")
    offsets = transition_offsets(levels)
    weights = pl_line_amplitudes(levels, temperature_k, branching)
    counts = np.zeros_like(axis)
    for label in TRANSITION_LABELS:
        counts += weights[label] * lorentzian_profile(axis, offsets[label], per_line_fwhm_ghz)
    return Spectrum(axis, counts, reference_thz=levels.zpl_center_thz)
