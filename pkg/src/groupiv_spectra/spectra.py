"""Value types for sampled spectra and resonance histograms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Spectrum:
    """Counts sampled on a strictly ascending frequency-offset axis.

    Offsets are in GHz relative to ``reference_thz`` (an absolute
    frequency); storing offsets avoids the precision loss of keeping
    ~5e14 Hz absolutes in every sample.
    """

    frequency_offset_ghz: np.ndarray
    counts: np.ndarray
    reference_thz: float | None = None

    def __post_init__(self) -> None:
        axis = np.asarray(self.frequency_offset_ghz, dtype=float)
        counts = np.asarray(self.counts, dtype=float)
        if axis.ndim != 1 or counts.ndim != 1:
            raise ValueError("spectrum axis and counts must be one-dimensional")
        if axis.shape != counts.shape:
            raise ValueError("spectrum axis and counts must have equal length")
        if axis.size > 1 and not np.all(np.diff(axis) > 0):
            raise ValueError("spectrum axis must be strictly ascending")
        object.__setattr__(self, "frequency_offset_ghz", axis)
        object.__setattr__(self, "counts", counts)

    def __len__(self) -> int:
        return int(self.frequency_offset_ghz.size)


@dataclass(frozen=True)
class HistogramData:
    """Binned resonance counts over strictly ascending bin edges (GHz)."""

    bin_edges_ghz: np.ndarray
    counts: np.ndarray

    def __post_init__(self) -> None:
        edges = np.asarray(self.bin_edges_ghz, dtype=float)
        counts = np.asarray(self.counts, dtype=np.int64)
        if edges.ndim != 1 or edges.size < 2:
            raise ValueError("need at least two bin edges")
        if not np.all(np.diff(edges) > 0):
            raise ValueError("bin edges must be strictly ascending")
        if counts.ndim != 1 or counts.size != edges.size - 1:
            raise ValueError("counts length must be number of edges minus one")
        if np.any(counts < 0):
            raise ValueError("histogram counts must be non-negative")
        object.__setattr__(self, "bin_edges_ghz", edges)
        object.__setattr__(self, "counts", counts)

    @property
    def bin_centers_ghz(self) -> np.ndarray:
        edges = self.bin_edges_ghz
        return 0.5 * (edges[:-1] + edges[1:])

    @property
    def total(self) -> int:
        return int(self.counts.sum())
