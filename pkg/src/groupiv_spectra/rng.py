"""Seeded, reproducible random deviates for the simulation modules.

All randomness in the toolkit derives from the 64-bit PCG64 bit
generator seeded through ``numpy.random.SeedSequence``.  Distinct
purposes draw from disjoint streams obtained with ``spawn_key``, so
independent stages (isotope choice, frequency offsets, positions, shot
noise, Monte Carlo trials) never share state and may run concurrently.

Deviate transforms are pinned here rather than delegated to the
Generator's distribution methods: normals come from the inverse CDF
applied to uniforms and Poisson variates from sequential-search
inversion (mean < 30) or Hormann's PTRS transformed rejection
(mean >= 30).  The streams therefore depend only on the raw PCG64
uniform doubles and stay bit-stable across library versions.
"""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln, ndtri

# Named sub-streams derived from one user seed.
STREAM_ISOTOPES = 0
STREAM_OFFSETS = 1
STREAM_POSITIONS = 2
STREAM_SCAN_NOISE = 3
STREAM_MC_TRIALS = 4

_POISSON_PTRS_THRESHOLD = 30.0


def generator(seed: int, stream: int | None = None) -> np.random.Generator:
    """PCG64 generator for ``seed``, optionally on a named sub-stream."""
    if stream is None:
        seq = np.random.SeedSequence(seed)
    else:
        seq = np.random.SeedSequence(seed, spawn_key=(stream,))
    return np.random.Generator(np.random.PCG64(seq))


def _uniforms(rng: np.random.Generator, size: int) -> np.ndarray:
    # random() yields [0, 1); clamp away exact zero so ndtri/log stay finite.
    u = rng.random(size)
    return np.maximum(u, 1e-300)


def normal_deviates(rng: np.random.Generator, size: int) -> np.ndarray:
    """Standard normal deviates via the inverse CDF of uniform draws."""
    return ndtri(_uniforms(rng, size))


def poisson_deviates(rng: np.random.Generator, means: np.ndarray) -> np.ndarray:
    """Poisson deviates for an array of means.

    Sequential-search inversion below mean 30 (one uniform per value),
    PTRS transformed rejection at and above.  Zero means map to zero
    draws; negative or non-finite means are rejected.
    """
    mu = np.asarray(means, dtype=float)
    if np.any(~np.isfinite(mu)) or np.any(mu < 0):
        raise ValueError("Poisson means must be finite and non-negative")
    out = np.zeros(mu.shape, dtype=np.int64)
    flat_mu = mu.ravel()
    flat_out = out.ravel()

    small = (flat_mu > 0) & (flat_mu < _POISSON_PTRS_THRESHOLD)
    if np.any(small):
        flat_out[small] = _poisson_inversion(rng, flat_mu[small])
    large = flat_mu >= _POISSON_PTRS_THRESHOLD
    if np.any(large):
        flat_out[large] = _poisson_ptrs(rng, flat_mu[large])
    return out


def _poisson_inversion(rng: np.random.Generator, mu: np.ndarray) -> np.ndarray:
    """Sequential search through the CDF; valid for modest means."""
    n = mu.size
    u = _uniforms(rng, n)
    p = np.exp(-mu)
    cdf = p.copy()
    k = np.zeros(n, dtype=np.int64)
    active = u > cdf
    while np.any(active):
        k[active] += 1
        p[active] *= mu[active] / k[active]
        cdf[active] += p[active]
        active = u > cdf
    return k


def _poisson_ptrs(rng: np.random.Generator, mu: np.ndarray) -> np.ndarray:
    """Hormann's PTRS transformed-rejection sampler for mean >= ~10."""
    n = mu.size
    b = 0.931 + 2.53 * np.sqrt(mu)
    a = -0.059 + 0.02483 * b
    inv_alpha = 1.1239 + 1.1328 / (b - 3.4)
    v_r = 0.9277 - 3.6224 / (b - 2.0)
    log_mu = np.log(mu)

    k = np.zeros(n, dtype=np.int64)
    pending = np.arange(n)
    while pending.size:
        m = pending.size
        u = rng.random(m) - 0.5
        v = _uniforms(rng, m)
        us = 0.5 - np.abs(u)
        idx = pending
        cand = np.floor((2.0 * a[idx] / us + b[idx]) * u + mu[idx] + 0.43)

        accept = (us >= 0.07) & (v <= v_r[idx])
        reject = (cand < 0) | ((us < 0.013) & (v > us))
        needs_log = ~(accept | reject)
        if np.any(needs_log):
            j = idx[needs_log]
            lhs = np.log(v[needs_log] * inv_alpha[j] / (a[j] / (us[needs_log] ** 2) + b[j]))
            rhs = cand[needs_log] * log_mu[j] - mu[j] - gammaln(cand[needs_log] + 1.0)
            acc2 = np.zeros(m, dtype=bool)
            acc2[needs_log] = lhs <= rhs
            accept = accept | acc2

        k[idx[accept]] = cand[accept].astype(np.int64)
        pending = idx[~accept]
    return k
