"""Nonlinear least-squares engine and the two standard peak-fit models.

The solver is a damped Gauss-Newton (Levenberg-Marquardt) iteration
with the classical damping schedule: lambda starts at 1e-3, divides by
10 on an accepted step and multiplies by 10 on a rejected one.
Parameter bounds (FWHM > 0, amplitude >= 0) are enforced by projecting
each trial step onto the feasible region.  Convergence is declared when
the relative step norm drops below 1e-10 or the relative residual
decrease below 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence, Union

import numpy as np

from .levels import gaussian_profile, lorentzian_profile
from .spectra import HistogramData, Spectrum

_SQRT_EPS = math.sqrt(np.finfo(float).eps)
_LAMBDA0 = 1e-3
_LAMBDA_MAX = 1e12
_STEP_TOL = 1e-10
_COST_TOL = 1e-12
_MIN_POINTS_PER_PARAMETER = 5

PEAK_KINDS = ("lorentzian", "gaussian")


class PeakDetectionError(ValueError):
    """Automatic peak detection found fewer maxima than requested."""


@dataclass(frozen=True)
class FitResult:
    """Outcome of one least-squares solve."""

    parameters: np.ndarray
    standard_errors: np.ndarray
    residual_norm: float
    iterations: int
    converged: bool
    message: str = ""
    cost_history: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "parameters", np.asarray(self.parameters, dtype=float))
        object.__setattr__(self, "standard_errors", np.asarray(self.standard_errors, dtype=float))


@dataclass(frozen=True)
class PeakParams:
    """One peak: center and FWHM in the axis unit, peak-height amplitude."""

    center: float
    fwhm: float
    amplitude: float


@dataclass(frozen=True)
class PeakModel:
    """A sum of same-kind peaks with an optional constant baseline.

    ``peaks`` may be empty before a fit (automatic initialization fills
    it in); after a successful fit it holds the fitted values ordered by
    ascending center.
    """

    kind: str
    peak_count: int
    peaks: tuple[PeakParams, ...] = ()
    baseline: float | None = None

    def __post_init__(self) -> None:
        kind = self.kind.strip().lower()
        if kind not in PEAK_KINDS:
            raise ValueError(f"peak kind must be one of {PEAK_KINDS}")
        object.__setattr__(self, "kind", kind)
        if self.peak_count < 1:
            raise ValueError("peak count must be at least 1")
        if self.peaks and len(self.peaks) != self.peak_count:
            raise ValueError("peaks, when given, must match peak_count")

    @property
    def n_parameters(self) -> int:
        return 3 * self.peak_count + (0 if self.baseline is None else 1)


def peak_model_values(x: np.ndarray, params: np.ndarray, kind: str, with_baseline: bool) -> np.ndarray:
    """Evaluate a packed peak-parameter vector [c, w, a, ...(, baseline)]."""
    x = np.asarray(x, dtype=float)
    profile = lorentzian_profile if kind == "lorentzian" else gaussian_profile
    n_peaks = (len(params) - (1 if with_baseline else 0)) // 3
    y = np.full(x.shape, params[-1] if with_baseline else 0.0)
    for i in range(n_peaks):
        c, w, a = params[3 * i : 3 * i + 3]
        y = y + a * profile(x, c, w)
    return y


# ---------------------------------------------------------------------------
# Levenberg-Marquardt core


def _numeric_jacobian(residual: Callable[[np.ndarray], np.ndarray], p: np.ndarray, r0: np.ndarray) -> np.ndarray:
    """Forward-difference Jacobian with step h = sqrt(eps)*max(|p_j|, 1).

    The unit floor keeps the step meaningful for parameters that pass
    near zero (a fitted center converging to ~1e-11 must not shrink its
    own difference step to the rounding noise of the residual).
    """
    m, n = r0.size, p.size
    jac = np.empty((m, n))
    for j in range(n):
        h = _SQRT_EPS * max(abs(p[j]), 1.0)
        stepped = p.copy()
        stepped[j] += h
        jac[:, j] = (residual(stepped) - r0) / h
    return jac


def nlls_solve(
    residual_function: Callable[..., np.ndarray],
    initial_parameters: Sequence[float],
    args: tuple = (),
    jacobian: Callable[..., np.ndarray] | None = None,
    project: Callable[[np.ndarray], np.ndarray] | None = None,
    max_iterations: int = 200,
) -> FitResult:
    """Minimize ||residual(p, *args)||^2 by damped Gauss-Newton iteration.

    ``project``, when given, maps any trial parameter vector onto the
    feasible region (simple clamping); the initial point is projected
    too.  Standard errors come from the Jacobian covariance at the
    solution, scaled by the residual variance.  Singular normal
    equations and iteration exhaustion are reported as
    ``converged=False`` with the best parameters found so far.
    """
    p = np.asarray(initial_parameters, dtype=float).copy()
    if project is not None:
        p = project(p)

    def res(q: np.ndarray) -> np.ndarray:
        r = np.asarray(residual_function(q, *args), dtype=float)
        if r.ndim != 1:
            r = r.ravel()
        return r

    r = res(p)
    if not np.all(np.isfinite(r)):
        raise ValueError("residual function is not finite at the initial point")
    if r.size == 0:
        raise ValueError("residual function returned no data")
    cost = float(r @ r)
    history = [cost]
    lam = _LAMBDA0
    converged = False
    message = "iteration limit reached"
    iterations = 0

    for _ in range(max_iterations):
        iterations += 1
        if cost == 0.0:
            converged, message = True, "residual exactly zero"
            break
        if jacobian is not None:
            jac = np.asarray(jacobian(p, *args), dtype=float)
        else:
            jac = _numeric_jacobian(res, p, r)
        jtj = jac.T @ jac
        g = jac.T @ r
        diag = np.clip(np.diag(jtj), 1e-12, None)

        accepted = False
        while lam <= _LAMBDA_MAX:
            try:
                step = np.linalg.solve(jtj + lam * np.diag(diag), -g)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            if not np.all(np.isfinite(step)):
                lam *= 10.0
                continue
            trial = p + step
            if project is not None:
                trial = project(trial)
            r_trial = res(trial)
            cost_trial = float(r_trial @ r_trial)
            if np.isfinite(cost_trial) and cost_trial < cost:
                actual_step = trial - p
                p, r = trial, r_trial
                rel_step = np.linalg.norm(actual_step) / max(np.linalg.norm(p), 1e-300)
                rel_decrease = (cost - cost_trial) / max(cost, 1e-300)
                cost = cost_trial
                history.append(cost)
                lam = max(lam / 10.0, 1e-15)
                accepted = True
                if rel_step < _STEP_TOL:
                    converged, message = True, "step tolerance reached"
                elif rel_decrease < _COST_TOL:
                    converged, message = True, "residual tolerance reached"
                break
            lam *= 10.0
        if not accepted:
            message = "damping exhausted (singular or non-improving normal equations)"
            break
        if converged:
            break

    if jacobian is not None:
        jac = np.asarray(jacobian(p, *args), dtype=float)
    else:
        jac = _numeric_jacobian(res, p, r)
    errors = _standard_errors(jac, cost, r.size, p.size)
    return FitResult(
        parameters=p,
        standard_errors=errors,
        residual_norm=math.sqrt(cost),
        iterations=iterations,
        converged=converged,
        message=message,
        cost_history=tuple(history),
    )


def _standard_errors(jac: np.ndarray, cost: float, n_data: int, n_params: int) -> np.ndarray:
    dof = n_data - n_params
    variance = cost / dof if dof > 0 else float("nan")
    try:
        cov = np.linalg.inv(jac.T @ jac)
    except np.linalg.LinAlgError:
        cov = np.linalg.pinv(jac.T @ jac)
    with np.errstate(invalid="ignore"):
        return np.sqrt(np.clip(np.diag(cov) * variance, 0.0, None))


# ---------------------------------------------------------------------------
# Peak detection and peak fitting


def _moving_average(y: np.ndarray, window: int = 5) -> np.ndarray:
    if y.size < window:
        return y.astype(float)
    padded = np.pad(y.astype(float), window // 2, mode="reflect")
    kernel = np.full(window, 1.0 / window)
    return np.convolve(padded, kernel, mode="valid")


def _half_height_width(x: np.ndarray, y: np.ndarray, peak: int, baseline: float) -> float:
    """FWHM seed from the half-height crossings around index ``peak``."""
    half = baseline + 0.5 * (y[peak] - baseline)
    left = None
    for i in range(peak - 1, -1, -1):
        if y[i] <= half:
            # linear interpolation between samples i and i+1
            frac = (half - y[i]) / (y[i + 1] - y[i]) if y[i + 1] != y[i] else 0.0
            left = x[i] + frac * (x[i + 1] - x[i])
            break
    right = None
    for i in range(peak + 1, y.size):
        if y[i] <= half:
            frac = (y[i - 1] - half) / (y[i - 1] - y[i]) if y[i - 1] != y[i] else 0.0
            right = x[i - 1] + frac * (x[i] - x[i - 1])
            break
    if left is not None and right is not None:
        width = right - left
    elif left is not None:
        width = 2.0 * (x[peak] - left)
    elif right is not None:
        width = 2.0 * (right - x[peak])
    else:
        width = 0.0
    if width <= 0:
        step = np.median(np.diff(x)) if x.size > 1 else 1.0
        width = 5.0 * float(step)
    return float(width)


def detect_peaks(
    x: np.ndarray,
    y: np.ndarray,
    min_height: float | None = None,
    max_peaks: int | None = None,
) -> tuple[list[PeakParams], float]:
    """Seed peaks from a spectrum: smooth, find maxima, estimate widths.

    Smoothing is a 5-sample moving average; the baseline seed is the
    10th percentile of the raw counts; ``min_height`` (if given) is the
    minimum smoothed height above that baseline.  When two candidates
    lie within one FWHM of a taller one, the taller wins.  Returns the
    seeds ordered by ascending center plus the baseline seed.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    smooth = _moving_average(y)
    baseline = float(np.percentile(y, 10)) if y.size else 0.0
    candidates: list[PeakParams] = []
    for i in range(1, x.size - 1):
        if smooth[i] > smooth[i - 1] and smooth[i] >= smooth[i + 1]:
            height = smooth[i] - baseline
            if height <= 0:
                continue
            if min_height is not None and height < min_height:
                continue
            width = _half_height_width(x, smooth, i, baseline)
            candidates.append(PeakParams(float(x[i]), width, float(height)))
    # tallest first; drop any candidate within one FWHM of a kept (taller) peak
    candidates.sort(key=lambda p: p.amplitude, reverse=True)
    kept: list[PeakParams] = []
    for cand in candidates:
        if all(abs(cand.center - k.center) > k.fwhm for k in kept):
            kept.append(cand)
    if max_peaks is not None:
        kept = kept[:max_peaks]
    kept.sort(key=lambda p: p.center)
    return kept, baseline


def _data_arrays(data: Union[Spectrum, HistogramData]) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(data, Spectrum):
        return data.frequency_offset_ghz, data.counts
    if isinstance(data, HistogramData):
        return data.bin_centers_ghz, data.counts.astype(float)
    raise TypeError("expected a Spectrum or HistogramData")


def _pack(peaks: Sequence[PeakParams], baseline: float | None) -> np.ndarray:
    flat = [v for p in peaks for v in (p.center, p.fwhm, p.amplitude)]
    if baseline is not None:
        flat.append(baseline)
    return np.asarray(flat, dtype=float)


def _unpack(params: np.ndarray, with_baseline: bool) -> tuple[tuple[PeakParams, ...], float | None]:
    body = params[:-1] if with_baseline else params
    peaks = tuple(
        PeakParams(float(body[3 * i]), float(body[3 * i + 1]), float(body[3 * i + 2]))
        for i in range(len(body) // 3)
    )
    baseline = float(params[-1]) if with_baseline else None
    return peaks, baseline


def _projection(n_peaks: int, with_baseline: bool, min_fwhm: float) -> Callable[[np.ndarray], np.ndarray]:
    def project(p: np.ndarray) -> np.ndarray:
        q = p.copy()
        for i in range(n_peaks):
            q[3 * i + 1] = max(q[3 * i + 1], min_fwhm)
            q[3 * i + 2] = max(q[3 * i + 2], 0.0)
        return q

    return project


def fit_peaks(
    data: Union[Spectrum, HistogramData],
    model: PeakModel,
    initial_guess: Union[str, PeakModel] = "auto",
    max_iterations: int = 200,
) -> tuple[FitResult, PeakModel]:
    """Fit a multi-peak model to a spectrum or histogram.

    ``initial_guess`` is either ``"auto"`` (peak detection seeds the
    parameters) or an explicit PeakModel carrying start values.  The
    returned parameters are ordered by ascending center; FWHMs are in
    the unit of the data axis (GHz).  Requires at least 5 data points
    per free parameter.  Raises :class:`PeakDetectionError` when
    automatic detection finds fewer maxima than ``model.peak_count``;
    the fit is not attempted in that case.
    """
    x, y = _data_arrays(data)
    n_free = model.n_parameters
    if x.size < _MIN_POINTS_PER_PARAMETER * n_free:
        raise ValueError(
            f"need at least {_MIN_POINTS_PER_PARAMETER} points per parameter "
            f"({_MIN_POINTS_PER_PARAMETER * n_free} total), got {x.size}"
        )

    with_baseline = model.baseline is not None
    if isinstance(initial_guess, PeakModel):
        if initial_guess.peak_count != model.peak_count or not initial_guess.peaks:
            raise ValueError("explicit initial guess must carry values for every peak")
        seeds = initial_guess.peaks
        baseline0 = initial_guess.baseline if with_baseline else None
        if with_baseline and baseline0 is None:
            baseline0 = 0.0
    elif initial_guess == "auto":
        if model.peaks:
            seeds = model.peaks
            baseline0 = model.baseline if with_baseline else None
        else:
            found, baseline_seed = detect_peaks(x, y, max_peaks=model.peak_count)
            if len(found) < model.peak_count:
                raise PeakDetectionError(
                    f"automatic initialization found {len(found)} candidate peaks, "
                    f"need {model.peak_count}"
                )
            seeds = tuple(found)
            baseline0 = baseline_seed if with_baseline else None
    else:
        raise ValueError("initial_guess must be 'auto' or a PeakModel")

    min_fwhm = 1e-6 * max(float(x[-1] - x[0]), 1e-12) if x.size > 1 else 1e-12
    p0 = _pack(seeds, baseline0)

    def residual(p: np.ndarray) -> np.ndarray:
        return peak_model_values(x, p, model.kind, with_baseline) - y

    result = nlls_solve(
        residual,
        p0,
        project=_projection(model.peak_count, with_baseline, min_fwhm),
        max_iterations=max_iterations,
    )

    peaks, baseline = _unpack(result.parameters, with_baseline)
    order = np.argsort([p.center for p in peaks])
    peaks = tuple(peaks[i] for i in order)
    perm = np.concatenate([np.arange(3) + 3 * i for i in order])
    if with_baseline:
        perm = np.concatenate([perm, [len(result.parameters) - 1]])
    result = replace(
        result,
        parameters=result.parameters[perm],
        standard_errors=result.standard_errors[perm],
    )
    fitted = PeakModel(model.kind, model.peak_count, peaks, baseline)
    return result, fitted


def extract_resonances(
    spectrum: Spectrum, detection_threshold: float
) -> list[tuple[float, float, float]]:
    """Detect and locally fit every resonance above a count threshold.

    Each detected maximum is refined by a single-Lorentzian fit in a
    window of three seeded FWHM around it.  Returns
    ``(center_ghz, fwhm_mhz, amplitude)`` tuples ordered by center;
    peaks whose fitted amplitude falls below the threshold are dropped.
    Two lines closer than about one FWHM blend into a single detected
    feature; resolving such pairs needs an explicit multi-peak fit.
    """
    if not detection_threshold > 0:
        raise ValueError("detection threshold must be positive")
    x, y = spectrum.frequency_offset_ghz, spectrum.counts
    seeds, baseline = detect_peaks(x, y, min_height=detection_threshold)
    results: list[tuple[float, float, float]] = []
    step = float(np.median(np.diff(x))) if x.size > 1 else 1.0
    min_points = _MIN_POINTS_PER_PARAMETER * 3
    for seed in seeds:
        half_window = max(3.0 * seed.fwhm, (min_points // 2 + 1) * step)
        mask = np.abs(x - seed.center) <= half_window
        sub_x, sub_y = x[mask], y[mask]
        if sub_x.size < min_points:
            continue

        def residual(p: np.ndarray) -> np.ndarray:
            return peak_model_values(sub_x, p, "lorentzian", False) - sub_y

        fit = nlls_solve(
            residual,
            _pack([seed], None),
            project=_projection(1, False, 1e-9),
        )
        center, fwhm, amplitude = fit.parameters
        if amplitude + baseline < detection_threshold:
            continue
        results.append((float(center), float(fwhm) * 1e3, float(amplitude)))
    results.sort(key=lambda t: t[0])
    return results
