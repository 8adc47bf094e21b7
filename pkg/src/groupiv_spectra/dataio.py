"""File formats: CSV spectra/histograms/emitters/peaks, JSON reports, SVG.

Every output file records the manifest that produced it, as a comment
header for CSV and SVG, an embedded ``manifest`` key for JSON reports,
and a ``.manifest.json`` sidecar for JSON-lines files.  Numeric payloads
are written with ``repr`` (shortest round-tripping form) so that a
write -> parse -> write cycle is a fixed point, byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Sequence, Union

import numpy as np

from .analysis import PairReport
from .ensemble import Emitter
from .fitting import FitResult, PeakModel
from .spectra import HistogramData, Spectrum
from .units import AtomicMass
from .vibmodel import SN_ISOTOPES, IsotopeTable

SCAN_CSV_HEADER = "frequency_offset_ghz,counts"
HISTOGRAM_CSV_HEADER = "bin_left_ghz,bin_right_ghz,count"
EMITTER_CSV_HEADER = "isotope,center_offset_ghz,fwhm_mhz,brightness,x_um,y_um,z_um"
PEAKS_CSV_HEADER = "center_ghz,fwhm_mhz,amplitude"


@dataclass(frozen=True)
class RunManifest:
    """Provenance record attached to every output file."""

    subcommand: str
    config: dict[str, Any] = field(default_factory=dict)
    inputs: tuple[str, ...] = ()
    outputs: tuple[str, ...] = ()
    seed: int | None = None
    version: str = "0.1.0"
    timestamp_utc: str = ""

    @staticmethod
    def create(subcommand: str, config: dict[str, Any] | None = None, inputs: Sequence[str] = (),
               outputs: Sequence[str] = (), seed: int | None = None) -> "RunManifest":
        from . import __version__

        return RunManifest(
            subcommand=subcommand,
            config=dict(config or {}),
            inputs=tuple(str(p) for p in inputs),
            outputs=tuple(str(p) for p in outputs),
            seed=seed,
            version=__version__,
            timestamp_utc=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _fnum(value: float) -> str:
    """Shortest decimal form that round-trips through float()."""
    return repr(float(value))


def _manifest_comment(manifest: RunManifest | None) -> list[str]:
    if manifest is None:
        return []
    return [f"# manifest: {manifest.to_json()}"]


# ---------------------------------------------------------------------------
# Spectrum CSV


def write_spectrum_csv(spectrum: Spectrum, path: str | Path, manifest: RunManifest | None = None) -> None:
    lines = _manifest_comment(manifest)
    if spectrum.reference_thz is not None:
        lines.append(f"# reference_thz={_fnum(spectrum.reference_thz)}")
    lines.append(SCAN_CSV_HEADER)
    for x, y in zip(spectrum.frequency_offset_ghz, spectrum.counts):
        lines.append(f"{_fnum(x)},{_fnum(y)}")
    Path(path).write_text("\n".join(lines) + "\n")


def parse_scan_csv(path: str | Path) -> Spectrum:
    """Read a spectrum CSV.

    Requires the exact header ``frequency_offset_ghz,counts``; an
    optional ``# reference_thz=<value>`` comment carries the absolute
    reference.  Malformed rows are rejected with their line number, and
    an unsorted axis is an error rather than being silently sorted.
    """
    path = Path(path)
    reference: float | None = None
    header_seen = False
    xs: list[float] = []
    ys: list[float] = []
    with path.open() as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("reference_thz="):
                    try:
                        reference = float(body.split("=", 1)[1])
                    except ValueError:
                        raise ValueError(f"{path}: line {lineno}: bad reference_thz value")
                continue
            if not header_seen:
                if line != SCAN_CSV_HEADER:
                    raise ValueError(
                        f"{path}: line {lineno}: expected header '{SCAN_CSV_HEADER}', got {line!r}"
                    )
                header_seen = True
                continue
            cells = line.split(",")
            if len(cells) != 2:
                raise ValueError(f"{path}: line {lineno}: expected 2 columns, got {len(cells)}")
            try:
                x, y = float(cells[0]), float(cells[1])
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: non-numeric cell")
            xs.append(x)
            ys.append(y)
    if not header_seen:
        raise ValueError(f"{path}: missing header '{SCAN_CSV_HEADER}'")
    axis = np.asarray(xs)
    if axis.size > 1 and not np.all(np.diff(axis) > 0):
        raise ValueError(f"{path}: frequency axis is not strictly ascending")
    return Spectrum(axis, np.asarray(ys), reference_thz=reference)


# ---------------------------------------------------------------------------
# Histogram CSV


def write_histogram_csv(histogram: HistogramData, path: str | Path, manifest: RunManifest | None = None) -> None:
    lines = _manifest_comment(manifest)
    lines.append(HISTOGRAM_CSV_HEADER)
    edges = histogram.bin_edges_ghz
    for left, right, count in zip(edges[:-1], edges[1:], histogram.counts):
        lines.append(f"{_fnum(left)},{_fnum(right)},{int(count)}")
    Path(path).write_text("\n".join(lines) + "\n")


def parse_histogram_csv(path: str | Path) -> HistogramData:
    path = Path(path)
    lefts: list[float] = []
    rights: list[float] = []
    counts: list[int] = []
    header_seen = False
    with path.open() as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if not header_seen:
                if line != HISTOGRAM_CSV_HEADER:
                    raise ValueError(
                        f"{path}: line {lineno}: expected header '{HISTOGRAM_CSV_HEADER}'"
                    )
                header_seen = True
                continue
            cells = line.split(",")
            if len(cells) != 3:
                raise ValueError(f"{path}: line {lineno}: expected 3 columns")
            try:
                lefts.append(float(cells[0]))
                rights.append(float(cells[1]))
                counts.append(int(cells[2]))
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: non-numeric cell")
    if not header_seen:
        raise ValueError(f"{path}: missing header '{HISTOGRAM_CSV_HEADER}'")
    if not lefts:
        raise ValueError(f"{path}: histogram has no bins")
    for i in range(1, len(lefts)):
        if lefts[i] != rights[i - 1]:
            raise ValueError(f"{path}: bins are not contiguous at row {i + 1}")
    edges = np.asarray(lefts + [rights[-1]])
    return HistogramData(edges, np.asarray(counts))


# ---------------------------------------------------------------------------
# Emitter CSV


def write_emitters_csv(emitters: Sequence[Emitter], path: str | Path, manifest: RunManifest | None = None) -> None:
    lines = _manifest_comment(manifest)
    lines.append(EMITTER_CSV_HEADER)
    for em in emitters:
        x, y, z = em.position_um
        lines.append(
            ",".join(
                [
                    str(em.isotope.mass_number),
                    _fnum(em.center_offset_ghz),
                    _fnum(em.homogeneous_fwhm_mhz),
                    _fnum(em.brightness),
                    _fnum(x),
                    _fnum(y),
                    _fnum(z),
                ]
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


def parse_emitters_csv(path: str | Path, isotope_table: IsotopeTable | None = None) -> list[Emitter]:
    path = Path(path)
    table = isotope_table or SN_ISOTOPES
    emitters: list[Emitter] = []
    header_seen = False
    with path.open() as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if not header_seen:
                if line != EMITTER_CSV_HEADER:
                    raise ValueError(f"{path}: line {lineno}: expected header '{EMITTER_CSV_HEADER}'")
                header_seen = True
                continue
            cells = line.split(",")
            if len(cells) != 7:
                raise ValueError(f"{path}: line {lineno}: expected 7 columns")
            try:
                mass_number = int(cells[0])
                values = [float(c) for c in cells[1:]]
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: non-numeric cell")
            try:
                isotope = table.mass(mass_number)
            except KeyError:
                isotope = AtomicMass(mass_number, float(mass_number))
            emitters.append(
                Emitter(
                    isotope=isotope,
                    center_offset_ghz=values[0],
                    homogeneous_fwhm_mhz=values[1],
                    brightness=values[2],
                    position_um=(values[3], values[4], values[5]),
                )
            )
    if not header_seen:
        raise ValueError(f"{path}: missing header '{EMITTER_CSV_HEADER}'")
    return emitters


# ---------------------------------------------------------------------------
# Peak-list CSV (extraction output, pair-search input)


def write_peaks_csv(
    peaks: Sequence[tuple[float, float, float]], path: str | Path, manifest: RunManifest | None = None
) -> None:
    lines = _manifest_comment(manifest)
    lines.append(PEAKS_CSV_HEADER)
    for center_ghz, fwhm_mhz, amplitude in peaks:
        lines.append(f"{_fnum(center_ghz)},{_fnum(fwhm_mhz)},{_fnum(amplitude)}")
    Path(path).write_text("\n".join(lines) + "\n")


def parse_peaks_csv(path: str | Path) -> list[tuple[float, float, float]]:
    path = Path(path)
    peaks: list[tuple[float, float, float]] = []
    header_seen = False
    with path.open() as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if not header_seen:
                if line != PEAKS_CSV_HEADER:
                    raise ValueError(f"{path}: line {lineno}: expected header '{PEAKS_CSV_HEADER}'")
                header_seen = True
                continue
            cells = line.split(",")
            if len(cells) != 3:
                raise ValueError(f"{path}: line {lineno}: expected 3 columns")
            try:
                peaks.append((float(cells[0]), float(cells[1]), float(cells[2])))
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: non-numeric cell")
    if not header_seen:
        raise ValueError(f"{path}: missing header '{PEAKS_CSV_HEADER}'")
    return peaks


# ---------------------------------------------------------------------------
# JSON reports


def fit_report(result: FitResult, model: PeakModel, manifest: RunManifest | None = None) -> dict[str, Any]:
    """Fit outcome as a JSON-ready dict; units are embedded in key names."""
    peaks = [
        {
            "center_ghz": p.center,
            "fwhm_ghz": p.fwhm,
            "fwhm_mhz": p.fwhm * 1e3,
            "amplitude": p.amplitude,
        }
        for p in model.peaks
    ]
    report: dict[str, Any] = {
        "model": {
            "kind": model.kind,
            "peak_count": model.peak_count,
            "peaks": peaks,
            "baseline_counts": model.baseline,
        },
        "parameters": [float(v) for v in result.parameters],
        "standard_errors": [float(v) for v in result.standard_errors],
        "residual_norm": result.residual_norm,
        "iterations": result.iterations,
        "converged": result.converged,
        "message": result.message,
    }
    if manifest is not None:
        report["manifest"] = json.loads(manifest.to_json())
    return report


def write_json(obj: dict[str, Any], path: str | Path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def write_pair_reports_jsonl(
    reports: Sequence[PairReport], path: str | Path, manifest: RunManifest | None = None
) -> None:
    """One PairReport object per line; manifest goes to a sidecar file."""
    path = Path(path)
    lines = [json.dumps(asdict(r), sort_keys=True) for r in reports]
    path.write_text("\n".join(lines) + ("\n" if lines else ""))
    if manifest is not None:
        Path(str(path) + ".manifest.json").write_text(manifest.to_json() + "\n")


# ---------------------------------------------------------------------------
# Output dispatch


def write_outputs(
    result: Union[Spectrum, HistogramData, tuple, list, dict],
    format: str,
    path: str | Path,
    manifest: RunManifest | None = None,
    fit_overlay: np.ndarray | None = None,
) -> None:
    """Write a result object in the requested format.

    Spectra and histograms go to CSV or SVG; fit reports (dicts or
    ``(FitResult, PeakModel)`` pairs) to JSON; pair-report lists to JSON
    lines.  The SVG variants accept a fitted curve to overlay.
    """
    from .svgplot import histogram_svg, spectrum_svg

    fmt = format.strip().lower()
    path = Path(path)
    if isinstance(result, Spectrum):
        if fmt == "csv":
            write_spectrum_csv(result, path, manifest)
        elif fmt == "svg":
            comment = manifest.to_json() if manifest else None
            path.write_text(spectrum_svg(result, fit_counts=fit_overlay, comment=comment))
        else:
            raise ValueError(f"unsupported spectrum format {format!r}")
        return
    if isinstance(result, HistogramData):
        if fmt == "csv":
            write_histogram_csv(result, path, manifest)
        elif fmt == "svg":
            comment = manifest.to_json() if manifest else None
            axis = None
            if fit_overlay is not None:
                axis = np.linspace(result.bin_edges_ghz[0], result.bin_edges_ghz[-1], len(fit_overlay))
            path.write_text(histogram_svg(result, fit_axis_ghz=axis, fit_counts=fit_overlay, comment=comment))
        else:
            raise ValueError(f"unsupported histogram format {format!r}")
        return
    if isinstance(result, tuple) and len(result) == 2 and isinstance(result[0], FitResult):
        if fmt != "json":
            raise ValueError("fit reports are JSON only")
        write_json(fit_report(result[0], result[1], manifest), path)
        return
    if isinstance(result, dict):
        if fmt != "json":
            raise ValueError("reports are JSON only")
        write_json(result, path)
        return
    if isinstance(result, list) and all(isinstance(r, PairReport) for r in result):
        if fmt != "json":
            raise ValueError("pair reports are JSON only")
        write_pair_reports_jsonl(result, path, manifest)
        return
    raise TypeError(f"do not know how to write {type(result).__name__}")
