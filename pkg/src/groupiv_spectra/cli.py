"""Batch command-line front end.

One subcommand per invocation; exit code 0 on success, 1 on user error
(bad flags, malformed files) with a message on stderr, and 2 on
numerical failure (a fit that did not converge) with partial results
written.  Random seeds resolve as: ``--seed`` flag, then the config
file, then the ``GROUPIV_SPECTRA_SEED`` environment variable, then 0.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

from . import __version__
from .analysis import (
    coincidence_probability_analytic,
    coincidence_probability_mc,
    depth_correction,
    find_identical_pairs,
)
from .dataio import (
    RunManifest,
    fit_report,
    parse_histogram_csv,
    parse_peaks_csv,
    parse_scan_csv,
    write_emitters_csv,
    write_json,
    write_outputs,
    write_peaks_csv,
)
from .ensemble import EnsembleConfig, build_histogram, simulate_scan
from .fitting import PeakDetectionError, PeakModel, PeakParams, extract_resonances, fit_peaks, peak_model_values
from .levels import SNV_LEVELS, LevelStructure, pl_spectrum
from .vibmodel import (
    BUILTIN_MODELS,
    SN_ISOTOPES,
    isotope_shift,
    load_force_constants_csv,
    load_isotope_table_csv,
    shift_ratio,
    unit_mass_shift_curve,
    vibration_energy,
    zero_point_sum,
)

SEED_ENV_VAR = "GROUPIV_SPECTRA_SEED"


class CliError(Exception):
    """User error: bad flags, bad files, bad values.  Exit code 1."""


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so run() owns exit codes."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise CliError(f"{self.format_usage()}{self.prog}: error: {message}")


def _resolve_seed(flag_seed: int | None, config_seed: int | None = None) -> int:
    if flag_seed is not None:
        return flag_seed
    if config_seed is not None:
        return int(config_seed)
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"{SEED_ENV_VAR} must be an integer, got {env!r}")
    return 0


def _load_toml(path: str) -> dict[str, Any]:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise CliError(f"config file not found: {path}")
    except tomllib.TOMLDecodeError as exc:
        raise CliError(f"{path}: invalid TOML: {exc}")


def _resolve_model(selector: str):
    if selector.startswith("builtin:"):
        name = selector.split(":", 1)[1]
        if name not in BUILTIN_MODELS:
            raise CliError(f"unknown builtin model {name!r}; available: {sorted(BUILTIN_MODELS)}")
        return BUILTIN_MODELS[name]
    if not Path(selector).exists():
        raise CliError(f"model file not found: {selector}")
    return load_force_constants_csv(selector)


def _int_keyed(mapping: dict[str, Any], what: str) -> dict[int, float]:
    out: dict[int, float] = {}
    for key, value in mapping.items():
        try:
            out[int(key)] = float(value)
        except (TypeError, ValueError):
            raise CliError(f"{what}: keys must be mass numbers and values numbers, got {key!r}={value!r}")
    return out


# ---------------------------------------------------------------------------
# simulate


_ENSEMBLE_DEFAULTS: dict[str, Any] = {
    "emitter_count": 160,
    "selected_mass_number": 120,
    "selectivity": 0.5,
    "group_offsets_ghz": {120: 0.0, 119: 10.9, 118: 17.9, 117: 25.0, 122: -4.7},
    "group_inhom_fwhm_ghz": {120: 3.9, 119: 3.9, 118: 3.9, 117: 3.9, 122: 3.9},
    "homogeneous_fwhm_mhz": 32.0,
    "scan_range_ghz": 47.0,
    "scan_step_mhz": 5.0,
    "shot_noise": True,
    "reference_thz": 484.130,
    "brightness": 100.0,
    "background": 0.0,
    "restrict_isotopes": [117, 118, 119, 120, 122],
}


def _build_ensemble_config(args: argparse.Namespace) -> tuple[EnsembleConfig, dict[str, Any]]:
    settings = dict(_ENSEMBLE_DEFAULTS)
    file_seed: int | None = None
    if args.config:
        doc = _load_toml(args.config)
        table = doc.get("ensemble", doc)
        if not isinstance(table, dict):
            raise CliError(f"{args.config}: expected an [ensemble] table")
        known = set(_ENSEMBLE_DEFAULTS) | {"rng_seed", "isotope_table_csv", "position_box_um"}
        unknown = set(table) - known
        if unknown:
            raise CliError(f"{args.config}: unknown ensemble keys {sorted(unknown)}")
        settings.update(table)
        file_seed = table.get("rng_seed")

    for flag, key in (
        ("count", "emitter_count"),
        ("selectivity", "selectivity"),
        ("scan_range_ghz", "scan_range_ghz"),
        ("scan_step_mhz", "scan_step_mhz"),
    ):
        value = getattr(args, flag)
        if value is not None:
            settings[key] = value
    if args.shot_noise is not None:
        settings["shot_noise"] = args.shot_noise == "on"

    seed = _resolve_seed(args.seed, file_seed)

    if settings.get("isotope_table_csv"):
        table = load_isotope_table_csv(settings["isotope_table_csv"])
    else:
        table = SN_ISOTOPES
    restrict = settings.get("restrict_isotopes")
    if restrict:
        try:
            table = table.restricted([int(m) for m in restrict])
        except KeyError as exc:
            raise CliError(str(exc))

    box = settings.get("position_box_um")
    config = EnsembleConfig(
        emitter_count=int(settings["emitter_count"]),
        isotope_table=table,
        selected_mass_number=int(settings["selected_mass_number"]),
        selectivity=float(settings["selectivity"]),
        group_offsets_ghz=_int_keyed(
            {str(k): v for k, v in settings["group_offsets_ghz"].items()}, "group_offsets_ghz"
        ),
        group_inhom_fwhm_ghz=_int_keyed(
            {str(k): v for k, v in settings["group_inhom_fwhm_ghz"].items()}, "group_inhom_fwhm_ghz"
        ),
        homogeneous_fwhm_mhz=float(settings["homogeneous_fwhm_mhz"]),
        scan_range_ghz=float(settings["scan_range_ghz"]),
        scan_step_mhz=float(settings["scan_step_mhz"]),
        shot_noise=bool(settings["shot_noise"]),
        rng_seed=seed,
        reference_thz=float(settings["reference_thz"]),
        brightness=float(settings["brightness"]),
        background=float(settings["background"]),
        position_box_um=tuple(box) if box else None,
    )
    resolved = {
        "emitter_count": config.emitter_count,
        "selected_mass_number": config.selected_mass_number,
        "selectivity": config.selectivity,
        "group_offsets_ghz": dict(sorted(config.group_offsets_ghz.items())),
        "group_inhom_fwhm_ghz": dict(sorted(config.group_inhom_fwhm_ghz.items())),
        "homogeneous_fwhm_mhz": config.homogeneous_fwhm_mhz,
        "scan_range_ghz": config.scan_range_ghz,
        "scan_step_mhz": config.scan_step_mhz,
        "shot_noise": config.shot_noise,
        "rng_seed": config.rng_seed,
        "reference_thz": config.reference_thz,
        "brightness": config.brightness,
        "background": config.background,
        "isotopes": [m.mass_number for m, _ in config.isotope_table.entries],
    }
    return config, resolved


def _cmd_simulate(args: argparse.Namespace) -> int:
    config, resolved = _build_ensemble_config(args)
    outputs = [args.out]
    if args.emitters_out:
        outputs.append(args.emitters_out)
    if args.hist_out:
        outputs.append(args.hist_out)
    if args.svg:
        outputs.append(args.svg)
    manifest = RunManifest.create(
        "simulate", config=resolved, inputs=[args.config] if args.config else [],
        outputs=outputs, seed=config.rng_seed,
    )
    emitters, spectrum = simulate_scan(config)
    write_outputs(spectrum, "csv", args.out, manifest)
    if args.emitters_out:
        write_emitters_csv(emitters, args.emitters_out, manifest)
    if args.hist_out:
        half = config.scan_range_ghz / 2.0
        hist = build_histogram(
            [em.center_offset_ghz for em in emitters], args.hist_bin_width_ghz, (-half, half)
        )
        write_outputs(hist, "csv", args.hist_out, manifest)
    if args.svg:
        write_outputs(spectrum, "svg", args.svg, manifest)
    print(f"simulated {len(emitters)} emitters -> {args.out}")
    return 0


# ---------------------------------------------------------------------------
# fitting subcommands


def _parse_init(text: str, kind: str, peak_count: int, baseline: float | None) -> PeakModel:
    groups = [g for g in text.split(";") if g.strip()]
    if len(groups) != peak_count:
        raise CliError(f"--init needs {peak_count} 'center,fwhm,amplitude' groups separated by ';'")
    peaks = []
    for g in groups:
        cells = g.split(",")
        if len(cells) != 3:
            raise CliError(f"--init group {g!r} must be 'center,fwhm,amplitude'")
        try:
            c, w, a = (float(v) for v in cells)
        except ValueError:
            raise CliError(f"--init group {g!r} has a non-numeric value")
        peaks.append(PeakParams(c, w, a))
    return PeakModel(kind, peak_count, tuple(peaks), baseline)


def _run_fit(args: argparse.Namespace, data, default_kind: str, subcommand: str) -> int:
    kind = args.kind or default_kind
    baseline = 0.0 if args.baseline else None
    model = PeakModel(kind, args.peaks, baseline=baseline)
    initial = "auto"
    if args.init:
        initial = _parse_init(args.init, kind, args.peaks, baseline)
    try:
        result, fitted = fit_peaks(data, model, initial_guess=initial, max_iterations=args.max_iter)
    except PeakDetectionError as exc:
        raise CliError(f"peak detection failed: {exc}")
    manifest = RunManifest.create(
        subcommand,
        config={"kind": kind, "peaks": args.peaks, "baseline": args.baseline, "max_iter": args.max_iter},
        inputs=[args.infile],
        outputs=[args.out],
    )
    write_json(fit_report(result, fitted, manifest), args.out)
    if args.svg:
        x = data.frequency_offset_ghz if hasattr(data, "frequency_offset_ghz") else data.bin_centers_ghz
        overlay = peak_model_values(x, result.parameters, kind, baseline is not None)
        write_outputs(data, "svg", args.svg, manifest, fit_overlay=overlay)
    status = "converged" if result.converged else "did not converge"
    print(f"{subcommand}: {status} after {result.iterations} iterations -> {args.out}")
    if not result.converged:
        print(f"{subcommand}: partial results written to {args.out}", file=sys.stderr)
        return 2
    return 0


def _cmd_fit_ple(args: argparse.Namespace) -> int:
    return _run_fit(args, parse_scan_csv(args.infile), "lorentzian", "fit-ple")


def _cmd_fit_hist(args: argparse.Namespace) -> int:
    return _run_fit(args, parse_histogram_csv(args.infile), "gaussian", "fit-hist")


def _cmd_extract(args: argparse.Namespace) -> int:
    spectrum = parse_scan_csv(args.infile)
    peaks = extract_resonances(spectrum, args.threshold)
    manifest = RunManifest.create(
        "extract", config={"threshold": args.threshold}, inputs=[args.infile], outputs=[args.out]
    )
    if args.format == "csv":
        write_peaks_csv(peaks, args.out, manifest)
    else:
        payload = {
            "peaks": [
                {"center_ghz": c, "fwhm_mhz": w, "amplitude": a} for c, w, a in peaks
            ],
            "manifest": json.loads(manifest.to_json()),
        }
        write_json(payload, args.out)
    print(f"extract: {len(peaks)} resonance(s) -> {args.out}")
    return 0


# ---------------------------------------------------------------------------
# scalar subcommands


def _cmd_isotope_shift(args: argparse.Namespace) -> int:
    model = _resolve_model(args.model)
    shift = isotope_shift(model, args.from_mass, args.to_mass)
    print(f"isotope shift {args.from_mass} -> {args.to_mass}: {shift:+.4f} GHz")
    ratio = shift_ratio(118, 119, 120)
    print(f"three-isotope shift ratio (118->119)/(118->120): {ratio:.4f} (theory), 0.609 (measured)")
    return 0


def _cmd_vibfreq(args: argparse.Namespace) -> int:
    model = _resolve_model(args.model)
    mass = args.mass
    print(f"mode energies for mass {mass} (meV):")
    for state in ("ground", "excited"):
        a2u = vibration_energy(model.force_constant("a2u", state), mass)
        eu = vibration_energy(model.force_constant("eu", state), mass)
        total = zero_point_sum(model, mass, state)
        print(f"  {state:8s}  A2u {a2u:7.3f}   Eu {eu:7.3f}   A2u + 2*Eu {total:8.3f}")
    return 0


def _cmd_shift_curve(args: argparse.Namespace) -> int:
    masses = _parse_masses(args.masses)
    curve = unit_mass_shift_curve(masses, (args.calibration_mass, args.calibration_shift_ghz))
    if args.out:
        manifest = RunManifest.create(
            "shift-curve",
            config={
                "calibration_mass": args.calibration_mass,
                "calibration_shift_ghz": args.calibration_shift_ghz,
            },
            outputs=[args.out],
        )
        lines = [f"# manifest: {manifest.to_json()}", "mass_u,shift_ghz"]
        lines += [f"{repr(float(m))},{repr(float(s))}" for m, s in curve]
        Path(args.out).write_text("\n".join(lines) + "\n")
        print(f"shift-curve: {len(curve)} points -> {args.out}")
    else:
        for m, s in curve:
            print(f"{m:10.3f}  {s:10.4f} GHz")
    return 0


def _parse_masses(text: str) -> list[float]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        try:
            return [float(m) for m in range(int(lo), int(hi) + 1)]
        except ValueError:
            raise CliError(f"bad mass range {text!r}; expected 'lo:hi'")
    try:
        return [float(m) for m in text.split(",") if m.strip()]
    except ValueError:
        raise CliError(f"bad mass list {text!r}; expected comma-separated numbers")


def _cmd_overlap_prob(args: argparse.Namespace) -> int:
    analytic = coincidence_probability_analytic(
        args.inhom_fwhm_ghz, args.window_mhz, half_window=args.half_window
    )
    print(
        f"P(|f1-f2| <= {args.window_mhz:g} MHz) for {args.inhom_fwhm_ghz:g} GHz FWHM: "
        f"{analytic * 100:.3f}% (analytic)"
    )
    if args.mc_trials:
        seed = _resolve_seed(args.seed)
        estimate, stderr = coincidence_probability_mc(
            args.inhom_fwhm_ghz,
            args.window_mhz,
            trials=args.mc_trials,
            seed=seed,
            half_window=args.half_window,
        )
        print(
            f"Monte Carlo ({args.mc_trials} trials, seed {seed}): "
            f"{estimate * 100:.3f}% +/- {stderr * 100:.3f}%"
        )
    return 0


def _cmd_pairs(args: argparse.Namespace) -> int:
    peaks = parse_peaks_csv(args.infile)
    reports = find_identical_pairs([(c, w) for c, w, _ in peaks], args.max_detuning_mhz)
    manifest = RunManifest.create(
        "pairs", config={"max_detuning_mhz": args.max_detuning_mhz},
        inputs=[args.infile], outputs=[args.out],
    )
    write_outputs(reports, "json", args.out, manifest)
    print(f"pairs: {len(reports)} candidate pair(s) -> {args.out}")
    return 0


def _cmd_depth(args: argparse.Namespace) -> int:
    factor, actual = depth_correction(args.na, args.n_outside, args.n_inside, args.observed)
    print(f"correction factor (actual/observed): {factor:.3f}")
    print(f"actual depth: {actual:.3f} um")
    return 0


def _cmd_pl_spectrum(args: argparse.Namespace) -> int:
    levels = LevelStructure(
        zpl_center_thz=args.zpl_thz,
        gs_splitting_ghz=args.gs_ghz,
        es_splitting_ghz=args.es_ghz,
        lifetime_ns=args.lifetime_ns,
    )
    if args.window:
        try:
            lo, hi = (float(v) for v in args.window.split(":", 1))
        except ValueError:
            raise CliError(f"bad --window {args.window!r}; expected 'lo:hi' in GHz")
    else:
        lo = -levels.gs_splitting_ghz - 100.0
        hi = levels.es_splitting_ghz + 100.0
    if hi <= lo:
        raise CliError("--window upper bound must exceed lower bound")
    axis = np.arange(lo, hi + args.step_ghz / 2, args.step_ghz)
    spectrum = pl_spectrum(levels, args.temperature_k, args.line_fwhm_ghz, axis, args.branching)
    manifest = RunManifest.create(
        "pl-spectrum",
        config={
            "zpl_thz": args.zpl_thz,
            "gs_ghz": args.gs_ghz,
            "es_ghz": args.es_ghz,
            "temperature_k": args.temperature_k,
            "line_fwhm_ghz": args.line_fwhm_ghz,
            "branching": args.branching,
        },
        outputs=[args.out],
    )
    write_outputs(spectrum, args.format, args.out, manifest)
    print(f"pl-spectrum: {len(spectrum)} samples -> {args.out}")
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def _add_fit_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--in", dest="infile", required=True, help="input CSV file")
    p.add_argument("--peaks", type=int, required=True, help="number of peaks to fit")
    p.add_argument("--kind", choices=("lorentzian", "gaussian"), help="line shape (default depends on subcommand)")
    p.add_argument("--baseline", action="store_true", help="fit a constant baseline too")
    p.add_argument("--init", help="explicit start values 'c,w,a;c,w,a;...' (default: auto-detect)")
    p.add_argument("--max-iter", type=int, default=200, help="iteration budget (default 200)")
    p.add_argument("--out", required=True, help="JSON report path")
    p.add_argument("--svg", help="optional SVG overlay plot")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="groupiv-spectra", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)

    p = sub.add_parser("simulate", help="sample an emitter ensemble and synthesize a PLE scan")
    p.add_argument("--config", help="TOML config with an [ensemble] table")
    p.add_argument("--seed", type=int, help="RNG seed (overrides config and environment)")
    p.add_argument("--count", type=int, help="number of emitters")
    p.add_argument("--selectivity", type=float, help="fraction forced to the selected isotope")
    p.add_argument("--scan-range-ghz", dest="scan_range_ghz", type=float)
    p.add_argument("--scan-step-mhz", dest="scan_step_mhz", type=float)
    p.add_argument("--shot-noise", choices=("on", "off"), help="override shot noise")
    p.add_argument("--out", default="scan.csv", help="spectrum CSV output (default scan.csv)")
    p.add_argument("--emitters-out", help="optional emitter-list CSV output")
    p.add_argument("--hist-out", help="optional resonance-histogram CSV output")
    p.add_argument("--hist-bin-width-ghz", dest="hist_bin_width_ghz", type=float, default=1.0)
    p.add_argument("--svg", help="optional SVG plot of the scan")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("fit-ple", help="multi-Lorentzian fit of a PLE scan")
    _add_fit_flags(p)
    p.set_defaults(func=_cmd_fit_ple)

    p = sub.add_parser("fit-hist", help="multi-Gaussian fit of a resonance histogram")
    _add_fit_flags(p)
    p.set_defaults(func=_cmd_fit_hist)

    p = sub.add_parser("extract", help="detect and fit every resonance in a scan")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--threshold", type=float, required=True, help="detection threshold (counts)")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("isotope-shift", help="predicted ZPL shift between two isotopes")
    p.add_argument("--model", default="builtin:snv-table1", help="builtin:<name> or force-constant CSV")
    p.add_argument("--from", dest="from_mass", type=int, required=True, help="mass number n")
    p.add_argument("--to", dest="to_mass", type=int, required=True, help="mass number n*")
    p.set_defaults(func=_cmd_isotope_shift)

    p = sub.add_parser("vibfreq", help="mode energies and zero-point sums of a model")
    p.add_argument("--model", default="builtin:snv-table1")
    p.add_argument("--mass", type=int, default=119, help="impurity mass number (default 119)")
    p.set_defaults(func=_cmd_vibfreq)

    p = sub.add_parser("shift-curve", help="unit-mass-change shift curve through a calibration point")
    p.add_argument("--calibration-mass", dest="calibration_mass", type=float, required=True)
    p.add_argument("--calibration-shift-ghz", dest="calibration_shift_ghz", type=float, required=True)
    p.add_argument("--masses", required=True, help="'lo:hi' range or comma-separated masses")
    p.add_argument("--out", help="optional CSV output (default: print)")
    p.set_defaults(func=_cmd_shift_curve)

    p = sub.add_parser("overlap-prob", help="probability that two emitters coincide within a window")
    p.add_argument("--inhom-fwhm-ghz", dest="inhom_fwhm_ghz", type=float, required=True)
    p.add_argument("--window-mhz", dest="window_mhz", type=float, required=True)
    p.add_argument("--half-window", action="store_true", help="use half the window (alternative reading)")
    p.add_argument("--mc-trials", dest="mc_trials", type=int, help="also run a Monte Carlo check")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_overlap_prob)

    p = sub.add_parser("pairs", help="find spectrally identical emitter pairs in a peak list")
    p.add_argument("--in", dest="infile", required=True, help="peak-list CSV (extract output)")
    p.add_argument("--max-detuning-mhz", dest="max_detuning_mhz", type=float, required=True)
    p.add_argument("--out", required=True, help="JSON-lines output")
    p.set_defaults(func=_cmd_pairs)

    p = sub.add_parser("depth", help="confocal depth correction for index mismatch")
    p.add_argument("--na", type=float, required=True)
    p.add_argument("--n-outside", dest="n_outside", type=float, required=True)
    p.add_argument("--n-inside", dest="n_inside", type=float, required=True)
    p.add_argument("--observed", type=float, required=True, help="observed depth (um)")
    p.set_defaults(func=_cmd_depth)

    p = sub.add_parser("pl-spectrum", help="four-line PL spectrum of a level structure")
    p.add_argument("--zpl-thz", dest="zpl_thz", type=float, default=SNV_LEVELS.zpl_center_thz)
    p.add_argument("--gs-ghz", dest="gs_ghz", type=float, default=SNV_LEVELS.gs_splitting_ghz)
    p.add_argument("--es-ghz", dest="es_ghz", type=float, default=SNV_LEVELS.es_splitting_ghz)
    p.add_argument("--lifetime-ns", dest="lifetime_ns", type=float, default=SNV_LEVELS.lifetime_ns)
    p.add_argument("--temperature-k", dest="temperature_k", type=float, default=6.0)
    p.add_argument("--line-fwhm-ghz", dest="line_fwhm_ghz", type=float, default=5.0)
    p.add_argument("--branching", type=float, default=0.5)
    p.add_argument("--window", help="offset window 'lo:hi' in GHz (default covers all four lines)")
    p.add_argument("--step-ghz", dest="step_ghz", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.set_defaults(func=_cmd_pl_spectrum)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "subcommand", None):
            raise CliError(parser.format_usage() + "a subcommand is required")
        return args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (FileNotFoundError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
