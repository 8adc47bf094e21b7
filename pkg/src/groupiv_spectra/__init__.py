"""Spectroscopy modeling and analysis for group-IV color centers in diamond.

The toolkit covers the analysis chain around narrow-linewidth emitters:
isotope-dependent ZPL shift prediction from a quasi-local vibrational
model, level-structure and line-shape modeling, seeded emitter-ensemble
simulation, nonlinear least-squares spectral fitting, and
spectral-coincidence statistics.  A batch CLI (``groupiv-spectra``)
fronts the same operations.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .analysis import (
    PairReport,
    coincidence_probability_analytic,
    coincidence_probability_mc,
    depth_correction,
    find_identical_pairs,
    lorentzian_overlap,
)
from .ensemble import (
    Emitter,
    EnsembleConfig,
    build_histogram,
    sample_emitters,
    sample_isotopes,
    scan_axis,
    simulate_scan,
    snv_default_config,
    synthesize_ple_scan,
)
from .fitting import (
    FitResult,
    PeakDetectionError,
    PeakModel,
    PeakParams,
    detect_peaks,
    extract_resonances,
    fit_peaks,
    nlls_solve,
    peak_model_values,
)
from .levels import (
    SNV_LEVELS,
    LevelStructure,
    LineShapeSpec,
    evaluate_line,
    gaussian_profile,
    lorentzian_profile,
    pl_spectrum,
    thermal_population,
    transition_frequencies,
    transition_offsets,
)
from .spectra import HistogramData, Spectrum
from .units import (
    AtomicMass,
    EnergyQuantity,
    ForceConstant,
    convert_energy,
    force_constant_to_si,
    ftl_from_lifetime,
)
from .vibmodel import (
    SN_ISOTOPES,
    SNV_FORCE_CONSTANTS,
    SNV_MEASURED,
    IsotopeTable,
    VibrationalModel,
    isotope_shift,
    load_force_constants_csv,
    load_isotope_table_csv,
    resolve_mass,
    shift_ratio,
    unit_mass_shift_curve,
    vibration_energy,
    zero_point_sum,
)

__all__ = [
    "__version__",
    "AtomicMass",
    "EnergyQuantity",
    "ForceConstant",
    "convert_energy",
    "force_constant_to_si",
    "ftl_from_lifetime",
    "VibrationalModel",
    "IsotopeTable",
    "SN_ISOTOPES",
    "SNV_FORCE_CONSTANTS",
    "SNV_MEASURED",
    "resolve_mass",
    "vibration_energy",
    "zero_point_sum",
    "isotope_shift",
    "shift_ratio",
    "unit_mass_shift_curve",
    "load_force_constants_csv",
    "load_isotope_table_csv",
    "LevelStructure",
    "LineShapeSpec",
    "SNV_LEVELS",
    "transition_offsets",
    "transition_frequencies",
    "thermal_population",
    "pl_spectrum",
    "evaluate_line",
    "lorentzian_profile",
    "gaussian_profile",
    "Spectrum",
    "HistogramData",
    "Emitter",
    "EnsembleConfig",
    "snv_default_config",
    "sample_isotopes",
    "sample_emitters",
    "synthesize_ple_scan",
    "simulate_scan",
    "scan_axis",
    "build_histogram",
    "FitResult",
    "PeakModel",
    "PeakParams",
    "PeakDetectionError",
    "nlls_solve",
    "fit_peaks",
    "extract_resonances",
    "detect_peaks",
    "peak_model_values",
    "PairReport",
    "coincidence_probability_analytic",
    "coincidence_probability_mc",
    "find_identical_pairs",
    "lorentzian_overlap",
    "depth_correction",
]
