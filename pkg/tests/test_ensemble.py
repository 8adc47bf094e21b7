"""Emitter-population sampling, scan synthesis, histogramming."""

from __future__ import annotations

import numpy as np
import pytest

from groupiv_spectra.ensemble import (
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
from groupiv_spectra.units import AtomicMass
from groupiv_spectra.vibmodel import SN_ISOTOPES, IsotopeTable

FWHM_OVER_SIGMA = 2.3548200450309493


def config_with(**overrides) -> EnsembleConfig:
    base = dict(
        emitter_count=100,
        isotope_table=SN_ISOTOPES.restricted([117, 118, 119, 120, 122]),
        selected_mass_number=120,
        selectivity=0.5,
        group_offsets_ghz={120: 0.0, 119: 10.9, 118: 17.9, 117: 25.0, 122: -4.7},
        group_inhom_fwhm_ghz={120: 3.9, 119: 3.9, 118: 3.9, 117: 3.9, 122: 3.9},
        homogeneous_fwhm_mhz=32.0,
        scan_range_ghz=47.0,
        scan_step_mhz=5.0,
        shot_noise=False,
        rng_seed=1,
    )
    base.update(overrides)
    return EnsembleConfig(**base)


class TestSampleIsotopes:
    def test_full_selectivity_forces_selected_isotope(self):
        cfg = config_with(selectivity=1.0, emitter_count=500)
        masses = sample_isotopes(cfg)
        assert all(m.mass_number == 120 for m in masses)

    def test_abundance_driven_fraction(self):
        cfg = config_with(selectivity=0.0, emitter_count=10_000, rng_seed=2)
        masses = sample_isotopes(cfg)
        fraction = sum(m.mass_number == 120 for m in masses) / len(masses)
        expected = 0.326 / 0.777
        se = np.sqrt(expected * (1 - expected) / len(masses))
        assert abs(fraction - expected) < 3 * se

    def test_partial_selectivity_expected_fraction(self):
        cfg = config_with(selectivity=0.5, emitter_count=20_000, rng_seed=3)
        masses = sample_isotopes(cfg)
        fraction = sum(m.mass_number == 120 for m in masses) / len(masses)
        expected = 0.5 + 0.5 * (0.326 / 0.777)
        se = np.sqrt(expected * (1 - expected) / len(masses))
        assert abs(fraction - expected) < 3 * se

    def test_deterministic(self):
        cfg = config_with(rng_seed=11)
        a = [m.mass_number for m in sample_isotopes(cfg)]
        b = [m.mass_number for m in sample_isotopes(cfg)]
        assert a == b

    def test_empty_table_rejected(self):
        with pytest.raises(ValueError):
            config_with(isotope_table=IsotopeTable("Sn", ()), selected_mass_number=120)

    def test_all_zero_abundances_rejected(self):
        table = IsotopeTable("Sn", ((AtomicMass(120, 119.902), 0.0),))
        cfg = config_with(isotope_table=table, group_offsets_ghz={120: 0.0},
                          group_inhom_fwhm_ghz={120: 3.9})
        with pytest.raises(ValueError):
            sample_isotopes(cfg)


class TestSampleEmitters:
    def test_degenerate_width_pins_offsets(self):
        cfg = config_with(
            selectivity=1.0,
            group_inhom_fwhm_ghz={120: 0.0, 119: 3.9, 118: 3.9, 117: 3.9, 122: 3.9},
        )
        emitters = sample_emitters(cfg)
        assert all(em.center_offset_ghz == 0.0 for em in emitters)

    def test_group_statistics(self):
        cfg = config_with(selectivity=0.0, emitter_count=10_000, rng_seed=5)
        emitters = sample_emitters(cfg)
        group_119 = [em.center_offset_ghz for em in emitters if em.isotope.mass_number == 119]
        n = len(group_119)
        sigma = 3.9 / FWHM_OVER_SIGMA
        assert abs(np.mean(group_119) - 10.9) < 3 * sigma / np.sqrt(n)
        group_120 = [em.center_offset_ghz for em in emitters if em.isotope.mass_number == 120]
        fwhm_est = np.std(group_120, ddof=1) * FWHM_OVER_SIGMA
        assert abs(fwhm_est - 3.9) < 3 * 3.9 / np.sqrt(2 * len(group_120))

    def test_homogeneous_width_copied_from_config(self):
        emitters = sample_emitters(config_with(emitter_count=10))
        assert all(em.homogeneous_fwhm_mhz == 32.0 for em in emitters)

    def test_missing_group_parameters_rejected(self):
        cfg = config_with(group_offsets_ghz={120: 0.0}, selectivity=0.0)
        with pytest.raises(KeyError):
            sample_emitters(cfg)

    def test_positions_default_to_origin(self):
        emitters = sample_emitters(config_with(emitter_count=4))
        assert all(em.position_um == (0.0, 0.0, 0.0) for em in emitters)

    def test_positions_inside_box(self):
        cfg = config_with(emitter_count=200, position_box_um=(20.0, 20.0, 1.0))
        emitters = sample_emitters(cfg)
        xs = np.array([em.position_um for em in emitters])
        assert np.all(xs >= 0.0)
        assert np.all(xs <= np.array([20.0, 20.0, 1.0]))

    def test_deterministic(self):
        cfg = config_with(rng_seed=21)
        a = sample_emitters(cfg)
        b = sample_emitters(cfg)
        assert [e.center_offset_ghz for e in a] == [e.center_offset_ghz for e in b]


class TestSynthesizeScan:
    def test_single_emitter_peak_height(self):
        em = Emitter(SN_ISOTOPES.mass(120), 0.0, 32.0, brightness=250.0)
        spectrum = synthesize_ple_scan([em], 484.130, 2.0, 5.0)
        assert spectrum.counts.max() == pytest.approx(250.0, rel=1e-12)
        assert spectrum.frequency_offset_ghz[np.argmax(spectrum.counts)] == 0.0

    def test_linear_in_brightness(self):
        ems = [
            Emitter(SN_ISOTOPES.mass(120), -0.2, 32.0, brightness=100.0),
            Emitter(SN_ISOTOPES.mass(119), 0.3, 33.0, brightness=50.0),
        ]
        doubled = [
            Emitter(e.isotope, e.center_offset_ghz, e.homogeneous_fwhm_mhz, 2 * e.brightness)
            for e in ems
        ]
        a = synthesize_ple_scan(ems, 484.130, 2.0, 5.0)
        b = synthesize_ple_scan(doubled, 484.130, 2.0, 5.0)
        assert np.allclose(b.counts, 2 * a.counts, rtol=1e-12)

    def test_permutation_invariant(self):
        ems = [
            Emitter(SN_ISOTOPES.mass(120), -0.2, 32.0, brightness=100.0),
            Emitter(SN_ISOTOPES.mass(119), 0.3, 33.0, brightness=50.0),
        ]
        a = synthesize_ple_scan(ems, 484.130, 2.0, 5.0)
        b = synthesize_ple_scan(ems[::-1], 484.130, 2.0, 5.0)
        assert np.array_equal(a.counts, b.counts)

    def test_empty_emitter_list_gives_background(self):
        spectrum = synthesize_ple_scan([], 484.130, 1.0, 5.0, background=3.5)
        assert np.all(spectrum.counts == 3.5)

    def test_three_resolved_peaks(self):
        ems = [
            Emitter(SN_ISOTOPES.mass(120), -0.4, 32.0, brightness=100.0),
            Emitter(SN_ISOTOPES.mass(120), 0.0, 33.0, brightness=100.0),
            Emitter(SN_ISOTOPES.mass(120), 0.4, 32.0, brightness=100.0),
        ]
        spectrum = synthesize_ple_scan(ems, 484.130, 1.4, 2.0)
        y = spectrum.counts
        interior = (y[1:-1] > y[:-2]) & (y[1:-1] >= y[2:]) & (y[1:-1] > 50.0)
        assert int(interior.sum()) == 3

    def test_shot_noise_deterministic_and_unbiased(self):
        em = Emitter(SN_ISOTOPES.mass(120), 0.0, 100.0, brightness=80.0)
        a = synthesize_ple_scan([em], 484.130, 0.5, 25.0, shot_noise=True, seed=3)
        b = synthesize_ple_scan([em], 484.130, 0.5, 25.0, shot_noise=True, seed=3)
        assert np.array_equal(a.counts, b.counts)
        clean = synthesize_ple_scan([em], 484.130, 0.5, 25.0)
        trials = np.stack(
            [
                synthesize_ple_scan([em], 484.130, 0.5, 25.0, shot_noise=True, seed=s).counts
                for s in range(300)
            ]
        )
        mean = trials.mean(axis=0)
        se = np.sqrt(np.maximum(clean.counts, 1e-9) / trials.shape[0])
        assert np.all(np.abs(mean - clean.counts) < 4 * se)

    def test_simulate_scan_matches_pieces(self):
        cfg = config_with(shot_noise=False, rng_seed=8)
        emitters, spectrum = simulate_scan(cfg)
        again = synthesize_ple_scan(
            sample_emitters(cfg), cfg.reference_thz, cfg.scan_range_ghz, cfg.scan_step_mhz
        )
        assert np.array_equal(spectrum.counts, again.counts)

    def test_scan_axis_symmetric(self):
        axis = scan_axis(2.0, 5.0)
        assert axis[0] == -axis[-1]
        assert np.allclose(np.diff(axis), 0.005)


class TestBuildHistogram:
    def test_empty_input(self):
        hist = build_histogram([], 1.0, (0.0, 5.0))
        assert hist.total == 0
        assert hist.counts.size == 5

    def test_single_center(self):
        hist = build_histogram([2.5], 1.0, (0.0, 5.0))
        assert list(hist.counts) == [0, 0, 1, 0, 0]

    def test_boundary_goes_to_upper_bin(self):
        hist = build_histogram([2.0], 1.0, (0.0, 5.0))
        assert list(hist.counts) == [0, 0, 1, 0, 0]

    def test_final_edge_is_out_of_range(self):
        hist = build_histogram([5.0], 1.0, (0.0, 5.0))
        assert hist.total == 0

    def test_population_conservation(self):
        cfg = snv_default_config(seed=4, emitter_count=160)
        emitters = sample_emitters(cfg)
        centers = [em.center_offset_ghz for em in emitters]
        lo, hi = -60.0, 80.0
        hist = build_histogram(centers, 1.0, (lo, hi))
        in_range = sum(lo <= c < hist.bin_edges_ghz[-1] for c in centers)
        assert hist.total == in_range == 160

    def test_non_positive_bin_width_rejected(self):
        with pytest.raises(ValueError):
            build_histogram([1.0], 0.0, (0.0, 5.0))


class TestValidation:
    def test_selectivity_range(self):
        with pytest.raises(ValueError):
            config_with(selectivity=1.5)

    def test_scan_parameters(self):
        with pytest.raises(ValueError):
            config_with(scan_step_mhz=0.0)
        with pytest.raises(ValueError):
            config_with(scan_range_ghz=-1.0)

    def test_emitter_validation(self):
        with pytest.raises(ValueError):
            Emitter(SN_ISOTOPES.mass(120), 0.0, 0.0)
        with pytest.raises(ValueError):
            Emitter(SN_ISOTOPES.mass(120), 0.0, 32.0, brightness=-1.0)

    def test_selected_isotope_must_be_in_table(self):
        with pytest.raises(ValueError):
            config_with(selected_mass_number=121)
