"""File formats: round trips, fixed points, error reporting, SVG validity."""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from groupiv_spectra.analysis import find_identical_pairs
from groupiv_spectra.dataio import (
    RunManifest,
    fit_report,
    parse_emitters_csv,
    parse_histogram_csv,
    parse_peaks_csv,
    parse_scan_csv,
    write_emitters_csv,
    write_histogram_csv,
    write_outputs,
    write_pair_reports_jsonl,
    write_peaks_csv,
    write_spectrum_csv,
)
from groupiv_spectra.ensemble import Emitter
from groupiv_spectra.fitting import PeakModel, fit_peaks, peak_model_values
from groupiv_spectra.spectra import HistogramData, Spectrum
from groupiv_spectra.svgplot import histogram_svg, spectrum_svg
from groupiv_spectra.vibmodel import SN_ISOTOPES


def payload_lines(path):
    return [l for l in path.read_text().splitlines() if not l.startswith("#")]


class TestSpectrumCsv:
    def test_write_parse_write_fixed_point(self, tmp_path):
        spectrum = Spectrum(
            np.array([-0.4, 0.0, 0.123456789012345]),
            np.array([1.5, 100.0, 3.7e-2]),
            reference_thz=484.130,
        )
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_spectrum_csv(spectrum, p1)
        parsed = parse_scan_csv(p1)
        write_spectrum_csv(parsed, p2)
        assert p1.read_bytes() == p2.read_bytes()
        assert parsed.reference_thz == 484.130
        assert np.array_equal(parsed.frequency_offset_ghz, spectrum.frequency_offset_ghz)
        assert np.array_equal(parsed.counts, spectrum.counts)

    def test_header_only_file_is_empty_spectrum(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("frequency_offset_ghz,counts\n")
        spectrum = parse_scan_csv(path)
        assert len(spectrum) == 0
        assert spectrum.reference_thz is None

    def test_malformed_row_names_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("frequency_offset_ghz,counts\nabc,1\n")
        with pytest.raises(ValueError, match="line 2"):
            parse_scan_csv(path)

    def test_missing_header_rejected(self, tmp_path):
        path = tmp_path / "noheader.csv"
        path.write_text("0.0,1.0\n")
        with pytest.raises(ValueError, match="header"):
            parse_scan_csv(path)

    def test_unsorted_axis_rejected(self, tmp_path):
        path = tmp_path / "unsorted.csv"
        path.write_text("frequency_offset_ghz,counts\n1.0,1\n0.0,2\n")
        with pytest.raises(ValueError, match="ascending"):
            parse_scan_csv(path)

    def test_wrong_column_count_names_line(self, tmp_path):
        path = tmp_path / "cols.csv"
        path.write_text("frequency_offset_ghz,counts\n0.0,1.0\n1.0,2.0,3.0\n")
        with pytest.raises(ValueError, match="line 3"):
            parse_scan_csv(path)

    def test_manifest_comment_written(self, tmp_path):
        manifest = RunManifest.create("simulate", seed=5)
        path = tmp_path / "m.csv"
        write_spectrum_csv(Spectrum(np.array([0.0]), np.array([1.0])), path, manifest)
        first = path.read_text().splitlines()[0]
        assert first.startswith("# manifest: ")
        assert json.loads(first.split(": ", 1)[1])["seed"] == 5


class TestHistogramCsv:
    def test_round_trip(self, tmp_path):
        hist = HistogramData(np.array([-1.0, 0.0, 1.0, 2.0]), np.array([3, 0, 7]))
        path = tmp_path / "h.csv"
        write_histogram_csv(hist, path)
        parsed = parse_histogram_csv(path)
        assert np.array_equal(parsed.bin_edges_ghz, hist.bin_edges_ghz)
        assert np.array_equal(parsed.counts, hist.counts)

    def test_non_contiguous_bins_rejected(self, tmp_path):
        path = tmp_path / "h.csv"
        path.write_text("bin_left_ghz,bin_right_ghz,count\n0.0,1.0,2\n1.5,2.0,3\n")
        with pytest.raises(ValueError, match="contiguous"):
            parse_histogram_csv(path)


class TestEmittersCsv:
    def test_round_trip(self, tmp_path):
        emitters = [
            Emitter(SN_ISOTOPES.mass(120), -0.25, 32.0, 100.0, (1.0, 2.0, 3.0)),
            Emitter(SN_ISOTOPES.mass(119), 10.9, 33.0, 80.0, (0.0, 0.0, 0.0)),
        ]
        path = tmp_path / "e.csv"
        write_emitters_csv(emitters, path)
        parsed = parse_emitters_csv(path)
        assert len(parsed) == 2
        assert parsed[0].isotope.mass_number == 120
        assert parsed[0].center_offset_ghz == -0.25
        assert parsed[0].position_um == (1.0, 2.0, 3.0)
        assert parsed[1].isotope.atomic_mass_u == SN_ISOTOPES.mass(119).atomic_mass_u


class TestPeaksCsv:
    def test_round_trip(self, tmp_path):
        peaks = [(-0.4, 32.0, 100.0), (0.0, 33.0, 110.0)]
        path = tmp_path / "p.csv"
        write_peaks_csv(peaks, path)
        assert parse_peaks_csv(path) == peaks


class TestFitReport:
    def _fit(self):
        x = np.arange(-0.5, 0.5001, 0.002)
        y = peak_model_values(x, np.array([0.0, 0.032, 100.0]), "lorentzian", False)
        return fit_peaks(Spectrum(x, y), PeakModel("lorentzian", 1))

    def test_report_contains_converged_and_units(self, tmp_path):
        result, fitted = self._fit()
        manifest = RunManifest.create("fit-ple")
        report = fit_report(result, fitted, manifest)
        assert report["converged"] is True
        assert report["model"]["peaks"][0]["fwhm_mhz"] == pytest.approx(32.0, rel=1e-6)
        assert report["model"]["peaks"][0]["fwhm_ghz"] == pytest.approx(0.032, rel=1e-6)
        assert "manifest" in report
        path = tmp_path / "r.json"
        write_outputs((result, fitted), "json", path)
        loaded = json.loads(path.read_text())
        assert "converged" in loaded


class TestPairReportsJsonl:
    def test_one_object_per_line_with_sidecar(self, tmp_path):
        reports = find_identical_pairs([(0.0, 35.0), (0.004, 38.0)], 30.0)
        path = tmp_path / "pairs.jsonl"
        write_pair_reports_jsonl(reports, path, RunManifest.create("pairs"))
        lines = path.read_text().splitlines()
        assert len(lines) == 1
        record = json.loads(lines[0])
        assert record["detuning_mhz"] == pytest.approx(4.0)
        sidecar = tmp_path / "pairs.jsonl.manifest.json"
        assert sidecar.exists()
        assert json.loads(sidecar.read_text())["subcommand"] == "pairs"


class TestSvg:
    def test_spectrum_svg_well_formed(self):
        x = np.linspace(-1, 1, 200)
        y = 100.0 / (1 + (x / 0.05) ** 2)
        text = spectrum_svg(Spectrum(x, y), fit_counts=y, title="scan", comment="made by test")
        root = ET.fromstring(text)
        assert root.tag.endswith("svg")
        assert "frequency offset (GHz)" in text
        assert "counts" in text

    def test_histogram_svg_well_formed(self):
        hist = HistogramData(np.arange(-5.0, 6.0, 1.0), np.arange(10))
        text = histogram_svg(hist, title="resonances")
        root = ET.fromstring(text)
        assert root.tag.endswith("svg")

    def test_empty_spectrum_svg(self):
        text = spectrum_svg(Spectrum(np.array([]), np.array([])))
        ET.fromstring(text)

    def test_write_outputs_svg(self, tmp_path):
        x = np.linspace(-1, 1, 50)
        spectrum = Spectrum(x, np.ones(50))
        path = tmp_path / "s.svg"
        write_outputs(spectrum, "svg", path, RunManifest.create("simulate"))
        ET.fromstring(path.read_text())


class TestWriteOutputsDispatch:
    def test_unknown_type_rejected(self, tmp_path):
        with pytest.raises(TypeError):
            write_outputs(object(), "csv", tmp_path / "x.csv")

    def test_wrong_format_rejected(self, tmp_path):
        spectrum = Spectrum(np.array([0.0]), np.array([1.0]))
        with pytest.raises(ValueError):
            write_outputs(spectrum, "json", tmp_path / "x.json")
