"""Monte Carlo harness: intervals, sweeps, determinism, thresholds, PSD, export."""

import json
import math

import numpy as np
import pytest
from scipy.special import erfc

from ftnlab.berlab import (
    BerPoint,
    BerSweepResult,
    FEC_LIMIT_7PCT,
    FEC_LIMIT_20PCT,
    SweepSpec,
    bits_per_sample,
    estimate_psd,
    export_results,
    import_sweep,
    psd_edge,
    required_ebn0_at_ber,
    run_ber_sweep,
    wilson_interval,
)
from ftnlab.exceptions import ParameterError
from ftnlab.modem import ModemConfig, experiment_baseline
from ftnlab.transforms import TransformKind


def _small_config(**overrides):
    base = dict(n=64, cp_len=4, data_symbols_per_frame=16,
                training_symbols=0, sync_symbols=0)
    base.update(overrides)
    return ModemConfig(**base)


def _fast_spec(**overrides):
    base = dict(
        config=_small_config(),
        alphas=(0.9,),
        ebn0_dbs=(6.0,),
        iteration_counts=(10,),
        max_bits=100_000,
        min_errors=50,
        frames_per_batch=2,
        seed=0,
    )
    base.update(overrides)
    return SweepSpec(**base)


class TestWilsonInterval:
    def test_contains_point_estimate(self):
        lo, hi = wilson_interval(37, 10_000)
        assert lo < 37 / 10_000 < hi

    def test_zero_errors(self):
        lo, hi = wilson_interval(0, 1_000)
        assert lo == 0.0
        assert 0.0 < hi < 0.01

    def test_all_errors(self):
        lo, hi = wilson_interval(1_000, 1_000)
        assert hi == 1.0
        assert 0.99 < lo < 1.0

    def test_shrinks_with_sample_size(self):
        lo1, hi1 = wilson_interval(10, 1_000)
        lo2, hi2 = wilson_interval(100, 10_000)
        assert hi2 - lo2 < hi1 - lo1

    def test_zero_bits_rejected(self):
        with pytest.raises(ParameterError):
            wilson_interval(0, 0)

    def test_matches_closed_form(self):
        errors, bits, z = 25, 5_000, 1.959963984540054
        phat = errors / bits
        denom = 1 + z * z / bits
        center = (phat + z * z / (2 * bits)) / denom
        half = z / denom * math.sqrt(phat * (1 - phat) / bits + z * z / (4 * bits * bits))
        lo, hi = wilson_interval(errors, bits)
        assert lo == pytest.approx(center - half, rel=1e-12)
        assert hi == pytest.approx(center + half, rel=1e-12)


class TestFecConstants:
    def test_values(self):
        assert FEC_LIMIT_7PCT == 3.8e-3
        assert FEC_LIMIT_20PCT == 2.0e-2


class TestSweepSpec:
    def test_grid_order(self):
        spec = _fast_spec(
            kinds=(TransformKind.FRCT, TransformKind.FRHT),
            alphas=(1.0, 0.9),
            ebn0_dbs=(4.0, 6.0),
        )
        grid = spec.grid()
        assert len(grid) == 8
        assert grid[0] == (TransformKind.FRCT, 1.0, 10, 4.0)
        assert grid[1] == (TransformKind.FRCT, 1.0, 10, 6.0)
        assert grid[-1] == (TransformKind.FRHT, 0.9, 10, 6.0)

    def test_empty_axis_rejected(self):
        with pytest.raises(ParameterError, match="alphas"):
            _fast_spec(alphas=())

    def test_max_bits_floor(self):
        with pytest.raises(ParameterError, match="max_bits"):
            _fast_spec(max_bits=50_000)


class TestBitsPerSample:
    def test_no_overhead(self):
        cfg = _small_config(cp_len=0)
        assert bits_per_sample(cfg) == pytest.approx(1.0)

    def test_experiment_layout(self):
        cfg = experiment_baseline()
        expected = 1.0 * 256 * 128 / (272 * 139)
        assert bits_per_sample(cfg) == pytest.approx(expected, rel=1e-12)

    def test_overhead_only_reduces(self):
        assert bits_per_sample(_small_config(cp_len=8)) < bits_per_sample(
            _small_config(cp_len=0)
        )


class TestRunSweep:
    def test_point_fields_consistent(self):
        result = run_ber_sweep(_fast_spec())
        assert len(result.points) == 1
        p = result.points[0]
        assert p.kind is TransformKind.FRCT
        assert (p.alpha, p.iterations, p.ebn0_db) == (0.9, 10, 6.0)
        assert p.ber == p.errors / p.bits
        assert p.ci_lo <= p.ber <= p.ci_hi
        assert p.errors >= 50 or p.bits >= 100_000

    def test_deterministic_across_runs(self):
        a = run_ber_sweep(_fast_spec())
        b = run_ber_sweep(_fast_spec())
        assert a == b

    def test_worker_count_invariant(self):
        a = run_ber_sweep(_fast_spec(), workers=1)
        b = run_ber_sweep(_fast_spec(), workers=4)
        assert a == b

    def test_seed_changes_results(self):
        a = run_ber_sweep(_fast_spec(seed=0))
        b = run_ber_sweep(_fast_spec(seed=1))
        assert a != b

    def test_orthogonal_point_matches_qfunction(self):
        spec = _fast_spec(
            alphas=(1.0,), ebn0_dbs=(5.0,), max_bits=200_000, min_errors=200
        )
        p = run_ber_sweep(spec).points[0]
        gamma = 10 ** (5.0 / 10)
        theory = 0.5 * erfc(math.sqrt(2 * gamma) / math.sqrt(2))
        assert p.ber == pytest.approx(theory, rel=0.25)

    def test_compression_raises_ber(self):
        spec = _fast_spec(alphas=(1.0, 0.7), ebn0_dbs=(8.0,), min_errors=100)
        result = run_ber_sweep(spec)
        ortho = result.curve(TransformKind.FRCT, 1.0, 10)[0]
        tight = result.curve(TransformKind.FRCT, 0.7, 10)[0]
        assert tight.ber > ortho.ber

    def test_curves_grouping(self):
        spec = _fast_spec(alphas=(1.0, 0.9), ebn0_dbs=(4.0, 6.0))
        result = run_ber_sweep(spec)
        curves = result.curves()
        assert set(curves) == {
            (TransformKind.FRCT, 1.0, 10),
            (TransformKind.FRCT, 0.9, 10),
        }
        for curve in curves.values():
            assert [p.ebn0_db for p in curve] == [4.0, 6.0]


class TestRequiredEbn0:
    def _result(self, bers, ebn0s=None):
        ebn0s = ebn0s or list(range(len(bers)))
        points = tuple(
            BerPoint(
                kind=TransformKind.FRCT, alpha=0.9, ebn0_db=float(e), iterations=10,
                bits=1_000_000, errors=int(b * 1_000_000), ber=b,
                ci_lo=b, ci_hi=b,
            )
            for e, b in zip(ebn0s, bers)
        )
        return BerSweepResult(points=points)

    def test_interpolates_in_log_domain(self):
        result = self._result([1e-2, 1e-4], ebn0s=[4.0, 6.0])
        out = required_ebn0_at_ber(result, 1e-3)
        req = out[(TransformKind.FRCT, 0.9, 10)]
        assert req.status == "ok"
        assert req.ebn0_db == pytest.approx(5.0, abs=1e-9)

    def test_floor_detected(self):
        result = self._result([5e-2, 2e-2, 1.5e-2])
        req = required_ebn0_at_ber(result, 1e-3)[(TransformKind.FRCT, 0.9, 10)]
        assert req.status == "floor"
        assert math.isnan(req.ebn0_db)

    def test_all_below(self):
        result = self._result([1e-5, 1e-6])
        req = required_ebn0_at_ber(result, 1e-3)[(TransformKind.FRCT, 0.9, 10)]
        assert req.status == "all_below"

    def test_zero_error_point_handled(self):
        result = self._result([1e-2, 0.0], ebn0s=[4.0, 8.0])
        req = required_ebn0_at_ber(result, 1e-3)[(TransformKind.FRCT, 0.9, 10)]
        assert req.status == "ok"
        assert 4.0 < req.ebn0_db < 8.0

    def test_target_range_checked(self):
        result = self._result([1e-2, 1e-4])
        with pytest.raises(ParameterError):
            required_ebn0_at_ber(result, 0.0)


class TestPsd:
    def test_edge_tracks_compression(self):
        edges = {}
        for alpha in (1.0, 0.8):
            cfg = experiment_baseline(alpha=alpha, cp_len=0,
                                 data_symbols_per_frame=32,
                                 training_symbols=0, sync_symbols=0)
            est = estimate_psd(cfg, frames=8, seed=0)
            edges[alpha] = psd_edge(est)
        assert edges[1.0] == pytest.approx(5.0e9, abs=0.2e9)
        assert edges[0.8] == pytest.approx(4.0e9, abs=0.2e9)
        assert edges[0.8] / edges[1.0] == pytest.approx(0.8, abs=0.05)

    def test_peak_normalized(self):
        cfg = _small_config(cp_len=0)
        est = estimate_psd(cfg, frames=4, seed=1, segment=256)
        assert np.max(est.density_db) == pytest.approx(0.0, abs=1e-12)

    def test_deterministic(self):
        cfg = _small_config(cp_len=0)
        a = estimate_psd(cfg, frames=4, seed=2, segment=256)
        b = estimate_psd(cfg, frames=4, seed=2, segment=256)
        assert np.array_equal(a.density_db, b.density_db)

    def test_segment_validation(self):
        cfg = _small_config(cp_len=0)
        with pytest.raises(ParameterError):
            estimate_psd(cfg, frames=4, seed=0, segment=300)
        with pytest.raises(ParameterError):
            estimate_psd(cfg, frames=0, seed=0)

    def test_segment_longer_than_waveform(self):
        cfg = _small_config(cp_len=0)
        with pytest.raises(ParameterError, match="segment"):
            estimate_psd(cfg, frames=1, seed=0, segment=4096)

    def test_edge_threshold_unreachable(self):
        cfg = _small_config(cp_len=0)
        est = estimate_psd(cfg, frames=4, seed=0, segment=256)
        with pytest.raises(ParameterError):
            psd_edge(est, threshold_db=10.0)


class TestExportImport:
    @pytest.fixture()
    def result(self):
        return run_ber_sweep(_fast_spec())

    def test_csv_round_trip(self, tmp_path, result):
        path = tmp_path / "sweep.csv"
        export_results(result, path, format="csv")
        lines = path.read_text().splitlines()
        assert lines[0] == "kind,alpha,ebn0_db,iterations,bits,errors,ber,ci_lo,ci_hi"
        assert import_sweep(path, format="csv") == result

    def test_json_round_trip(self, tmp_path, result):
        path = tmp_path / "sweep.json"
        export_results(result, path, format="json")
        assert import_sweep(path, format="json") == result

    def test_json_matches_schema(self, tmp_path, result):
        jsonschema = pytest.importorskip("jsonschema")
        from importlib import resources

        path = tmp_path / "sweep.json"
        export_results(result, path, format="json")
        schema = json.loads(
            resources.files("ftnlab.schemas").joinpath("ber_sweep.schema.json").read_text()
        )
        jsonschema.validate(json.loads(path.read_text()), schema)

    def test_bad_format_rejected(self, tmp_path, result):
        with pytest.raises(ParameterError):
            export_results(result, tmp_path / "x", format="xml")
        with pytest.raises(ParameterError):
            import_sweep(tmp_path / "x", format="xml")

    def test_psd_export(self, tmp_path):
        cfg = _small_config(cp_len=0)
        est = estimate_psd(cfg, frames=4, seed=0, segment=256)
        csv_path = tmp_path / "psd.csv"
        export_results(est, csv_path, format="csv")
        assert csv_path.read_text().splitlines()[0] == "frequency_hz,density_db"
        json_path = tmp_path / "psd.json"
        export_results(est, json_path, format="json")
        payload = json.loads(json_path.read_text())
        assert payload["window"] == "hann"
        assert len(payload["frequency_hz"]) == len(est.frequency_hz)
