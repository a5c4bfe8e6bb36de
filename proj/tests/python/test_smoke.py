"""End-to-end smoke tests of the Python bindings.

The heavy numerical verification lives in the C++ unit and acceptance suites;
these tests check that the bound API is importable, returns the frozen
reference numbers, and raises the mapped exception types.
"""

import json
import math

import numpy as np
import pytest

import oamsim as om

QUTRIT = om.ModeSpectrum(1)


def test_reference_states_and_entanglement():
    source = om.make_reference_state(om.ReferenceState.Source)
    assert source.norm() == pytest.approx(1.0, abs=1e-12)
    assert source.amplitude(0, 0).real == pytest.approx(1 / 1.2287086717, abs=1e-9)

    report = om.schmidt_decompose(source)
    assert report.entropy_nats == pytest.approx(0.872568716796609, abs=1e-12)
    assert len(report.schmidt_coeffs) == 3

    maxent = om.max_entangled_state(QUTRIT)
    assert om.schmidt_decompose(maxent).entropy_nats == pytest.approx(
        math.log(3.0), abs=1e-12
    )


def test_numpy_round_trip():
    amplitudes = np.zeros((3, 3), dtype=complex)
    amplitudes[QUTRIT.index_of(0), QUTRIT.index_of(0)] = 1.0
    state = om.BipartitePureState(QUTRIT, amplitudes)
    assert state.norm() == pytest.approx(1.0, abs=1e-15)
    assert np.array_equal(state.amplitudes, amplitudes)

    with pytest.raises(om.ZeroNormError):
        om.normalize(om.BipartitePureState(QUTRIT, np.zeros((3, 3), dtype=complex)))


def test_plate_channel():
    source = om.make_reference_state(om.ReferenceState.Source)
    channel = om.LossChannel(QUTRIT, np.array([0.0151, 0.0325, 0.0182]))
    transmitted, success = om.apply_channel(source, channel)
    assert success == pytest.approx(0.027186929672622498, rel=1e-12)
    assert transmitted.amplitude(0, 0).real == pytest.approx(0.8897, abs=0.01)
    assert transmitted.amplitude(-1, +1).real == pytest.approx(0.3488, abs=0.01)
    assert transmitted.amplitude(+1, -1).real == pytest.approx(0.2954, abs=0.01)

    with pytest.raises(om.DimensionMismatchError):
        om.apply_channel(source, om.LossChannel(QUTRIT, np.array([0.5, 0.5])))


def test_displaced_projector():
    centered = om.displaced_projector(QUTRIT, fork_charge=-1)
    assert centered.amplitude(-1).real == pytest.approx(1.0, abs=1e-6)
    assert abs(centered.amplitude(0)) < 1e-6

    plus = om.displaced_projector(QUTRIT, fork_charge=1, displacement=0.7)
    minus = om.displaced_projector(QUTRIT, fork_charge=-1, displacement=0.7)
    # Mirror symmetry: flipping the fork charge swaps l and -l.
    for l in (-1, 0, 1):
        assert plus.amplitude(l).real == pytest.approx(minus.amplitude(-l).real, abs=1e-9)
    assert np.linalg.norm(plus.amplitudes) == pytest.approx(1.0, abs=1e-9)


def test_dip_scan_and_noise_calibration():
    source = om.make_reference_state(om.ReferenceState.Source)
    signal = om.displaced_projector(QUTRIT, fork_charge=1, displacement=0.5)

    dip = om.locate_dip(source, signal, -1, -2.0, 2.0)
    assert dip == pytest.approx(-0.4041682208, abs=1e-5)

    grid = np.sort(np.append(om.uniform_grid(-2.0, 2.0, 41), dip))
    curve = om.scan_expected(source, signal, -1, grid)
    assert om.visibility(curve) == pytest.approx(1.0, abs=1e-9)
    assert om.find_dip(curve) == pytest.approx(dip, abs=0.01)

    setup = om.ScanSetup(source, signal, -1, grid)
    eps = om.calibrate_noise(0.977, setup)
    assert 0.0 < eps < 0.1
    noisy = om.scan_expected(om.mix_with_white_noise(source, eps), signal, -1, grid)
    assert om.visibility(noisy) == pytest.approx(0.977, abs=1e-6)

    with pytest.raises(om.DomainError):
        om.calibrate_noise(1.5, setup)


def test_poisson_sampling_is_deterministic():
    curve = om.ScanCurve()
    curve.displacements = np.array([-1.0, 0.0, 1.0])
    curve.expected = np.array([0.0, 0.2, 0.4])
    run = om.RunConfig()
    run.rng_seed = 2026
    a = om.sample_counts(curve, run)
    b = om.sample_counts(curve, run)
    assert a.sampled == b.sampled
    assert a.sampled[0] == 0


def test_concentration_filter_and_baseline():
    source = om.make_reference_state(om.ReferenceState.Source)
    design = om.design_concentration_filter(source, 0.0325)
    assert design.yield_ == pytest.approx(0.015253844243156863, rel=1e-12)
    flat, success = om.apply_channel(source, design.as_channel())
    assert success == pytest.approx(design.yield_, rel=1e-12)
    assert om.schmidt_decompose(flat).entropy_nats == pytest.approx(
        math.log(3.0), abs=1e-9
    )

    assert om.bethe_baseline(200.0, 600.0, 702.0) == pytest.approx(
        1.3450389511e-2, rel=1e-9
    )
    with pytest.raises(om.DomainError):
        om.bethe_baseline(800.0, 600.0, 702.0)


def test_mode_matrix():
    matrix = om.mode_matrix(om.make_reference_state(om.ReferenceState.Transmitted))
    assert matrix.at(0, 0) == pytest.approx(0.7915, abs=5e-4)
    assert matrix.at(-1, +1) == pytest.approx(0.1216, abs=5e-4)
    assert matrix.at(+1, -1) == pytest.approx(0.0872, abs=5e-4)
    assert matrix.values.sum() == pytest.approx(1.0, abs=1e-10)
    assert matrix.at(1, 1) < 1e-12


def test_config_and_reproduction(tmp_path):
    canonical = om.canonical_config("{}")
    assert om.config_hash(canonical) == om.config_hash("{}")
    with pytest.raises(om.ConfigError):
        om.canonical_config('{"unknown_key": 1}')

    bundle = json.loads(om.reproduce_json('{"scan": {"n_points": 41}}'))
    assert bundle["bundle_schema_version"] == 1
    assert bundle["scans"]["source"]["visibility"] == pytest.approx(0.977, abs=1e-3)
    assert bundle["scans"]["transmitted"]["visibility"] == pytest.approx(0.976, abs=1e-3)
    assert bundle["scans"]["dip_shift"] != 0.0
    assert bundle["classical_baseline"]["bethe_fill_transmission"] == pytest.approx(
        0.0135, abs=2e-4
    )

    om.write_reproduction('{"scan": {"n_points": 41}}', tmp_path)
    for name in (
        "bundle.json",
        "mode_matrix_source.csv",
        "mode_matrix_transmitted.csv",
        "scan_source.csv",
        "scan_transmitted.csv",
    ):
        assert (tmp_path / name).is_file()
    header = (tmp_path / "scan_source.csv").read_text().splitlines()[0]
    assert header == "displacement,expected_prob,expected_rate,sampled_counts"
