#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oam/errors.hpp"
#include "oam/hologram.hpp"
#include "oam/mode_spectrum.hpp"
#include "oam/states.hpp"

namespace oam {

/// Coincidence probabilities (or expected counts) for every pairing of a
/// signal-side and an idler-side mode detector. Rows index the signal mode
/// l1, columns the idler mode l2, in the spectrum's storage order.
struct CoincidenceMatrix {
    ModeSpectrum spectrum{1};
    Eigen::MatrixXd values;

    double at(int l_signal, int l_idler) const {
        return values(spectrum.index_of(l_signal), spectrum.index_of(l_idler));
    }
};

/// One horizontal scan of the idler-side hologram: coincidence expectation
/// versus hologram displacement, with the signal-side detector held fixed.
struct ScanCurve {
    /// Hologram displacements in beam-waist units.
    Eigen::VectorXd displacements;
    /// Coincidence probability at each displacement.
    Eigen::VectorXd expected;
    /// Simulated Poisson counts (empty until sample_counts fills it).
    std::vector<std::int64_t> sampled;
    /// Description of the fixed signal-side projector.
    std::string signal_label;
};

/// Count-rate and noise parameters for simulated runs.
struct RunConfig {
    double pair_rate = 2000.0;       ///< detected pairs per second, all modes
    double integration_time = 1.0;   ///< seconds per scan point
    std::uint64_t rng_seed = 12345;  ///< seed for reproducible sampling
    double epsilon_noise = 0.0;      ///< white-noise weight in [0,1]
};

/// Everything that defines a dip scan except the noise level: the ideal
/// (pre-noise) state, the fixed signal-side projector, the fork charge of
/// the scanned idler hologram, and the displacement grid.
struct ScanSetup {
    BipartitePureState state;
    DetectionProjector signal;
    int idler_fork = -1;
    Eigen::VectorXd displacements;
};

/// P = |(<a| (x) <b|) |psi>|^2: probability that the signal photon is found
/// in projector `signal` and the idler photon in projector `idler`.
double coincidence_prob(const BipartitePureState& state, const DetectionProjector& signal,
                        const DetectionProjector& idler);

/// <a (x) b| rho |a (x) b> / tr(rho) for mixed inputs.
double coincidence_prob(const DensityOperator& rho, const DetectionProjector& signal,
                        const DetectionProjector& idler);

/// Coincidence probabilities for all pure-mode detector pairings |l1>,|l2>.
/// For a pure input whose terms all satisfy l1 + l2 = 0, the off-anti-diagonal
/// entries vanish (orbital angular momentum conservation).
CoincidenceMatrix mode_matrix(const BipartitePureState& state);
CoincidenceMatrix mode_matrix(const DensityOperator& rho);

/// n_points equally spaced displacements covering [d_min, d_max].
/// Throws DomainError if n_points < 2 or d_min >= d_max.
Eigen::VectorXd uniform_grid(double d_min, double d_max, int n_points);

/// Expected coincidence probability at each displacement of the idler-side
/// hologram (fork charge idler_fork, first diffraction order), with the
/// signal-side projector fixed.
ScanCurve scan_expected(const BipartitePureState& state, const DetectionProjector& signal,
                        int idler_fork, const Eigen::VectorXd& displacements);
ScanCurve scan_expected(const DensityOperator& rho, const DetectionProjector& signal,
                        int idler_fork, const Eigen::VectorXd& displacements);

/// Uniform-grid dip scan over [d_min, d_max] with n_points >= 3 points.
ScanCurve scan_dip(const BipartitePureState& state, const DetectionProjector& signal,
                   int idler_fork, double d_min, double d_max, int n_points);
ScanCurve scan_dip(const DensityOperator& rho, const DetectionProjector& signal,
                   int idler_fork, double d_min, double d_max, int n_points);

/// Draws sampled[i] ~ Poisson(expected[i] * pair_rate * integration_time).
/// Deterministic for a fixed seed and independent of evaluation order: each
/// point derives its own stream from (rng_seed, point index). The expected
/// values are copied through unchanged.
ScanCurve sample_counts(const ScanCurve& curve, const RunConfig& cfg);

/// v = (C_max - C_min) / (C_max + C_min), computed from sampled counts when
/// present and from expected values otherwise. Throws DegenerateCurveError
/// on an empty or all-zero curve.
double visibility(const ScanCurve& curve);

/// Displacement of the curve's minimum, refined by three-point parabolic
/// interpolation around the discrete minimum (ties resolved toward smaller
/// |d|). Uses sampled counts when present, expected values otherwise.
/// Throws BoundaryMinimumError if the minimum sits on the scan edge and
/// DegenerateCurveError if the curve has fewer than three points.
double find_dip(const ScanCurve& curve);

/// Displacement minimizing the continuous coincidence probability on
/// [d_lo, d_hi], located by golden-section search (absolute tolerance ~1e-10).
/// The minimized function is coincidence_prob against the displaced idler
/// projector, exactly as in scan_expected.
double locate_dip(const BipartitePureState& state, const DetectionProjector& signal,
                  int idler_fork, double d_lo, double d_hi);

/// Smallest white-noise weight whose scan visibility equals target_v:
/// bisection on epsilon, where each candidate is evaluated by scanning
/// mix_with_white_noise(setup.state, epsilon) over setup.displacements.
/// Returns 0 for target_v = 1. Throws UnreachableTargetError if target_v
/// exceeds the ideal (epsilon = 0) visibility, DomainError if target_v is
/// outside (0, 1].
double calibrate_noise(double target_v, const ScanSetup& setup);

} // namespace oam
