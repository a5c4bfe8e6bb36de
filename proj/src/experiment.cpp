#include "oam/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oam {

namespace {

void require_same_spectrum(const ModeSpectrum& a, const ModeSpectrum& b, const char* where) {
    if (a != b) {
        throw DimensionMismatchError(std::string(where) + ": spectra disagree");
    }
}

// The probability of the joint projection, clamped against roundoff spill
// just outside [0,1].
double clamp_prob(double p) { return std::clamp(p, 0.0, 1.0); }

// Composite product vector |a (x) b> on index k = m*d + n.
Eigen::VectorXcd product_vector(const DetectionProjector& signal,
                                const DetectionProjector& idler) {
    const Eigen::VectorXcd& a = signal.amplitudes();
    const Eigen::VectorXcd& b = idler.amplitudes();
    const Eigen::Index d = a.size();
    Eigen::VectorXcd v(d * d);
    for (Eigen::Index m = 0; m < d; ++m) {
        v.segment(m * d, d) = a(m) * b;
    }
    return v;
}

// --- deterministic counter-based sampling ---------------------------------
//
// Each scan point owns an independent RNG stream derived from (seed, index),
// so sampling is reproducible and independent of evaluation order. The
// generator is an explicit 64-bit mixer (splitmix64) rather than a stdlib
// engine/distribution pair because distribution implementations differ
// across standard libraries and would break cross-platform determinism.

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t& s) {
    return static_cast<double>(splitmix64(s) >> 11) * 0x1.0p-53;
}

// Product-of-uniforms Poisson sampler. Applied in chunks of lambda <= 60 so
// exp(-lambda) stays far from underflow; chunk sums are Poisson again by
// additivity.
std::int64_t poisson(double lambda, std::uint64_t& s) {
    std::int64_t total = 0;
    while (lambda > 0.0) {
        const double chunk = std::min(lambda, 60.0);
        lambda -= chunk;
        const double floor = std::exp(-chunk);
        std::int64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform01(s);
        } while (p > floor);
        total += k - 1;
    }
    return total;
}

// Values a curve is judged by: simulated counts when present, otherwise the
// noiseless expectation.
Eigen::VectorXd curve_values(const ScanCurve& curve) {
    if (!curve.sampled.empty()) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(curve.sampled.size()));
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            v(i) = static_cast<double>(curve.sampled[static_cast<std::size_t>(i)]);
        }
        return v;
    }
    return curve.expected;
}

} // namespace

double coincidence_prob(const BipartitePureState& state, const DetectionProjector& signal,
                        const DetectionProjector& idler) {
    require_same_spectrum(state.spectrum(), signal.spectrum(), "coincidence_prob");
    require_same_spectrum(state.spectrum(), idler.spectrum(), "coincidence_prob");
    const Complex amp = (signal.amplitudes().adjoint() * state.amplitudes() *
                         idler.amplitudes().conjugate())(0);
    return clamp_prob(std::norm(amp));
}

double coincidence_prob(const DensityOperator& rho, const DetectionProjector& signal,
                        const DetectionProjector& idler) {
    require_same_spectrum(rho.spectrum(), signal.spectrum(), "coincidence_prob");
    require_same_spectrum(rho.spectrum(), idler.spectrum(), "coincidence_prob");
    const double tr = rho.trace();
    if (!(tr > 0.0)) {
        throw ZeroNormError("coincidence_prob: density operator has nonpositive trace");
    }
    const Eigen::VectorXcd v = product_vector(signal, idler);
    const double p = (v.adjoint() * rho.matrix() * v)(0).real() / tr;
    return clamp_prob(p);
}

namespace {

template <typename StateLike>
CoincidenceMatrix mode_matrix_impl(const StateLike& state, const ModeSpectrum& spectrum) {
    CoincidenceMatrix out;
    out.spectrum = spectrum;
    out.values.resize(spectrum.size(), spectrum.size());
    for (int m = -spectrum.l_max(); m <= spectrum.l_max(); ++m) {
        const DetectionProjector ps = mode_projector(spectrum, m);
        for (int n = -spectrum.l_max(); n <= spectrum.l_max(); ++n) {
            const DetectionProjector pi = mode_projector(spectrum, n);
            out.values(spectrum.index_of(m), spectrum.index_of(n)) =
                coincidence_prob(state, ps, pi);
        }
    }
    return out;
}

} // namespace

CoincidenceMatrix mode_matrix(const BipartitePureState& state) {
    return mode_matrix_impl(state, state.spectrum());
}

CoincidenceMatrix mode_matrix(const DensityOperator& rho) {
    return mode_matrix_impl(rho, rho.spectrum());
}

Eigen::VectorXd uniform_grid(double d_min, double d_max, int n_points) {
    if (n_points < 2) {
        throw DomainError("uniform_grid: need at least 2 points");
    }
    if (!(d_min < d_max)) {
        throw DomainError("uniform_grid: d_min must be below d_max");
    }
    return Eigen::VectorXd::LinSpaced(n_points, d_min, d_max);
}

namespace {

template <typename StateLike>
ScanCurve scan_expected_impl(const StateLike& state, const DetectionProjector& signal,
                             int idler_fork, const Eigen::VectorXd& displacements) {
    if (displacements.size() == 0) {
        throw DomainError("scan_expected: empty displacement grid");
    }
    const ModeSpectrum& spectrum = signal.spectrum();
    ScanCurve curve;
    curve.displacements = displacements;
    curve.expected.resize(displacements.size());
    curve.signal_label = signal.label();
    for (Eigen::Index i = 0; i < displacements.size(); ++i) {
        const DetectionProjector idler = displaced_projector(
            spectrum, {.fork_charge = idler_fork, .diffraction_order = 1,
                       .displacement = displacements(i)});
        curve.expected(i) = coincidence_prob(state, signal, idler);
    }
    return curve;
}

} // namespace

ScanCurve scan_expected(const BipartitePureState& state, const DetectionProjector& signal,
                        int idler_fork, const Eigen::VectorXd& displacements) {
    return scan_expected_impl(state, signal, idler_fork, displacements);
}

ScanCurve scan_expected(const DensityOperator& rho, const DetectionProjector& signal,
                        int idler_fork, const Eigen::VectorXd& displacements) {
    return scan_expected_impl(rho, signal, idler_fork, displacements);
}

ScanCurve scan_dip(const BipartitePureState& state, const DetectionProjector& signal,
                   int idler_fork, double d_min, double d_max, int n_points) {
    if (n_points < 3) {
        throw DomainError("scan_dip: need at least 3 points");
    }
    return scan_expected(state, signal, idler_fork, uniform_grid(d_min, d_max, n_points));
}

ScanCurve scan_dip(const DensityOperator& rho, const DetectionProjector& signal,
                   int idler_fork, double d_min, double d_max, int n_points) {
    if (n_points < 3) {
        throw DomainError("scan_dip: need at least 3 points");
    }
    return scan_expected(rho, signal, idler_fork, uniform_grid(d_min, d_max, n_points));
}

ScanCurve sample_counts(const ScanCurve& curve, const RunConfig& cfg) {
    if (!(cfg.pair_rate > 0.0) || !(cfg.integration_time > 0.0)) {
        throw DomainError("sample_counts: pair_rate and integration_time must be positive");
    }
    ScanCurve out = curve;
    out.sampled.resize(static_cast<std::size_t>(curve.expected.size()));
    for (Eigen::Index i = 0; i < curve.expected.size(); ++i) {
        const double lambda = curve.expected(i) * cfg.pair_rate * cfg.integration_time;
        std::uint64_t stream = cfg.rng_seed ^
                               (0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(i) + 1));
        out.sampled[static_cast<std::size_t>(i)] = poisson(lambda, stream);
    }
    return out;
}

double visibility(const ScanCurve& curve) {
    const Eigen::VectorXd values = curve_values(curve);
    if (values.size() == 0) {
        throw DegenerateCurveError("visibility: empty curve");
    }
    const double hi = values.maxCoeff();
    const double lo = values.minCoeff();
    if (!(hi > 0.0)) {
        throw DegenerateCurveError("visibility: curve is identically zero");
    }
    return (hi - lo) / (hi + lo);
}

double find_dip(const ScanCurve& curve) {
    const Eigen::VectorXd values = curve_values(curve);
    const Eigen::Index n = values.size();
    if (n < 3 || curve.displacements.size() != n) {
        throw DegenerateCurveError("find_dip: need at least 3 consistent points");
    }
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
        const bool lower = values(i) < values(best);
        const bool tie_closer = values(i) == values(best) &&
                                std::abs(curve.displacements(i)) <
                                    std::abs(curve.displacements(best));
        if (lower || tie_closer) {
            best = i;
        }
    }
    if (best == 0 || best == n - 1) {
        throw BoundaryMinimumError("find_dip: minimum sits on the scan boundary");
    }
    const double x0 = curve.displacements(best - 1), y0 = values(best - 1);
    const double x1 = curve.displacements(best), y1 = values(best);
    const double x2 = curve.displacements(best + 1), y2 = values(best + 1);
    const double denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    if (denom == 0.0) {
        return x1;
    }
    const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) -
                       (x1 - x2) * (x1 - x2) * (y1 - y0);
    return x1 - 0.5 * num / denom;
}

double locate_dip(const BipartitePureState& state, const DetectionProjector& signal,
                  int idler_fork, double d_lo, double d_hi) {
    if (!(d_lo < d_hi)) {
        throw DomainError("locate_dip: need d_lo < d_hi");
    }
    const ModeSpectrum& spectrum = signal.spectrum();
    const auto prob_at = [&](double d) {
        const DetectionProjector idler = displaced_projector(
            spectrum,
            {.fork_charge = idler_fork, .diffraction_order = 1, .displacement = d});
        return coincidence_prob(state, signal, idler);
    };

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = d_lo, b = d_hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = prob_at(c), fd = prob_at(d);
    while (b - a > 1e-10) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = prob_at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = prob_at(d);
        }
    }
    return 0.5 * (a + b);
}

double calibrate_noise(double target_v, const ScanSetup& setup) {
    if (!(target_v > 0.0 && target_v <= 1.0)) {
        throw DomainError("calibrate_noise: target visibility must be in (0,1]");
    }
    if (setup.displacements.size() < 2) {
        throw DomainError("calibrate_noise: need at least 2 scan points");
    }

    // The idler projectors depend only on the grid, not on the noise level,
    // so build the composite projection vectors once and reuse them for
    // every bisection step.
    const ModeSpectrum& spectrum = setup.signal.spectrum();
    std::vector<Eigen::VectorXcd> proj_vecs;
    proj_vecs.reserve(static_cast<std::size_t>(setup.displacements.size()));
    for (Eigen::Index i = 0; i < setup.displacements.size(); ++i) {
        const DetectionProjector idler = displaced_projector(
            spectrum, {.fork_charge = setup.idler_fork, .diffraction_order = 1,
                       .displacement = setup.displacements(i)});
        proj_vecs.push_back(product_vector(setup.signal, idler));
    }

    const auto scan_visibility = [&](const Eigen::MatrixXcd& rho) {
        ScanCurve curve;
        curve.displacements = setup.displacements;
        curve.expected.resize(setup.displacements.size());
        for (std::size_t i = 0; i < proj_vecs.size(); ++i) {
            const Eigen::VectorXcd& v = proj_vecs[i];
            curve.expected(static_cast<Eigen::Index>(i)) =
                clamp_prob((v.adjoint() * rho * v)(0).real());
        }
        return visibility(curve);
    };
    const auto v_of = [&](double eps) {
        return scan_visibility(mix_with_white_noise(setup.state, eps).matrix());
    };

    const double v_ideal = v_of(0.0);
    if (target_v > v_ideal + 1e-12) {
        throw UnreachableTargetError("calibrate_noise: target visibility exceeds the "
                                     "ideal-scan visibility");
    }
    if (target_v >= v_ideal) {
        return 0.0;
    }

    double lo = 0.0, hi = 1.0; // v(lo) >= target_v > v(hi) = 0
    for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (v_of(mid) >= target_v) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace oam
