#include "oam/channel.hpp"

#include <cmath>
#include <numbers>

namespace oam {

namespace {

constexpr double kNormTol = 1e-9;
constexpr double kMinFilterAmplitude = 1e-12;

void validate_channel(const LossChannel& channel) {
    if (channel.eta.size() != channel.spectrum.size()) {
        throw DimensionMismatchError("LossChannel: eta vector size " +
                                     std::to_string(channel.eta.size()) +
                                     " does not match basis size " +
                                     std::to_string(channel.spectrum.size()));
    }
    for (Eigen::Index i = 0; i < channel.eta.size(); ++i) {
        if (!(channel.eta(i) > 0.0 && channel.eta(i) <= 1.0)) {
            throw DomainError("LossChannel: transmission efficiencies must be in (0,1]");
        }
    }
}

// Diagonal Kraus amplitudes on the composite index k = m*d + n.
Eigen::VectorXd kraus_diagonal(const LossChannel& channel) {
    const int d = channel.spectrum.size();
    Eigen::VectorXd k(d * d);
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            const int acted = channel.acts_on == Photon::Idler ? n : m;
            k(m * d + n) = std::sqrt(channel.eta(acted));
        }
    }
    return k;
}

} // namespace

ChannelResult apply_channel(const BipartitePureState& state, const LossChannel& channel) {
    validate_channel(channel);
    if (state.spectrum() != channel.spectrum) {
        throw DimensionMismatchError("apply_channel: state and channel spectra disagree");
    }
    if (std::abs(state.norm() - 1.0) > kNormTol) {
        throw DomainError("apply_channel: input state must be normalized");
    }

    Eigen::MatrixXcd c = state.amplitudes();
    const Eigen::ArrayXd amp = channel.eta.array().sqrt();
    if (channel.acts_on == Photon::Idler) {
        c = c * amp.matrix().asDiagonal(); // scale columns (idler index)
    } else {
        c = amp.matrix().asDiagonal() * c; // scale rows (signal index)
    }

    const double success = c.squaredNorm();
    return {normalize(BipartitePureState(state.spectrum(), std::move(c))), success};
}

MixedChannelResult apply_channel_mixed(const DensityOperator& rho, const LossChannel& channel) {
    validate_channel(channel);
    if (rho.spectrum() != channel.spectrum) {
        throw DimensionMismatchError("apply_channel_mixed: state and channel spectra disagree");
    }

    const Eigen::VectorXd k = kraus_diagonal(channel);
    Eigen::MatrixXcd out = k.asDiagonal() * rho.matrix() * k.asDiagonal();
    const double success = out.real().trace();
    if (!(success > 0.0)) {
        throw ZeroNormError("apply_channel_mixed: transmitted state has zero weight");
    }
    out /= success;
    return {DensityOperator(rho.spectrum(), std::move(out)), success};
}

FilterDesign design_concentration_filter(const BipartitePureState& state, double eta_cap) {
    if (!(eta_cap > 0.0 && eta_cap <= 1.0)) {
        throw DomainError("design_concentration_filter: eta_cap must be in (0,1]");
    }
    const ModeSpectrum& spectrum = state.spectrum();
    const int l_max = spectrum.l_max();

    // A filter acting on one photon only rescales amplitudes mode-by-mode;
    // it can equalize the anti-diagonal but cannot remove weight elsewhere,
    // so any off-anti-diagonal support makes the target unreachable.
    double off_weight = 0.0;
    for (int m = -l_max; m <= l_max; ++m) {
        for (int n = -l_max; n <= l_max; ++n) {
            if (n != -m) {
                off_weight += std::norm(state.amplitude(m, n));
            }
        }
    }
    if (off_weight > 1e-18) {
        throw DomainError("design_concentration_filter: state has weight outside "
                          "the anti-diagonal |l,-l> subspace");
    }

    double min_abs2 = 1.0;
    for (int l = -l_max; l <= l_max; ++l) {
        const double a = std::abs(state.amplitude(l, -l));
        if (a < kMinFilterAmplitude) {
            throw DomainError("design_concentration_filter: anti-diagonal amplitude "
                              "for l=" + std::to_string(l) + " is below 1e-12");
        }
        min_abs2 = std::min(min_abs2, a * a);
    }

    // sqrt(eta[-l]) proportional to 1/|c[l,-l]|, scaled so the weakest mode
    // (largest boost) sits exactly at the cap.
    FilterDesign design;
    design.spectrum = spectrum;
    design.eta = Eigen::VectorXd::Zero(spectrum.size());
    for (int l = -l_max; l <= l_max; ++l) {
        const double a2 = std::norm(state.amplitude(l, -l));
        design.eta(spectrum.index_of(-l)) = eta_cap * min_abs2 / a2;
    }
    design.yield = spectrum.size() * eta_cap * min_abs2;
    return design;
}

double bethe_baseline(double hole_diameter, double period, double wavelength) {
    if (!(hole_diameter > 0.0) || !(period > 0.0) || !(wavelength > 0.0)) {
        throw DomainError("bethe_baseline: lengths must be positive");
    }
    if (hole_diameter >= wavelength) {
        throw DomainError("bethe_baseline: hole must be subwavelength");
    }
    const double a = 0.5 * hole_diameter;
    const double ka = 2.0 * std::numbers::pi * a / wavelength;
    const double per_hole = 64.0 / (27.0 * std::numbers::pi * std::numbers::pi) *
                            ka * ka * ka * ka;
    const double fill = std::numbers::pi * a * a / (period * period);
    return per_hole * fill;
}

} // namespace oam
