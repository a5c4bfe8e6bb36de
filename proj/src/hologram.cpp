#include "oam/hologram.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace oam {

namespace {

constexpr double kPi = std::numbers::pi;

struct GaussLegendre {
    std::vector<double> nodes;   // on [0, 1]
    std::vector<double> weights; // summing to 1
};

// Nodes/weights by Newton iteration on the Legendre polynomial, mapped to [0,1].
GaussLegendre gauss_legendre_unit(int n) {
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                break;
            }
        }
        rule.nodes[i] = 0.5 * (1.0 + x);
        rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

// Quadrature resolution for the displaced-vortex overlap integrals. The
// azimuthal trapezoid rule is spectrally accurate for these smooth periodic
// integrands; the radial direction uses composite Gauss-Legendre panels no
// wider than half a beam waist.
constexpr int kThetaSamples = 256;
constexpr int kRadialNodesPerPanel = 12;
constexpr double kRadialPanelWidth = 0.5;
constexpr double kGaussianSupportRadii = 8.0;

} // namespace

ShiftResult hologram_shift(const Eigen::VectorXcd& amplitudes,
                           const ModeSpectrum& spectrum, const HologramSpec& holo) {
    if (amplitudes.size() != spectrum.size()) {
        throw DimensionMismatchError("hologram_shift: amplitude vector size " +
                                     std::to_string(amplitudes.size()) +
                                     " does not match basis size " +
                                     std::to_string(spectrum.size()));
    }
    if (holo.diffraction_order < -1 || holo.diffraction_order > 1) {
        throw DomainError("hologram_shift: diffraction order must be 0 or +-1");
    }
    if (!(holo.efficiency > 0.0 && holo.efficiency <= 1.0)) {
        throw DomainError("hologram_shift: efficiency must be in (0,1]");
    }
    const int shift = holo.diffraction_order * holo.fork_charge;
    const double amp_scale = std::sqrt(holo.efficiency);

    ShiftResult result;
    result.amplitudes = Eigen::VectorXcd::Zero(spectrum.size());
    for (int l = -spectrum.l_max(); l <= spectrum.l_max(); ++l) {
        const Complex a = amplitudes(spectrum.index_of(l)) * amp_scale;
        const int l_out = l + shift;
        if (spectrum.contains(l_out)) {
            result.amplitudes(spectrum.index_of(l_out)) = a;
        } else {
            result.leakage += std::norm(a);
        }
    }
    return result;
}

DetectionProjector::DetectionProjector(ModeSpectrum spectrum, Eigen::VectorXcd amplitudes,
                                       std::string label)
    : spectrum_(spectrum), amplitudes_(std::move(amplitudes)), label_(std::move(label)) {
    if (amplitudes_.size() != spectrum_.size()) {
        throw DimensionMismatchError("DetectionProjector: amplitude vector size " +
                                     std::to_string(amplitudes_.size()) +
                                     " does not match basis size " +
                                     std::to_string(spectrum_.size()));
    }
    if (!amplitudes_.allFinite()) {
        throw DomainError("DetectionProjector: non-finite amplitude");
    }
    const double n = amplitudes_.norm();
    if (!(n > 1e-300)) {
        throw ZeroNormError("DetectionProjector: zero amplitude vector");
    }
    amplitudes_ /= n;
}

DetectionProjector displaced_projector(const ModeSpectrum& spectrum,
                                       const HologramSpec& holo,
                                       double fiber_waist_ratio) {
    if (holo.fork_charge != 1 && holo.fork_charge != -1) {
        throw DomainError("displaced_projector: fork charge must be +-1");
    }
    if (holo.diffraction_order != 1 && holo.diffraction_order != -1) {
        throw DomainError("displaced_projector: diffraction order must be +-1");
    }
    if (!(fiber_waist_ratio > 0.0)) {
        throw DomainError("displaced_projector: fiber waist ratio must be positive");
    }

    const int vortex_charge = holo.diffraction_order * holo.fork_charge;
    const double d = holo.displacement;
    const double wf = fiber_waist_ratio;
    const int l_max = spectrum.l_max();

    // a[l] = <LG_l | V>,  V(x,y) = G_wf(x,y) exp(i c atan2(y, x - d)).
    // Polar coordinates around the vortex center (d, 0) make the integrand
    // smooth: the phase factor reduces to exp(i c theta) and the rest is an
    // entire Gaussian-polynomial function.
    const double gauss_coeff = 1.0 + 1.0 / (wf * wf);
    const double fiber_norm = std::sqrt(2.0 / kPi) / wf;
    const double radius = std::abs(d) + kGaussianSupportRadii * std::max(1.0, wf);
    const int panels = std::max(1, int(std::ceil(radius / kRadialPanelWidth)));
    static const GaussLegendre rule = gauss_legendre_unit(kRadialNodesPerPanel);

    std::vector<double> mode_norm(l_max + 1);
    double fact = 1.0;
    for (int l = 0; l <= l_max; ++l) {
        if (l >= 2) {
            fact *= l;
        }
        mode_norm[l] = std::sqrt(2.0 / (kPi * fact));
    }

    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(spectrum.size());
    const double theta_weight = 2.0 * kPi / kThetaSamples;
    for (int j = 0; j < kThetaSamples; ++j) {
        const double theta = theta_weight * j;
        const double ct = std::cos(theta);
        const double st = std::sin(theta);
        const Complex phase = std::polar(1.0, vortex_charge * theta);
        for (int p = 0; p < panels; ++p) {
            const double lo = radius * p / panels;
            const double width = radius / panels;
            for (int k = 0; k < kRadialNodesPerPanel; ++k) {
                const double rho = lo + width * rule.nodes[k];
                const double x = d + rho * ct;
                const double y = rho * st;
                const double r2 = x * x + y * y;
                const Complex base = phase * (theta_weight * width * rule.weights[k] *
                                              rho * fiber_norm * std::exp(-gauss_coeff * r2));
                const Complex z(std::sqrt(2.0) * x, std::sqrt(2.0) * y);
                Complex pow_pos = 1.0; // (sqrt 2 (x+iy))^|l| for l < 0 terms
                Complex pow_neg = 1.0; // (sqrt 2 (x-iy))^|l| for l > 0 terms
                acc(spectrum.index_of(0)) += mode_norm[0] * base;
                for (int l = 1; l <= l_max; ++l) {
                    pow_pos *= z;
                    pow_neg *= std::conj(z);
                    acc(spectrum.index_of(+l)) += mode_norm[l] * pow_neg * base;
                    acc(spectrum.index_of(-l)) += mode_norm[l] * pow_pos * base;
                }
            }
        }
    }

    std::string label = "displaced_fork(l=" + std::to_string(holo.fork_charge) +
                        ",m=" + std::to_string(holo.diffraction_order) +
                        ",d=" + std::to_string(d) + "w)";
    return {spectrum, std::move(acc), std::move(label)};
}

DetectionProjector projector_from_coefficients(const ModeSpectrum& spectrum,
                                               double a, double b, int l) {
    if (l != -1 && l != 1) {
        throw DomainError("projector_from_coefficients: l must be -1 or +1");
    }
    if (a == 0.0 && b == 0.0) {
        throw DomainError("projector_from_coefficients: (a,b) must not be (0,0)");
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(spectrum.size());
    amps(spectrum.index_of(0)) = a;
    amps(spectrum.index_of(l)) = b;
    std::string label = "superposition(a=" + std::to_string(a) + ",b=" +
                        std::to_string(b) + ",l=" + std::to_string(l) + ")";
    return {spectrum, std::move(amps), std::move(label)};
}

DetectionProjector mode_projector(const ModeSpectrum& spectrum, int l) {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(spectrum.size());
    amps(spectrum.index_of(l)) = 1.0;
    return {spectrum, std::move(amps), "mode(l=" + std::to_string(l) + ")"};
}

} // namespace oam
