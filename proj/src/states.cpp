#include "oam/states.hpp"

#include <algorithm>
#include <cmath>

namespace oam {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kEigenvalueFloor = -1e-10;

} // namespace

BipartitePureState::BipartitePureState(ModeSpectrum spectrum, Eigen::MatrixXcd amplitudes)
    : spectrum_(spectrum), amplitudes_(std::move(amplitudes)) {
    const int d = spectrum_.size();
    if (amplitudes_.rows() != d || amplitudes_.cols() != d) {
        throw DimensionMismatchError("BipartitePureState: amplitude table must be " +
                                     std::to_string(d) + "x" + std::to_string(d));
    }
    if (!amplitudes_.allFinite()) {
        throw DomainError("BipartitePureState: non-finite amplitude");
    }
}

BipartitePureState BipartitePureState::zero(ModeSpectrum spectrum) {
    const int d = spectrum.size();
    return {spectrum, Eigen::MatrixXcd::Zero(d, d)};
}

DensityOperator::DensityOperator(ModeSpectrum spectrum, Eigen::MatrixXcd matrix)
    : spectrum_(spectrum), matrix_(std::move(matrix)) {
    const int d2 = spectrum_.size() * spectrum_.size();
    if (matrix_.rows() != d2 || matrix_.cols() != d2) {
        throw DimensionMismatchError("DensityOperator: matrix must be " +
                                     std::to_string(d2) + "x" + std::to_string(d2));
    }
    if (!matrix_.allFinite()) {
        throw DomainError("DensityOperator: non-finite entry");
    }
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
        throw DomainError("DensityOperator: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < kEigenvalueFloor) {
        throw DomainError("DensityOperator: negative eigenvalue " +
                          std::to_string(solver.eigenvalues().minCoeff()));
    }
}

DensityOperator DensityOperator::from_pure(const BipartitePureState& state) {
    const int d = state.spectrum().size();
    Eigen::VectorXcd vec(d * d);
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            vec(m * d + n) = state.amplitudes()(m, n);
        }
    }
    return {state.spectrum(), vec * vec.adjoint()};
}

DensityOperator DensityOperator::normalized() const {
    const double tr = trace();
    if (tr <= 1e-300) {
        throw ZeroNormError("DensityOperator: trace too small to normalize");
    }
    return {spectrum_, matrix_ / tr};
}

double DensityOperator::fidelity_with(const BipartitePureState& state) const {
    if (!(state.spectrum() == spectrum_)) {
        throw DimensionMismatchError("fidelity_with: spectra differ");
    }
    const int d = spectrum_.size();
    Eigen::VectorXcd vec(d * d);
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            vec(m * d + n) = state.amplitudes()(m, n);
        }
    }
    return (vec.adjoint() * matrix_ * vec)(0).real();
}

BipartitePureState make_reference_state(ReferenceState which, int l_max) {
    // Anti-diagonal coefficients on |-1,+1> and |+1,-1> relative to |0,0>.
    const double a = which == ReferenceState::Source ? 0.523 : 0.392;
    const double b = which == ReferenceState::Source ? 0.486 : 0.332;
    ModeSpectrum spectrum(l_max);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(spectrum.size(), spectrum.size());
    c(spectrum.index_of(0), spectrum.index_of(0)) = 1.0;
    c(spectrum.index_of(-1), spectrum.index_of(+1)) = a;
    c(spectrum.index_of(+1), spectrum.index_of(-1)) = b;
    return normalize(BipartitePureState(spectrum, std::move(c)));
}

BipartitePureState max_entangled_state(const ModeSpectrum& spectrum) {
    const int d = spectrum.size();
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
    for (int l = -spectrum.l_max(); l <= spectrum.l_max(); ++l) {
        c(spectrum.index_of(l), spectrum.index_of(-l)) = 1.0 / std::sqrt(double(d));
    }
    return {spectrum, std::move(c)};
}

BipartitePureState normalize(const BipartitePureState& state) {
    const double n = state.norm();
    if (!(n > 1e-300)) {
        throw ZeroNormError("normalize: state norm is zero");
    }
    return {state.spectrum(), state.amplitudes() / n};
}

EntanglementReport schmidt_decompose(const BipartitePureState& state) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(state.amplitudes());
    EntanglementReport report;
    const auto& sv = svd.singularValues();
    report.schmidt_coeffs.assign(sv.data(), sv.data() + sv.size());
    std::sort(report.schmidt_coeffs.begin(), report.schmidt_coeffs.end(),
              std::greater<double>());

    report.entropy_nats = 0.0;
    for (double s : report.schmidt_coeffs) {
        const double p = s * s;
        if (p > 1e-300) {
            report.entropy_nats -= p * std::log(p);
        }
    }

    const BipartitePureState target = max_entangled_state(state.spectrum());
    Complex overlap = (target.amplitudes().conjugate().cwiseProduct(state.amplitudes())).sum();
    report.fidelity_max_ent = std::norm(overlap);
    return report;
}

DensityOperator mix_with_white_noise(const BipartitePureState& state, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw DomainError("mix_with_white_noise: epsilon must be in [0,1]");
    }
    const int d2 = state.spectrum().size() * state.spectrum().size();
    const Eigen::MatrixXcd pure = DensityOperator::from_pure(normalize(state)).matrix();
    Eigen::MatrixXcd rho = (1.0 - epsilon) * pure +
                           (epsilon / d2) * Eigen::MatrixXcd::Identity(d2, d2);
    return {state.spectrum(), std::move(rho)};
}

} // namespace oam
