#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "oam/mode_spectrum.hpp"

namespace oam {

using Complex = std::complex<double>;

/// Two-photon pure state as an amplitude table c[l_signal, l_idler].
///
/// |m,n> denotes the signal photon in OAM mode m and the idler photon in
/// mode n. Rows index the signal mode, columns the idler mode, both in the
/// spectrum's storage order. Values are immutable after construction.
class BipartitePureState {
public:
    BipartitePureState(ModeSpectrum spectrum, Eigen::MatrixXcd amplitudes);

    /// All-zero amplitude table (not normalizable until filled).
    static BipartitePureState zero(ModeSpectrum spectrum);

    const ModeSpectrum& spectrum() const { return spectrum_; }
    const Eigen::MatrixXcd& amplitudes() const { return amplitudes_; }

    Complex amplitude(int l_signal, int l_idler) const {
        return amplitudes_(spectrum_.index_of(l_signal), spectrum_.index_of(l_idler));
    }

    double norm() const { return amplitudes_.norm(); }

private:
    ModeSpectrum spectrum_;
    Eigen::MatrixXcd amplitudes_;
};

/// Bipartite density operator on the two-photon space, stored as a d^2 x d^2
/// matrix with composite index k = (signal index)*d + (idler index).
/// Construction checks Hermiticity (1e-10 absolute) and spectrum positivity
/// (eigenvalues >= -1e-10); the trace is not forced to one.
class DensityOperator {
public:
    DensityOperator(ModeSpectrum spectrum, Eigen::MatrixXcd matrix);

    static DensityOperator from_pure(const BipartitePureState& state);

    const ModeSpectrum& spectrum() const { return spectrum_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }

    int dim() const { return spectrum_.size(); }

    double trace() const { return matrix_.trace().real(); }

    /// Same operator scaled to unit trace.
    DensityOperator normalized() const;

    /// <psi|rho|psi> for a normalized pure state on the same spectrum.
    double fidelity_with(const BipartitePureState& state) const;

private:
    ModeSpectrum spectrum_;
    Eigen::MatrixXcd matrix_;
};

/// Schmidt data of a normalized bipartite pure state.
struct EntanglementReport {
    std::vector<double> schmidt_coeffs; ///< singular values, descending
    double entropy_nats = 0.0;          ///< -sum s^2 ln s^2 over nonzero s
    double fidelity_max_ent = 0.0;      ///< |<Phi_max|psi>|^2, Phi_max = sum_l |l,-l>/sqrt(d)
};

/// The two experimentally characterized qutrit states of the reference
/// experiment: the state the down-conversion source emits, and the state
/// after the idler photon traverses the perforated metal plate.
enum class ReferenceState {
    Source,     ///< as emitted, amplitudes (1, 0.523, 0.486)
    Transmitted ///< after mode-dependent plate loss, amplitudes (1, 0.392, 0.332)
};

/// The measured entangled qutrit states, normalized, with real nonnegative
/// amplitudes (1, a, b)/N on |0,0>, |-1,+1>, |+1,-1> and zeros elsewhere.
/// A spectrum wider than l_max = 1 embeds the same three-term state with
/// the extra modes unoccupied.
BipartitePureState make_reference_state(ReferenceState which, int l_max = 1);

/// The maximally entangled target sum_l |l,-l>/sqrt(d).
BipartitePureState max_entangled_state(const ModeSpectrum& spectrum);

/// Unit-norm copy. Throws ZeroNormError if the norm is <= 1e-300.
BipartitePureState normalize(const BipartitePureState& state);

/// Schmidt decomposition of the amplitude table (expects a normalized state).
EntanglementReport schmidt_decompose(const BipartitePureState& state);

/// rho = (1-epsilon)|psi><psi| + epsilon I/d^2. Throws DomainError unless
/// epsilon is in [0,1].
DensityOperator mix_with_white_noise(const BipartitePureState& state, double epsilon);

} // namespace oam
