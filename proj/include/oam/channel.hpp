#pragma once

#include <Eigen/Dense>

#include "oam/errors.hpp"
#include "oam/mode_spectrum.hpp"
#include "oam/states.hpp"

namespace oam {

/// Which photon of the pair an operation acts on.
enum class Photon { Signal, Idler };

/// A mode-dependent lossy channel: each orbital mode l is transmitted with
/// intensity efficiency eta[l], with no coupling between modes. This models
/// a transmission element that conserves orbital angular momentum but
/// attenuates each mode differently (e.g. a perforated metal film whose
/// plasmon-mediated transmission depends on the beam profile).
struct LossChannel {
    ModeSpectrum spectrum{1};
    /// Intensity transmission per mode, indexed like the spectrum; each
    /// entry must lie in (0, 1].
    Eigen::VectorXd eta;
    /// The photon the loss acts on.
    Photon acts_on = Photon::Idler;

    /// Transmission for mode l.
    double eta_at(int l) const { return eta(spectrum.index_of(l)); }
};

/// Result of pushing a pure two-photon state through a lossy channel and
/// post-selecting on transmission.
struct ChannelResult {
    /// Renormalized post-selected state.
    BipartitePureState state;
    /// Probability that the acted-on photon survives the channel.
    double success_prob = 0.0;
};

/// Result of pushing a density operator through a lossy channel.
struct MixedChannelResult {
    DensityOperator rho;
    double success_prob = 0.0;
};

/// A per-mode filter that flattens a state's anti-diagonal amplitudes into
/// the maximally entangled state (Procrustean concentration).
struct FilterDesign {
    ModeSpectrum spectrum{1};
    /// Designed intensity transmissions on the filtered photon, indexed
    /// like the spectrum; the largest entry equals the declared cap.
    Eigen::VectorXd eta;
    /// Post-selection success probability when the filter is applied to
    /// the state it was designed for.
    double yield = 0.0;

    double eta_at(int l) const { return eta(spectrum.index_of(l)); }

    /// The designed filter as an applicable channel on the given photon.
    LossChannel as_channel(Photon acts_on = Photon::Idler) const {
        return {spectrum, eta, acts_on};
    }
};

/// Applies a mode-dependent lossy channel to a normalized pure state: the
/// amplitude of |m, n> is scaled by the square root of the transmission at
/// the acted-on photon's mode, the survival probability is the resulting
/// squared norm, and the returned state is renormalized (post-selection on
/// the photon arriving).
///
/// Throws DomainError if the state is not normalized, if the channel
/// efficiencies are out of range, or if the spectra disagree.
ChannelResult apply_channel(const BipartitePureState& state, const LossChannel& channel);

/// Extends apply_channel to mixed states: rho -> K rho K^dag / tr(...),
/// where K is diagonal with sqrt(eta) entries on the acted-on photon index;
/// success_prob is the pre-normalization trace.
MixedChannelResult apply_channel_mixed(const DensityOperator& rho, const LossChannel& channel);

/// Designs the mode-dependent filter that concentrates `state` into the
/// maximally entangled state: the filter transmission amplitude on the
/// idler mode -l is proportional to 1/|c[l,-l]|, scaled so the largest
/// intensity transmission equals `eta_cap`. The input must carry all its
/// weight on the anti-diagonal |l,-l> with every such amplitude nonzero.
///
/// yield = d * eta_cap * min_l |c[l,-l]|^2, the success probability of the
/// designed channel on the input.
///
/// Throws DomainError if eta_cap is outside (0,1], if any anti-diagonal
/// amplitude is below 1e-12 (unconcentratable mode), or if the state has
/// weight off the anti-diagonal (no mode-local filter can flatten it).
FilterDesign design_concentration_filter(const BipartitePureState& state, double eta_cap);

/// Classical small-hole transmission estimate for a periodic array of
/// subwavelength circular holes: the single-hole Bethe transmission
/// (64/27pi^2)(ka)^4 (a = hole radius, k = 2pi/wavelength) multiplied by
/// the areal fill factor pi a^2 / period^2. Units cancel, so any common
/// length unit may be used. This is the textbook convention; experimental
/// reports sometimes quote other normalizations, so comparisons across
/// sources should state the convention.
///
/// Throws DomainError if any length is nonpositive or if the hole diameter
/// is not subwavelength (hole_diameter >= wavelength).
double bethe_baseline(double hole_diameter, double period, double wavelength);

} // namespace oam
