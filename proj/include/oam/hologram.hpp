#pragma once

#include <string>

#include "oam/lg_modes.hpp"
#include "oam/mode_spectrum.hpp"
#include "oam/states.hpp"

namespace oam {

/// A fork computer-generated hologram. Its m-th diffraction order shifts the
/// winding number of the input beam by m * fork_charge. Only m in {0, +1, -1}
/// is supported; displacement is along x in beam-waist units.
struct HologramSpec {
    int fork_charge = 1;
    int diffraction_order = 1;
    double displacement = 0.0;
    double efficiency = 1.0; ///< first-order diffraction efficiency, in (0, 1]
};

/// Result of passing a single-photon amplitude vector through a hologram
/// order. leakage is the squared norm shifted outside the basis cutoff
/// (already scaled by the hologram efficiency), so that
/// |out|^2 + leakage = |in|^2 * efficiency.
struct ShiftResult {
    Eigen::VectorXcd amplitudes;
    double leakage = 0.0;
};

/// Move each amplitude a[l] to l + m*fork_charge, scaled by sqrt(efficiency).
/// Shifted modes falling outside the spectrum are dropped into leakage.
ShiftResult hologram_shift(const Eigen::VectorXcd& amplitudes,
                           const ModeSpectrum& spectrum, const HologramSpec& holo);

/// Single-photon detection state over the mode basis, unit norm.
class DetectionProjector {
public:
    DetectionProjector(ModeSpectrum spectrum, Eigen::VectorXcd amplitudes,
                       std::string label);

    const ModeSpectrum& spectrum() const { return spectrum_; }
    const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
    const std::string& label() const { return label_; }

    Complex amplitude(int l) const { return amplitudes_(spectrum_.index_of(l)); }

private:
    ModeSpectrum spectrum_;
    Eigen::VectorXcd amplitudes_;
    std::string label_;
};

/// Detection state of a displaced fork hologram followed by a single-mode
/// fiber.
///
/// The fiber's Gaussian mode (waist fiber_waist_ratio, in units of the LG
/// basis waist) is back-propagated through the hologram, which multiplies it
/// by the vortex phase exp(i c atan2(y, x - d)) of charge
/// c = diffraction_order * fork_charge centered at the displacement d. The
/// resulting displaced-vortex field is decomposed over the LG basis at the
/// beam axis by 2-D overlap integrals <LG_l | V> and normalized within the
/// basis. The overlap amplitudes are all real and depend nonlinearly on d;
/// at d = 0 the projector is the pure mode |c>, and for |d| large it tends
/// (slowly, like 1/d) toward the Gaussian |0>.
///
/// Requires |fork_charge| = 1 and diffraction_order in {-1, +1}.
DetectionProjector displaced_projector(const ModeSpectrum& spectrum,
                                       const HologramSpec& holo,
                                       double fiber_waist_ratio = 1.0);

/// Superposition detector (a|0> + b|l>)/sqrt(a^2+b^2) with l = -1 or +1.
/// Throws DomainError on (a,b) = (0,0) or l outside {-1,+1}.
DetectionProjector projector_from_coefficients(const ModeSpectrum& spectrum,
                                               double a, double b, int l);

/// Pure-mode detector |l>.
DetectionProjector mode_projector(const ModeSpectrum& spectrum, int l);

} // namespace oam
