#pragma once

#include "oam/states.hpp"

namespace oam {

/// Laguerre-Gaussian transverse mode with radial index p = 0.
///
/// l is the winding number (number of 2*pi phase shifts around the beam
/// axis), w the beam waist. Lengths are in whatever unit w is given in;
/// the rest of the library works in beam-waist units (w = 1).
struct LGMode {
    int l = 0;
    double w = 1.0;
};

/// Normalized p=0 LG field at (x, y):
///
///   LG_l(x,y) = sqrt(2/(pi |l|!)) / w * (sqrt(2) r / w)^|l|
///               * exp(-r^2/w^2) * exp(i l phi)
///
/// so that the squared field integrates to one over the plane. l = 0 is the
/// fundamental Gaussian. Throws DomainError if w <= 0.
Complex lg_field(const LGMode& mode, double x, double y);

} // namespace oam
