#include "oam/lg_modes.hpp"

#include <cmath>
#include <numbers>

namespace oam {

Complex lg_field(const LGMode& mode, double x, double y) {
    if (!(mode.w > 0.0)) {
        throw DomainError("lg_field: beam waist must be positive");
    }
    const int al = std::abs(mode.l);
    double fact = 1.0;
    for (int k = 2; k <= al; ++k) {
        fact *= k;
    }
    const double r2 = x * x + y * y;
    const double norm = std::sqrt(2.0 / (std::numbers::pi * fact)) / mode.w;
    const double radial =
        std::pow(std::sqrt(2.0 * r2) / mode.w, al) * std::exp(-r2 / (mode.w * mode.w));
    const double phi = std::atan2(y, x);
    return norm * radial * std::polar(1.0, mode.l * phi);
}

} // namespace oam
