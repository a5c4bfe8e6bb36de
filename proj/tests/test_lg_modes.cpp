#include <cmath>
#include <complex>
#include <numbers>

#include <doctest.h>

#include "oam/lg_modes.hpp"

using namespace oam;

namespace {

// Total intensity by trapezoid quadrature on [-6w, 6w]^2.
double squared_norm(const LGMode& mode) {
    const double lo = -6.0 * mode.w;
    const int n = 601;
    const double h = 12.0 * mode.w / (n - 1);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double wx = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        for (int j = 0; j < n; ++j) {
            const double wy = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            sum += wx * wy * std::norm(lg_field(mode, lo + h * i, lo + h * j));
        }
    }
    return sum * h * h;
}

} // namespace

TEST_CASE("fundamental Gaussian: positive peak, radially symmetric") {
    const LGMode mode{.l = 0, .w = 1.0};
    const Complex center = lg_field(mode, 0.0, 0.0);
    CHECK(center.imag() == 0.0);
    CHECK(center.real() == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-12));

    const double r = 0.8;
    const double on_x = std::abs(lg_field(mode, r, 0.0));
    CHECK(std::abs(lg_field(mode, 0.0, r)) == doctest::Approx(on_x).epsilon(1e-12));
    CHECK(std::abs(lg_field(mode, r / std::sqrt(2.0), r / std::sqrt(2.0))) ==
          doctest::Approx(on_x).epsilon(1e-12));
}

TEST_CASE("vortex modes vanish on axis") {
    CHECK(std::abs(lg_field({.l = +1, .w = 1.0}, 0.0, 0.0)) == 0.0);
    CHECK(std::abs(lg_field({.l = -1, .w = 1.0}, 0.0, 0.0)) == 0.0);
    CHECK(std::abs(lg_field({.l = +2, .w = 0.5}, 0.0, 0.0)) == 0.0);
}

TEST_CASE("fields are unit-normalized") {
    for (const double w : {1.0, 0.7}) {
        for (int l = -2; l <= 2; ++l) {
            CHECK(squared_norm({.l = l, .w = w}) == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("phase winds by 2 pi l around the axis") {
    for (int l = -2; l <= 2; ++l) {
        const LGMode mode{.l = l, .w = 1.0};
        const int samples = 1000;
        double accumulated = 0.0;
        double prev = std::arg(lg_field(mode, 0.5, 0.0));
        for (int k = 1; k <= samples; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / samples;
            const double now = std::arg(lg_field(mode, 0.5 * std::cos(theta),
                                                 0.5 * std::sin(theta)));
            double step = now - prev;
            while (step > std::numbers::pi) {
                step -= 2.0 * std::numbers::pi;
            }
            while (step < -std::numbers::pi) {
                step += 2.0 * std::numbers::pi;
            }
            accumulated += step;
            prev = now;
        }
        CHECK(std::abs(accumulated - 2.0 * std::numbers::pi * l) < 1e-3);
    }
}

TEST_CASE("nonpositive waist is rejected") {
    CHECK_THROWS_AS(lg_field({.l = 0, .w = 0.0}, 0.1, 0.1), DomainError);
    CHECK_THROWS_AS(lg_field({.l = 0, .w = -1.0}, 0.1, 0.1), DomainError);
}
