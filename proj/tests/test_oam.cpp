#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "sppsim/oam.hpp"

using namespace sppsim;

namespace {

constexpr double kPi = std::numbers::pi;

OamSuperposition ring(int l, double phase = 0.0) {
    OamSuperposition s;
    s.l = l;
    s.ring_radius = 4.5e-3;
    s.ring_width = 8e-4;
    s.relative_phase = phase;
    return s;
}

const GridSpec kGrid{400, 400, 0.018, 0.018};

double bilinear(const ScalarField2D& f, double x, double z) {
    const GridSpec& g = f.grid();
    const double fx = (x + 0.5 * g.extent_x) / g.dx() - 0.5;
    const double fz = (z + 0.5 * g.extent_z) / g.dz() - 0.5;
    const int ix = int(std::floor(fx)), iz = int(std::floor(fz));
    const double tx = fx - ix, tz = fz - iz;
    return (1.0 - tz) * ((1.0 - tx) * f.at(ix, iz) + tx * f.at(ix + 1, iz)) +
           tz * ((1.0 - tx) * f.at(ix, iz + 1) + tx * f.at(ix + 1, iz + 1));
}

}  // namespace

TEST_CASE("the pattern is the ring envelope times the petal beat") {
    const OamSuperposition s = ring(3, 0.9);
    const ScalarField2D f = superposition_intensity(s, kGrid);
    CHECK(f.unit() == Unit::intensity_norm);
    for (int iz = 5; iz < 400; iz += 37)
        for (int ix = 3; ix < 400; ix += 29) {
            const double x = kGrid.x_center(ix), z = kGrid.z_center(iz);
            const double r = std::hypot(x, z);
            const double th = std::atan2(z, x);
            const double env =
                std::exp(-(r - s.ring_radius) * (r - s.ring_radius) /
                         (2.0 * s.ring_width * s.ring_width));
            const double beat = std::cos(s.l * th + 0.5 * s.relative_phase);
            const double expect = env * beat * beat;
            CHECK(f.at(ix, iz) == doctest::Approx(expect).epsilon(1e-10));
            CHECK(f.at(ix, iz) >= 0.0);
            CHECK(f.at(ix, iz) <= 1.0);
        }
}

TEST_CASE("equal superpositions beat into exactly 2l petals") {
    for (int l = 1; l <= 8; ++l) {
        const ScalarField2D f = superposition_intensity(ring(l), kGrid);
        CHECK(count_azimuthal_maxima(f, 0.0, 0.0, 4.5e-3) == 2 * l);
        // the count is a property of the ring, not of the probe radius
        CHECK(count_azimuthal_maxima(f, 0.0, 0.0, 4.0e-3) == 2 * l);
        CHECK(count_azimuthal_maxima(f, 0.0, 0.0, 5.0e-3) == 2 * l);
    }
}

TEST_CASE("the sampled field carries the pi/l rotational symmetry") {
    const int l = 3;
    const ScalarField2D f = superposition_intensity(ring(l), kGrid);
    for (int k = 0; k < 24; ++k) {
        const double th = 2.0 * kPi * (double(k) + 0.31) / 24.0;
        const double r = 4.5e-3;
        const double a = bilinear(f, r * std::cos(th), r * std::sin(th));
        const double b = bilinear(f, r * std::cos(th + kPi / l),
                                  r * std::sin(th + kPi / l));
        CHECK(a == doctest::Approx(b).epsilon(2e-3));
    }
}

TEST_CASE("only the relative phase moves the petals") {
    const int l = 2;
    const ScalarField2D base = superposition_intensity(ring(l, 0.0), kGrid);
    for (double delta : {0.7, kPi, 2.1, 2.0 * kPi}) {
        const ScalarField2D moved = superposition_intensity(ring(l, delta), kGrid);
        CHECK(count_azimuthal_maxima(moved, 0.0, 0.0, 4.5e-3) == 2 * l);
        // cos^2(l*th + delta/2) = cos^2(l*(th + delta/(2l))): the pattern at
        // th matches the unshifted one at th + delta/(2l)
        const double th = 0.77;
        const double r = 4.5e-3;
        const double here = bilinear(moved, r * std::cos(th), r * std::sin(th));
        const double there = bilinear(base, r * std::cos(th + 0.5 * delta / l),
                                      r * std::sin(th + 0.5 * delta / l));
        CHECK(here == doctest::Approx(there).epsilon(5e-3));
    }
}

TEST_CASE("featureless fields count zero maxima") {
    const ScalarField2D zeros = ScalarField2D::zeros(kGrid, Unit::intensity_norm);
    CHECK(count_azimuthal_maxima(zeros, 0.0, 0.0, 4.5e-3) == 0);
    std::vector<double> v(400 * 400, 0.37);
    const ScalarField2D flat(kGrid, Unit::intensity_norm, std::move(v));
    CHECK(count_azimuthal_maxima(flat, 0.0, 0.0, 4.5e-3) == 0);
}

TEST_CASE("configuration and sampling domain are validated") {
    OamSuperposition bad = ring(0);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ring(2);
    bad.ring_width = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    // a ring narrower than 4 pixels cannot be resolved on this grid
    OamSuperposition thin = ring(2);
    thin.ring_width = 1e-4;  // 2.2 px at 45 um
    CHECK_THROWS_AS(superposition_intensity(thin, kGrid), std::domain_error);

    const ScalarField2D f = superposition_intensity(ring(1), kGrid);
    CHECK_THROWS_AS(count_azimuthal_maxima(f, 0.0, 0.0, 0.02), std::domain_error);
    CHECK_THROWS_AS(count_azimuthal_maxima(f, 0.0, 0.0, -1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(count_azimuthal_maxima(f, 0.0, 0.0, 4.5e-3, 8),
                    std::invalid_argument);
}
