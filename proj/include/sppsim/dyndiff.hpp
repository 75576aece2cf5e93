#pragma once

#include <vector>

namespace sppsim {

// Perfect-crystal slab in symmetric transmission geometry, zero absorption.
// reduced_thickness A is the crystal thickness in units of the extinction
// length over pi; y is the dimensionless deviation from the exact Bragg
// condition.
struct LaueCrystal {
    double bragg_angle = 0.0;        // [rad]
    double reduced_thickness = 0.0;  // A, dimensionless

    void validate() const;
};

// Plane-wave two-beam transfer at deviation y:
//   reflected = sin^2(A*sqrt(1+y^2)) / (1+y^2),  forward = 1 - reflected.
// The pair sums to 1 exactly in binary64 (particle conservation).
struct RockingPoint {
    double reflected;
    double forward;
};

RockingPoint rocking_curve(const LaueCrystal& crystal, double y);

// Exit-face intensity of a pencil beam across the energy-flow triangle,
// gamma in (-1, 1) spanning the fan between the forward and diffracted
// directions. Computed as the Fourier superposition over the deviation
// parameter of the two branch amplitudes with exit-position phase
// exp(i*A*gamma*y); the result oscillates like the squared Bessel J0 of
// A*sqrt(1-gamma^2) and piles up at the fan edges.
struct FanConfig {
    double y_half_range = 50.0;  // quadrature window in y
    double taper_frac = 0.2;     // cos^2 taper on the outer fraction of the window
    int quadrature_points = 0;   // fixed interval count (even); 0 -> converge
    double tol = 1e-7;           // convergence threshold on intensity changes
    int max_points = 1 << 20;

    void validate() const;
};

struct FanProfile {
    std::vector<double> gamma;
    std::vector<double> intensity;  // |F(gamma)/pi|^2, Bessel scale
    int quadrature_points = 0;      // intervals actually used
    double windowed_flux = 0.0;     // integral of (taper*amplitude)^2 over y
};

FanProfile fan_profile(const LaueCrystal& crystal,
                       const std::vector<double>& gamma,
                       const FanConfig& cfg = {});

}  // namespace sppsim
