#pragma once

#include "sppsim/field.hpp"

namespace sppsim {

// Equal-weight superposition of orbital angular momentum states +l and -l on
// a ring-shaped envelope: the azimuthal terms beat into a standing pattern
//   I(r, theta) = exp(-(r - ring_radius)^2 / (2*ring_width^2))
//                 * cos^2(l*theta + relative_phase/2)
// with exactly 2*l intensity maxima around the ring. A common phase on both
// arms cancels; only relative_phase moves the petals.
struct OamSuperposition {
    int l = 0;                    // topological charge, >= 1
    double ring_radius = 0.0;     // [m]
    double ring_width = 0.0;      // [m] Gaussian sigma of the radial envelope
    double relative_phase = 0.0;  // [rad]

    void validate() const;
};

// Samples the pattern at pixel centers. The grid must resolve the ring:
// ring_width >= 4 pixels on both axes, else std::domain_error.
ScalarField2D superposition_intensity(const OamSuperposition& s,
                                      const GridSpec& grid);

// Counts local maxima of the intensity sampled (bilinearly) along the circle
// of the given radius. Rise/fall pairs spanning less than prominence_frac of
// the sampled range are treated as ripple and merged away, so a petal counts
// once however jagged its top. Uniform fields count 0.
int count_azimuthal_maxima(const ScalarField2D& intensity, double cx, double cz,
                           double radius, int n_samples = 1024,
                           double prominence_frac = 0.1);

}  // namespace sppsim
