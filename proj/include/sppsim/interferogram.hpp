#pragma once

#include <cstdint>

#include "sppsim/field.hpp"

namespace sppsim {

// Two-path interferogram of a thickness map: the sample arm accumulates one
// phase turn per d_lambda of material, so
//   I(u,v) = (1 + V * cos(phi0 + 2*pi * T(u,v)/d_lambda)) / 2
// normalized to [0, 1]. ideal_interferogram takes V = 1.
ScalarField2D ideal_interferogram(const ScalarField2D& thickness,
                                  double d_lambda, double phi0);

// The other interferometer exit port: I_other = 1 - I. Input must be a
// pre-noise normalized intensity in [0, 1].
ScalarField2D complementary_interferogram(const ScalarField2D& intensity);

// Transverse coherence of the packet, Gaussian amplitude widths per axis [m].
struct CoherenceModel {
    double sigma_x = 0.0;
    double sigma_z = 0.0;

    void validate() const;
};

// Local fringe visibility V = |<exp(i*Phi)>| where <.> averages over the
// packet's intensity footprint (Gaussian of width sigma*sqrt(2) per axis,
// the amplitude autocorrelation). An axis whose kernel width is below a
// tenth of the pixel cannot be resolved on the grid and is skipped; if both
// axes are skipped the map is exactly 1 and `unresolved` is set.
struct VisibilityMap {
    ScalarField2D vis;
    bool unresolved = false;
};

VisibilityMap visibility_map(const ScalarField2D& thickness, double d_lambda,
                             const CoherenceModel& coh);

// Interferogram with finite transverse coherence (visibility-weighted fringe
// term). Equals ideal_interferogram when the visibility map is 1.
ScalarField2D coherent_interferogram(const ScalarField2D& thickness,
                                     double d_lambda, double phi0,
                                     const CoherenceModel& coh);

// Pixelated detector. The detector is centered on the field and must not
// extend beyond it; its pitch must not be finer than the field's.
struct DetectorSpec {
    int nu = 0;
    int nv = 0;
    double pixel_pitch = 0.0;  // [m]

    void validate() const;
};

// Area-weighted average of the field over each detector pixel (exact overlap
// weights, separable by axis). With matching resolution this is the identity.
ScalarField2D bin_to_detector(const ScalarField2D& src, const DetectorSpec& det);

struct NoiseSpec {
    enum class Model { none, gaussian, poisson };
    Model model = Model::none;
    double sigma_rel = 0.0;  // gaussian: additive sigma in intensity units
    double counts = 0.0;     // poisson: mean quanta per pixel at intensity 1
    std::uint64_t seed = 0;

    void validate() const;
};

// Detector noise on a normalized intensity. Gaussian noise is clamped at 0;
// Poisson draws quanta at I*counts and rescales. stream_offset separates
// detectors sharing one seed. Deterministic per (seed, pixel, offset).
ScalarField2D apply_noise(const ScalarField2D& intensity, const NoiseSpec& noise,
                          std::uint64_t stream_offset = 0);

// Winding of the interferometric phase along a circle around (cx, cz).
// closed_turns sums wrapped increments around the full loop (an integer up
// to rounding for any single-valued map); open_slope fits the phase slope
// excluding the seam crossing and recovers fractional charges.
struct WindingResult {
    double closed_turns;
    double open_slope;
};

WindingResult phase_winding(const ScalarField2D& thickness, double d_lambda,
                            double cx, double cz, double radius,
                            int n_samples = 256);

}  // namespace sppsim
