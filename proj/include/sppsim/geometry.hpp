#pragma once

#include <vector>

#include "sppsim/field.hpp"

namespace sppsim {

// Spiral phase plate: a disk whose thickness ramps linearly with azimuth,
// h(theta) = base_thickness + step_height * theta / (2*pi), theta in [0, 2*pi).
// The seam sits at theta = 0 (along +x from the center) and takes the low
// side. step_height < 0 mirrors the chirality; the solid must stay
// non-negative, so step_height >= -base_thickness.
struct SpiralPhasePlate {
    double diameter = 0.0;        // [m]
    double step_height = 0.0;     // h_s [m], full ramp over one turn
    double base_thickness = 0.0;  // [m]
    double center_x = 0.0;        // [m]
    double center_z = 0.0;        // [m]

    void validate() const;
};

// Height of the plate solid above the aperture plane at (x, z); 0 outside
// the disk.
double spp_height(const SpiralPhasePlate& spp, double x, double z);

// Thickness map sampled at pixel centers. With supersample, each pixel
// averages a 2x2 sub-grid (quarter-pixel offsets), which tightens volume
// accounting at the rim and seam.
ScalarField2D thickness_map_direct(const SpiralPhasePlate& spp,
                                   const GridSpec& grid,
                                   bool supersample = false);

// Single-projection ray transform of the plate solid, beam along y.
// The solid is cut into n_slices slices in z; each slice is rasterized on a
// sampling x sampling occupancy grid (x across the full grid extent, depth y
// across [0, max height]) and integrated by midpoint-rule rays. Ray results
// are averaged down onto the target grid.
struct RadonConfig {
    double scan_angle = 0.0;  // projection azimuth; only 0 is supported
    int sampling = 0;         // rays/depth samples; 0 -> grid nx
    int n_slices = 0;         // z slices; 0 -> grid nz

    void validate(const GridSpec& grid) const;
};

struct RadonMap {
    ScalarField2D thickness;
    // set when the depth quantum exceeds half the step height; the map is
    // still valid but the ramp is coarsely resolved
    bool depth_resolution_warning = false;
};

RadonMap thickness_map_radon(const SpiralPhasePlate& spp, const GridSpec& grid,
                             const RadonConfig& cfg);

// Pixelwise sum of thickness maps on a common grid (plates stacked along the
// beam). Left fold in argument order.
ScalarField2D stack_thickness(const std::vector<ScalarField2D>& maps);

// Phase flag: a slab of thickness slab_thickness crossed twice by the two
// interferometer arms at angles bragg_angle -/+ rotation. Returns the path
// difference
//   slab_thickness * (1/cos(bragg_angle - rotation) - 1/cos(bragg_angle + rotation)),
// antisymmetric in rotation and zero at rotation = 0.
struct PhaseFlag {
    double slab_thickness = 0.0;  // [m]
    double bragg_angle = 0.0;     // [rad]

    void validate() const;
};

double flag_delta_thickness(const PhaseFlag& flag, double rotation);

}  // namespace sppsim
