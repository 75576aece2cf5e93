#pragma once

#include <string>

namespace sppsim {

// Homogeneous material seen by a cold neutron beam: number density N [1/m^3]
// and bound coherent scattering length b_c [m].
struct Material {
    std::string name;
    double number_density = 0.0;     // N [1/m^3]
    double scattering_length = 0.0;  // b_c [m]

    void validate() const;
};

struct BeamConfig {
    double wavelength = 0.0;  // [m]

    void validate() const;
};

// Aluminum at room temperature (rho = 2.699 g/cm^3, b_c = 3.449 fm).
Material aluminum();

// Resolve a material by preset name ("aluminum"); throws std::invalid_argument
// for unknown names.
Material material_preset(const std::string& name);

// Thickness over which the beam accumulates one full turn of phase:
// D_lambda = 2*pi / (N * b_c * lambda).
double lambda_thickness(const Material& m, double wavelength);

// Topological charge imprinted by a spiral plate of full step height h_s:
// L = h_s / D_lambda. Any real value.
double effective_momentum(double step_height, double d_lambda);

// Refractive index decrement 1 - n = lambda^2 * N * b_c / (2*pi).
double refractive_decrement(const Material& m, double wavelength);

// Interferometer fringe spacing lambda / (2*sin(bragg_angle)).
double fringe_spacing(double wavelength, double bragg_angle);

// Deflection of a ray passing a spiral plate at radius r from its axis:
// the azimuthal thickness gradient h_s/(2*pi*r) times the refractive
// decrement. Sign follows the sign of step_height.
double prism_deflection_point(const Material& m, double wavelength,
                              double step_height, double radius);

// Area-weighted mean |deflection| over the annulus [inner_cutoff, outer_radius]
// (the 1/r profile integrates to 2*k/(R + r0)). inner_cutoff > 0 keeps the
// axis singularity out of the average.
double prism_deflection_disk_mean(const Material& m, double wavelength,
                                  double step_height, double outer_radius,
                                  double inner_cutoff);

}  // namespace sppsim
