#include "sppsim/material.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sppsim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive_finite(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(what) + " must be finite and > 0");
}
}  // namespace

void Material::validate() const {
    require_positive_finite(number_density, "Material::number_density");
    require_positive_finite(scattering_length, "Material::scattering_length");
}

void BeamConfig::validate() const {
    require_positive_finite(wavelength, "BeamConfig::wavelength");
}

Material aluminum() {
    // N = rho * N_A / M with rho = 2.699 g/cm^3, M = 26.9815385 g/mol
    return Material{"aluminum", 6.0240e28, 3.449e-15};
}

Material material_preset(const std::string& name) {
    if (name == "aluminum") return aluminum();
    throw std::invalid_argument("unknown material preset: " + name);
}

double lambda_thickness(const Material& m, double wavelength) {
    m.validate();
    require_positive_finite(wavelength, "wavelength");
    return kTwoPi / (m.number_density * m.scattering_length * wavelength);
}

double effective_momentum(double step_height, double d_lambda) {
    require_positive_finite(d_lambda, "d_lambda");
    if (!std::isfinite(step_height))
        throw std::invalid_argument("step_height must be finite");
    return step_height / d_lambda;
}

double refractive_decrement(const Material& m, double wavelength) {
    m.validate();
    require_positive_finite(wavelength, "wavelength");
    return wavelength * wavelength * m.number_density * m.scattering_length /
           kTwoPi;
}

double fringe_spacing(double wavelength, double bragg_angle) {
    require_positive_finite(wavelength, "wavelength");
    if (!(bragg_angle > 0.0) || !(bragg_angle < std::numbers::pi / 2))
        throw std::invalid_argument("bragg_angle must lie in (0, pi/2)");
    return wavelength / (2.0 * std::sin(bragg_angle));
}

double prism_deflection_point(const Material& m, double wavelength,
                              double step_height, double radius) {
    require_positive_finite(radius, "radius");
    if (!std::isfinite(step_height))
        throw std::invalid_argument("step_height must be finite");
    return refractive_decrement(m, wavelength) * step_height / (kTwoPi * radius);
}

double prism_deflection_disk_mean(const Material& m, double wavelength,
                                  double step_height, double outer_radius,
                                  double inner_cutoff) {
    require_positive_finite(outer_radius, "outer_radius");
    require_positive_finite(inner_cutoff, "inner_cutoff");
    if (!(inner_cutoff < outer_radius))
        throw std::invalid_argument("inner_cutoff must be < outer_radius");
    double k = refractive_decrement(m, wavelength) * std::fabs(step_height) / kTwoPi;
    return 2.0 * k / (outer_radius + inner_cutoff);
}

}  // namespace sppsim
