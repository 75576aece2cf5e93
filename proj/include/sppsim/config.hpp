#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sppsim/field.hpp"
#include "sppsim/material.hpp"

namespace sppsim {

// Carries every violation found in one pass so a bad config reports all of
// its problems at once.
struct ConfigError : std::invalid_argument {
    explicit ConfigError(std::vector<std::string> problems_);
    std::vector<std::string> problems;
};

enum class Experiment {
    spp_map,
    interferogram,
    stack,
    flag_series,
    coherence,
    borrmann,
    oam_ring,
    deflection,
};

const char* experiment_name(Experiment e);
Experiment experiment_from_name(const std::string& name);

struct PlateConfig {
    double diameter_m = 0.015;
    // exactly one of the two step height forms
    std::optional<double> step_height_m;
    std::optional<double> step_height_lambda_units = 1.0;
    double base_thickness_m = 0.0;
    double center_x_m = 0.0;
    double center_z_m = 0.0;
};

struct FlagConfig {
    double slab_thickness_m = 2.0e-4;
    double bragg_angle_rad = 0.447;
    std::vector<double> rotations_rad = {-0.04, -0.02, 0.0, 0.02, 0.04};
};

struct DetectorConfig {
    int nu = 100;
    int nv = 100;
    double pixel_pitch_m = 0.0;  // 0 -> field extent_x / nu
    std::string noise_model = "none";  // none | gaussian | poisson
    double sigma_rel = 0.05;
    double counts = 1000.0;
    std::optional<std::uint64_t> seed;  // required whenever noise_model != none
};

struct CoherenceConfig {
    double sigma_x_m = 3.0e-6;
    double sigma_z_m = 6.0e-8;
};

struct CrystalConfig {
    double bragg_angle_rad = 0.447;
    double reduced_thickness = 10.0;
    double y_abs_max = 8.0;
    int n_rocking = 801;
    int n_gamma = 801;
    double fan_y_half_range = 50.0;
    double fan_taper_frac = 0.2;
    int fan_quadrature_points = 0;  // 0 -> converge automatically
};

struct OamConfig {
    int l = 3;
    double ring_radius_m = 4.5e-3;
    double ring_width_m = 8.0e-4;
    double relative_phase_rad = 0.0;
};

struct RadonSamplingConfig {
    int sampling = 0;  // 0 -> grid nx
    int n_slices = 0;  // 0 -> grid nz
};

struct DeflectionConfig {
    double outer_radius_m = 7.5e-3;
    double inner_cutoff_m = 5.0e-4;
};

struct OutputConfig {
    std::string directory;  // empty -> $SPPSIM_OUT_DIR or "./out"
    std::vector<std::string> formats = {"pgm", "csv"};
};

struct RunConfig {
    int schema_version = 1;
    Experiment experiment = Experiment::interferogram;
    std::string material_preset = "aluminum";
    std::optional<Material> material_custom;
    double wavelength_m = 2.71e-10;
    std::vector<PlateConfig> plates = {PlateConfig{}};
    GridSpec grid{400, 400, 0.018, 0.018};
    std::vector<double> phi0_rad = {0.0};
    FlagConfig flag;
    DetectorConfig detector;
    std::optional<CoherenceConfig> coherence;
    CrystalConfig crystal;
    OamConfig oam;
    RadonSamplingConfig radon;
    DeflectionConfig deflection;
    OutputConfig output;

    Material material() const;
    // step height in meters for a plate (resolves lambda-unit heights)
    double plate_step_height_m(const PlateConfig& p) const;
};

// Parses and validates; throws ConfigError listing every violated field.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::filesystem::path& path);

// Inverse of parse_config up to formatting; parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& c);

// Applies one "dotted.path=json_value" assignment onto raw JSON text
// (e.g. "detector.noise.model=\"gaussian\"" or "oam.l=4"). Values that fail
// to parse as JSON are taken as strings.
std::string apply_config_override(const std::string& json_text,
                                  const std::string& assignment);

}  // namespace sppsim
