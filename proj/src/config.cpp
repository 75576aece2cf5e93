#include "sppsim/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "sppsim/io.hpp"

namespace sppsim {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
    std::string out = "invalid configuration:";
    for (const auto& p : problems) {
        out += "\n  - ";
        out += p;
    }
    return out;
}

struct Checker {
    std::vector<std::string> problems;

    void fail(const std::string& field, const std::string& msg) {
        problems.push_back(field + ": " + msg);
    }

    void check_keys(const json& j, const std::string& ctx,
                    std::initializer_list<const char*> allowed) {
        if (!j.is_object()) return;
        for (auto it = j.begin(); it != j.end(); ++it) {
            bool known = false;
            for (const char* k : allowed)
                if (it.key() == k) {
                    known = true;
                    break;
                }
            if (!known) fail(ctx.empty() ? it.key() : ctx + "." + it.key(), "unknown key");
        }
    }

    double num(const json& j, const std::string& ctx, const char* key, double dflt) {
        if (!j.contains(key)) return dflt;
        if (!j[key].is_number()) {
            fail(ctx + key, "must be a number");
            return dflt;
        }
        return j[key].get<double>();
    }

    int integer(const json& j, const std::string& ctx, const char* key, int dflt) {
        if (!j.contains(key)) return dflt;
        if (!j[key].is_number_integer()) {
            fail(ctx + key, "must be an integer");
            return dflt;
        }
        return j[key].get<int>();
    }

    std::string str(const json& j, const std::string& ctx, const char* key,
                    const std::string& dflt) {
        if (!j.contains(key)) return dflt;
        if (!j[key].is_string()) {
            fail(ctx + key, "must be a string");
            return dflt;
        }
        return j[key].get<std::string>();
    }
};

void require_pos(Checker& ck, const std::string& field, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) ck.fail(field, "must be finite and > 0");
}

void require_nonneg(Checker& ck, const std::string& field, double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) ck.fail(field, "must be finite and >= 0");
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems_)
    : std::invalid_argument(join_problems(problems_)), problems(std::move(problems_)) {}

const char* experiment_name(Experiment e) {
    switch (e) {
        case Experiment::spp_map: return "spp-map";
        case Experiment::interferogram: return "interferogram";
        case Experiment::stack: return "stack";
        case Experiment::flag_series: return "flag-series";
        case Experiment::coherence: return "coherence";
        case Experiment::borrmann: return "borrmann";
        case Experiment::oam_ring: return "oam-ring";
        case Experiment::deflection: return "deflection";
    }
    return "?";
}

Experiment experiment_from_name(const std::string& name) {
    for (Experiment e :
         {Experiment::spp_map, Experiment::interferogram, Experiment::stack,
          Experiment::flag_series, Experiment::coherence, Experiment::borrmann,
          Experiment::oam_ring, Experiment::deflection})
        if (name == experiment_name(e)) return e;
    throw std::invalid_argument("unknown experiment: " + name);
}

Material RunConfig::material() const {
    if (material_custom) {
        material_custom->validate();
        return *material_custom;
    }
    return sppsim::material_preset(material_preset);
}

double RunConfig::plate_step_height_m(const PlateConfig& p) const {
    if (p.step_height_m) return *p.step_height_m;
    const double d_lambda = lambda_thickness(material(), wavelength_m);
    return *p.step_height_lambda_units * d_lambda;
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("JSON parse error: ") + e.what()});
    }
    if (!j.is_object()) throw ConfigError({"top level: must be a JSON object"});

    Checker ck;
    RunConfig c;

    ck.check_keys(j, "",
                  {"schema_version", "experiment", "material", "wavelength_m",
                   "plates", "grid", "phi0_rad", "flag", "detector", "coherence",
                   "crystal", "oam", "radon", "deflection", "output"});

    c.schema_version = ck.integer(j, "", "schema_version", 0);
    if (c.schema_version != 1) ck.fail("schema_version", "must be present and equal to 1");

    if (!j.contains("experiment") || !j["experiment"].is_string()) {
        ck.fail("experiment", "must be present and a string");
    } else {
        try {
            c.experiment = experiment_from_name(j["experiment"].get<std::string>());
        } catch (const std::invalid_argument& e) {
            ck.fail("experiment", e.what());
        }
    }

    if (j.contains("material")) {
        const json& m = j["material"];
        if (m.is_string()) {
            c.material_preset = m.get<std::string>();
            try {
                sppsim::material_preset(c.material_preset);
            } catch (const std::invalid_argument& e) {
                ck.fail("material", e.what());
            }
        } else if (m.is_object()) {
            ck.check_keys(m, "material",
                          {"name", "number_density_per_m3", "scattering_length_m"});
            Material mat;
            mat.name = ck.str(m, "material.", "name", "custom");
            mat.number_density = ck.num(m, "material.", "number_density_per_m3", 0.0);
            mat.scattering_length = ck.num(m, "material.", "scattering_length_m", 0.0);
            require_pos(ck, "material.number_density_per_m3", mat.number_density);
            require_pos(ck, "material.scattering_length_m", mat.scattering_length);
            c.material_custom = mat;
        } else {
            ck.fail("material", "must be a preset name or an object");
        }
    }

    c.wavelength_m = ck.num(j, "", "wavelength_m", c.wavelength_m);
    require_pos(ck, "wavelength_m", c.wavelength_m);

    if (j.contains("plates")) {
        if (!j["plates"].is_array() || j["plates"].empty()) {
            ck.fail("plates", "must be a non-empty array");
        } else {
            c.plates.clear();
            int idx = 0;
            for (const json& pj : j["plates"]) {
                const std::string ctx = "plates[" + std::to_string(idx) + "]";
                PlateConfig p;
                p.step_height_lambda_units.reset();
                if (!pj.is_object()) {
                    ck.fail(ctx, "must be an object");
                } else {
                    ck.check_keys(pj, ctx,
                                  {"diameter_m", "step_height_m",
                                   "step_height_lambda_units", "base_thickness_m",
                                   "center_x_m", "center_z_m"});
                    p.diameter_m = ck.num(pj, ctx + ".", "diameter_m", p.diameter_m);
                    if (pj.contains("step_height_m"))
                        p.step_height_m = ck.num(pj, ctx + ".", "step_height_m", 0.0);
                    if (pj.contains("step_height_lambda_units"))
                        p.step_height_lambda_units =
                            ck.num(pj, ctx + ".", "step_height_lambda_units", 0.0);
                    p.base_thickness_m =
                        ck.num(pj, ctx + ".", "base_thickness_m", p.base_thickness_m);
                    p.center_x_m = ck.num(pj, ctx + ".", "center_x_m", 0.0);
                    p.center_z_m = ck.num(pj, ctx + ".", "center_z_m", 0.0);
                    require_pos(ck, ctx + ".diameter_m", p.diameter_m);
                    require_nonneg(ck, ctx + ".base_thickness_m", p.base_thickness_m);
                    if (p.step_height_m.has_value() ==
                        p.step_height_lambda_units.has_value())
                        ck.fail(ctx, "needs exactly one of step_height_m / "
                                     "step_height_lambda_units");
                }
                c.plates.push_back(p);
                ++idx;
            }
        }
    }

    if (j.contains("grid")) {
        const json& g = j["grid"];
        ck.check_keys(g, "grid", {"nx", "nz", "extent_x_m", "extent_z_m"});
        c.grid.nx = ck.integer(g, "grid.", "nx", c.grid.nx);
        c.grid.nz = ck.integer(g, "grid.", "nz", c.grid.nz);
        c.grid.extent_x = ck.num(g, "grid.", "extent_x_m", c.grid.extent_x);
        c.grid.extent_z = ck.num(g, "grid.", "extent_z_m", c.grid.extent_z);
    }
    if (c.grid.nx < 1 || c.grid.nx > 8192) ck.fail("grid.nx", "must lie in [1, 8192]");
    if (c.grid.nz < 1 || c.grid.nz > 8192) ck.fail("grid.nz", "must lie in [1, 8192]");
    require_pos(ck, "grid.extent_x_m", c.grid.extent_x);
    require_pos(ck, "grid.extent_z_m", c.grid.extent_z);

    if (j.contains("phi0_rad")) {
        const json& p = j["phi0_rad"];
        c.phi0_rad.clear();
        if (p.is_number()) {
            c.phi0_rad.push_back(p.get<double>());
        } else if (p.is_array() && !p.empty()) {
            for (const json& v : p) {
                if (!v.is_number()) {
                    ck.fail("phi0_rad", "entries must be numbers");
                    break;
                }
                c.phi0_rad.push_back(v.get<double>());
            }
        } else {
            ck.fail("phi0_rad", "must be a number or a non-empty array");
        }
    }
    for (double v : c.phi0_rad)
        if (!std::isfinite(v)) ck.fail("phi0_rad", "values must be finite");

    if (j.contains("flag")) {
        const json& fj = j["flag"];
        ck.check_keys(fj, "flag", {"slab_thickness_m", "bragg_angle_rad", "rotations_rad"});
        c.flag.slab_thickness_m =
            ck.num(fj, "flag.", "slab_thickness_m", c.flag.slab_thickness_m);
        c.flag.bragg_angle_rad =
            ck.num(fj, "flag.", "bragg_angle_rad", c.flag.bragg_angle_rad);
        if (fj.contains("rotations_rad")) {
            if (!fj["rotations_rad"].is_array() || fj["rotations_rad"].empty()) {
                ck.fail("flag.rotations_rad", "must be a non-empty array");
            } else {
                c.flag.rotations_rad.clear();
                for (const json& v : fj["rotations_rad"]) {
                    if (!v.is_number()) {
                        ck.fail("flag.rotations_rad", "entries must be numbers");
                        break;
                    }
                    c.flag.rotations_rad.push_back(v.get<double>());
                }
            }
        }
    }
    require_pos(ck, "flag.slab_thickness_m", c.flag.slab_thickness_m);
    if (!(c.flag.bragg_angle_rad > 0.0) ||
        !(c.flag.bragg_angle_rad < std::numbers::pi / 2))
        ck.fail("flag.bragg_angle_rad", "must lie in (0, pi/2)");
    for (double r : c.flag.rotations_rad)
        if (!(std::fabs(r) < std::numbers::pi / 2 - c.flag.bragg_angle_rad))
            ck.fail("flag.rotations_rad",
                    "|rotation| must be < pi/2 - bragg_angle_rad");

    if (j.contains("detector")) {
        const json& dj = j["detector"];
        ck.check_keys(dj, "detector", {"nu", "nv", "pixel_pitch_m", "noise", "seed"});
        c.detector.nu = ck.integer(dj, "detector.", "nu", c.detector.nu);
        c.detector.nv = ck.integer(dj, "detector.", "nv", c.detector.nv);
        c.detector.pixel_pitch_m =
            ck.num(dj, "detector.", "pixel_pitch_m", c.detector.pixel_pitch_m);
        if (dj.contains("noise")) {
            const json& nj = dj["noise"];
            ck.check_keys(nj, "detector.noise", {"model", "sigma_rel", "counts"});
            c.detector.noise_model =
                ck.str(nj, "detector.noise.", "model", c.detector.noise_model);
            c.detector.sigma_rel =
                ck.num(nj, "detector.noise.", "sigma_rel", c.detector.sigma_rel);
            c.detector.counts = ck.num(nj, "detector.noise.", "counts", c.detector.counts);
        }
        if (dj.contains("seed")) {
            if (!dj["seed"].is_number_unsigned() && !dj["seed"].is_number_integer())
                ck.fail("detector.seed", "must be a non-negative integer");
            else if (dj["seed"].is_number_integer() && dj["seed"].get<long long>() < 0)
                ck.fail("detector.seed", "must be a non-negative integer");
            else
                c.detector.seed = dj["seed"].get<std::uint64_t>();
        }
    }
    if (c.detector.nu < 1 || c.detector.nu > 8192)
        ck.fail("detector.nu", "must lie in [1, 8192]");
    if (c.detector.nv < 1 || c.detector.nv > 8192)
        ck.fail("detector.nv", "must lie in [1, 8192]");
    require_nonneg(ck, "detector.pixel_pitch_m", c.detector.pixel_pitch_m);
    if (c.detector.noise_model != "none" && c.detector.noise_model != "gaussian" &&
        c.detector.noise_model != "poisson")
        ck.fail("detector.noise.model", "must be none, gaussian or poisson");
    if (c.detector.noise_model == "gaussian")
        require_pos(ck, "detector.noise.sigma_rel", c.detector.sigma_rel);
    if (c.detector.noise_model == "poisson")
        require_pos(ck, "detector.noise.counts", c.detector.counts);
    if (c.detector.noise_model != "none" && !c.detector.seed)
        ck.fail("detector.seed", "required when noise is enabled");

    if (j.contains("coherence")) {
        const json& cj = j["coherence"];
        ck.check_keys(cj, "coherence", {"sigma_x_m", "sigma_z_m"});
        CoherenceConfig coh;
        coh.sigma_x_m = ck.num(cj, "coherence.", "sigma_x_m", coh.sigma_x_m);
        coh.sigma_z_m = ck.num(cj, "coherence.", "sigma_z_m", coh.sigma_z_m);
        require_nonneg(ck, "coherence.sigma_x_m", coh.sigma_x_m);
        require_nonneg(ck, "coherence.sigma_z_m", coh.sigma_z_m);
        c.coherence = coh;
    }

    if (j.contains("crystal")) {
        const json& cj = j["crystal"];
        ck.check_keys(cj, "crystal",
                      {"bragg_angle_rad", "reduced_thickness", "y_abs_max",
                       "n_rocking", "n_gamma", "fan_y_half_range", "fan_taper_frac",
                       "fan_quadrature_points"});
        c.crystal.bragg_angle_rad =
            ck.num(cj, "crystal.", "bragg_angle_rad", c.crystal.bragg_angle_rad);
        c.crystal.reduced_thickness =
            ck.num(cj, "crystal.", "reduced_thickness", c.crystal.reduced_thickness);
        c.crystal.y_abs_max = ck.num(cj, "crystal.", "y_abs_max", c.crystal.y_abs_max);
        c.crystal.n_rocking = ck.integer(cj, "crystal.", "n_rocking", c.crystal.n_rocking);
        c.crystal.n_gamma = ck.integer(cj, "crystal.", "n_gamma", c.crystal.n_gamma);
        c.crystal.fan_y_half_range =
            ck.num(cj, "crystal.", "fan_y_half_range", c.crystal.fan_y_half_range);
        c.crystal.fan_taper_frac =
            ck.num(cj, "crystal.", "fan_taper_frac", c.crystal.fan_taper_frac);
        c.crystal.fan_quadrature_points = ck.integer(
            cj, "crystal.", "fan_quadrature_points", c.crystal.fan_quadrature_points);
    }
    if (!(c.crystal.bragg_angle_rad > 0.0) ||
        !(c.crystal.bragg_angle_rad < std::numbers::pi / 2))
        ck.fail("crystal.bragg_angle_rad", "must lie in (0, pi/2)");
    require_pos(ck, "crystal.reduced_thickness", c.crystal.reduced_thickness);
    require_pos(ck, "crystal.y_abs_max", c.crystal.y_abs_max);
    if (c.crystal.n_rocking < 2) ck.fail("crystal.n_rocking", "must be >= 2");
    if (c.crystal.n_gamma < 3) ck.fail("crystal.n_gamma", "must be >= 3");
    require_pos(ck, "crystal.fan_y_half_range", c.crystal.fan_y_half_range);
    if (!(c.crystal.fan_taper_frac > 0.0) || !(c.crystal.fan_taper_frac < 1.0))
        ck.fail("crystal.fan_taper_frac", "must lie in (0, 1)");
    if (c.crystal.fan_quadrature_points < 0 || c.crystal.fan_quadrature_points % 2 != 0)
        ck.fail("crystal.fan_quadrature_points", "must be an even integer >= 0");

    if (j.contains("oam")) {
        const json& oj = j["oam"];
        ck.check_keys(oj, "oam",
                      {"l", "ring_radius_m", "ring_width_m", "relative_phase_rad"});
        c.oam.l = ck.integer(oj, "oam.", "l", c.oam.l);
        c.oam.ring_radius_m = ck.num(oj, "oam.", "ring_radius_m", c.oam.ring_radius_m);
        c.oam.ring_width_m = ck.num(oj, "oam.", "ring_width_m", c.oam.ring_width_m);
        c.oam.relative_phase_rad =
            ck.num(oj, "oam.", "relative_phase_rad", c.oam.relative_phase_rad);
    }
    if (c.oam.l < 1) ck.fail("oam.l", "must be >= 1");
    require_pos(ck, "oam.ring_radius_m", c.oam.ring_radius_m);
    require_pos(ck, "oam.ring_width_m", c.oam.ring_width_m);

    if (j.contains("radon")) {
        const json& rj = j["radon"];
        ck.check_keys(rj, "radon", {"sampling", "n_slices"});
        c.radon.sampling = ck.integer(rj, "radon.", "sampling", c.radon.sampling);
        c.radon.n_slices = ck.integer(rj, "radon.", "n_slices", c.radon.n_slices);
    }
    if (c.radon.sampling < 0 ||
        (c.radon.sampling != 0 &&
         (c.radon.sampling < c.grid.nx || c.radon.sampling % c.grid.nx != 0)))
        ck.fail("radon.sampling", "must be 0 or a multiple of grid.nx");
    if (c.radon.n_slices < 0 ||
        (c.radon.n_slices != 0 &&
         (c.radon.n_slices < c.grid.nz || c.radon.n_slices % c.grid.nz != 0)))
        ck.fail("radon.n_slices", "must be 0 or a multiple of grid.nz");

    if (j.contains("deflection")) {
        const json& dj = j["deflection"];
        ck.check_keys(dj, "deflection", {"outer_radius_m", "inner_cutoff_m"});
        c.deflection.outer_radius_m =
            ck.num(dj, "deflection.", "outer_radius_m", c.deflection.outer_radius_m);
        c.deflection.inner_cutoff_m =
            ck.num(dj, "deflection.", "inner_cutoff_m", c.deflection.inner_cutoff_m);
    }
    require_pos(ck, "deflection.outer_radius_m", c.deflection.outer_radius_m);
    require_pos(ck, "deflection.inner_cutoff_m", c.deflection.inner_cutoff_m);
    if (!(c.deflection.inner_cutoff_m < c.deflection.outer_radius_m))
        ck.fail("deflection.inner_cutoff_m", "must be < outer_radius_m");

    if (j.contains("output")) {
        const json& oj = j["output"];
        ck.check_keys(oj, "output", {"directory", "formats"});
        c.output.directory = ck.str(oj, "output.", "directory", c.output.directory);
        if (oj.contains("formats")) {
            if (!oj["formats"].is_array() || oj["formats"].empty()) {
                ck.fail("output.formats", "must be a non-empty array");
            } else {
                c.output.formats.clear();
                for (const json& v : oj["formats"]) {
                    std::string s = v.is_string() ? v.get<std::string>() : "";
                    if (s != "pgm" && s != "csv") {
                        ck.fail("output.formats", "entries must be \"pgm\" or \"csv\"");
                        break;
                    }
                    c.output.formats.push_back(s);
                }
            }
        }
    }

    // plate step heights need the material; only meaningful when the basics hold
    if (ck.problems.empty()) {
        for (std::size_t i = 0; i < c.plates.size(); ++i) {
            const double hs = c.plate_step_height_m(c.plates[i]);
            if (hs < -c.plates[i].base_thickness_m)
                ck.fail("plates[" + std::to_string(i) + "]",
                        "step height below -base_thickness makes the solid negative");
        }
    }

    if (!ck.problems.empty()) throw ConfigError(std::move(ck.problems));
    return c;
}

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config: " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    ordered_json j;
    j["schema_version"] = c.schema_version;
    j["experiment"] = experiment_name(c.experiment);
    if (c.material_custom) {
        j["material"] = {{"name", c.material_custom->name},
                         {"number_density_per_m3", c.material_custom->number_density},
                         {"scattering_length_m", c.material_custom->scattering_length}};
    } else {
        j["material"] = c.material_preset;
    }
    j["wavelength_m"] = c.wavelength_m;
    j["plates"] = ordered_json::array();
    for (const auto& p : c.plates) {
        ordered_json pj;
        pj["diameter_m"] = p.diameter_m;
        if (p.step_height_m) pj["step_height_m"] = *p.step_height_m;
        if (p.step_height_lambda_units)
            pj["step_height_lambda_units"] = *p.step_height_lambda_units;
        pj["base_thickness_m"] = p.base_thickness_m;
        pj["center_x_m"] = p.center_x_m;
        pj["center_z_m"] = p.center_z_m;
        j["plates"].push_back(pj);
    }
    j["grid"] = {{"nx", c.grid.nx},
                 {"nz", c.grid.nz},
                 {"extent_x_m", c.grid.extent_x},
                 {"extent_z_m", c.grid.extent_z}};
    j["phi0_rad"] = c.phi0_rad;
    j["flag"] = {{"slab_thickness_m", c.flag.slab_thickness_m},
                 {"bragg_angle_rad", c.flag.bragg_angle_rad},
                 {"rotations_rad", c.flag.rotations_rad}};
    ordered_json dj;
    dj["nu"] = c.detector.nu;
    dj["nv"] = c.detector.nv;
    dj["pixel_pitch_m"] = c.detector.pixel_pitch_m;
    dj["noise"] = {{"model", c.detector.noise_model},
                   {"sigma_rel", c.detector.sigma_rel},
                   {"counts", c.detector.counts}};
    if (c.detector.seed) dj["seed"] = *c.detector.seed;
    j["detector"] = dj;
    if (c.coherence)
        j["coherence"] = {{"sigma_x_m", c.coherence->sigma_x_m},
                          {"sigma_z_m", c.coherence->sigma_z_m}};
    j["crystal"] = {{"bragg_angle_rad", c.crystal.bragg_angle_rad},
                    {"reduced_thickness", c.crystal.reduced_thickness},
                    {"y_abs_max", c.crystal.y_abs_max},
                    {"n_rocking", c.crystal.n_rocking},
                    {"n_gamma", c.crystal.n_gamma},
                    {"fan_y_half_range", c.crystal.fan_y_half_range},
                    {"fan_taper_frac", c.crystal.fan_taper_frac},
                    {"fan_quadrature_points", c.crystal.fan_quadrature_points}};
    j["oam"] = {{"l", c.oam.l},
                {"ring_radius_m", c.oam.ring_radius_m},
                {"ring_width_m", c.oam.ring_width_m},
                {"relative_phase_rad", c.oam.relative_phase_rad}};
    j["radon"] = {{"sampling", c.radon.sampling}, {"n_slices", c.radon.n_slices}};
    j["deflection"] = {{"outer_radius_m", c.deflection.outer_radius_m},
                       {"inner_cutoff_m", c.deflection.inner_cutoff_m}};
    j["output"] = {{"directory", c.output.directory}, {"formats", c.output.formats}};
    return j.dump(2) + "\n";
}

std::string apply_config_override(const std::string& json_text,
                                  const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("override must look like path.to.key=value: " +
                                    assignment);
    const std::string path = assignment.substr(0, eq);
    const std::string value_text = assignment.substr(eq + 1);

    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("JSON parse error: ") + e.what()});
    }
    json value;
    try {
        value = json::parse(value_text);
    } catch (const json::parse_error&) {
        value = value_text;  // treat unparseable values as strings
    }

    json* node = &j;
    std::size_t start = 0;
    for (;;) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot - start);
        if (key.empty())
            throw std::invalid_argument("override has an empty path segment: " + path);
        if (dot == std::string::npos) {
            (*node)[key] = value;
            break;
        }
        node = &(*node)[key];
        if (!node->is_object() && !node->is_null())
            throw std::invalid_argument("override path crosses a non-object: " + path);
        start = dot + 1;
    }
    return j.dump();
}

}  // namespace sppsim
