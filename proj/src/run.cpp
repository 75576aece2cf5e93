#include "sppsim/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>

#include "json.hpp"
#include "sppsim/dyndiff.hpp"
#include "sppsim/geometry.hpp"
#include "sppsim/interferogram.hpp"
#include "sppsim/io.hpp"
#include "sppsim/kernels.hpp"
#include "sppsim/material.hpp"
#include "sppsim/oam.hpp"

namespace sppsim {

using nlohmann::ordered_json;

namespace {

std::filesystem::path resolve_out_dir(const RunConfig& cfg) {
    if (!cfg.output.directory.empty()) return cfg.output.directory;
    if (const char* env = std::getenv("SPPSIM_OUT_DIR"); env && *env) return env;
    return "./out";
}

std::string indexed(const std::string& stem, std::size_t i) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%03zu", i);
    return stem + "_" + buf;
}

SpiralPhasePlate make_plate(const RunConfig& cfg, const PlateConfig& p) {
    SpiralPhasePlate spp;
    spp.diameter = p.diameter_m;
    spp.step_height = cfg.plate_step_height_m(p);
    spp.base_thickness = p.base_thickness_m;
    spp.center_x = p.center_x_m;
    spp.center_z = p.center_z_m;
    return spp;
}

DetectorSpec make_detector(const RunConfig& cfg) {
    DetectorSpec det;
    det.nu = cfg.detector.nu;
    det.nv = cfg.detector.nv;
    det.pixel_pitch = cfg.detector.pixel_pitch_m > 0.0
                          ? cfg.detector.pixel_pitch_m
                          : cfg.grid.extent_x / cfg.detector.nu;
    return det;
}

NoiseSpec make_noise(const RunConfig& cfg) {
    NoiseSpec n;
    if (cfg.detector.noise_model == "gaussian")
        n.model = NoiseSpec::Model::gaussian;
    else if (cfg.detector.noise_model == "poisson")
        n.model = NoiseSpec::Model::poisson;
    else
        n.model = NoiseSpec::Model::none;
    n.sigma_rel = cfg.detector.sigma_rel;
    n.counts = cfg.detector.counts;
    n.seed = cfg.detector.seed.value_or(0);
    return n;
}

struct FieldStats {
    double min, max, mean;
};

FieldStats stats(const ScalarField2D& f) {
    const auto mm = kernels::min_max(f.data(), f.size());
    const double mean = kernels::sum(f.data(), f.size()) / double(f.size());
    return {mm.min, mm.max, mean};
}

ordered_json stats_json(const ScalarField2D& f) {
    const FieldStats s = stats(f);
    return {{"min", s.min}, {"max", s.max}, {"mean", s.mean}};
}

// Writes fields and tables in the formats the config asks for and keeps the
// list of everything written.
struct Sink {
    std::filesystem::path dir;
    bool pgm = false;
    bool csv = false;
    std::vector<std::filesystem::path> outputs;

    explicit Sink(const RunConfig& cfg) : dir(resolve_out_dir(cfg)) {
        for (const auto& f : cfg.output.formats) {
            pgm |= f == "pgm";
            csv |= f == "csv";
        }
        std::filesystem::create_directories(dir);
    }

    void field(const ScalarField2D& f, const std::string& stem, PgmScaling scaling) {
        if (pgm) {
            auto p = dir / (stem + ".pgm");
            write_pgm16(p, f, scaling);
            outputs.push_back(p);
        }
        if (csv) {
            auto p = dir / (stem + ".csv");
            write_field_csv(p, f);
            outputs.push_back(p);
        }
    }

    void table(const std::string& stem, const std::vector<std::string>& cols,
               const std::vector<std::vector<double>>& rows) {
        auto p = dir / (stem + ".csv");
        write_table_csv(p, cols, rows);
        outputs.push_back(p);
    }

    void text(const std::string& name, const std::string& body) {
        auto p = dir / name;
        std::ofstream f(p, std::ios::binary);
        if (!f) throw IoError("cannot open for writing: " + p.string());
        f << body;
        if (!f) throw IoError("short write: " + p.string());
        outputs.push_back(p);
    }
};

ScalarField2D stacked_direct(const RunConfig& cfg) {
    std::vector<ScalarField2D> maps;
    maps.reserve(cfg.plates.size());
    for (const auto& p : cfg.plates)
        maps.push_back(thickness_map_direct(make_plate(cfg, p), cfg.grid));
    return stack_thickness(maps);
}

double max_abs_conservation_residual(const ScalarField2D& g,
                                     const ScalarField2D& o) {
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        worst = std::max(worst, std::fabs(g.values()[i] + o.values()[i] - 1.0));
    return worst;
}

// Renders one thickness map through both exit ports at each requested phase
// offset, optionally with finite coherence, detector binning and noise.
// Shared by the interferogram, stack, flag and coherence drivers.
void render_ports(const RunConfig& cfg, const ScalarField2D& thickness,
                  double d_lambda, const std::vector<double>& phi0s,
                  bool use_coherence, Sink& sink, ordered_json& summary) {
    const DetectorSpec det = make_detector(cfg);
    const NoiseSpec noise = make_noise(cfg);
    const std::uint64_t o_stream_offset =
        std::uint64_t(det.nu) * std::uint64_t(det.nv);

    CoherenceModel coh;
    if (use_coherence) {
        const CoherenceConfig cc = cfg.coherence.value_or(CoherenceConfig{});
        coh.sigma_x = cc.sigma_x_m;
        coh.sigma_z = cc.sigma_z_m;
    }

    double worst_residual = 0.0;
    ordered_json frames = ordered_json::array();
    for (std::size_t k = 0; k < phi0s.size(); ++k) {
        const double phi0 = phi0s[k];
        ScalarField2D g = use_coherence
                              ? coherent_interferogram(thickness, d_lambda, phi0, coh)
                              : ideal_interferogram(thickness, d_lambda, phi0);
        ScalarField2D o = complementary_interferogram(g);
        worst_residual = std::max(worst_residual, max_abs_conservation_residual(g, o));

        ScalarField2D gb = bin_to_detector(g, det);
        ScalarField2D ob = bin_to_detector(o, det);
        if (noise.model != NoiseSpec::Model::none) {
            gb = apply_noise(gb, noise, 0);
            ob = apply_noise(ob, noise, o_stream_offset);
        }
        sink.field(gb, indexed("g", k), PgmScaling::unit_interval);
        sink.field(ob, indexed("o", k), PgmScaling::unit_interval);

        ordered_json fr;
        fr["phi0_rad"] = phi0;
        fr["g"] = stats_json(gb);
        fr["o"] = stats_json(ob);
        frames.push_back(fr);
    }
    summary["port_sum_max_abs_residual"] = worst_residual;
    summary["frames"] = frames;
}

void drive_spp_map(const RunConfig& cfg, Sink& sink, ordered_json& summary) {
    const double d_lambda = lambda_thickness(cfg.material(), cfg.wavelength_m);

    std::vector<ScalarField2D> direct, radon;
    bool warn = false;
    int used_sampling = 0;
    ordered_json plates = ordered_json::array();
    for (const auto& pc : cfg.plates) {
        const SpiralPhasePlate spp = make_plate(cfg, pc);
        direct.push_back(thickness_map_direct(spp, cfg.grid));
        RadonConfig rc;
        rc.sampling = cfg.radon.sampling;
        rc.n_slices = cfg.radon.n_slices;
        RadonMap rm = thickness_map_radon(spp, cfg.grid, rc);
        warn |= rm.depth_resolution_warning;
        used_sampling = cfg.radon.sampling > 0 ? cfg.radon.sampling : cfg.grid.nx;
        radon.push_back(std::move(rm.thickness));
        plates.push_back(
            {{"step_height_m", spp.step_height},
             {"effective_momentum", effective_momentum(spp.step_height, d_lambda)}});
    }
    ScalarField2D td = stack_thickness(direct);
    ScalarField2D tr = stack_thickness(radon);
    sink.field(td, "thickness_direct", PgmScaling::auto_minmax);
    sink.field(tr, "thickness_radon", PgmScaling::auto_minmax);

    double sq = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < td.size(); ++i) {
        const double d = tr.values()[i] - td.values()[i];
        sq += d * d;
        worst = std::max(worst, std::fabs(d));
    }
    summary["d_lambda_m"] = d_lambda;
    summary["plates"] = plates;
    summary["radon_sampling"] = used_sampling;
    summary["depth_resolution_warning"] = warn;
    summary["route_rms_diff_m"] = std::sqrt(sq / double(td.size()));
    summary["route_max_diff_m"] = worst;
    summary["thickness_direct"] = stats_json(td);
    summary["thickness_radon"] = stats_json(tr);
}

void drive_interferogram(const RunConfig& cfg, Sink& sink, ordered_json& summary) {
    const double d_lambda = lambda_thickness(cfg.material(), cfg.wavelength_m);
    ScalarField2D thickness = stacked_direct(cfg);
    sink.field(thickness, "thickness", PgmScaling::auto_minmax);

    double total_l = 0.0;
    ordered_json plates = ordered_json::array();
    for (const auto& pc : cfg.plates) {
        const double hs = cfg.plate_step_height_m(pc);
        const double l = effective_momentum(hs, d_lambda);
        total_l += l;
        plates.push_back({{"step_height_m", hs}, {"effective_momentum", l}});
    }
    summary["d_lambda_m"] = d_lambda;
    summary["plates"] = plates;
    summary["effective_momentum_total"] = total_l;

    const auto& p0 = cfg.plates.front();
    const WindingResult w =
        phase_winding(thickness, d_lambda, p0.center_x_m, p0.center_z_m,
                      0.25 * p0.diameter_m);
    summary["winding"] = {{"closed_turns", w.closed_turns},
                          {"open_slope", w.open_slope}};

    render_ports(cfg, thickness, d_lambda, cfg.phi0_rad, cfg.coherence.has_value(),
                 sink, summary);
}

void drive_stack(const RunConfig& cfg, Sink& sink, ordered_json& summary) {
    const double d_lambda = lambda_thickness(cfg.material(), cfg.wavelength_m);

    std::vector<ScalarField2D> maps;
    ordered_json plates = ordered_json::array();
    double total_l = 0.0;
    for (std::size_t i = 0; i < cfg.plates.size(); ++i) {
        maps.push_back(thickness_map_direct(make_plate(cfg, cfg.plates[i]), cfg.grid));
        sink.field(maps.back(), indexed("thickness_plate", i), PgmScaling::auto_minmax);
        const double hs = cfg.plate_step_height_m(cfg.plates[i]);
        const double l = effective_momentum(hs, d_lambda);
        total_l += l;
        plates.push_back({{"step_height_m", hs}, {"effective_momentum", l}});
    }
    ScalarField2D stacked = stack_thickness(maps);
    sink.field(stacked, "thickness_stack", PgmScaling::auto_minmax);

    summary["d_lambda_m"] = d_lambda;
    summary["plates"] = plates;
    summary["effective_momentum_total"] = total_l;

    const auto& p0 = cfg.plates.front();
    const WindingResult w = phase_winding(stacked, d_lambda, p0.center_x_m,
                                          p0.center_z_m, 0.25 * p0.diameter_m);
    summary["winding"] = {{"closed_turns", w.closed_turns},
                          {"open_slope", w.open_slope}};

    render_ports(cfg, stacked, d_lambda, cfg.phi0_rad, cfg.coherence.has_value(),
                 sink, summary);
}

void drive_flag_series(const RunConfig& cfg, Sink& sink, ordered_json& summary) {
    const double d_lambda = lambda_thickness(cfg.material(), cfg.wavelength_m);
    ScalarField2D thickness = stacked_direct(cfg);
    sink.field(thickness, "thickness", PgmScaling::auto_minmax);

    PhaseFlag flag;
    flag.slab_thickness = cfg.flag.slab_thickness_m;
    flag.bragg_angle = cfg.flag.bragg_angle_rad;

    // Each flag rotation adds the same phase everywhere: the series is the
    // base pattern under a global phase sweep.
    std::vector<double> phi0s;
    std::vector<std::vector<double>> rows;
    double worst_frac = 0.0;
    for (double rot : cfg.flag.rotations_rad) {
        const double dd = flag_delta_thickness(flag, rot);
        const double phi = 2.0 * std::numbers::pi * dd / d_lambda;
        phi0s.push_back(cfg.phi0_rad.front() + phi);
        rows.push_back({rot, dd, phi});
        worst_frac = std::max(worst_frac, std::fabs(dd) / d_lambda);
    }
    sink.table("flag_series", {"rotation_rad", "delta_thickness_m", "phase_rad"},
               rows);

    summary["d_lambda_m"] = d_lambda;
    summary["slab_thickness_m"] = flag.slab_thickness;
    summary["bragg_angle_rad"] = flag.bragg_angle;
    summary["max_abs_delta_over_d_lambda"] = worst_frac;

    render_ports(cfg, thickness, d_lambda, phi0s, cfg.coherence.has_value(), sink,
                 summary);
}

void drive_coherence(const RunConfig& cfg, Sink& sink, ordered_json& summary) {
    const double d_lambda = lambda_thickness(cfg.material(), cfg.wavelength_m);
    ScalarField2D thickness = stacked_direct(cfg);
    sink.field(thickness, "thickness", PgmScaling::auto_minmax);

    const CoherenceConfig cc = cfg.coherence.value_or(CoherenceConfig{});
    CoherenceModel coh{cc.sigma_x_m, cc.sigma_z_m};
    const VisibilityMap vm = visibility_map(thickness, d_lambda, coh);
    sink.field(vm.vis, "visibility", PgmScaling::unit_interval);

    summary["d_lambda_m"] = d_lambda;
    summary["sigma_x_m"] = cc.sigma_x_m;
    summary["sigma_z_m"] = cc.sigma_z_m;
    summary["unresolved"] = vm.unresolved;
    summary["visibility"] = stats_json(vm.vis);

    render_ports(cfg, thickness, d_lambda, cfg.phi0_rad, true, sink, summary);
}

void drive_borrmann(const RunConfig& cfg, Sink& sink, ordered_json& summary) {
    LaueCrystal crystal;
    crystal.bragg_angle = cfg.crystal.bragg_angle_rad;
    crystal.reduced_thickness = cfg.crystal.reduced_thickness;
    crystal.validate();

    const int nr = cfg.crystal.n_rocking;
    const double ymax = cfg.crystal.y_abs_max;
    std::vector<std::vector<double>> rock_rows;
    rock_rows.reserve(nr);
    double worst_sum = 0.0;
    for (int i = 0; i < nr; ++i) {
        const double y = -ymax + double(i) * (2.0 * ymax / double(nr - 1));
        const RockingPoint rp = rocking_curve(crystal, y);
        rock_rows.push_back({y, rp.reflected, rp.forward});
        worst_sum = std::max(worst_sum, std::fabs(rp.reflected + rp.forward - 1.0));
    }
    sink.table("rocking", {"y", "reflected", "forward"}, rock_rows);

    const int ng = cfg.crystal.n_gamma;
    std::vector<double> gamma(ng);
    for (int k = 0; k < ng; ++k)
        gamma[k] = -1.0 + (double(k) + 0.5) * (2.0 / double(ng));

    FanConfig fc;
    fc.y_half_range = cfg.crystal.fan_y_half_range;
    fc.taper_frac = cfg.crystal.fan_taper_frac;
    fc.quadrature_points = cfg.crystal.fan_quadrature_points;
    const FanProfile fan = fan_profile(crystal, gamma, fc);

    std::vector<std::vector<double>> fan_rows;
    fan_rows.reserve(ng);
    double peak = 0.0, edge_sym = 0.0;
    for (int k = 0; k < ng; ++k) {
        fan_rows.push_back({fan.gamma[k], fan.intensity[k]});
        peak = std::max(peak, fan.intensity[k]);
        edge_sym = std::max(edge_sym,
                            std::fabs(fan.intensity[k] - fan.intensity[ng - 1 - k]));
    }
    sink.table("fan", {"gamma", "intensity"}, fan_rows);

    summary["reduced_thickness"] = crystal.reduced_thickness;
    summary["bragg_angle_rad"] = crystal.bragg_angle;
    summary["rocking_sum_max_abs_residual"] = worst_sum;
    summary["fan_quadrature_points"] = fan.quadrature_points;
    summary["fan_windowed_flux"] = fan.windowed_flux;
    summary["fan_peak_intensity"] = peak;
    summary["fan_symmetry_max_abs_residual"] = edge_sym;
}

void drive_oam_ring(const RunConfig& cfg, Sink& sink, ordered_json& summary) {
    OamSuperposition s;
    s.l = cfg.oam.l;
    s.ring_radius = cfg.oam.ring_radius_m;
    s.ring_width = cfg.oam.ring_width_m;
    s.relative_phase = cfg.oam.relative_phase_rad;

    ScalarField2D intensity = superposition_intensity(s, cfg.grid);
    sink.field(intensity, "ring", PgmScaling::unit_interval);

    const int maxima =
        count_azimuthal_maxima(intensity, 0.0, 0.0, s.ring_radius);
    summary["l"] = s.l;
    summary["relative_phase_rad"] = s.relative_phase;
    summary["azimuthal_maxima"] = maxima;
    summary["expected_maxima"] = 2 * s.l;
    summary["matches_expected"] = maxima == 2 * s.l;
}

void drive_deflection(const RunConfig& cfg, Sink& sink, ordered_json& summary) {
    const Material mat = cfg.material();
    const double d_lambda = lambda_thickness(mat, cfg.wavelength_m);
    const double hs = cfg.plate_step_height_m(cfg.plates.front());
    const double outer = cfg.deflection.outer_radius_m;
    const double inner = cfg.deflection.inner_cutoff_m;

    const int npts = 100;
    std::vector<std::vector<double>> rows;
    rows.reserve(npts);
    for (int i = 0; i < npts; ++i) {
        const double r = inner + (double(i) + 0.5) * (outer - inner) / double(npts);
        rows.push_back(
            {r, prism_deflection_point(mat, cfg.wavelength_m, hs, r)});
    }
    sink.table("deflection_profile", {"radius_m", "deflection_rad"}, rows);

    summary["d_lambda_m"] = d_lambda;
    summary["refractive_decrement"] = refractive_decrement(mat, cfg.wavelength_m);
    summary["step_height_m"] = hs;
    summary["effective_momentum"] = effective_momentum(hs, d_lambda);
    summary["deflection_at_outer_rad"] =
        prism_deflection_point(mat, cfg.wavelength_m, hs, outer);
    summary["deflection_disk_mean_rad"] =
        prism_deflection_disk_mean(mat, cfg.wavelength_m, hs, outer, inner);
}

}  // namespace

RunResult run_experiment(const RunConfig& cfg) {
    Sink sink(cfg);

    ordered_json summary;
    summary["experiment"] = experiment_name(cfg.experiment);
    summary["material"] = cfg.material().name;
    summary["wavelength_m"] = cfg.wavelength_m;
    summary["kernel_backend"] = kernels::backend_name(kernels::active_backend());

    switch (cfg.experiment) {
        case Experiment::spp_map: drive_spp_map(cfg, sink, summary); break;
        case Experiment::interferogram: drive_interferogram(cfg, sink, summary); break;
        case Experiment::stack: drive_stack(cfg, sink, summary); break;
        case Experiment::flag_series: drive_flag_series(cfg, sink, summary); break;
        case Experiment::coherence: drive_coherence(cfg, sink, summary); break;
        case Experiment::borrmann: drive_borrmann(cfg, sink, summary); break;
        case Experiment::oam_ring: drive_oam_ring(cfg, sink, summary); break;
        case Experiment::deflection: drive_deflection(cfg, sink, summary); break;
    }

    sink.text("config.json", serialize_config(cfg));
    const std::string summary_text = summary.dump(2) + "\n";
    sink.text("summary.json", summary_text);

    RunResult res;
    res.out_dir = sink.dir;
    res.outputs = std::move(sink.outputs);
    res.summary_json = summary_text;
    return res;
}

}  // namespace sppsim
