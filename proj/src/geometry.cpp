#include "sppsim/geometry.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "sppsim/kernels.hpp"

namespace sppsim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void SpiralPhasePlate::validate() const {
    if (!(diameter > 0.0) || !std::isfinite(diameter))
        throw std::invalid_argument("SpiralPhasePlate: diameter must be > 0");
    if (!std::isfinite(step_height))
        throw std::invalid_argument("SpiralPhasePlate: step_height must be finite");
    if (!(base_thickness >= 0.0) || !std::isfinite(base_thickness))
        throw std::invalid_argument("SpiralPhasePlate: base_thickness must be >= 0");
    if (step_height < -base_thickness)
        throw std::invalid_argument(
            "SpiralPhasePlate: step_height < -base_thickness makes the solid "
            "negative at the seam");
    if (!std::isfinite(center_x) || !std::isfinite(center_z))
        throw std::invalid_argument("SpiralPhasePlate: center must be finite");
}

double spp_height(const SpiralPhasePlate& spp, double x, double z) {
    const double ux = x - spp.center_x;
    const double uz = z - spp.center_z;
    const double r2 = ux * ux + uz * uz;
    const double radius = 0.5 * spp.diameter;
    if (r2 > radius * radius) return 0.0;
    double theta = std::atan2(uz, ux);
    if (theta < 0.0) theta += kTwoPi;  // [0, 2*pi), seam low side at theta = 0
    return spp.base_thickness + spp.step_height * (theta / kTwoPi);
}

ScalarField2D thickness_map_direct(const SpiralPhasePlate& spp,
                                   const GridSpec& grid, bool supersample) {
    spp.validate();
    grid.validate();
    std::vector<double> out(static_cast<std::size_t>(grid.nx) * grid.nz);
    const double dx = grid.dx();
    const double dz = grid.dz();
    for (int iz = 0; iz < grid.nz; ++iz) {
        const double z = grid.z_center(iz);
        double* row = out.data() + static_cast<std::size_t>(iz) * grid.nx;
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double x = grid.x_center(ix);
            if (supersample) {
                double acc = 0.0;
                for (int sz = -1; sz <= 1; sz += 2)
                    for (int sx = -1; sx <= 1; sx += 2)
                        acc += spp_height(spp, x + 0.25 * sx * dx, z + 0.25 * sz * dz);
                row[ix] = 0.25 * acc;
            } else {
                row[ix] = spp_height(spp, x, z);
            }
        }
    }
    return ScalarField2D(grid, Unit::thickness_m, std::move(out));
}

void RadonConfig::validate(const GridSpec& grid) const {
    if (scan_angle != 0.0)
        throw std::invalid_argument(
            "RadonConfig: only the zero-angle projection is supported");
    if (sampling != 0) {
        if (sampling < grid.nx || sampling % grid.nx != 0)
            throw std::invalid_argument(
                "RadonConfig: sampling must be a positive multiple of grid nx");
    }
    if (n_slices != 0) {
        if (n_slices < grid.nz || n_slices % grid.nz != 0)
            throw std::invalid_argument(
                "RadonConfig: n_slices must be a positive multiple of grid nz");
    }
}

RadonMap thickness_map_radon(const SpiralPhasePlate& spp, const GridSpec& grid,
                             const RadonConfig& cfg) {
    spp.validate();
    grid.validate();
    cfg.validate(grid);
    const int sampling = cfg.sampling == 0 ? grid.nx : cfg.sampling;
    const int n_slices = cfg.n_slices == 0 ? grid.nz : cfg.n_slices;
    const int qx = sampling / grid.nx;
    const int qz = n_slices / grid.nz;

    const double h_max = spp.base_thickness + std::fmax(spp.step_height, 0.0);
    const double dy = h_max / sampling;
    const double ray_dx = grid.extent_x / sampling;
    const double slice_dz = grid.extent_z / n_slices;
    const double radius = 0.5 * spp.diameter;
    const double r2max = radius * radius;

    std::vector<double> thresholds(sampling);
    std::vector<std::uint32_t> counts(sampling);
    std::vector<double> out(static_cast<std::size_t>(grid.nx) * grid.nz, 0.0);
    const double norm = 1.0 / (static_cast<double>(qx) * qz);

    for (int k = 0; k < n_slices; ++k) {
        const double z = (static_cast<double>(k) + 0.5) * slice_dz - 0.5 * grid.extent_z;
        const double uz = z - spp.center_z;
        for (int j = 0; j < sampling; ++j) {
            const double x = (static_cast<double>(j) + 0.5) * ray_dx - 0.5 * grid.extent_x;
            const double ux = x - spp.center_x;
            double h = 0.0;
            if (ux * ux + uz * uz <= r2max) {
                double theta = std::atan2(uz, ux);
                if (theta < 0.0) theta += kTwoPi;
                h = spp.base_thickness + spp.step_height * (theta / kTwoPi);
            }
            thresholds[j] = h;
        }
        kernels::count_below(thresholds.data(), thresholds.size(), 0.0, dy,
                             static_cast<std::uint32_t>(sampling), counts.data());
        double* row = out.data() + static_cast<std::size_t>(k / qz) * grid.nx;
        for (int j = 0; j < sampling; ++j)
            row[j / qx] += dy * counts[j];
    }
    for (double& v : out) v *= norm;

    RadonMap result{ScalarField2D(grid, Unit::thickness_m, std::move(out)), false};
    result.depth_resolution_warning =
        std::fabs(spp.step_height) > 0.0 && dy > 0.5 * std::fabs(spp.step_height);
    return result;
}

ScalarField2D stack_thickness(const std::vector<ScalarField2D>& maps) {
    if (maps.empty())
        throw std::invalid_argument("stack_thickness: need at least one map");
    for (const auto& m : maps) {
        m.require_unit(Unit::thickness_m, "stack_thickness");
        if (!(m.grid() == maps.front().grid()))
            throw std::invalid_argument("stack_thickness: grids must match");
    }
    std::vector<double> acc = maps.front().values();
    for (std::size_t i = 1; i < maps.size(); ++i)
        kernels::add_inplace(acc.data(), maps[i].data(), acc.size());
    return ScalarField2D(maps.front().grid(), Unit::thickness_m, std::move(acc));
}

void PhaseFlag::validate() const {
    if (!(slab_thickness > 0.0) || !std::isfinite(slab_thickness))
        throw std::invalid_argument("PhaseFlag: slab_thickness must be > 0");
    if (!(bragg_angle > 0.0) || !(bragg_angle < std::numbers::pi / 2))
        throw std::invalid_argument("PhaseFlag: bragg_angle must lie in (0, pi/2)");
}

double flag_delta_thickness(const PhaseFlag& flag, double rotation) {
    flag.validate();
    const double lim = std::numbers::pi / 2 - flag.bragg_angle;
    if (!(std::fabs(rotation) < lim))
        throw std::invalid_argument(
            "flag_delta_thickness: |rotation| must be < pi/2 - bragg_angle");
    return flag.slab_thickness * (1.0 / std::cos(flag.bragg_angle - rotation) -
                                  1.0 / std::cos(flag.bragg_angle + rotation));
}

}  // namespace sppsim
