#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sppsim {

// Physical meaning of a field's samples. Unit mismatches between operations
// are programming errors and throw std::invalid_argument.
enum class Unit {
    thickness_m,     // material thickness along the beam
    phase_rad,       // accumulated phase
    intensity_norm,  // normalized detector intensity in [0, 1] before noise
    visibility,      // fringe visibility in [0, 1]
    dimensionless,
};

inline const char* unit_name(Unit u) {
    switch (u) {
        case Unit::thickness_m: return "thickness_m";
        case Unit::phase_rad: return "phase_rad";
        case Unit::intensity_norm: return "intensity_norm";
        case Unit::visibility: return "visibility";
        case Unit::dimensionless: return "dimensionless";
    }
    return "?";
}

// Uniform sampling grid in the aperture plane, centered on the origin.
// x runs along columns (index ix), z along rows (index iz, iz = 0 at the
// lowest z). Sample positions are pixel centers.
struct GridSpec {
    int nx = 0;
    int nz = 0;
    double extent_x = 0.0;  // [m]
    double extent_z = 0.0;  // [m]

    double dx() const { return extent_x / nx; }
    double dz() const { return extent_z / nz; }
    double x_center(int ix) const {
        return (static_cast<double>(ix) + 0.5) * dx() - 0.5 * extent_x;
    }
    double z_center(int iz) const {
        return (static_cast<double>(iz) + 0.5) * dz() - 0.5 * extent_z;
    }

    bool operator==(const GridSpec&) const = default;

    void validate() const {
        if (nx < 1 || nz < 1)
            throw std::invalid_argument("GridSpec: nx and nz must be >= 1");
        if (!(extent_x > 0.0) || !(extent_z > 0.0) ||
            !std::isfinite(extent_x) || !std::isfinite(extent_z))
            throw std::invalid_argument("GridSpec: extents must be finite and > 0");
    }
};

// Immutable 2-D sample array over a GridSpec. Row-major, index iz*nx + ix.
// Operations take fields by const reference and return new fields, so any
// number of them may run concurrently on shared inputs.
class ScalarField2D {
  public:
    ScalarField2D(GridSpec grid, Unit unit, std::vector<double> values)
        : grid_(grid), unit_(unit), values_(std::move(values)) {
        grid_.validate();
        if (values_.size() != static_cast<std::size_t>(grid_.nx) * grid_.nz)
            throw std::invalid_argument("ScalarField2D: value count does not match grid");
    }

    static ScalarField2D zeros(GridSpec grid, Unit unit) {
        grid.validate();
        return ScalarField2D(grid, unit,
                             std::vector<double>(static_cast<std::size_t>(grid.nx) * grid.nz, 0.0));
    }

    const GridSpec& grid() const { return grid_; }
    Unit unit() const { return unit_; }
    int nx() const { return grid_.nx; }
    int nz() const { return grid_.nz; }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    const double* data() const { return values_.data(); }

    double at(int ix, int iz) const {
        return values_[static_cast<std::size_t>(iz) * grid_.nx + ix];
    }

    void require_unit(Unit expected, const char* what) const {
        if (unit_ != expected)
            throw std::invalid_argument(std::string(what) + ": expected " +
                                        unit_name(expected) + " field, got " +
                                        unit_name(unit_));
    }

  private:
    GridSpec grid_;
    Unit unit_;
    std::vector<double> values_;
};

}  // namespace sppsim
