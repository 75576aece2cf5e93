#include "sppsim/oam.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sppsim/kernels.hpp"

namespace sppsim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void OamSuperposition::validate() const {
    if (l < 1) throw std::invalid_argument("OamSuperposition: l must be >= 1");
    if (!(ring_radius > 0.0) || !std::isfinite(ring_radius))
        throw std::invalid_argument("OamSuperposition: ring_radius must be > 0");
    if (!(ring_width > 0.0) || !std::isfinite(ring_width))
        throw std::invalid_argument("OamSuperposition: ring_width must be > 0");
    if (!std::isfinite(relative_phase))
        throw std::invalid_argument("OamSuperposition: relative_phase must be finite");
}

ScalarField2D superposition_intensity(const OamSuperposition& s,
                                      const GridSpec& grid) {
    s.validate();
    grid.validate();
    if (s.ring_width < 4.0 * grid.dx() || s.ring_width < 4.0 * grid.dz())
        throw std::domain_error(
            "superposition_intensity: grid does not resolve ring_width "
            "(need >= 4 pixels)");

    const std::size_t n = static_cast<std::size_t>(grid.nx) * grid.nz;
    std::vector<double> envelope(n), turns(n);
    const double inv2w2 = 1.0 / (2.0 * s.ring_width * s.ring_width);
    const double two_l = 2.0 * s.l;
    for (int iz = 0; iz < grid.nz; ++iz) {
        const double z = grid.z_center(iz);
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double x = grid.x_center(ix);
            const double r = std::hypot(x, z);
            const double dr = r - s.ring_radius;
            const std::size_t i = static_cast<std::size_t>(iz) * grid.nx + ix;
            envelope[i] = std::exp(-dr * dr * inv2w2);
            // cos^2(l*theta + phase/2) = (1 + cos(2*l*theta + phase))/2
            turns[i] = (two_l * std::atan2(z, x) + s.relative_phase) / kTwoPi;
        }
    }
    std::vector<double> c(n);
    kernels::cospi2_array(turns.data(), c.data(), n);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = envelope[i] * (0.5 + 0.5 * c[i]);
    return ScalarField2D(grid, Unit::intensity_norm, std::move(out));
}

int count_azimuthal_maxima(const ScalarField2D& intensity, double cx, double cz,
                           double radius, int n_samples, double prominence_frac) {
    if (!(radius > 0.0))
        throw std::invalid_argument("count_azimuthal_maxima: radius must be > 0");
    if (n_samples < 16)
        throw std::invalid_argument("count_azimuthal_maxima: need >= 16 samples");
    if (!(prominence_frac >= 0.0) || !(prominence_frac < 1.0))
        throw std::invalid_argument(
            "count_azimuthal_maxima: prominence_frac must lie in [0, 1)");
    const GridSpec& g = intensity.grid();

    std::vector<double> v(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        const double th = kTwoPi * (static_cast<double>(k) + 0.5) / n_samples;
        const double x = cx + radius * std::cos(th);
        const double z = cz + radius * std::sin(th);
        // bilinear interpolation between pixel centers
        const double fx = (x + 0.5 * g.extent_x) / g.dx() - 0.5;
        const double fz = (z + 0.5 * g.extent_z) / g.dz() - 0.5;
        const int ix = static_cast<int>(std::floor(fx));
        const int iz = static_cast<int>(std::floor(fz));
        if (ix < 0 || ix + 1 >= g.nx || iz < 0 || iz + 1 >= g.nz)
            throw std::domain_error("count_azimuthal_maxima: circle leaves the grid");
        const double tx = fx - ix;
        const double tz = fz - iz;
        const double v00 = intensity.at(ix, iz);
        const double v10 = intensity.at(ix + 1, iz);
        const double v01 = intensity.at(ix, iz + 1);
        const double v11 = intensity.at(ix + 1, iz + 1);
        v[k] = (1.0 - tz) * ((1.0 - tx) * v00 + tx * v10) +
               tz * ((1.0 - tx) * v01 + tx * v11);
    }

    double lo = v[0], hi = v[0];
    for (double s : v) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    const double threshold = prominence_frac * (hi - lo);

    // Collect the alternating local extrema of the cyclic profile. Plateaus
    // collapse onto their last sample; uniform rings have none and count 0.
    int trend = 0;
    for (int k = n_samples - 1; k >= 0 && trend == 0; --k) {
        const double d = v[(k + 1) % n_samples] - v[k];
        trend = d > 0.0 ? 1 : d < 0.0 ? -1 : 0;
    }
    if (trend == 0) return 0;
    std::vector<double> ext;
    std::vector<bool> is_max;
    for (int k = 0; k < n_samples; ++k) {
        const double d = v[(k + 1) % n_samples] - v[k];
        const int s = d > 0.0 ? 1 : d < 0.0 ? -1 : 0;
        if (s != 0 && s != trend) {
            ext.push_back(v[k]);
            is_max.push_back(trend > 0);
            trend = s;
        }
    }

    // Persistence pruning: repeatedly drop the adjacent max/min pair with the
    // smallest swing until every remaining swing reaches the threshold. This
    // keeps real petals and discards interpolation ripple on their flanks.
    std::vector<int> next(ext.size()), prev(ext.size());
    const int m = static_cast<int>(ext.size());
    for (int i = 0; i < m; ++i) {
        next[i] = (i + 1) % m;
        prev[i] = (i + m - 1) % m;
    }
    int alive = m;
    int head = 0;
    while (alive >= 2) {
        int weakest = -1;
        double weakest_amp = threshold;
        int i = head;
        for (int steps = 0; steps < alive; ++steps) {
            const double amp = std::abs(ext[i] - ext[next[i]]);
            if (amp < weakest_amp) {
                weakest_amp = amp;
                weakest = i;
            }
            i = next[i];
        }
        if (weakest < 0) break;
        const int a = weakest, b = next[weakest];
        head = next[b];
        next[prev[a]] = next[b];
        prev[next[b]] = prev[a];
        alive -= 2;
    }
    int count = 0;
    for (int steps = 0, i = head; steps < alive; ++steps, i = next[i])
        if (is_max[i]) ++count;
    return count;
}

}  // namespace sppsim
