#include "sppsim/interferogram.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sppsim/kernels.hpp"
#include "sppsim/rng.hpp"
#include "sppsim/vecmath.hpp"

namespace sppsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_d_lambda(double d_lambda) {
    if (!(d_lambda > 0.0) || !std::isfinite(d_lambda))
        throw std::invalid_argument("d_lambda must be finite and > 0");
}

// In-place separable Gaussian pass along one axis, kernel truncated at
// 6 sigma and renormalized per position over the in-bounds window.
void blur_axis(std::vector<double>& v, int nx, int nz, double sigma_px,
               bool along_x) {
    const int r = static_cast<int>(std::ceil(6.0 * sigma_px));
    std::vector<double> w(2 * r + 1);
    const double inv2s2 = 1.0 / (2.0 * sigma_px * sigma_px);
    for (int k = -r; k <= r; ++k)
        w[k + r] = std::exp(-static_cast<double>(k) * k * inv2s2);

    const int len = along_x ? nx : nz;
    const int lines = along_x ? nz : nx;
    const std::size_t stride = along_x ? 1 : static_cast<std::size_t>(nx);
    const std::size_t line_stride = along_x ? static_cast<std::size_t>(nx) : 1;
    std::vector<double> tmp(len);
    for (int line = 0; line < lines; ++line) {
        double* base = v.data() + line * line_stride;
        for (int i = 0; i < len; ++i) {
            const int k0 = std::max(-r, -i);
            const int k1 = std::min(r, len - 1 - i);
            double acc = 0.0;
            double wsum = 0.0;
            for (int k = k0; k <= k1; ++k) {
                const double wk = w[k + r];
                acc += wk * base[(i + k) * stride];
                wsum += wk;
            }
            tmp[i] = acc / wsum;
        }
        for (int i = 0; i < len; ++i) base[i * stride] = tmp[i];
    }
}

}  // namespace

ScalarField2D ideal_interferogram(const ScalarField2D& thickness,
                                  double d_lambda, double phi0) {
    thickness.require_unit(Unit::thickness_m, "ideal_interferogram");
    require_d_lambda(d_lambda);
    if (!std::isfinite(phi0))
        throw std::invalid_argument("ideal_interferogram: phi0 must be finite");
    std::vector<double> out(thickness.size());
    kernels::phase_to_intensity(thickness.data(), nullptr, out.data(),
                                out.size(), 1.0 / d_lambda, phi0 / kTwoPi);
    return ScalarField2D(thickness.grid(), Unit::intensity_norm, std::move(out));
}

ScalarField2D complementary_interferogram(const ScalarField2D& intensity) {
    intensity.require_unit(Unit::intensity_norm, "complementary_interferogram");
    for (double v : intensity.values())
        if (!(v >= 0.0 && v <= 1.0))
            throw std::domain_error(
                "complementary_interferogram: intensity outside [0, 1]");
    std::vector<double> out(intensity.size());
    kernels::complement(intensity.data(), out.data(), out.size());
    return ScalarField2D(intensity.grid(), Unit::intensity_norm, std::move(out));
}

void CoherenceModel::validate() const {
    if (!(sigma_x >= 0.0) || !(sigma_z >= 0.0) || !std::isfinite(sigma_x) ||
        !std::isfinite(sigma_z))
        throw std::invalid_argument("CoherenceModel: sigmas must be finite and >= 0");
}

VisibilityMap visibility_map(const ScalarField2D& thickness, double d_lambda,
                             const CoherenceModel& coh) {
    thickness.require_unit(Unit::thickness_m, "visibility_map");
    require_d_lambda(d_lambda);
    coh.validate();
    const GridSpec& g = thickness.grid();
    const double sqrt2 = std::numbers::sqrt2;
    const double kx_px = coh.sigma_x * sqrt2 / g.dx();
    const double kz_px = coh.sigma_z * sqrt2 / g.dz();
    const bool resolved_x = kx_px >= 0.1;
    const bool resolved_z = kz_px >= 0.1;
    if (!resolved_x && !resolved_z) {
        return {ScalarField2D(g, Unit::visibility,
                              std::vector<double>(thickness.size(), 1.0)),
                true};
    }

    const std::size_t n = thickness.size();
    std::vector<double> turns(n);
    kernels::scale_add(thickness.data(), turns.data(), n, 1.0 / d_lambda, 0.0);
    std::vector<double> c(n), s(n);
    kernels::sincospi2_array(turns.data(), c.data(), s.data(), n);
    if (resolved_x) {
        blur_axis(c, g.nx, g.nz, kx_px, true);
        blur_axis(s, g.nx, g.nz, kx_px, true);
    }
    if (resolved_z) {
        blur_axis(c, g.nx, g.nz, kz_px, false);
        blur_axis(s, g.nx, g.nz, kz_px, false);
    }
    std::vector<double> vis(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = std::sqrt(c[i] * c[i] + s[i] * s[i]);
        vis[i] = v > 1.0 ? 1.0 : v;
    }
    return {ScalarField2D(g, Unit::visibility, std::move(vis)), false};
}

ScalarField2D coherent_interferogram(const ScalarField2D& thickness,
                                     double d_lambda, double phi0,
                                     const CoherenceModel& coh) {
    if (!std::isfinite(phi0))
        throw std::invalid_argument("coherent_interferogram: phi0 must be finite");
    VisibilityMap vm = visibility_map(thickness, d_lambda, coh);
    std::vector<double> out(thickness.size());
    kernels::phase_to_intensity(thickness.data(), vm.vis.data(), out.data(),
                                out.size(), 1.0 / d_lambda, phi0 / kTwoPi);
    return ScalarField2D(thickness.grid(), Unit::intensity_norm, std::move(out));
}

void DetectorSpec::validate() const {
    if (nu < 1 || nv < 1)
        throw std::invalid_argument("DetectorSpec: nu and nv must be >= 1");
    if (!(pixel_pitch > 0.0) || !std::isfinite(pixel_pitch))
        throw std::invalid_argument("DetectorSpec: pixel_pitch must be > 0");
}

ScalarField2D bin_to_detector(const ScalarField2D& src, const DetectorSpec& det) {
    det.validate();
    const GridSpec& g = src.grid();
    const double wd = det.nu * det.pixel_pitch;
    const double hd = det.nv * det.pixel_pitch;
    if (wd > g.extent_x * (1.0 + 1e-12) || hd > g.extent_z * (1.0 + 1e-12))
        throw std::domain_error("bin_to_detector: detector extends beyond the field");
    if (det.pixel_pitch < g.dx() * (1.0 - 1e-12) ||
        det.pixel_pitch < g.dz() * (1.0 - 1e-12))
        throw std::invalid_argument(
            "bin_to_detector: detector pitch finer than the field grid");

    if (det.nu == g.nx && det.nv == g.nz && det.pixel_pitch == g.dx() &&
        det.pixel_pitch == g.dz()) {
        GridSpec dg{det.nu, det.nv, wd, hd};
        return ScalarField2D(dg, src.unit(), src.values());
    }

    struct Axis {
        std::vector<int> first;
        std::vector<std::vector<double>> w;
    };
    auto build = [&](int nd, int ns, double cell, double extent) {
        Axis ax;
        ax.first.resize(nd);
        ax.w.resize(nd);
        const double off = 0.5 * (extent - nd * det.pixel_pitch);
        for (int u = 0; u < nd; ++u) {
            const double a = off + u * det.pixel_pitch;
            const double b = off + (u + 1) * det.pixel_pitch;
            int i = std::max(0, static_cast<int>(std::floor(a / cell)));
            ax.first[u] = i;
            for (; i < ns; ++i) {
                const double lo = i * cell;
                const double hi = (i + 1) * cell;
                if (lo >= b) break;
                const double ov = std::min(b, hi) - std::max(a, lo);
                if (ov > 0.0)
                    ax.w[u].push_back(ov / det.pixel_pitch);
                else if (ax.w[u].empty())
                    ax.first[u] = i + 1;
            }
        }
        return ax;
    };
    Axis axx = build(det.nu, g.nx, g.dx(), g.extent_x);
    Axis axz = build(det.nv, g.nz, g.dz(), g.extent_z);

    // x pass then z pass
    std::vector<double> tmp(static_cast<std::size_t>(g.nz) * det.nu);
    for (int iz = 0; iz < g.nz; ++iz) {
        const double* row = src.data() + static_cast<std::size_t>(iz) * g.nx;
        double* trow = tmp.data() + static_cast<std::size_t>(iz) * det.nu;
        for (int u = 0; u < det.nu; ++u) {
            double acc = 0.0;
            const auto& w = axx.w[u];
            const int i0 = axx.first[u];
            for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * row[i0 + k];
            trow[u] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(det.nv) * det.nu);
    for (int v = 0; v < det.nv; ++v) {
        const auto& w = axz.w[v];
        const int j0 = axz.first[v];
        for (int u = 0; u < det.nu; ++u) {
            double acc = 0.0;
            for (std::size_t k = 0; k < w.size(); ++k)
                acc += w[k] * tmp[(j0 + k) * static_cast<std::size_t>(det.nu) + u];
            out[static_cast<std::size_t>(v) * det.nu + u] = acc;
        }
    }
    GridSpec dg{det.nu, det.nv, wd, hd};
    return ScalarField2D(dg, src.unit(), std::move(out));
}

void NoiseSpec::validate() const {
    switch (model) {
        case Model::none:
            return;
        case Model::gaussian:
            if (!(sigma_rel > 0.0) || !std::isfinite(sigma_rel))
                throw std::invalid_argument("NoiseSpec: gaussian sigma_rel must be > 0");
            return;
        case Model::poisson:
            if (!(counts > 0.0) || !std::isfinite(counts))
                throw std::invalid_argument("NoiseSpec: poisson counts must be > 0");
            return;
    }
    throw std::invalid_argument("NoiseSpec: unknown model");
}

ScalarField2D apply_noise(const ScalarField2D& intensity, const NoiseSpec& noise,
                          std::uint64_t stream_offset) {
    intensity.require_unit(Unit::intensity_norm, "apply_noise");
    noise.validate();
    if (noise.model == NoiseSpec::Model::none)
        return ScalarField2D(intensity.grid(), intensity.unit(), intensity.values());

    const std::size_t n = intensity.size();
    std::vector<double> out(n);
    if (noise.model == NoiseSpec::Model::gaussian) {
        for (std::size_t i = 0; i < n; ++i) {
            double v = intensity.values()[i] +
                       noise.sigma_rel * rng::gaussian(noise.seed, stream_offset + i);
            out[i] = v < 0.0 ? 0.0 : v;
        }
    } else {
        const double inv_counts = 1.0 / noise.counts;
        for (std::size_t i = 0; i < n; ++i) {
            const double I = intensity.values()[i];
            if (!(I >= 0.0))
                throw std::domain_error("apply_noise: negative intensity");
            out[i] = static_cast<double>(rng::poisson(noise.seed, stream_offset + i,
                                                      I * noise.counts)) *
                     inv_counts;
        }
    }
    return ScalarField2D(intensity.grid(), Unit::intensity_norm, std::move(out));
}

WindingResult phase_winding(const ScalarField2D& thickness, double d_lambda,
                            double cx, double cz, double radius, int n_samples) {
    thickness.require_unit(Unit::thickness_m, "phase_winding");
    require_d_lambda(d_lambda);
    if (!(radius > 0.0)) throw std::invalid_argument("phase_winding: radius must be > 0");
    if (n_samples < 8) throw std::invalid_argument("phase_winding: need >= 8 samples");
    const GridSpec& g = thickness.grid();

    std::vector<double> turns(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        // half-step offset keeps samples off the seam ray
        const double th = (static_cast<double>(k) + 0.5) * kTwoPi / n_samples;
        const double x = cx + radius * std::cos(th);
        const double z = cz + radius * std::sin(th);
        const int ix = static_cast<int>(std::floor((x + 0.5 * g.extent_x) / g.dx()));
        const int iz = static_cast<int>(std::floor((z + 0.5 * g.extent_z) / g.dz()));
        if (ix < 0 || ix >= g.nx || iz < 0 || iz >= g.nz)
            throw std::domain_error("phase_winding: circle leaves the grid");
        turns[k] = thickness.at(ix, iz) / d_lambda;
    }
    auto wrap = [](double d) { return d - std::rint(d); };
    double closed = 0.0;
    double open = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        const double d = wrap(turns[(k + 1) % n_samples] - turns[k]);
        closed += d;
        if (k < n_samples - 1) open += d;
    }
    const double span = static_cast<double>(n_samples - 1) / n_samples;
    return {closed, open / span};
}

}  // namespace sppsim
