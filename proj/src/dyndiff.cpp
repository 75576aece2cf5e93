#include "sppsim/dyndiff.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sppsim/kernels.hpp"

namespace sppsim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;
}

void LaueCrystal::validate() const {
    if (!(bragg_angle > 0.0) || !(bragg_angle < kPi / 2))
        throw std::invalid_argument("LaueCrystal: bragg_angle must lie in (0, pi/2)");
    if (!(reduced_thickness > 0.0) || !std::isfinite(reduced_thickness))
        throw std::invalid_argument("LaueCrystal: reduced_thickness must be > 0");
}

RockingPoint rocking_curve(const LaueCrystal& crystal, double y) {
    crystal.validate();
    if (!std::isfinite(y))
        throw std::invalid_argument("rocking_curve: y must be finite");
    const double c = 1.0 + y * y;
    const double s = std::sin(crystal.reduced_thickness * std::sqrt(c));
    const double reflected = (s * s) / c;
    return {reflected, 1.0 - reflected};
}

void FanConfig::validate() const {
    if (!(y_half_range > 0.0) || !std::isfinite(y_half_range))
        throw std::invalid_argument("FanConfig: y_half_range must be > 0");
    if (!(taper_frac > 0.0) || !(taper_frac < 1.0))
        throw std::invalid_argument("FanConfig: taper_frac must lie in (0, 1)");
    if (quadrature_points < 0 || quadrature_points % 2 != 0)
        throw std::invalid_argument("FanConfig: quadrature_points must be even");
    if (!(tol > 0.0))
        throw std::invalid_argument("FanConfig: tol must be > 0");
    if (max_points < 16)
        throw std::invalid_argument("FanConfig: max_points must be >= 16");
}

namespace {

// One evaluation at N intervals. The y grid is built as (j - N/2)*h so it is
// bitwise symmetric about 0, which keeps the computed profile symmetric in
// gamma to rounding.
struct Quadrature {
    std::vector<double> y;
    std::vector<double> wa;  // taper * amplitude * trapezoid weight * h
    double windowed_flux = 0.0;
};

Quadrature build_quadrature(double A, double Y, double taper_frac, int N) {
    Quadrature q;
    const double h = 2.0 * Y / N;
    const int half = N / 2;
    q.y.resize(N + 1);
    q.wa.resize(N + 1);
    const double y_edge = static_cast<double>(half) * h;
    const double t0 = (1.0 - taper_frac) * y_edge;
    std::vector<double> w2tw(N + 1);
    for (int j = 0; j <= N; ++j) {
        const double y = static_cast<double>(j - half) * h;
        q.y[j] = y;
        const double c = 1.0 + y * y;
        const double amp = std::sin(A * std::sqrt(c)) / std::sqrt(c);
        const double a = std::fabs(y);
        double w = 1.0;
        if (a > t0) {
            const double u = std::cos(0.5 * kPi * (a - t0) / (y_edge - t0));
            w = u * u;
        }
        const double tw = (j == 0 || j == N) ? 0.5 : 1.0;
        q.wa[j] = w * amp * tw * h;
        w2tw[j] = (w * amp) * (w * amp) * tw * h;
    }
    q.windowed_flux = kernels::sum(w2tw.data(), w2tw.size());
    return q;
}

std::vector<double> eval_profile(const Quadrature& q, double A,
                                 const std::vector<double>& gamma) {
    const std::size_t n = q.y.size();
    std::vector<double> turns(n), c(n), s(n);
    std::vector<double> out(gamma.size());
    for (std::size_t g = 0; g < gamma.size(); ++g) {
        const double k_turns = A * gamma[g] / kTwoPi;
        kernels::scale_add(q.y.data(), turns.data(), n, k_turns, 0.0);
        kernels::sincospi2_array(turns.data(), c.data(), s.data(), n);
        const double re = kernels::dot(q.wa.data(), c.data(), n);
        const double im = kernels::dot(q.wa.data(), s.data(), n);
        out[g] = (re * re + im * im) / (kPi * kPi);
    }
    return out;
}

}  // namespace

FanProfile fan_profile(const LaueCrystal& crystal,
                       const std::vector<double>& gamma, const FanConfig& cfg) {
    crystal.validate();
    cfg.validate();
    if (gamma.empty())
        throw std::invalid_argument("fan_profile: need at least one gamma");
    for (double g : gamma)
        if (!(std::fabs(g) < 1.0))
            throw std::domain_error("fan_profile: gamma must satisfy |gamma| < 1");

    const double A = crystal.reduced_thickness;
    const double Y = cfg.y_half_range;

    FanProfile out;
    out.gamma = gamma;
    if (cfg.quadrature_points > 0) {
        Quadrature q = build_quadrature(A, Y, cfg.taper_frac, cfg.quadrature_points);
        out.intensity = eval_profile(q, A, gamma);
        out.quadrature_points = cfg.quadrature_points;
        out.windowed_flux = q.windowed_flux;
        return out;
    }

    int N = 8192;
    Quadrature q = build_quadrature(A, Y, cfg.taper_frac, N);
    std::vector<double> prev = eval_profile(q, A, gamma);
    double flux = q.windowed_flux;
    for (;;) {
        if (2 * N > cfg.max_points) break;
        N *= 2;
        q = build_quadrature(A, Y, cfg.taper_frac, N);
        std::vector<double> cur = eval_profile(q, A, gamma);
        flux = q.windowed_flux;
        double worst = 0.0;
        double peak = 0.0;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            worst = std::max(worst, std::fabs(cur[i] - prev[i]));
            peak = std::max(peak, std::fabs(cur[i]));
        }
        prev = std::move(cur);
        if (worst <= cfg.tol * std::max(1.0, peak)) break;
    }
    out.intensity = std::move(prev);
    out.quadrature_points = N;
    out.windowed_flux = flux;
    return out;
}

}  // namespace sppsim
