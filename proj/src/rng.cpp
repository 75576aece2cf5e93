#include "sppsim/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "sppsim/vecmath.hpp"

namespace sppsim::rng {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t draw) {
    std::uint64_t z = seed ^ finalize(stream + kGolden);
    z += kGolden * (draw + 1);
    return finalize(z);
}

double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t draw) {
    return static_cast<double>((mix(seed, stream, draw) >> 11) + 1) * 0x1.0p-53;
}

double gaussian(std::uint64_t seed, std::uint64_t stream) {
    double u1 = uniform01(seed, stream, 0);
    double u2 = uniform01(seed, stream, 1);
    double r = std::sqrt(-2.0 * std::log(u1));
    return r * vm::cospi2(u2);
}

std::uint64_t poisson(std::uint64_t seed, std::uint64_t stream, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("poisson: lambda must be finite and >= 0");
    if (lambda == 0.0) return 0;

    if (lambda < 30.0) {
        // product-of-uniforms inversion
        const double limit = std::exp(-lambda);
        double p = 1.0;
        std::uint64_t k = 0;
        std::uint64_t draw = 0;
        do {
            p *= uniform01(seed, stream, draw++);
            ++k;
        } while (p > limit);
        return k - 1;
    }

    // PTRS transformed rejection (Hoermann)
    const double b = 0.931 + 2.53 * std::sqrt(lambda);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_lambda = std::log(lambda);
    std::uint64_t draw = 0;
    for (;;) {
        double u = uniform01(seed, stream, draw++) - 0.5;
        double v = uniform01(seed, stream, draw++);
        double us = 0.5 - std::fabs(u);
        double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            k * log_lambda - lambda - std::lgamma(k + 1.0))
            return static_cast<std::uint64_t>(k);
    }
}

}  // namespace sppsim::rng
