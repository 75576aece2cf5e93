#pragma once

// Counter-based randomness: every variate is a pure function of
// (seed, stream, draw), so noise fields are reproducible for a given seed
// and independent of evaluation order. One stream per detector pixel.

#include <cstdint>

namespace sppsim::rng {

std::uint64_t mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t draw);

// uniform in (0, 1]; never 0, safe under log()
double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t draw);

// standard normal, Box-Muller on draws (0, 1) of the stream
double gaussian(std::uint64_t seed, std::uint64_t stream);

// Poisson with mean lambda >= 0; inversion by products for small lambda,
// transformed rejection (PTRS) for lambda >= 30. Consumes draws from 0 upward.
std::uint64_t poisson(std::uint64_t seed, std::uint64_t stream, double lambda);

}  // namespace sppsim::rng
