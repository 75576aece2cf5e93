#pragma once

// Data-parallel inner loops, provided as scalar reference implementations
// and AVX2 variants selected at runtime. Both backends are written to the
// same operation order and rounding sequence, so for identical inputs they
// produce bit-identical outputs; the test suite asserts exact equality.
//
// Backend selection: AVX2 is used when the binary was built with AVX2
// support, the CPU reports it (cpuid + OS xsave), and the environment
// variable SPPSIM_KERNELS is not set to "scalar". force_backend() overrides
// for tests.

#include <cstddef>
#include <cstdint>

namespace sppsim::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
void force_backend(Backend b);  // throws std::runtime_error if unavailable
void reset_backend();           // back to auto-detected default
bool cpu_supports_avx2();
const char* backend_name(Backend b);

// out[i] = clamp(0.5 + 0.5 * vis_i * cos(2*pi*(thickness[i]*turns_per_m + phi0_turns)), 0, 1)
// vis may be null (treated as 1 everywhere). This is the interferogram map.
void phase_to_intensity(const double* thickness, const double* vis,
                        double* out, std::size_t n,
                        double turns_per_m, double phi0_turns);

// out[i] = cos(2*pi*turns[i]) / sin(2*pi*turns[i])
void cospi2_array(const double* turns, double* out, std::size_t n);
void sincospi2_array(const double* turns, double* c, double* s, std::size_t n);

// out[i] = 1 - in[i]  (complementary detector port)
void complement(const double* in, double* out, std::size_t n);

// dst[i] += src[i]
void add_inplace(double* dst, const double* src, std::size_t n);

// out[i] = a * in[i] + b   (single rounding via fma)
void scale_add(const double* in, double* out, std::size_t n, double a, double b);

// Deterministic reductions: 4 interleaved accumulators, combined as
// (a0 + a1) + (a2 + a3), then a sequential tail. Same order in both backends.
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);

struct MinMax {
    double min;
    double max;
};
MinMax min_max(const double* x, std::size_t n);

// counts[j] = #{ i in [0, ny) : y0 + (i + 0.5) * dy < threshold[j] }
// Ray-integration inner loop for the projection transform.
void count_below(const double* threshold, std::size_t ncols,
                 double y0, double dy, std::uint32_t ny,
                 std::uint32_t* counts);

// out[i] = clamp(floor((in[i] - lo) * scale + 0.5), 0, 65535)
void quantize_u16(const double* in, std::uint16_t* out, std::size_t n,
                  double lo, double scale);

}  // namespace sppsim::kernels
