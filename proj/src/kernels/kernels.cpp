#include "sppsim/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "vtable.hpp"

namespace sppsim::kernels {
namespace {

using detail::Vtable;

bool detect_avx2() {
#if defined(SPPSIM_HAVE_AVX2) && defined(__x86_64__)
    // __builtin_cpu_supports also checks OS ymm-state support
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Vtable* table_for(Backend b) {
    switch (b) {
        case Backend::scalar:
            return &detail::scalar_vtable;
        case Backend::avx2:
#if defined(SPPSIM_HAVE_AVX2)
            return &detail::avx2_vtable;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

Backend detect_default() {
    if (const char* env = std::getenv("SPPSIM_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && detect_avx2()) return Backend::avx2;
        if (std::strcmp(env, "avx2") == 0)
            throw std::runtime_error("SPPSIM_KERNELS=avx2 but CPU or build lacks AVX2");
        // unknown value falls through to auto
    }
    return detect_avx2() ? Backend::avx2 : Backend::scalar;
}

struct State {
    Backend backend;
    const Vtable* vt;
    State() : backend(detect_default()), vt(table_for(backend)) {}
};

State& state() {
    static State s;
    return s;
}

}  // namespace

Backend active_backend() { return state().backend; }

bool cpu_supports_avx2() { return detect_avx2(); }

const char* backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

void force_backend(Backend b) {
    if (b == Backend::avx2 && !detect_avx2())
        throw std::runtime_error("avx2 kernels unavailable on this machine/build");
    state().backend = b;
    state().vt = table_for(b);
}

void reset_backend() {
    Backend b = detect_default();
    state().backend = b;
    state().vt = table_for(b);
}

void phase_to_intensity(const double* thickness, const double* vis, double* out,
                        std::size_t n, double turns_per_m, double phi0_turns) {
    state().vt->phase_to_intensity(thickness, vis, out, n, turns_per_m, phi0_turns);
}

void cospi2_array(const double* turns, double* out, std::size_t n) {
    state().vt->cospi2_array(turns, out, n);
}

void sincospi2_array(const double* turns, double* c, double* s, std::size_t n) {
    state().vt->sincospi2_array(turns, c, s, n);
}

void complement(const double* in, double* out, std::size_t n) {
    state().vt->complement(in, out, n);
}

void add_inplace(double* dst, const double* src, std::size_t n) {
    state().vt->add_inplace(dst, src, n);
}

void scale_add(const double* in, double* out, std::size_t n, double a, double b) {
    state().vt->scale_add(in, out, n, a, b);
}

double sum(const double* x, std::size_t n) { return state().vt->sum(x, n); }

double dot(const double* x, const double* y, std::size_t n) {
    return state().vt->dot(x, y, n);
}

MinMax min_max(const double* x, std::size_t n) { return state().vt->min_max(x, n); }

void count_below(const double* threshold, std::size_t ncols, double y0,
                 double dy, std::uint32_t ny, std::uint32_t* counts) {
    state().vt->count_below(threshold, ncols, y0, dy, ny, counts);
}

void quantize_u16(const double* in, std::uint16_t* out, std::size_t n,
                  double lo, double scale) {
    state().vt->quantize_u16(in, out, n, lo, scale);
}

}  // namespace sppsim::kernels
