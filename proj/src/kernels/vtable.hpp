#pragma once

#include <cstddef>
#include <cstdint>

#include "sppsim/kernels.hpp"

namespace sppsim::kernels::detail {

struct Vtable {
    void (*phase_to_intensity)(const double*, const double*, double*,
                               std::size_t, double, double);
    void (*cospi2_array)(const double*, double*, std::size_t);
    void (*sincospi2_array)(const double*, double*, double*, std::size_t);
    void (*complement)(const double*, double*, std::size_t);
    void (*add_inplace)(double*, const double*, std::size_t);
    void (*scale_add)(const double*, double*, std::size_t, double, double);
    double (*sum)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    MinMax (*min_max)(const double*, std::size_t);
    void (*count_below)(const double*, std::size_t, double, double,
                        std::uint32_t, std::uint32_t*);
    void (*quantize_u16)(const double*, std::uint16_t*, std::size_t, double,
                         double);
};

extern const Vtable scalar_vtable;
#if defined(SPPSIM_HAVE_AVX2)
extern const Vtable avx2_vtable;
#endif

}  // namespace sppsim::kernels::detail
