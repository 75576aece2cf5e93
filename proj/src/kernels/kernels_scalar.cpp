#include <cmath>
#include <cstddef>
#include <cstdint>

#include "sppsim/vecmath.hpp"
#include "vtable.hpp"

// Reference backend. The AVX2 backend replicates these exact operation
// sequences lane-wise; the selection operators below are written with the
// same tie behaviour as vminpd/vmaxpd (second operand on ties) so the two
// backends stay bit-identical.

namespace sppsim::kernels::detail {
namespace {

inline double sel_max(double lim, double v) { return (lim > v) ? lim : v; }
inline double sel_min(double lim, double v) { return (lim < v) ? lim : v; }

void s_phase_to_intensity(const double* thickness, const double* vis,
                          double* out, std::size_t n, double turns_per_m,
                          double phi0_turns) {
    for (std::size_t i = 0; i < n; ++i) {
        double u = std::fma(thickness[i], turns_per_m, phi0_turns);
        double c = vm::cospi2(u);
        double w = vis ? vis[i] : 1.0;
        double v = 0.5 + 0.5 * (w * c);
        v = sel_max(0.0, v);
        v = sel_min(1.0, v);
        out[i] = v;
    }
}

void s_cospi2_array(const double* turns, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = vm::cospi2(turns[i]);
}

void s_sincospi2_array(const double* turns, double* c, double* s,
                       std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = vm::cospi2(turns[i]);
        s[i] = vm::sinpi2(turns[i]);
    }
}

void s_complement(const double* in, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 - in[i];
}

void s_add_inplace(double* dst, const double* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = dst[i] + src[i];
}

void s_scale_add(const double* in, double* out, std::size_t n, double a,
                 double b) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::fma(in[i], a, b);
}

double s_sum(const double* x, std::size_t n) {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    std::size_t n4 = n - (n % 4);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        a0 += x[i];
        a1 += x[i + 1];
        a2 += x[i + 2];
        a3 += x[i + 3];
    }
    double s = (a0 + a1) + (a2 + a3);
    for (; i < n; ++i) s += x[i];
    return s;
}

double s_dot(const double* x, const double* y, std::size_t n) {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    std::size_t n4 = n - (n % 4);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        a0 = std::fma(x[i], y[i], a0);
        a1 = std::fma(x[i + 1], y[i + 1], a1);
        a2 = std::fma(x[i + 2], y[i + 2], a2);
        a3 = std::fma(x[i + 3], y[i + 3], a3);
    }
    double s = (a0 + a1) + (a2 + a3);
    for (; i < n; ++i) s = std::fma(x[i], y[i], s);
    return s;
}

MinMax s_min_max(const double* x, std::size_t n) {
    double mn0 = x[0], mn1 = x[0], mn2 = x[0], mn3 = x[0];
    double mx0 = x[0], mx1 = x[0], mx2 = x[0], mx3 = x[0];
    std::size_t n4 = n - (n % 4);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        mn0 = sel_min(mn0, x[i]);
        mn1 = sel_min(mn1, x[i + 1]);
        mn2 = sel_min(mn2, x[i + 2]);
        mn3 = sel_min(mn3, x[i + 3]);
        mx0 = sel_max(mx0, x[i]);
        mx1 = sel_max(mx1, x[i + 1]);
        mx2 = sel_max(mx2, x[i + 2]);
        mx3 = sel_max(mx3, x[i + 3]);
    }
    double mn = sel_min(sel_min(mn0, mn1), sel_min(mn2, mn3));
    double mx = sel_max(sel_max(mx0, mx1), sel_max(mx2, mx3));
    for (; i < n; ++i) {
        mn = sel_min(mn, x[i]);
        mx = sel_max(mx, x[i]);
    }
    return {mn, mx};
}

void s_count_below(const double* threshold, std::size_t ncols, double y0,
                   double dy, std::uint32_t ny, std::uint32_t* counts) {
    for (std::size_t j = 0; j < ncols; ++j) {
        const double h = threshold[j];
        std::uint32_t c = 0;
        for (std::uint32_t i = 0; i < ny; ++i) {
            double u = static_cast<double>(i);
            double y = y0 + (u + 0.5) * dy;
            c += (y < h) ? 1u : 0u;
        }
        counts[j] = c;
    }
}

void s_quantize_u16(const double* in, std::uint16_t* out, std::size_t n,
                    double lo, double scale) {
    for (std::size_t i = 0; i < n; ++i) {
        double v = (in[i] - lo) * scale;
        v = std::floor(v + 0.5);
        v = sel_max(0.0, v);
        v = sel_min(65535.0, v);
        out[i] = static_cast<std::uint16_t>(static_cast<std::int32_t>(v));
    }
}

}  // namespace

const Vtable scalar_vtable = {
    s_phase_to_intensity, s_cospi2_array, s_sincospi2_array, s_complement,
    s_add_inplace,        s_scale_add,    s_sum,             s_dot,
    s_min_max,            s_count_below,  s_quantize_u16,
};

}  // namespace sppsim::kernels::detail
