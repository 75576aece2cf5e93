#if defined(SPPSIM_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "sppsim/vecmath.hpp"
#include "vtable.hpp"

// AVX2 backend. Each kernel runs the scalar backend's operation sequence
// four lanes at a time and falls back to the shared scalar element functions
// for the tail, so outputs are bit-identical to the reference backend.

namespace sppsim::kernels::detail {
namespace {

inline double sel_max(double lim, double v) { return (lim > v) ? lim : v; }
inline double sel_min(double lim, double v) { return (lim < v) ? lim : v; }

const __m256d kSignMask = _mm256_set1_pd(-0.0);

inline __m256d poly_c_pd(__m256d x) {
    __m256d a = _mm256_set1_pd(vm::kC[11]);
    for (int k = 10; k >= 0; --k)
        a = _mm256_fmadd_pd(a, x, _mm256_set1_pd(vm::kC[k]));
    return a;
}

inline __m256d poly_s_pd(__m256d x) {
    __m256d a = _mm256_set1_pd(vm::kS[11]);
    for (int k = 10; k >= 0; --k)
        a = _mm256_fmadd_pd(a, x, _mm256_set1_pd(vm::kS[k]));
    return a;
}

inline __m256d clamp_pm1(__m256d y) {
    y = _mm256_max_pd(_mm256_set1_pd(-1.0), y);
    return _mm256_min_pd(_mm256_set1_pd(1.0), y);
}

inline __m256d cospi2_pd(__m256d u) {
    __m256d r = _mm256_sub_pd(
        u, _mm256_round_pd(u, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC));
    __m256d a = _mm256_andnot_pd(kSignMask, r);
    __m256d quarter = _mm256_set1_pd(0.25);
    __m256d mask = _mm256_cmp_pd(a, quarter, _CMP_GT_OQ);
    __m256d t = _mm256_sub_pd(a, quarter);
    __m256d m = _mm256_mul_pd(_mm256_set1_pd(vm::kTwoPi), t);
    __m256d ys = _mm256_xor_pd(_mm256_mul_pd(m, poly_s_pd(_mm256_mul_pd(t, t))),
                               kSignMask);
    __m256d yc = poly_c_pd(_mm256_mul_pd(r, r));
    return clamp_pm1(_mm256_blendv_pd(yc, ys, mask));
}

inline __m256d sinpi2_pd(__m256d u) {
    __m256d r = _mm256_sub_pd(
        u, _mm256_round_pd(u, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC));
    __m256d a = _mm256_andnot_pd(kSignMask, r);
    __m256d quarter = _mm256_set1_pd(0.25);
    __m256d mask = _mm256_cmp_pd(a, quarter, _CMP_GT_OQ);
    __m256d t = _mm256_sub_pd(a, quarter);
    __m256d yc = poly_c_pd(_mm256_mul_pd(t, t));
    __m256d m = _mm256_mul_pd(_mm256_set1_pd(vm::kTwoPi), a);
    __m256d ys = _mm256_mul_pd(m, poly_s_pd(_mm256_mul_pd(a, a)));
    __m256d y = clamp_pm1(_mm256_blendv_pd(ys, yc, mask));
    __m256d sign = _mm256_and_pd(kSignMask, r);
    return _mm256_or_pd(_mm256_andnot_pd(kSignMask, y), sign);
}

inline double lane_combine_sum(__m256d acc) {
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    double a0 = _mm_cvtsd_f64(lo);
    double a1 = _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
    double a2 = _mm_cvtsd_f64(hi);
    double a3 = _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi));
    return (a0 + a1) + (a2 + a3);
}

void v_phase_to_intensity(const double* thickness, const double* vis,
                          double* out, std::size_t n, double turns_per_m,
                          double phi0_turns) {
    const __m256d scale = _mm256_set1_pd(turns_per_m);
    const __m256d phi0 = _mm256_set1_pd(phi0_turns);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t n4 = n - (n % 4);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        __m256d u = _mm256_fmadd_pd(_mm256_loadu_pd(thickness + i), scale, phi0);
        __m256d c = cospi2_pd(u);
        __m256d w = vis ? _mm256_loadu_pd(vis + i) : one;
        __m256d v = _mm256_add_pd(half, _mm256_mul_pd(half, _mm256_mul_pd(w, c)));
        v = _mm256_max_pd(zero, v);
        v = _mm256_min_pd(one, v);
        _mm256_storeu_pd(out + i, v);
    }
    for (; i < n; ++i) {
        double u = std::fma(thickness[i], turns_per_m, phi0_turns);
        double c = vm::cospi2(u);
        double w = vis ? vis[i] : 1.0;
        double v = 0.5 + 0.5 * (w * c);
        v = sel_max(0.0, v);
        v = sel_min(1.0, v);
        out[i] = v;
    }
}

void v_cospi2_array(const double* turns, double* out, std::size_t n) {
    std::size_t n4 = n - (n % 4);
    std::size_t i = 0;
    for (; i < n4; i += 4)
        _mm256_storeu_pd(out + i, cospi2_pd(_mm256_loadu_pd(turns + i)));
    for (; i < n; ++i) out[i] = vm::cospi2(turns[i]);
}

void v_sincospi2_array(const double* turns, double* c, double* s,
                       std::size_t n) {
    std::size_t n4 = n - (n % 4);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        __m256d u = _mm256_loadu_pd(turns + i);
        _mm256_storeu_pd(c + i, cospi2_pd(u));
        _mm256_storeu_pd(s + i, sinpi2_pd(u));
    }
    for (; i < n; ++i) {
        c[i] = vm::cospi2(turns[i]);
        s[i] = vm::sinpi2(turns[i]);
    }
}

void v_complement(const double* in, double* out, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t n4 = n - (n % 4);
    std::size_t i = 0;
    for (; i < n4; i += 4)
        _mm256_storeu_pd(out + i, _mm256_sub_pd(one, _mm256_loadu_pd(in + i)));
    for (; i < n; ++i) out[i] = 1.0 - in[i];
}

void v_add_inplace(double* dst, const double* src, std::size_t n) {
    std::size_t n4 = n - (n % 4);
    std::size_t i = 0;
    for (; i < n4; i += 4)
        _mm256_storeu_pd(
            dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), _mm256_loadu_pd(src + i)));
    for (; i < n; ++i) dst[i] = dst[i] + src[i];
}

void v_scale_add(const double* in, double* out, std::size_t n, double a,
                 double b) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t n4 = n - (n % 4);
    std::size_t i = 0;
    for (; i < n4; i += 4)
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(_mm256_loadu_pd(in + i), va, vb));
    for (; i < n; ++i) out[i] = std::fma(in[i], a, b);
}

double v_sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t n4 = n - (n % 4);
    std::size_t i = 0;
    for (; i < n4; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double s = lane_combine_sum(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

double v_dot(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t n4 = n - (n % 4);
    std::size_t i = 0;
    for (; i < n4; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double s = lane_combine_sum(acc);
    for (; i < n; ++i) s = std::fma(x[i], y[i], s);
    return s;
}

MinMax v_min_max(const double* x, std::size_t n) {
    __m256d mn = _mm256_broadcast_sd(x);
    __m256d mx = mn;
    std::size_t n4 = n - (n % 4);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        mn = _mm256_min_pd(mn, v);
        mx = _mm256_max_pd(mx, v);
    }
    __m128d mn_lo = _mm256_castpd256_pd128(mn);
    __m128d mn_hi = _mm256_extractf128_pd(mn, 1);
    __m128d mx_lo = _mm256_castpd256_pd128(mx);
    __m128d mx_hi = _mm256_extractf128_pd(mx, 1);
    double n0 = _mm_cvtsd_f64(mn_lo);
    double n1 = _mm_cvtsd_f64(_mm_unpackhi_pd(mn_lo, mn_lo));
    double n2 = _mm_cvtsd_f64(mn_hi);
    double n3 = _mm_cvtsd_f64(_mm_unpackhi_pd(mn_hi, mn_hi));
    double x0 = _mm_cvtsd_f64(mx_lo);
    double x1 = _mm_cvtsd_f64(_mm_unpackhi_pd(mx_lo, mx_lo));
    double x2 = _mm_cvtsd_f64(mx_hi);
    double x3 = _mm_cvtsd_f64(_mm_unpackhi_pd(mx_hi, mx_hi));
    double rmn = sel_min(sel_min(n0, n1), sel_min(n2, n3));
    double rmx = sel_max(sel_max(x0, x1), sel_max(x2, x3));
    for (; i < n; ++i) {
        rmn = sel_min(rmn, x[i]);
        rmx = sel_max(rmx, x[i]);
    }
    return {rmn, rmx};
}

void v_count_below(const double* threshold, std::size_t ncols, double y0,
                   double dy, std::uint32_t ny, std::uint32_t* counts) {
    const __m256d vy0 = _mm256_set1_pd(y0);
    const __m256d vdy = _mm256_set1_pd(dy);
    const __m256d vhalf = _mm256_set1_pd(0.5);
    const __m256d step = _mm256_set1_pd(4.0);
    const std::uint32_t ny4 = ny - (ny % 4);
    for (std::size_t j = 0; j < ncols; ++j) {
        const __m256d h = _mm256_set1_pd(threshold[j]);
        __m256d idx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
        std::uint32_t c = 0;
        std::uint32_t i = 0;
        for (; i < ny4; i += 4) {
            __m256d y = _mm256_add_pd(
                vy0, _mm256_mul_pd(_mm256_add_pd(idx, vhalf), vdy));
            __m256d lt = _mm256_cmp_pd(y, h, _CMP_LT_OQ);
            c += static_cast<std::uint32_t>(
                __builtin_popcount(_mm256_movemask_pd(lt)));
            idx = _mm256_add_pd(idx, step);
        }
        const double hj = threshold[j];
        for (; i < ny; ++i) {
            double u = static_cast<double>(i);
            double y = y0 + (u + 0.5) * dy;
            c += (y < hj) ? 1u : 0u;
        }
        counts[j] = c;
    }
}

void v_quantize_u16(const double* in, std::uint16_t* out, std::size_t n,
                    double lo, double scale) {
    const __m256d vlo = _mm256_set1_pd(lo);
    const __m256d vscale = _mm256_set1_pd(scale);
    const __m256d vhalf = _mm256_set1_pd(0.5);
    const __m256d vzero = _mm256_setzero_pd();
    const __m256d vmaxv = _mm256_set1_pd(65535.0);
    std::size_t n4 = n - (n % 4);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        __m256d v = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(in + i), vlo),
                                  vscale);
        v = _mm256_floor_pd(_mm256_add_pd(v, vhalf));
        v = _mm256_max_pd(vzero, v);
        v = _mm256_min_pd(vmaxv, v);
        __m128i i32 = _mm256_cvttpd_epi32(v);
        __m128i u16 = _mm_packus_epi32(i32, i32);
        _mm_storel_epi64(reinterpret_cast<__m128i*>(out + i), u16);
    }
    for (; i < n; ++i) {
        double v = (in[i] - lo) * scale;
        v = std::floor(v + 0.5);
        v = sel_max(0.0, v);
        v = sel_min(65535.0, v);
        out[i] = static_cast<std::uint16_t>(static_cast<std::int32_t>(v));
    }
}

}  // namespace

const Vtable avx2_vtable = {
    v_phase_to_intensity, v_cospi2_array, v_sincospi2_array, v_complement,
    v_add_inplace,        v_scale_add,    v_sum,             v_dot,
    v_min_max,            v_count_below,  v_quantize_u16,
};

}  // namespace sppsim::kernels::detail

#endif  // SPPSIM_HAVE_AVX2
