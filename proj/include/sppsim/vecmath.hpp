#pragma once

// Deterministic trig on the "turns" scale: cospi2(u) = cos(2*pi*u),
// sinpi2(u) = sin(2*pi*u).
//
// The interferogram synthesis loops are required to produce bit-identical
// results no matter which kernel backend runs them, and golden-file tests
// require run-to-run stability. libm's cos() gives no such guarantee across
// implementations, so the hot paths use these fixed polynomial evaluations
// instead. The argument is a phase in turns; range reduction r = u - rint(u)
// is exact in binary64 (Sterbenz), unlike reduction modulo 2*pi.
//
// Accuracy: |cospi2(u) - cos(2*pi*u)| < 5e-16 over the full range, verified
// against libm in the test suite. Results are clamped to [-1, 1].
//
// The AVX2 kernels mirror this exact operation sequence lane-wise
// (rint -> fabs -> branch at 1/4 -> Horner with FMA -> clamp), which is what
// makes scalar and vector backends bit-equal.

#include <cmath>

namespace sppsim::vm {

inline constexpr double kTwoPi = 6.283185307179586476925;

// cos(2*pi*t) = C(t*t) for t in [0, 1/4]
inline constexpr double kC[12] = {
    1.0,
    -19.73920880217871723767,
    64.93939402266829149096,
    -85.45681720669372773602,
    60.24464137187666036272,
    -26.4262567833743974529,
    7.903536371318468804212,
    -1.714390711088672065422,
    0.2820059684557912150703,
    -0.03638284114254567077175,
    0.003779834200680039379223,
    -0.0003229910672070977888626,
};

// sin(2*pi*t) = (2*pi*t) * S(t*t) for t in [0, 1/4]
inline constexpr double kS[12] = {
    1.0,
    -6.57973626739290574589,
    12.98787880453365829819,
    -12.20811674381338967657,
    6.693849041319628929191,
    -2.402386980306763404809,
    0.6079643362552668310932,
    -0.1142927140725781376948,
    0.0165885863797524244159,
    -0.001914886375923456356408,
    0.0001799921047942875894868,
    -0.00001404308987856946908098,
};

inline double poly_c(double x) {
    double a = kC[11];
    a = std::fma(a, x, kC[10]);
    a = std::fma(a, x, kC[9]);
    a = std::fma(a, x, kC[8]);
    a = std::fma(a, x, kC[7]);
    a = std::fma(a, x, kC[6]);
    a = std::fma(a, x, kC[5]);
    a = std::fma(a, x, kC[4]);
    a = std::fma(a, x, kC[3]);
    a = std::fma(a, x, kC[2]);
    a = std::fma(a, x, kC[1]);
    a = std::fma(a, x, kC[0]);
    return a;
}

inline double poly_s(double x) {
    double a = kS[11];
    a = std::fma(a, x, kS[10]);
    a = std::fma(a, x, kS[9]);
    a = std::fma(a, x, kS[8]);
    a = std::fma(a, x, kS[7]);
    a = std::fma(a, x, kS[6]);
    a = std::fma(a, x, kS[5]);
    a = std::fma(a, x, kS[4]);
    a = std::fma(a, x, kS[3]);
    a = std::fma(a, x, kS[2]);
    a = std::fma(a, x, kS[1]);
    a = std::fma(a, x, kS[0]);
    return a;
}

// reduce to r in [-1/2, 1/2]; exact, rint uses round-half-even like
// _mm256_round_pd(_MM_FROUND_TO_NEAREST_INT)
inline double reduce_turn(double u) { return u - std::rint(u); }

inline double cospi2(double u) {
    double r = reduce_turn(u);
    double a = std::fabs(r);
    double y;
    if (a > 0.25) {
        double t = a - 0.25;  // exact: 0.25 <= a <= 0.5
        double m = kTwoPi * t;
        y = -(m * poly_s(t * t));
    } else {
        y = poly_c(r * r);
    }
    return std::fmin(1.0, std::fmax(-1.0, y));
}

inline double sinpi2(double u) {
    double r = reduce_turn(u);
    double a = std::fabs(r);
    double y;
    if (a > 0.25) {
        double t = a - 0.25;
        y = poly_c(t * t);
    } else {
        double m = kTwoPi * a;
        y = m * poly_s(a * a);
    }
    y = std::fmin(1.0, std::fmax(-1.0, y));
    return std::copysign(y, r);
}

}  // namespace sppsim::vm
