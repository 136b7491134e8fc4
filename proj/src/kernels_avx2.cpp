// AVX2 variants of the threshold kernels. Compiled with -mavx2 and only
// selected at runtime when the CPU reports AVX2 support. Comparison masks
// implement the inclusive keep rule (x^2 <= r); masked lanes contribute
// exact zeros, and the four accumulator lanes are reduced in a fixed order.

#include "pathwise/kernels.hpp"

#if defined(PATHWISE_HAVE_AVX2)

#include <immintrin.h>

#include <cstddef>

namespace pathwise::kernels::avx2 {

namespace {

inline double reduce_lanes(__m256d acc) noexcept {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace

double sum_squares_below(std::span<const double> x, double r) noexcept {
    const std::size_t n = x.size();
    const double* p = x.data();
    const __m256d rv = _mm256_set1_pd(r);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(p + i);
        const __m256d sq = _mm256_mul_pd(v, v);
        const __m256d keep = _mm256_cmp_pd(sq, rv, _CMP_LE_OQ);
        acc = _mm256_add_pd(acc, _mm256_and_pd(keep, sq));
    }
    double out = reduce_lanes(acc);
    for (; i < n; ++i) {
        const double sq = p[i] * p[i];
        if (sq <= r) out += sq;
    }
    return out;
}

double sum_quartics_below(std::span<const double> x, double r) noexcept {
    const std::size_t n = x.size();
    const double* p = x.data();
    const __m256d rv = _mm256_set1_pd(r);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(p + i);
        const __m256d sq = _mm256_mul_pd(v, v);
        const __m256d keep = _mm256_cmp_pd(sq, rv, _CMP_LE_OQ);
        acc = _mm256_add_pd(acc, _mm256_and_pd(keep, _mm256_mul_pd(sq, sq)));
    }
    double out = reduce_lanes(acc);
    for (; i < n; ++i) {
        const double sq = p[i] * p[i];
        if (sq <= r) out += sq * sq;
    }
    return out;
}

ThresholdMoments threshold_moments(std::span<const double> x, double r) noexcept {
    const std::size_t n = x.size();
    const double* p = x.data();
    const __m256d rv = _mm256_set1_pd(r);
    __m256d acc_sq = _mm256_setzero_pd();
    __m256d acc_q4 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(p + i);
        const __m256d sq = _mm256_mul_pd(v, v);
        const __m256d keep = _mm256_cmp_pd(sq, rv, _CMP_LE_OQ);
        const __m256d kept_sq = _mm256_and_pd(keep, sq);
        acc_sq = _mm256_add_pd(acc_sq, kept_sq);
        acc_q4 = _mm256_add_pd(acc_q4, _mm256_mul_pd(kept_sq, sq));
    }
    ThresholdMoments m;
    m.sum_sq = reduce_lanes(acc_sq);
    m.sum_quartic = reduce_lanes(acc_q4);
    for (; i < n; ++i) {
        const double sq = p[i] * p[i];
        if (sq <= r) {
            m.sum_sq += sq;
            m.sum_quartic += sq * sq;
        }
    }
    return m;
}

double sum_above(std::span<const double> x, double r) noexcept {
    const std::size_t n = x.size();
    const double* p = x.data();
    const __m256d rv = _mm256_set1_pd(r);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(p + i);
        const __m256d sq = _mm256_mul_pd(v, v);
        const __m256d flag = _mm256_cmp_pd(sq, rv, _CMP_GT_OQ);
        acc = _mm256_add_pd(acc, _mm256_and_pd(flag, v));
    }
    double out = reduce_lanes(acc);
    for (; i < n; ++i) {
        if (p[i] * p[i] > r) out += p[i];
    }
    return out;
}

void add_scaled(std::span<const double> x, std::span<const double> z, double s,
                std::span<double> out) noexcept {
    const std::size_t n = x.size();
    const double* px = x.data();
    const double* pz = z.data();
    double* po = out.data();
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(px + i);
        const __m256d zv = _mm256_loadu_pd(pz + i);
        _mm256_storeu_pd(po + i, _mm256_add_pd(xv, _mm256_mul_pd(sv, zv)));
    }
    for (; i < n; ++i) po[i] = px[i] + s * pz[i];
}

void filter_above(std::span<const double> x, double r, std::span<double> out) noexcept {
    const std::size_t n = x.size();
    const double* p = x.data();
    double* po = out.data();
    const __m256d rv = _mm256_set1_pd(r);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(p + i);
        const __m256d sq = _mm256_mul_pd(v, v);
        const __m256d flag = _mm256_cmp_pd(sq, rv, _CMP_GT_OQ);
        _mm256_storeu_pd(po + i, _mm256_and_pd(flag, v));
    }
    for (; i < n; ++i) {
        const double v = p[i];
        po[i] = (v * v > r) ? v : 0.0;
    }
}

}  // namespace pathwise::kernels::avx2

#endif  // PATHWISE_HAVE_AVX2
