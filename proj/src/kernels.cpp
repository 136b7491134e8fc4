#include "pathwise/kernels.hpp"

#include <cstddef>

namespace pathwise::kernels {

namespace scalar {

double sum_squares_below(std::span<const double> x, double r) noexcept {
    double acc = 0.0;
    for (const double v : x) {
        const double sq = v * v;
        if (sq <= r) acc += sq;
    }
    return acc;
}

double sum_quartics_below(std::span<const double> x, double r) noexcept {
    double acc = 0.0;
    for (const double v : x) {
        const double sq = v * v;
        if (sq <= r) acc += sq * sq;
    }
    return acc;
}

ThresholdMoments threshold_moments(std::span<const double> x, double r) noexcept {
    ThresholdMoments m;
    for (const double v : x) {
        const double sq = v * v;
        if (sq <= r) {
            m.sum_sq += sq;
            m.sum_quartic += sq * sq;
        }
    }
    return m;
}

double sum_above(std::span<const double> x, double r) noexcept {
    double acc = 0.0;
    for (const double v : x) {
        if (v * v > r) acc += v;
    }
    return acc;
}

void add_scaled(std::span<const double> x, std::span<const double> z, double s,
                std::span<double> out) noexcept {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + s * z[i];
}

void filter_above(std::span<const double> x, double r, std::span<double> out) noexcept {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double v = x[i];
        out[i] = (v * v > r) ? v : 0.0;
    }
}

}  // namespace scalar

bool avx2_supported() noexcept {
#if defined(PATHWISE_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

struct Dispatch {
    double (*sum_squares_below)(std::span<const double>, double) noexcept;
    double (*sum_quartics_below)(std::span<const double>, double) noexcept;
    ThresholdMoments (*threshold_moments)(std::span<const double>, double) noexcept;
    double (*sum_above)(std::span<const double>, double) noexcept;
    void (*add_scaled)(std::span<const double>, std::span<const double>, double,
                       std::span<double>) noexcept;
    void (*filter_above)(std::span<const double>, double, std::span<double>) noexcept;
    std::string_view name;
};

const Dispatch& table() noexcept {
    static const Dispatch d = [] {
#if defined(PATHWISE_HAVE_AVX2)
        if (avx2_supported()) {
            return Dispatch{&avx2::sum_squares_below, &avx2::sum_quartics_below,
                            &avx2::threshold_moments, &avx2::sum_above,
                            &avx2::add_scaled,        &avx2::filter_above,
                            "avx2"};
        }
#endif
        return Dispatch{&scalar::sum_squares_below, &scalar::sum_quartics_below,
                        &scalar::threshold_moments, &scalar::sum_above,
                        &scalar::add_scaled,        &scalar::filter_above,
                        "scalar"};
    }();
    return d;
}

}  // namespace

std::string_view active_variant() noexcept { return table().name; }

double sum_squares_below(std::span<const double> x, double r) noexcept {
    return table().sum_squares_below(x, r);
}

double sum_quartics_below(std::span<const double> x, double r) noexcept {
    return table().sum_quartics_below(x, r);
}

ThresholdMoments threshold_moments(std::span<const double> x, double r) noexcept {
    return table().threshold_moments(x, r);
}

double sum_above(std::span<const double> x, double r) noexcept {
    return table().sum_above(x, r);
}

void add_scaled(std::span<const double> x, std::span<const double> z, double s,
                std::span<double> out) noexcept {
    table().add_scaled(x, z, s, out);
}

void filter_above(std::span<const double> x, double r, std::span<double> out) noexcept {
    table().filter_above(x, r, out);
}

}  // namespace pathwise::kernels
