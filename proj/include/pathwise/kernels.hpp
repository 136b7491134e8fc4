#pragma once

#include <span>
#include <string_view>

// Data-parallel inner loops shared by the threshold estimators. Each kernel
// has a scalar reference implementation and, on x86-64, an AVX2 variant;
// the dispatched entry points pick the widest supported variant once at
// first use. All kernels assume finite inputs (callers validate) and use a
// fixed reduction order per variant, so results are deterministic for a
// given build and machine.
//
// The threshold convention is inclusive throughout: an increment x is kept
// when x^2 <= r and flagged as a jump when x^2 > r.

namespace pathwise::kernels {

struct ThresholdMoments {
    double sum_sq = 0.0;       // sum of x^2 over kept entries
    double sum_quartic = 0.0;  // sum of x^4 over kept entries
};

namespace scalar {

double sum_squares_below(std::span<const double> x, double r) noexcept;
double sum_quartics_below(std::span<const double> x, double r) noexcept;
ThresholdMoments threshold_moments(std::span<const double> x, double r) noexcept;
// sum of x_i over entries with x_i^2 > r
double sum_above(std::span<const double> x, double r) noexcept;
// out_i = x_i + s * z_i
void add_scaled(std::span<const double> x, std::span<const double> z, double s,
                std::span<double> out) noexcept;
// out_i = x_i when x_i^2 > r, else 0
void filter_above(std::span<const double> x, double r, std::span<double> out) noexcept;

}  // namespace scalar

#if defined(PATHWISE_HAVE_AVX2)
namespace avx2 {

double sum_squares_below(std::span<const double> x, double r) noexcept;
double sum_quartics_below(std::span<const double> x, double r) noexcept;
ThresholdMoments threshold_moments(std::span<const double> x, double r) noexcept;
double sum_above(std::span<const double> x, double r) noexcept;
void add_scaled(std::span<const double> x, std::span<const double> z, double s,
                std::span<double> out) noexcept;
void filter_above(std::span<const double> x, double r, std::span<double> out) noexcept;

}  // namespace avx2
#endif

bool avx2_supported() noexcept;
std::string_view active_variant() noexcept;  // "avx2" or "scalar"

// Dispatched entry points.
double sum_squares_below(std::span<const double> x, double r) noexcept;
double sum_quartics_below(std::span<const double> x, double r) noexcept;
ThresholdMoments threshold_moments(std::span<const double> x, double r) noexcept;
double sum_above(std::span<const double> x, double r) noexcept;
void add_scaled(std::span<const double> x, std::span<const double> z, double s,
                std::span<double> out) noexcept;
void filter_above(std::span<const double> x, double r, std::span<double> out) noexcept;

}  // namespace pathwise::kernels
