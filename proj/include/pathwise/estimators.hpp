#pragma once

#include <span>
#include <vector>

#include "pathwise/rng.hpp"
#include "pathwise/types.hpp"

// Threshold estimators and the two test statistics. Everything here is a
// pure function of its inputs (noise streams enter through explicit seeds),
// so all operations are safe to call concurrently.
//
// Conventions, applied identically everywhere:
//   - an increment is kept when (dx_i)^2 <= r_h (inclusive), flagged as a
//     jump when (dx_i)^2 > r_h;
//   - h is in years, T = n*h;
//   - decisions are two-sided: reject when |statistic| > critical_value.

namespace pathwise::estimators {

// r_h = c * h^beta.
double threshold_value(double h, const ThresholdSpec& spec);

// Truncated realized variance: sum of (dx_i)^2 over kept increments.
double truncated_variance(std::span<const double> increments, double r);

// Truncated quarticity: sum of (dx_i)^4 over kept increments, divided by 3h.
double truncated_quarticity(std::span<const double> increments, double r, double h);

// Sum of dx_i over flagged increments; estimates J_T + mT when the jump
// component has finite variation.
double jump_sum_estimator(std::span<const double> increments, double r);

// dx_i + v*sqrt(h)*Z_i with Z_i standard normal from the stream identified
// by (noise.seed, stream). v = 0 returns the input unchanged.
std::vector<double> add_collocated_noise(std::span<const double> increments,
                                         const NoiseSpec& noise, double h,
                                         rng::Stream stream = rng::Stream::noise_presence);

// Two-sided decision |statistic| > critical_value; NaN -> degenerate.
Decision decide(double statistic, double critical_value);

// Test for the presence of a Brownian component. Augments the increments
// with collocated noise and forms
//     U_h = (IV^v - v^2 T) / sqrt(2 h IQ^v).
// Under sigma == 0 (and finite-variation jumps) U_h is asymptotically
// standard normal; under sigma != 0 it diverges.
TestOutcome brownian_presence_statistic(const SamplePath& path, const ThresholdSpec& spec,
                                        const NoiseSpec& noise,
                                        double critical_value = kDefaultCriticalValue);

// Test for finite variation of the jump component. Keeps only the flagged
// increments, adds noise from an independent stream, and forms the same
// ratio from the re-thresholded series:
//     U^(a)_h = (IV^{H^v} - v^2 T) / sqrt(2 h IQ^{H^v}).
// Rejecting means rejecting the null "BG index alpha < 1".
TestOutcome jump_activity_statistic(const SamplePath& path, const ThresholdSpec& spec,
                                    const NoiseSpec& noise,
                                    double critical_value = kDefaultCriticalValue);

}  // namespace pathwise::estimators
