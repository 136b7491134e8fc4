#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pathwise::stats {

// Standard normal CDF.
double normal_cdf(double x);

// One-sample Kolmogorov-Smirnov distance of the values against the standard
// normal CDF: sup_x |ECDF(x) - Phi(x)|.
double ks_distance_to_normal(std::span<const double> values);

// Asymptotic p-value for the one-sample KS distance d at sample size n,
// using the Kolmogorov survival series with Stephens' small-sample factor
// (sqrt(n) + 0.12 + 0.11/sqrt(n)).
double ks_asymptotic_pvalue(double d, std::size_t n);

// Two-sample KS distance and p-value (asymptotic, effective size nm/(n+m)).
struct TwoSampleKs {
    double distance = 0.0;
    double pvalue = 1.0;
};
TwoSampleKs two_sample_ks(std::span<const double> a, std::span<const double> b);

// Sample moments plus the KS comparison against N(0,1).
struct NormalityDiagnostics {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double ks_distance = 0.0;
    double ks_pvalue = 0.0;
};

// Requires at least 50 finite values (non-finite entries are dropped first).
NormalityDiagnostics normality_diagnostics(std::span<const double> values);

}  // namespace pathwise::stats
