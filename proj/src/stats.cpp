#include "pathwise/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathwise::stats {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

// Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_survival(double lambda) {
    if (lambda < 1e-8) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_distance_sorted(const std::vector<double>& sorted) {
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = normal_cdf(sorted[i]);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    return d;
}

}  // namespace

double ks_distance_to_normal(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("ks_distance_to_normal: empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return ks_distance_sorted(sorted);
}

double ks_asymptotic_pvalue(double d, std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    return kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d);
}

TwoSampleKs two_sample_ks(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("two_sample_ks: empty sample");
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sa.size() && j < sb.size()) {
        const double va = sa[i];
        const double vb = sb[j];
        if (va <= vb) ++i;
        if (vb <= va) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }

    TwoSampleKs out;
    out.distance = d;
    const double ne = std::sqrt(na * nb / (na + nb));
    out.pvalue = kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d);
    return out;
}

NormalityDiagnostics normality_diagnostics(std::span<const double> values) {
    std::vector<double> finite;
    finite.reserve(values.size());
    for (const double v : values) {
        if (std::isfinite(v)) finite.push_back(v);
    }
    if (finite.size() < 50) {
        throw std::invalid_argument("normality_diagnostics: need at least 50 finite values");
    }

    const double n = static_cast<double>(finite.size());
    double mean = 0.0;
    for (const double v : finite) mean += v;
    mean /= n;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (const double v : finite) {
        const double d = v - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;

    NormalityDiagnostics out;
    out.count = finite.size();
    out.mean = mean;
    out.variance = m2 * n / (n - 1.0);
    out.skewness = (m2 > 0.0) ? m3 / std::pow(m2, 1.5) : 0.0;
    out.excess_kurtosis = (m2 > 0.0) ? m4 / (m2 * m2) - 3.0 : 0.0;

    std::sort(finite.begin(), finite.end());
    out.ks_distance = ks_distance_sorted(finite);
    out.ks_pvalue = ks_asymptotic_pvalue(out.ks_distance, finite.size());
    return out;
}

}  // namespace pathwise::stats
