#include "pathwise/estimators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pathwise/kernels.hpp"

namespace pathwise::estimators {

namespace {

void ensure_finite(std::span<const double> increments, const char* who) {
    for (const double dx : increments) {
        if (!std::isfinite(dx)) {
            throw std::invalid_argument(std::string(who) + ": non-finite increment");
        }
    }
}

void ensure_threshold(double r, const char* who) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument(std::string(who) + ": threshold must be positive and finite");
    }
}

// Shared tail of both statistics: assemble the outcome from the truncated
// moments of the (possibly filtered) noisy series.
TestOutcome finish_outcome(const kernels::ThresholdMoments& m, double r,
                           const SamplePath& path, const NoiseSpec& noise,
                           double critical_value) {
    TestOutcome out;
    out.iv_hat = m.sum_sq;
    out.iq_hat = m.sum_quartic / (3.0 * path.h);
    out.r_h = r;
    out.n = path.n();
    out.h = path.h;
    out.v = noise.v;
    out.critical_value = critical_value;
    if (!(out.iq_hat > 0.0)) {
        // Every increment excluded: the ratio is 0/0, flag instead of +-inf.
        out.statistic = std::numeric_limits<double>::quiet_NaN();
        out.degenerate = true;
        out.reject = false;
        return out;
    }
    const double horizon = path.horizon();
    out.statistic =
        (out.iv_hat - noise.v * noise.v * horizon) / std::sqrt(2.0 * path.h * out.iq_hat);
    const Decision d = decide(out.statistic, critical_value);
    out.reject = d.reject;
    out.degenerate = d.degenerate;
    return out;
}

void check_statistic_inputs(const SamplePath& path, const ThresholdSpec& spec,
                            const NoiseSpec& noise, double critical_value, const char* who) {
    spec.validate();
    if (!(noise.v > 0.0)) {
        throw std::invalid_argument(std::string(who) + ": noise scale v must be positive");
    }
    if (!(critical_value > 0.0)) {
        throw std::invalid_argument(std::string(who) + ": critical value must be positive");
    }
    ensure_finite(path.increments, who);
}

}  // namespace

double threshold_value(double h, const ThresholdSpec& spec) {
    spec.validate();
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("threshold_value: h must be positive and finite");
    }
    return spec.c * std::pow(h, spec.beta);
}

double truncated_variance(std::span<const double> increments, double r) {
    ensure_threshold(r, "truncated_variance");
    ensure_finite(increments, "truncated_variance");
    return kernels::sum_squares_below(increments, r);
}

double truncated_quarticity(std::span<const double> increments, double r, double h) {
    ensure_threshold(r, "truncated_quarticity");
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("truncated_quarticity: h must be positive and finite");
    }
    ensure_finite(increments, "truncated_quarticity");
    return kernels::sum_quartics_below(increments, r) / (3.0 * h);
}

double jump_sum_estimator(std::span<const double> increments, double r) {
    ensure_threshold(r, "jump_sum_estimator");
    ensure_finite(increments, "jump_sum_estimator");
    return kernels::sum_above(increments, r);
}

std::vector<double> add_collocated_noise(std::span<const double> increments,
                                         const NoiseSpec& noise, double h,
                                         rng::Stream stream) {
    if (!(noise.v >= 0.0) || !std::isfinite(noise.v)) {
        throw std::invalid_argument("add_collocated_noise: v must be nonnegative and finite");
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("add_collocated_noise: h must be positive and finite");
    }
    ensure_finite(increments, "add_collocated_noise");
    std::vector<double> out(increments.begin(), increments.end());
    if (noise.v == 0.0 || increments.empty()) return out;

    rng::Engine eng(rng::derive_seed(noise.seed, stream));
    std::vector<double> z(increments.size());
    for (double& zi : z) zi = eng.normal();
    kernels::add_scaled(increments, z, noise.v * std::sqrt(h), out);
    return out;
}

Decision decide(double statistic, double critical_value) {
    if (!(critical_value > 0.0)) {
        throw std::invalid_argument("decide: critical value must be positive");
    }
    if (std::isnan(statistic)) return {false, true};
    return {std::fabs(statistic) > critical_value, false};
}

TestOutcome brownian_presence_statistic(const SamplePath& path, const ThresholdSpec& spec,
                                        const NoiseSpec& noise, double critical_value) {
    check_statistic_inputs(path, spec, noise, critical_value, "brownian_presence_statistic");
    const double r = threshold_value(path.h, spec);
    const std::vector<double> noisy =
        add_collocated_noise(path.increments, noise, path.h, rng::Stream::noise_presence);
    return finish_outcome(kernels::threshold_moments(noisy, r), r, path, noise, critical_value);
}

TestOutcome jump_activity_statistic(const SamplePath& path, const ThresholdSpec& spec,
                                    const NoiseSpec& noise, double critical_value) {
    check_statistic_inputs(path, spec, noise, critical_value, "jump_activity_statistic");
    const double r = threshold_value(path.h, spec);

    // dH_i = dx_i * 1{dx_i^2 > r} + v*sqrt(h)*Z_i, noise from a stream
    // independent of the presence-test noise.
    std::vector<double> filtered(path.n());
    kernels::filter_above(path.increments, r, filtered);
    const std::vector<double> noisy =
        add_collocated_noise(filtered, noise, path.h, rng::Stream::noise_activity);
    return finish_outcome(kernels::threshold_moments(noisy, r), r, path, noise, critical_value);
}

}  // namespace pathwise::estimators
