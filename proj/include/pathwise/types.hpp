#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace pathwise {

// Defaults used across the library and CLI. Time steps are expressed in
// years on a 252-trading-day calendar with 84 five-minute bars (7 hours)
// per day, so five minutes = 1/(252*84).
inline constexpr double kDefaultCriticalValue = 1.96;
inline constexpr double kDefaultNoiseScale = 1e-4;
inline constexpr double kDefaultBeta = 0.999;
inline constexpr double kDefaultThresholdC = 1.0;

namespace step {
inline constexpr double five_minutes = 1.0 / (252.0 * 84.0);
inline constexpr double one_minute = 1.0 / (252.0 * 84.0 * 5.0);
inline constexpr double one_hour = 1.0 / (252.0 * 7.0);
inline constexpr double one_day = 1.0 / 252.0;
inline constexpr double seconds_per_year = 252.0 * 7.0 * 3600.0;

// Maps "5min" | "1min" | "1hour" | "1day" to a year fraction.
std::optional<double> from_label(std::string_view label);
}  // namespace step

// Uniformly spaced observations of a scalar process, stored as the initial
// level plus the n increments on a grid of step h (years). The horizon
// T = n*h is always derived, never stored.
struct SamplePath {
    double x0 = 0.0;
    std::vector<double> increments;
    double h = 0.0;

    SamplePath() = default;
    SamplePath(double x0_, std::vector<double> increments_, double h_);

    std::size_t n() const noexcept { return increments.size(); }
    double horizon() const noexcept { return static_cast<double>(n()) * h; }
    double terminal() const noexcept;
};

// Threshold r_h = c * h^beta. beta in (0,1) guarantees r_h -> 0 and
// h*log(1/h)/r_h -> 0 as h -> 0.
struct ThresholdSpec {
    double c = kDefaultThresholdC;
    double beta = kDefaultBeta;

    void validate() const;
};

// Collocated noise v*sqrt(h)*Z_i added to the increments; seed identifies
// the noise stream. v = 0 means no augmentation.
struct NoiseSpec {
    double v = kDefaultNoiseScale;
    std::uint64_t seed = 0;
};

struct Decision {
    bool reject = false;
    bool degenerate = false;  // statistic undefined (NaN or zero quarticity)
};

// One test statistic with its ingredients and the accept/reject decision.
struct TestOutcome {
    double statistic = 0.0;
    double iv_hat = 0.0;
    double iq_hat = 0.0;
    double r_h = 0.0;
    std::size_t n = 0;
    double h = 0.0;
    double v = 0.0;
    double critical_value = kDefaultCriticalValue;
    bool reject = false;
    bool degenerate = false;
};

}  // namespace pathwise
