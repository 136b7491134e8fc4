#include "pathwise/types.hpp"

#include <cmath>
#include <stdexcept>

namespace pathwise {

namespace step {

std::optional<double> from_label(std::string_view label) {
    if (label == "5min") return five_minutes;
    if (label == "1min") return one_minute;
    if (label == "1hour") return one_hour;
    if (label == "1day") return one_day;
    return std::nullopt;
}

}  // namespace step

SamplePath::SamplePath(double x0_, std::vector<double> increments_, double h_)
    : x0(x0_), increments(std::move(increments_)), h(h_) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("SamplePath: step h must be positive and finite");
    }
    if (increments.empty()) {
        throw std::invalid_argument("SamplePath: at least one increment required");
    }
}

double SamplePath::terminal() const noexcept {
    double total = x0;
    for (const double dx : increments) total += dx;
    return total;
}

void ThresholdSpec::validate() const {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("ThresholdSpec: c must be positive and finite");
    }
    if (!(beta > 0.0 && beta < 1.0)) {
        throw std::invalid_argument("ThresholdSpec: beta must lie in (0,1)");
    }
}

}  // namespace pathwise
