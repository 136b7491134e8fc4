#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathwise/types.hpp"

// Ingestion of real price series and the two-stage testing procedure:
// stage 1 runs the jump-activity test per batch and retains "alpha < 1"
// when the fraction of |U| > critical outside the band is consistent with
// the nominal 5% level; stage 2 (only if retained) runs the Brownian
// presence test per batch.

namespace pathwise::pipeline {

struct PriceSeries {
    std::vector<std::int64_t> timestamps;  // epoch seconds, strictly increasing
    std::vector<double> prices;            // strictly positive

    std::size_t size() const noexcept { return timestamps.size(); }
};

struct CsvFormat {
    char delimiter = ',';
    std::string timestamp_column = "timestamp";
    std::string price_column = "price";
};

// Delimited text, one observation per row. Timestamps are integer epoch
// seconds or ISO-8601 (YYYY-MM-DD[T ]HH:MM:SS[Z]). A header row is detected
// by its unparsable timestamp field and used to locate the configured
// columns; headerless files must have (timestamp, price) first.
PriceSeries load_price_series(std::istream& in, const CsvFormat& format = {});
PriceSeries load_price_series_file(const std::string& path, const CsvFormat& format = {});

struct LogReturns {
    std::vector<double> increments;
    double h = 0.0;                   // years, from the modal spacing
    std::int64_t spacing_seconds = 0;
    std::size_t dropped_session_gaps = 0;
};

// ln(p_i) - ln(p_{i-1}). With exclude_session_gaps, returns spanning a
// spacing larger than the modal one are dropped (session boundaries);
// otherwise any deviation from the modal spacing is an error. Mixed
// intra-session frequencies are always rejected. h converts the modal
// spacing to years on the 252-day, 7-hour-session calendar.
LogReturns to_log_returns(const PriceSeries& series, bool exclude_session_gaps);

// Consecutive non-overlapping blocks of exactly batch_size; the trailing
// remainder is dropped and reported through `dropped`.
std::vector<std::span<const double>> make_batches(std::span<const double> increments,
                                                  std::size_t batch_size, std::size_t& dropped);

struct AnalysisConfig {
    std::size_t batch_size = 1000;
    double v = kDefaultNoiseScale;
    double beta = kDefaultBeta;
    double threshold_c = kDefaultThresholdC;
    double critical_value = kDefaultCriticalValue;
    std::uint64_t seed = 0;
};

struct BatchOutcome {
    std::size_t index = 0;
    TestOutcome activity;
    std::optional<TestOutcome> presence;  // populated only when stage 1 retained
};

struct BatchReport {
    std::size_t batch_size = 0;
    double h = 0.0;
    std::size_t batches = 0;
    std::size_t dropped_increments = 0;
    std::vector<BatchOutcome> per_batch;
    double activity_outside_fraction = 0.0;
    double retention_band = 0.0;   // 0.05 + 2 sqrt(0.05*0.95/B)
    bool activity_retained = false;
    bool presence_all_reject = false;
};

BatchReport analyze_series(std::span<const double> increments, double h,
                           const AnalysisConfig& config);

// Kept-vs-flagged split of the increments at threshold r (the jump
// decomposition plotted in the empirical study).
struct Decomposition {
    double r_h = 0.0;
    std::vector<double> kept;     // dx * 1{dx^2 <= r}
    std::vector<double> flagged;  // dx * 1{dx^2 > r}
};

Decomposition threshold_decomposition(std::span<const double> increments, double r);

}  // namespace pathwise::pipeline
