#include "pathwise/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pathwise/estimators.hpp"
#include "pathwise/kernels.hpp"
#include "pathwise/rng.hpp"

namespace pathwise::pipeline {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_row(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, delimiter)) fields.push_back(trim(field));
    if (!line.empty() && line.back() == delimiter) fields.emplace_back();
    return fields;
}

// Days since 1970-01-01 for a proleptic Gregorian date (Howard Hinnant's
// days_from_civil).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::optional<std::int64_t> parse_timestamp(const std::string& raw) {
    if (raw.empty()) return std::nullopt;

    // Integer epoch seconds.
    bool all_digits = true;
    std::size_t start = (raw[0] == '-' || raw[0] == '+') ? 1 : 0;
    if (start == raw.size()) return std::nullopt;
    for (std::size_t i = start; i < raw.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(raw[i]))) {
            all_digits = false;
            break;
        }
    }
    if (all_digits) {
        try {
            return std::stoll(raw);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    // ISO-8601: YYYY-MM-DD[T ]HH:MM:SS with optional trailing Z.
    int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
    char sep = '\0';
    char tail[4] = {0, 0, 0, 0};
    const int got = std::sscanf(raw.c_str(), "%d-%d-%d%c%d:%d:%d%3s", &year, &month, &day, &sep,
                                &hour, &minute, &second, tail);
    if (got < 7 || (sep != 'T' && sep != ' ')) return std::nullopt;
    if (got == 8 && std::string(tail) != "Z" && std::string(tail) != "") return std::nullopt;
    if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;
    if (hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0 || second > 60) {
        return std::nullopt;
    }
    return days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day)) *
               86400LL +
           hour * 3600LL + minute * 60LL + second;
}

std::optional<double> parse_price(const std::string& raw) {
    if (raw.empty()) return std::nullopt;
    try {
        std::size_t used = 0;
        const double value = std::stod(raw, &used);
        if (used != raw.size()) return std::nullopt;
        return value;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

[[noreturn]] void fail_row(std::size_t line_number, const std::string& what) {
    throw std::runtime_error("line " + std::to_string(line_number) + ": " + what);
}

}  // namespace

PriceSeries load_price_series(std::istream& in, const CsvFormat& format) {
    PriceSeries series;
    std::string line;
    std::size_t line_number = 0;
    std::size_t ts_col = 0, price_col = 1;
    bool saw_data = false;

    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;

        const std::vector<std::string> fields = split_row(line, format.delimiter);
        if (!saw_data && !fields.empty() && !parse_timestamp(fields[0]).has_value()) {
            // Header row: locate the configured columns.
            auto find_col = [&](const std::string& name) -> std::optional<std::size_t> {
                for (std::size_t i = 0; i < fields.size(); ++i) {
                    if (fields[i] == name) return i;
                }
                return std::nullopt;
            };
            const auto tc = find_col(format.timestamp_column);
            const auto pc = find_col(format.price_column);
            if (!tc || !pc) {
                fail_row(line_number, "header is missing column '" +
                                          (!tc ? format.timestamp_column : format.price_column) +
                                          "'");
            }
            ts_col = *tc;
            price_col = *pc;
            saw_data = true;  // columns fixed, rows must follow
            continue;
        }
        saw_data = true;

        if (fields.size() <= std::max(ts_col, price_col)) {
            fail_row(line_number, "expected at least " +
                                      std::to_string(std::max(ts_col, price_col) + 1) +
                                      " fields, got " + std::to_string(fields.size()));
        }
        const auto ts = parse_timestamp(fields[ts_col]);
        if (!ts) fail_row(line_number, "unparsable timestamp '" + fields[ts_col] + "'");
        const auto price = parse_price(fields[price_col]);
        if (!price) fail_row(line_number, "unparsable price '" + fields[price_col] + "'");
        if (!(*price > 0.0) || !std::isfinite(*price)) {
            fail_row(line_number, "non-positive price " + fields[price_col]);
        }

        if (!series.timestamps.empty()) {
            const std::int64_t prev = series.timestamps.back();
            if (*ts == prev) {
                fail_row(line_number, "duplicate timestamp (same as observation " +
                                          std::to_string(series.size() - 1) + ")");
            }
            if (*ts < prev) {
                fail_row(line_number, "out-of-order timestamp: observation " +
                                          std::to_string(series.size()) + " precedes observation " +
                                          std::to_string(series.size() - 1));
            }
        }
        series.timestamps.push_back(*ts);
        series.prices.push_back(*price);
    }

    if (series.size() == 0) throw std::runtime_error("empty input: no observations parsed");
    return series;
}

PriceSeries load_price_series_file(const std::string& path, const CsvFormat& format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return load_price_series(in, format);
}

LogReturns to_log_returns(const PriceSeries& series, bool exclude_session_gaps) {
    if (series.size() < 2) {
        throw std::invalid_argument("to_log_returns: need at least 2 observations");
    }

    // Modal spacing; ties resolved toward the smaller spacing.
    std::map<std::int64_t, std::size_t> spacing_count;
    for (std::size_t i = 1; i < series.size(); ++i) {
        ++spacing_count[series.timestamps[i] - series.timestamps[i - 1]];
    }
    std::int64_t modal = 0;
    std::size_t best = 0;
    for (const auto& [spacing, count] : spacing_count) {
        if (count > best) {
            best = count;
            modal = spacing;
        }
    }

    LogReturns out;
    out.spacing_seconds = modal;
    out.h = static_cast<double>(modal) / step::seconds_per_year;

    std::vector<std::size_t> offenders;
    out.increments.reserve(series.size() - 1);
    for (std::size_t i = 1; i < series.size(); ++i) {
        const std::int64_t spacing = series.timestamps[i] - series.timestamps[i - 1];
        if (spacing == modal) {
            out.increments.push_back(std::log(series.prices[i] / series.prices[i - 1]));
        } else if (exclude_session_gaps && spacing > modal) {
            ++out.dropped_session_gaps;
        } else {
            offenders.push_back(i);
        }
    }
    if (!offenders.empty()) {
        std::string msg = "to_log_returns: non-uniform spacing at observation indices";
        const std::size_t shown = std::min<std::size_t>(offenders.size(), 10);
        for (std::size_t k = 0; k < shown; ++k) msg += " " + std::to_string(offenders[k]);
        if (offenders.size() > shown) {
            msg += " (+" + std::to_string(offenders.size() - shown) + " more)";
        }
        throw std::runtime_error(msg);
    }
    return out;
}

std::vector<std::span<const double>> make_batches(std::span<const double> increments,
                                                  std::size_t batch_size, std::size_t& dropped) {
    if (batch_size < 2) throw std::invalid_argument("make_batches: batch size must be >= 2");
    if (increments.size() < batch_size) {
        throw std::invalid_argument("make_batches: fewer increments (" +
                                    std::to_string(increments.size()) + ") than one batch (" +
                                    std::to_string(batch_size) + ")");
    }
    const std::size_t count = increments.size() / batch_size;
    dropped = increments.size() - count * batch_size;
    std::vector<std::span<const double>> batches;
    batches.reserve(count);
    for (std::size_t b = 0; b < count; ++b) {
        batches.push_back(increments.subspan(b * batch_size, batch_size));
    }
    return batches;
}

BatchReport analyze_series(std::span<const double> increments, double h,
                           const AnalysisConfig& config) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("analyze_series: h must be positive and finite");
    }
    const ThresholdSpec threshold{config.threshold_c, config.beta};
    threshold.validate();

    BatchReport report;
    report.batch_size = config.batch_size;
    report.h = h;
    const auto batches = make_batches(increments, config.batch_size, report.dropped_increments);
    report.batches = batches.size();

    // Stage 1: jump-activity test per batch.
    std::size_t outside = 0;
    for (std::size_t b = 0; b < batches.size(); ++b) {
        SamplePath path(0.0, std::vector<double>(batches[b].begin(), batches[b].end()), h);
        const NoiseSpec noise{config.v, rng::derive_seed(config.seed, b)};
        BatchOutcome outcome;
        outcome.index = b;
        outcome.activity =
            estimators::jump_activity_statistic(path, threshold, noise, config.critical_value);
        if (outcome.activity.reject) ++outside;
        report.per_batch.push_back(std::move(outcome));
    }
    const double nb = static_cast<double>(batches.size());
    report.activity_outside_fraction = static_cast<double>(outside) / nb;
    report.retention_band = 0.05 + 2.0 * std::sqrt(0.05 * 0.95 / nb);
    report.activity_retained = report.activity_outside_fraction <= report.retention_band;

    // Stage 2: presence test, only when stage 1 retained alpha < 1.
    if (report.activity_retained) {
        bool all_reject = true;
        for (std::size_t b = 0; b < batches.size(); ++b) {
            SamplePath path(0.0, std::vector<double>(batches[b].begin(), batches[b].end()), h);
            const NoiseSpec noise{config.v, rng::derive_seed(config.seed, b)};
            report.per_batch[b].presence = estimators::brownian_presence_statistic(
                path, threshold, noise, config.critical_value);
            if (!report.per_batch[b].presence->reject) all_reject = false;
        }
        report.presence_all_reject = all_reject;
    }
    return report;
}

Decomposition threshold_decomposition(std::span<const double> increments, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("threshold_decomposition: r must be positive and finite");
    }
    Decomposition d;
    d.r_h = r;
    d.kept.resize(increments.size());
    d.flagged.resize(increments.size());
    kernels::filter_above(increments, r, d.flagged);
    for (std::size_t i = 0; i < increments.size(); ++i) {
        d.kept[i] = increments[i] - d.flagged[i];
    }
    return d;
}

}  // namespace pathwise::pipeline
