#include <cmath>
#include <sstream>
#include <vector>

#include <stdexcept>

#include "doctest.h"
#include "pathwise/levy_sim.hpp"
#include "pathwise/pipeline.hpp"

using namespace pathwise;
using namespace pathwise::pipeline;

TEST_CASE("load_price_series") {
    SUBCASE("two plain rows") {
        std::istringstream in("1000,100.0\n1300,101.5\n");
        const auto series = load_price_series(in);
        REQUIRE(series.size() == 2);
        CHECK(series.timestamps[0] == 1000);
        CHECK(series.prices[1] == doctest::Approx(101.5));
    }

    SUBCASE("header with configured column names, extra columns ignored") {
        std::istringstream in("time,volume,px\n100,5,10.0\n200,6,11.0\n");
        CsvFormat fmt;
        fmt.timestamp_column = "time";
        fmt.price_column = "px";
        const auto series = load_price_series(in, fmt);
        REQUIRE(series.size() == 2);
        CHECK(series.prices[0] == doctest::Approx(10.0));
    }

    SUBCASE("ISO-8601 timestamps") {
        std::istringstream in(
            "timestamp,price\n"
            "2024-01-02T09:30:00,100\n"
            "2024-01-02 09:35:00Z,101\n");
        const auto series = load_price_series(in);
        REQUIRE(series.size() == 2);
        CHECK(series.timestamps[1] - series.timestamps[0] == 300);
        // 2024-01-02 09:30:00 UTC
        CHECK(series.timestamps[0] == 1704187800);
    }

    SUBCASE("semicolon delimiter") {
        std::istringstream in("10;1.5\n20;2.5\n");
        CsvFormat fmt;
        fmt.delimiter = ';';
        CHECK(load_price_series(in, fmt).size() == 2);
    }

    SUBCASE("zero or negative price rejected with line number") {
        std::istringstream in("100,10\n200,0\n");
        CHECK_THROWS_WITH_AS(load_price_series(in), doctest::Contains("line 2"),
                             std::runtime_error);
    }

    SUBCASE("out-of-order timestamps rejected with both indices") {
        std::istringstream in("100,10\n300,11\n200,12\n");
        try {
            load_price_series(in);
            FAIL("expected an error");
        } catch (const std::runtime_error& e) {
            const std::string msg = e.what();
            CHECK(msg.find("observation 2") != std::string::npos);
            CHECK(msg.find("observation 1") != std::string::npos);
        }
    }

    SUBCASE("duplicate timestamps rejected") {
        std::istringstream in("100,10\n100,11\n");
        CHECK_THROWS_WITH_AS(load_price_series(in), doctest::Contains("duplicate"),
                             std::runtime_error);
    }

    SUBCASE("malformed row carries its line number") {
        std::istringstream in("100,10\nnot-a-timestamp-at-all\n");
        CHECK_THROWS_WITH_AS(load_price_series(in), doctest::Contains("line 2"),
                             std::runtime_error);
    }

    SUBCASE("empty input rejected") {
        std::istringstream in("");
        CHECK_THROWS_AS(load_price_series(in), std::runtime_error);
        std::istringstream header_only("timestamp,price\n");
        CHECK_THROWS_AS(load_price_series(header_only), std::runtime_error);
    }
}

TEST_CASE("to_log_returns") {
    SUBCASE("flat prices give a zero return") {
        PriceSeries s;
        s.timestamps = {0, 300};
        s.prices = {100.0, 100.0};
        const auto lr = to_log_returns(s, false);
        REQUIRE(lr.increments.size() == 1);
        CHECK(lr.increments[0] == 0.0);
        CHECK(lr.spacing_seconds == 300);
        CHECK(lr.h == doctest::Approx(step::five_minutes).epsilon(1e-15));
    }

    SUBCASE("log return value") {
        PriceSeries s;
        s.timestamps = {0, 300};
        s.prices = {100.0, 105.0};
        const auto lr = to_log_returns(s, false);
        CHECK(lr.increments[0] == doctest::Approx(std::log(1.05)).epsilon(1e-14));
        CHECK(lr.increments[0] == doctest::Approx(0.04879).epsilon(1e-4));
    }

    SUBCASE("session gaps dropped when exclusion is on") {
        PriceSeries s;
        // two sessions of 3 observations, a big overnight gap between them
        s.timestamps = {0, 300, 600, 60000, 60300, 60600};
        s.prices = {100, 101, 102, 103, 104, 105};
        const auto lr = to_log_returns(s, true);
        CHECK(lr.increments.size() == 4);  // n_raw(5) - boundaries(1)
        CHECK(lr.dropped_session_gaps == 1);
        // telescoping within sessions only
        double total = 0.0;
        for (const double r : lr.increments) total += r;
        const double full = std::log(105.0 / 100.0);
        const double boundary = std::log(103.0 / 102.0);
        CHECK(total == doctest::Approx(full - boundary).epsilon(1e-12));
    }

    SUBCASE("gap rejected when exclusion is off") {
        PriceSeries s;
        s.timestamps = {0, 300, 60000};
        s.prices = {100, 101, 102};
        CHECK_THROWS_WITH_AS(to_log_returns(s, false), doctest::Contains("non-uniform"),
                             std::runtime_error);
    }

    SUBCASE("mixed intra-session frequency always rejected") {
        PriceSeries s;
        s.timestamps = {0, 300, 600, 750, 900, 1200};  // a 150s spacing inside
        s.prices = {100, 101, 102, 103, 104, 105};
        CHECK_THROWS_AS(to_log_returns(s, true), std::runtime_error);
    }

    SUBCASE("too short") {
        PriceSeries s;
        s.timestamps = {0};
        s.prices = {100};
        CHECK_THROWS_AS(to_log_returns(s, false), std::invalid_argument);
    }
}

TEST_CASE("make_batches") {
    std::vector<double> x(64284, 1.0);
    std::size_t dropped = 0;
    auto batches = make_batches(x, 1000, dropped);
    CHECK(batches.size() == 64);
    CHECK(dropped == 284);

    x.resize(78497);
    batches = make_batches(x, 1000, dropped);
    CHECK(batches.size() == 78);
    CHECK(dropped == 497);

    x.resize(2000);
    batches = make_batches(x, 1000, dropped);
    CHECK(batches.size() == 2);
    CHECK(dropped == 0);

    x.resize(999);
    CHECK_THROWS_AS(make_batches(x, 1000, dropped), std::invalid_argument);
    CHECK_THROWS_AS(make_batches(x, 1, dropped), std::invalid_argument);
}

TEST_CASE("batch sums telescope to the total increment sum") {
    const auto dx = sim::simulate_brownian(10000, step::five_minutes, 0.2, 5);
    std::size_t dropped = 0;
    const auto batches = make_batches(dx, 1000, dropped);
    double batch_total = 0.0;
    for (const auto& b : batches) {
        for (const double v : b) batch_total += v;
    }
    double direct = 0.0;
    for (std::size_t i = 0; i < dx.size() - dropped; ++i) direct += dx[i];
    CHECK(batch_total == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("analyze_series on synthetic Brownian data") {
    // sigma = 0.2 diffusion: stage 1 should retain alpha < 1 (there are no
    // jumps at all) and stage 2 should reject sigma == 0 in every batch
    const auto dx = sim::simulate_brownian(10000, step::five_minutes, 0.2, 99);
    AnalysisConfig config;
    config.seed = 7;
    const auto report = analyze_series(dx, step::five_minutes, config);
    CHECK(report.batches == 10);
    CHECK(report.activity_outside_fraction <= report.retention_band);
    CHECK(report.activity_retained);
    CHECK(report.presence_all_reject);
    REQUIRE(report.per_batch.size() == 10);
    for (const auto& b : report.per_batch) {
        REQUIRE(b.presence.has_value());
        CHECK(b.presence->reject);
        CHECK(b.presence->statistic > 1.96);
    }

    // outside fraction equals the mean of per-batch indicators
    double outside = 0.0;
    for (const auto& b : report.per_batch) outside += b.activity.reject ? 1.0 : 0.0;
    CHECK(report.activity_outside_fraction ==
          doctest::Approx(outside / 10.0).epsilon(1e-15));
}

TEST_CASE("analyze_series skips stage 2 when activity rejects overall") {
    // alpha = 1.6 stable jumps: the activity test should reject in far more
    // than the nominal fraction of batches
    const auto path = sim::simulate_model(sim::stable_model(0.2, 1.6), 20000,
                                          step::five_minutes, 41);
    AnalysisConfig config;
    config.seed = 13;
    const auto report = analyze_series(path.increments, step::five_minutes, config);
    CHECK(report.batches == 20);
    CHECK_FALSE(report.activity_retained);
    for (const auto& b : report.per_batch) CHECK_FALSE(b.presence.has_value());
}

TEST_CASE("analyze_series is deterministic in the seed") {
    const auto dx = sim::simulate_brownian(4000, step::five_minutes, 0.2, 3);
    AnalysisConfig config;
    config.batch_size = 2000;
    config.seed = 11;
    const auto a = analyze_series(dx, step::five_minutes, config);
    const auto b = analyze_series(dx, step::five_minutes, config);
    REQUIRE(a.per_batch.size() == b.per_batch.size());
    for (std::size_t i = 0; i < a.per_batch.size(); ++i) {
        CHECK(a.per_batch[i].activity.statistic == b.per_batch[i].activity.statistic);
    }
}

TEST_CASE("threshold_decomposition splits increments exactly") {
    const auto path = sim::simulate_model(sim::compound_poisson_model(0.2, 50.0, 0.0, 0.6), 5000,
                                          step::five_minutes, 8);
    const auto d = threshold_decomposition(path.increments, 1e-6);
    REQUIRE(d.kept.size() == path.increments.size());
    std::size_t flagged_count = 0;
    for (std::size_t i = 0; i < d.kept.size(); ++i) {
        CHECK(d.kept[i] + d.flagged[i] == path.increments[i]);
        CHECK((d.kept[i] == 0.0 || d.flagged[i] == 0.0));
        if (d.flagged[i] != 0.0) ++flagged_count;
    }
    CHECK(flagged_count > 0);  // lambda T ~ 47 jumps expected
}
