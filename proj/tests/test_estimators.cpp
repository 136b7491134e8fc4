#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <stdexcept>

#include "doctest.h"
#include "pathwise/estimators.hpp"
#include "pathwise/levy_sim.hpp"
#include "pathwise/stats.hpp"

using namespace pathwise;
using namespace pathwise::estimators;

TEST_CASE("threshold_value r_h = c h^beta") {
    CHECK(threshold_value(1.0, {1.0, 0.999}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(threshold_value(0.01, {2.0, 0.5}) == doctest::Approx(0.2).epsilon(1e-14));

    // five-minute step, default threshold; oracle: long-double exp/log
    const double h = step::five_minutes;
    const long double oracle = expl(0.999L * logl(static_cast<long double>(h)));
    CHECK(threshold_value(h, {1.0, 0.999}) ==
          doctest::Approx(static_cast<double>(oracle)).epsilon(1e-14));
    CHECK(threshold_value(h, {1.0, 0.999}) == doctest::Approx(4.77e-5).epsilon(1e-3));

    // strictly decreasing in beta for h < 1
    CHECK(threshold_value(h, {1.0, 0.9}) > threshold_value(h, {1.0, 0.999}));

    CHECK_THROWS_AS(threshold_value(0.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(threshold_value(-1.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(threshold_value(std::numeric_limits<double>::quiet_NaN(), {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(threshold_value(0.01, {1.0, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(threshold_value(0.01, {0.0, 0.5}), std::invalid_argument);
}

TEST_CASE("truncated_variance keeps squares at or below the threshold") {
    const std::vector<double> x{0.1, -0.2, 0.05};
    // 0.2*0.2 is the exact double square of the boundary increment; the
    // literal 0.04 sits one ulp below it
    CHECK(truncated_variance(x, 0.2 * 0.2) == doctest::Approx(0.0525).epsilon(1e-12));

    // threshold at or above the max square keeps everything
    CHECK(truncated_variance(x, 0.5) == doctest::Approx(0.01 + 0.04 + 0.0025).epsilon(1e-14));

    CHECK(truncated_variance(std::vector<double>{}, 0.1) == 0.0);

    const std::vector<double> bad{0.1, std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_AS(truncated_variance(bad, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(truncated_variance(x, 0.0), std::invalid_argument);
}

TEST_CASE("truncated_quarticity") {
    const std::vector<double> x{0.1, -0.2};
    CHECK(truncated_quarticity(x, 0.05, 0.01) ==
          doctest::Approx((1e-4 + 1.6e-3) / 0.03).epsilon(1e-13));
    // everything excluded
    CHECK(truncated_quarticity(x, 1e-9, 0.01) == 0.0);
    CHECK_THROWS_AS(truncated_quarticity(x, 0.05, 0.0), std::invalid_argument);
}

TEST_CASE("truncated_quarticity estimates sigma^4 T for Brownian paths") {
    // E[dW^4] = 3 h^2, so sum dX^4 / (3h) has mean sigma^4 T per path
    const double sigma = 0.2, h = 1.0 / 252.0;
    const std::size_t n = 252;  // T = 1
    const int paths = 400;
    double acc = 0.0;
    for (int p = 0; p < paths; ++p) {
        const auto dx = sim::simulate_brownian(n, h, sigma, 5000 + p);
        acc += truncated_quarticity(dx, 1.0, h);
    }
    const double mean = acc / paths;
    // Var of one-path estimator ~ 96 sigma^8 h / 9 * n = 32/3 sigma^8 T h; use a loose band
    CHECK(mean == doctest::Approx(std::pow(sigma, 4)).epsilon(0.05));
}

TEST_CASE("jump_sum_estimator") {
    const std::vector<double> x{0.1, 2.0, -0.05};
    CHECK(jump_sum_estimator(x, 0.25) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(jump_sum_estimator(x, 4.0) == 0.0);  // nothing exceeds the threshold

    // decomposition: H + kept sum = X_T - x0
    std::mt19937_64 gen(77);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> dx(1000);
        for (double& v : dx) {
            v = (static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5) * 4e-3;
        }
        double total = 0.0;
        for (const double v : dx) total += v;
        const double r = 1e-6;
        double kept = 0.0;
        for (const double v : dx) {
            if (v * v <= r) kept += v;
        }
        CHECK(jump_sum_estimator(dx, r) + kept ==
              doctest::Approx(total).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("add_collocated_noise") {
    const std::vector<double> x{1.0, -2.0, 3.0};

    SUBCASE("v = 0 returns the input unchanged") {
        const auto out = add_collocated_noise(x, NoiseSpec{0.0, 123}, 0.01);
        CHECK(out == x);
    }

    SUBCASE("seeded stream is frozen") {
        // zeros, v=1, h=1: output is exactly the normal stream of seed 42
        const std::vector<double> zeros(3, 0.0);
        const auto out = add_collocated_noise(zeros, NoiseSpec{1.0, 42}, 1.0);
        CHECK(out[0] == doctest::Approx(0.81063120514343068).epsilon(1e-15));
        CHECK(out[1] == doctest::Approx(0.061680902709525497).epsilon(1e-15));
        CHECK(out[2] == doctest::Approx(-0.46178763047639648).epsilon(1e-15));
    }

    SUBCASE("same seed gives bit-identical output") {
        const auto a = add_collocated_noise(x, NoiseSpec{1e-4, 9}, 0.01);
        const auto b = add_collocated_noise(x, NoiseSpec{1e-4, 9}, 0.01);
        CHECK(a == b);
    }

    SUBCASE("noise variance is v^2 h") {
        const double v = 3e-4, h = 2e-4;
        const std::vector<double> zeros(100000, 0.0);
        const auto out = add_collocated_noise(zeros, NoiseSpec{v, 21}, h);
        double sum = 0.0, sum_sq = 0.0;
        for (const double z : out) {
            sum += z;
            sum_sq += z * z;
        }
        const double n = static_cast<double>(out.size());
        const double var = sum_sq / n - (sum / n) * (sum / n);
        const double se = v * v * h * std::sqrt(2.0 / n);
        CHECK(std::fabs(var - v * v * h) < 3.0 * se);
    }
}

TEST_CASE("decide") {
    CHECK(decide(2.1, 1.96).reject);
    CHECK_FALSE(decide(-1.96, 1.96).reject);  // strict inequality
    CHECK_FALSE(decide(0.0, 1.96).reject);
    CHECK(decide(-2.0, 1.96).reject);
    const auto nan_case = decide(std::numeric_limits<double>::quiet_NaN(), 1.96);
    CHECK_FALSE(nan_case.reject);
    CHECK(nan_case.degenerate);
    CHECK_THROWS_AS(decide(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("brownian_presence_statistic on a pure-noise path") {
    SamplePath path(0.0, std::vector<double>(1000, 0.0), step::five_minutes);
    const auto out = brownian_presence_statistic(path, ThresholdSpec{}, NoiseSpec{1e-4, 7});
    CHECK(std::isfinite(out.statistic));
    CHECK_FALSE(out.degenerate);
    // regression value, frozen at first computation with the fixed stream layout
    CHECK(out.statistic == doctest::Approx(0.91406066174035527).epsilon(1e-12));
    CHECK_FALSE(out.reject);
    CHECK(out.n == 1000);
    CHECK(out.v == 1e-4);
    CHECK(out.r_h == doctest::Approx(4.7714002939964296e-05).epsilon(1e-14));

    // v = 0 is rejected: the statistic is only defined with augmentation
    CHECK_THROWS_AS(brownian_presence_statistic(path, ThresholdSpec{}, NoiseSpec{0.0, 7}),
                    std::invalid_argument);
}

TEST_CASE("statistics flag a degenerate (all-excluded) path") {
    // huge increments, all above the threshold; tiny noise cannot bring
    // them back below it
    SamplePath path(0.0, std::vector<double>(100, 5.0), 0.01);
    const auto out = brownian_presence_statistic(path, ThresholdSpec{}, NoiseSpec{1e-8, 3});
    CHECK(out.degenerate);
    CHECK_FALSE(out.reject);
    CHECK(std::isnan(out.statistic));
    CHECK(out.iq_hat == 0.0);
}

TEST_CASE("presence statistic detects sigma = 0.2 instantly") {
    const auto dx = sim::simulate_brownian(1000, step::five_minutes, 0.2, 321);
    SamplePath path(0.0, dx, step::five_minutes);
    const auto out = brownian_presence_statistic(path, ThresholdSpec{}, NoiseSpec{1e-4, 321});
    CHECK(out.reject);
    CHECK(out.statistic > 10.0);
}

TEST_CASE("jump_activity_statistic") {
    SUBCASE("pure-noise path gives a standard-normal-scale statistic") {
        SamplePath path(0.0, std::vector<double>(1000, 0.0), step::five_minutes);
        const auto out = jump_activity_statistic(path, ThresholdSpec{}, NoiseSpec{1e-4, 7});
        CHECK(std::isfinite(out.statistic));
        CHECK(out.statistic == doctest::Approx(0.8045682192806779).epsilon(1e-12));
        // independent stream: differs from the presence-test statistic
        const auto presence =
            brownian_presence_statistic(path, ThresholdSpec{}, NoiseSpec{1e-4, 7});
        CHECK(out.statistic != presence.statistic);
    }

    SUBCASE("null rejection rate is near the nominal level") {
        // increments == 0 is an exact finite-variation null
        int rejects = 0;
        const int trials = 1000;
        SamplePath path(0.0, std::vector<double>(1000, 0.0), step::five_minutes);
        for (int t = 0; t < trials; ++t) {
            const auto out =
                jump_activity_statistic(path, ThresholdSpec{}, NoiseSpec{1e-4, 40000u + t});
            if (out.reject) ++rejects;
        }
        const double pct = double(rejects) / trials;
        CHECK(pct > 0.02);
        CHECK(pct < 0.09);
    }

    SUBCASE("v = 0 rejected") {
        SamplePath path(0.0, std::vector<double>(10, 0.0), 0.01);
        CHECK_THROWS_AS(jump_activity_statistic(path, ThresholdSpec{}, NoiseSpec{0.0, 1}),
                        std::invalid_argument);
    }
}

TEST_CASE("inclusive threshold convention is shared by all estimators") {
    // 0.25^2 == 0.0625 exactly in binary, so the boundary case is exact:
    // the square sitting exactly at r is kept by IV/IQ and not flagged by H
    const double r = 0.0625;
    const std::vector<double> x{0.25, 0.5};
    CHECK(truncated_variance(x, r) == 0.0625);
    CHECK(truncated_quarticity(x, r, 0.01) ==
          doctest::Approx(0.0625 * 0.0625 / 0.03).epsilon(1e-14));
    CHECK(jump_sum_estimator(x, r) == 0.5);
}

TEST_CASE("identical inputs give bit-identical outcomes") {
    const auto dx = sim::simulate_brownian(500, step::five_minutes, 0.1, 8);
    SamplePath path(0.25, dx, step::five_minutes);
    const auto a = brownian_presence_statistic(path, ThresholdSpec{}, NoiseSpec{1e-4, 55});
    const auto b = brownian_presence_statistic(path, ThresholdSpec{}, NoiseSpec{1e-4, 55});
    CHECK(a.statistic == b.statistic);
    CHECK(a.iv_hat == b.iv_hat);
    CHECK(a.iq_hat == b.iq_hat);
    CHECK(a.reject == b.reject);
}

TEST_CASE("null normality: U_h over the compound-Poisson null passes a KS test") {
    // Table-2 null model: sigma = 0, compound Poisson jumps, 5-minute grid
    std::vector<double> stats_values;
    const int trials = 500;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t seed = rng::derive_seed(2222, t);
        const auto dx = sim::simulate_compound_poisson(1000, step::five_minutes, 5.0, 0.0, 0.6,
                                                       rng::derive_seed(seed, rng::Stream::jumps));
        SamplePath path(0.0, dx, step::five_minutes);
        const auto out = brownian_presence_statistic(path, ThresholdSpec{}, NoiseSpec{1e-4, seed});
        if (!out.degenerate) stats_values.push_back(out.statistic);
    }
    REQUIRE(stats_values.size() >= 490);
    const double d = stats::ks_distance_to_normal(stats_values);
    CHECK(stats::ks_asymptotic_pvalue(d, stats_values.size()) > 0.01);
}

TEST_CASE("SamplePath invariants") {
    CHECK_THROWS_AS(SamplePath(0.0, {}, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(SamplePath(0.0, {0.1}, 0.0), std::invalid_argument);
    SamplePath p(1.0, {0.1, -0.2}, 0.5);
    CHECK(p.horizon() == doctest::Approx(1.0));
    CHECK(p.terminal() == doctest::Approx(0.9));
}
