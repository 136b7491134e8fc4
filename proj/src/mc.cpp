#include "pathwise/mc.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>

#include "pathwise/estimators.hpp"
#include "pathwise/levy_sim.hpp"
#include "pathwise/rng.hpp"

namespace pathwise::mc {

std::string to_string(StatisticKind kind) {
    return kind == StatisticKind::brownian_presence ? "brownian_presence" : "jump_activity";
}

void McExperiment::validate() const {
    model.validate();
    if (n < 2) throw std::invalid_argument("McExperiment: n must be >= 2");
    if (trials < 1) throw std::invalid_argument("McExperiment: trials must be >= 1");
    if (!(h > 0.0)) throw std::invalid_argument("McExperiment: h must be positive");
    if (!(v > 0.0)) throw std::invalid_argument("McExperiment: noise scale v must be positive");
    ThresholdSpec{threshold_c, beta}.validate();
    if (!(critical_value > 0.0)) {
        throw std::invalid_argument("McExperiment: critical value must be positive");
    }
}

namespace {

// outcome codes per trial
constexpr std::uint8_t kAccept = 0;
constexpr std::uint8_t kReject = 1;
constexpr std::uint8_t kDegenerate = 2;

std::uint8_t run_trial(const McExperiment& e, std::size_t trial, double* statistic_out) {
    const std::uint64_t trial_seed = rng::derive_seed(e.master_seed, trial);
    const SamplePath path = sim::simulate_model(e.model, e.n, e.h, trial_seed);
    const ThresholdSpec threshold{e.threshold_c, e.beta};
    const NoiseSpec noise{e.v, trial_seed};
    const TestOutcome out =
        (e.statistic == StatisticKind::brownian_presence)
            ? estimators::brownian_presence_statistic(path, threshold, noise, e.critical_value)
            : estimators::jump_activity_statistic(path, threshold, noise, e.critical_value);
    if (statistic_out != nullptr) *statistic_out = out.statistic;
    if (out.degenerate) return kDegenerate;
    return out.reject ? kReject : kAccept;
}

}  // namespace

McReport run_experiment(const McExperiment& experiment, unsigned workers) {
    experiment.validate();
    const auto start = std::chrono::steady_clock::now();

    const std::size_t trials = experiment.trials;
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));

    std::vector<std::uint8_t> outcome(trials, kAccept);
    std::vector<double> statistics(experiment.keep_statistics ? trials : 0);
    double* stats_ptr = experiment.keep_statistics ? statistics.data() : nullptr;

    std::exception_ptr failure;
    std::atomic_flag failed = ATOMIC_FLAG_INIT;
    auto body = [&](unsigned worker) {
        try {
            for (std::size_t j = worker; j < trials; j += workers) {
                outcome[j] = run_trial(experiment, j, stats_ptr ? stats_ptr + j : nullptr);
            }
        } catch (...) {
            if (!failed.test_and_set()) failure = std::current_exception();
        }
    };

    if (workers <= 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    McReport report;
    report.experiment = experiment;
    for (const std::uint8_t o : outcome) {
        if (o == kReject) ++report.rejections;
        if (o == kDegenerate) ++report.degenerates;
    }
    report.all_degenerate = (report.degenerates == trials);
    report.pct = report.all_degenerate
                     ? 0.0
                     : static_cast<double>(report.rejections) / static_cast<double>(trials);
    report.statistics = std::move(statistics);
    report.wall_time = std::chrono::steady_clock::now() - start;
    return report;
}

namespace {

std::vector<TableRowSpec> standard_rows() {
    using pathwise::step::five_minutes;
    using pathwise::step::one_day;
    using pathwise::step::one_hour;
    using pathwise::step::one_minute;
    return {
        {1000, "5min", five_minutes, 1e-6},  {1000, "5min", five_minutes, 1e-4},
        {1000, "5min", five_minutes, 1e-2},  {1000, "5min", five_minutes, 1e-1},
        {1000, "1min", one_minute, 1e-4},    {1000, "1hour", one_hour, 1e-4},
        {1000, "1day", one_day, 1e-4},       {100, "5min", five_minutes, 1e-4},
        {10000, "5min", five_minutes, 1e-4},
    };
}

}  // namespace

TableLayout table_layout(int table_id) {
    TableLayout t;
    t.id = table_id;
    t.rows = standard_rows();
    switch (table_id) {
        case 1:
            t.title = "Finite variation of jumps: alpha-stable process plus Brownian motion";
            t.statistic = StatisticKind::jump_activity;
            t.column_labels = {"alpha=0.6", "alpha=1.6"};
            t.models = {sim::stable_model(0.2, 0.6), sim::stable_model(0.2, 1.6)};
            t.published_pct = {{{0.067, 0.056, 0.047, 0.053, 0.049, 0.051, 0.066, 0.065, 0.065},
                            {0.439, 0.407, 0.250, 0.726, 0.241, 0.875, 0.984, 0.137, 0.928}}};
            break;
        case 2:
            t.title = "Presence of a Brownian component: Brownian motion plus compound Poisson jumps";
            t.statistic = StatisticKind::brownian_presence;
            t.column_labels = {"sigma=0", "sigma=0.2"};
            t.models = {sim::compound_poisson_model(0.0, 5.0, 0.0, 0.6),
                        sim::compound_poisson_model(0.2, 5.0, 0.0, 0.6)};
            t.published_pct = {{{0.043, 0.048, 0.054, 0.041, 0.047, 0.054, 0.082, 0.065, 0.049},
                            {1, 1, 1, 1, 1, 1, 1, 1, 1}}};
            break;
        case 3:
            t.title = "Presence of a Brownian component: Brownian motion plus alpha-stable jumps, alpha=0.3";
            t.statistic = StatisticKind::brownian_presence;
            t.column_labels = {"sigma=0", "sigma=0.2"};
            t.models = {sim::stable_model(0.0, 0.3), sim::stable_model(0.2, 0.3)};
            t.published_pct = {{{0.042, 0.026, 0.054, 0.053, 0.046, 0.140, 0.805, 0.056, 0.165},
                            {1, 1, 1, 1, 1, 1, 1, 1, 1}}};
            break;
        case 4:
            t.title = "Presence of a Brownian component: Brownian motion plus alpha-stable jumps, alpha=1.2";
            t.statistic = StatisticKind::brownian_presence;
            t.column_labels = {"sigma=0", "sigma=0.2"};
            t.models = {sim::stable_model(0.0, 1.2), sim::stable_model(0.2, 1.2)};
            t.published_pct = {{{1, 1, 1, 1, 1, 1, 1, 0.994, 1}, {1, 1, 1, 1, 1, 1, 1, 1, 1}}};
            break;
        case 5:
            t.title = "Presence of a Brownian component: stochastic volatility with variance gamma jumps";
            t.statistic = StatisticKind::brownian_presence;
            t.column_labels = {"sigma=0", "sigma=stoch"};
            t.models = {sim::variance_gamma_model(0.0, -0.2, 0.2, 0.23),
                        sim::stochastic_vol_vg_model()};
            t.published_pct = {{{0.032, 0.017, 0.027, 0.054, 0.034, 0.918, 1.000, 0.049, 0.912},
                            {1, 1, 1, 1, 1, 1, 1, 1, 1}}};
            break;
        default:
            throw std::invalid_argument("table_layout: table id must lie in 1..5");
    }
    return t;
}

TableReport reproduce_table(int table_id, std::size_t trials, std::uint64_t master_seed,
                            unsigned workers) {
    if (trials < 1) throw std::invalid_argument("reproduce_table: trials must be >= 1");
    TableReport report;
    report.layout = table_layout(table_id);
    report.trials = trials;
    report.master_seed = master_seed;
    report.cells.resize(report.layout.rows.size());

    for (std::size_t row = 0; row < report.layout.rows.size(); ++row) {
        const TableRowSpec& spec = report.layout.rows[row];
        for (std::size_t col = 0; col < 2; ++col) {
            McExperiment e;
            e.model = report.layout.models[col];
            e.n = spec.n;
            e.h = spec.h;
            e.v = spec.v;
            e.trials = trials;
            e.statistic = report.layout.statistic;
            // One derived seed per cell, stable in (table, row, column).
            e.master_seed = rng::derive_seed(
                master_seed, static_cast<std::uint64_t>(table_id) * 100 + row * 2 + col);
            report.cells[row][col] = run_experiment(e, workers);
        }
    }
    return report;
}

}  // namespace pathwise::mc
