#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "pathwise/model.hpp"
#include "pathwise/types.hpp"

// Monte Carlo harness for the rejection-percentage experiments. Trials are
// independent: trial j simulates one path and one noise draw from
// derive_seed(master_seed, j), so a report is fully determined by
// (experiment, master_seed) regardless of how many workers execute it.

namespace pathwise::mc {

enum class StatisticKind { brownian_presence, jump_activity };

std::string to_string(StatisticKind kind);

struct McExperiment {
    sim::ModelSpec model;
    std::size_t n = 1000;
    double h = step::five_minutes;
    double v = kDefaultNoiseScale;
    double beta = kDefaultBeta;
    double threshold_c = kDefaultThresholdC;
    std::size_t trials = 1000;
    std::uint64_t master_seed = 1;
    StatisticKind statistic = StatisticKind::brownian_presence;
    double critical_value = kDefaultCriticalValue;
    bool keep_statistics = false;

    void validate() const;
};

struct McReport {
    McExperiment experiment;
    std::size_t rejections = 0;
    std::size_t degenerates = 0;
    double pct = 0.0;               // rejections / trials
    bool all_degenerate = false;    // warning flag; pct forced to 0
    std::vector<double> statistics; // filled only when keep_statistics
    std::chrono::duration<double> wall_time{};
};

// workers = 0 picks hardware_concurrency (capped by trials).
McReport run_experiment(const McExperiment& experiment, unsigned workers = 0);

// The shared 9-row (n, h, v) grid of the study tables.
struct TableRowSpec {
    std::size_t n;
    const char* h_label;
    double h;
    double v;
};

struct TableLayout {
    int id = 0;
    std::string title;
    StatisticKind statistic = StatisticKind::brownian_presence;
    std::array<std::string, 2> column_labels;
    std::array<sim::ModelSpec, 2> models;
    std::vector<TableRowSpec> rows;
    std::array<std::vector<double>, 2> published_pct;  // published values, per column
};

// table_id in 1..5.
TableLayout table_layout(int table_id);

struct TableReport {
    TableLayout layout;
    std::size_t trials = 0;
    std::uint64_t master_seed = 0;
    // cells[row][column], row-major in the published order
    std::vector<std::array<McReport, 2>> cells;
};

TableReport reproduce_table(int table_id, std::size_t trials, std::uint64_t master_seed,
                            unsigned workers = 0);

}  // namespace pathwise::mc
