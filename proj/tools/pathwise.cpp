// pathwise CLI: simulate paths, reproduce the Monte Carlo tables, analyze
// price series, run self-checks. Machine-readable output is byte-identical
// across reruns with the same configuration and seed: the banner (version,
// resolved config, timing) goes to stderr, never into the output body.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pathwise/estimators.hpp"
#include "pathwise/kernels.hpp"
#include "pathwise/levy_sim.hpp"
#include "pathwise/mc.hpp"
#include "pathwise/pipeline.hpp"
#include "pathwise/rng.hpp"
#include "pathwise/stats.hpp"
#include "pathwise/version.hpp"

namespace {

using nlohmann::json;
using namespace pathwise;

json tool_info() { return json{{"name", "pathwise"}, {"version", kVersion}}; }

void print_banner(const std::string& command, const json& config) {
    std::cerr << "pathwise " << kVersion << " (kernels: " << kernels::active_variant() << ")\n"
              << "command: " << command << "\n"
              << "config: " << config.dump() << "\n";
}

void write_output(const std::string& out_path, const std::string& body) {
    if (out_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
    f << body;
}

double parse_step(const std::string& text) {
    if (const auto labeled = step::from_label(text)) return *labeled;
    try {
        std::size_t used = 0;
        const double years = std::stod(text, &used);
        if (used == text.size() && years > 0.0 && std::isfinite(years)) return years;
    } catch (const std::exception&) {
    }
    throw CLI::ValidationError("--h", "expected 5min|1min|1hour|1day or a positive year fraction");
}

// Model selection shared by `simulate` and `mc-run`: a named preset or a
// JSON document, optionally overridden piece by piece.
struct ModelOptions {
    std::string preset = "table2-null";
    std::string model_json_path;

    double sigma = 0.0;
    bool sigma_set = false;
    bool no_diffusion = false;
    bool stochvol = false;
    sim::ExpOuParams sv{};

    std::string jumps_kind;
    double lambda = 5.0;
    double jump_mean = 0.0;
    double jump_sd = 0.6;
    double alpha = 0.6;
    double stable_scale = 1.0;
    double vg_c = -0.2;
    double vg_eta = 0.2;
    double vg_b = 0.23;

    double mu = 0.0;
    bool mu_set = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", preset, "model preset (see --list-models)")
            ->default_str(preset);
        cmd->add_option("--model-json", model_json_path, "load the model from a JSON document");
        cmd->add_option("--sigma", sigma, "constant diffusion volatility")
            ->each([this](const std::string&) { sigma_set = true; });
        cmd->add_flag("--no-diffusion", no_diffusion, "remove the diffusion component");
        cmd->add_flag("--stochvol", stochvol, "exp-OU stochastic volatility");
        cmd->add_option("--sv-k0", sv.k0, "stochastic vol: initial log-vol");
        cmd->add_option("--sv-k", sv.k, "stochastic vol: mean-reversion speed");
        cmd->add_option("--sv-kbar", sv.kbar, "stochastic vol: log mean level");
        cmd->add_option("--sv-varsigma", sv.varsigma, "stochastic vol: vol of log-vol");
        cmd->add_option("--sv-rho", sv.rho, "stochastic vol: driver correlation");
        cmd->add_option("--jumps", jumps_kind, "jump component: none|cp|stable|vg");
        cmd->add_option("--lambda", lambda, "compound Poisson intensity");
        cmd->add_option("--jump-mean", jump_mean, "compound Poisson jump mean");
        cmd->add_option("--jump-sd", jump_sd, "compound Poisson jump std dev");
        cmd->add_option("--alpha", alpha, "stable index in (0,2]");
        cmd->add_option("--stable-scale", stable_scale, "stable scale (annualized)");
        cmd->add_option("--vg-c", vg_c, "variance gamma drift c");
        cmd->add_option("--vg-eta", vg_eta, "variance gamma eta");
        cmd->add_option("--vg-b", vg_b, "variance gamma b (subordinator variance)");
        cmd->add_option("--mu", mu, "drift mu, enables the (mu - sigma^2/2) dt term")
            ->each([this](const std::string&) { mu_set = true; });
    }

    sim::ModelSpec resolve(const CLI::App* cmd) const {
        sim::ModelSpec model;
        if (!model_json_path.empty()) {
            std::ifstream in(model_json_path);
            if (!in) throw std::runtime_error("cannot open model file '" + model_json_path + "'");
            json doc = json::parse(in);
            model = doc.get<sim::ModelSpec>();
        } else {
            const auto preset_model = sim::preset_by_name(preset);
            if (!preset_model) {
                throw CLI::ValidationError("--model", "unknown preset '" + preset + "'");
            }
            model = *preset_model;
        }

        if (no_diffusion) model.diffusion = sim::DiffusionSpec{};
        if (sigma_set) {
            model.diffusion.kind = sim::DiffusionSpec::Kind::constant;
            model.diffusion.sigma = sigma;
        }
        if (stochvol) {
            model.diffusion.kind = sim::DiffusionSpec::Kind::exp_ou;
            model.diffusion.exp_ou = sv;
        }
        if (!jumps_kind.empty()) {
            if (jumps_kind == "none") {
                model.jumps = sim::JumpSpec{};
            } else if (jumps_kind == "cp") {
                model.jumps.kind = sim::JumpSpec::Kind::compound_poisson;
                model.jumps.lambda = lambda;
                model.jumps.jump_mean = jump_mean;
                model.jumps.jump_sd = jump_sd;
            } else if (jumps_kind == "stable") {
                model.jumps.kind = sim::JumpSpec::Kind::stable;
                model.jumps.alpha = alpha;
                model.jumps.scale = stable_scale;
            } else if (jumps_kind == "vg") {
                model.jumps.kind = sim::JumpSpec::Kind::variance_gamma;
                model.jumps.vg_c = vg_c;
                model.jumps.vg_eta = vg_eta;
                model.jumps.vg_b = vg_b;
            } else {
                throw CLI::ValidationError("--jumps", "expected none|cp|stable|vg");
            }
        } else if (cmd->count("--alpha") > 0 &&
                   model.jumps.kind == sim::JumpSpec::Kind::stable) {
            model.jumps.alpha = alpha;
        }
        if (cmd->count("--stable-scale") > 0 &&
            model.jumps.kind == sim::JumpSpec::Kind::stable) {
            model.jumps.scale = stable_scale;
        }
        if (mu_set) {
            model.drift.kind = sim::DriftSpec::Kind::mu_minus_half_sigma2;
            model.drift.mu = mu;
        }
        model.validate();
        return model;
    }
};

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

int cmd_simulate(const ModelOptions& opts, const CLI::App* cmd, std::size_t n,
                 const std::string& h_text, std::uint64_t seed, double x0,
                 const std::string& format, const std::string& out_path) {
    const double h = parse_step(h_text);
    const sim::ModelSpec model = opts.resolve(cmd);

    json config{{"command", "simulate"}, {"model", model},          {"n", n},
                {"h", h},                {"h_label", h_text},       {"seed", seed},
                {"x0", x0},              {"output_format", format}};
    print_banner("simulate", config);

    const SamplePath path = sim::simulate_model(model, n, h, seed, x0);

    std::string body;
    if (format == "json") {
        json doc{{"tool", tool_info()},  {"command", "simulate"}, {"model", model},
                 {"n", path.n()},        {"h", path.h},           {"h_label", h_text},
                 {"seed", seed},         {"x0", path.x0},         {"increments", path.increments}};
        body = doc.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "# pathwise simulate\n";
        os << "# model: " << model.describe() << "\n";
        char buf[160];
        std::snprintf(buf, sizeof(buf), "# n=%zu h=%.17g seed=%llu x0=%.17g\n", path.n(), path.h,
                      static_cast<unsigned long long>(seed), path.x0);
        os << buf;
        for (const double dx : path.increments) {
            std::snprintf(buf, sizeof(buf), "%.17g\n", dx);
            os << buf;
        }
        body = os.str();
    }
    write_output(out_path, body);
    return 0;
}

// ---------------------------------------------------------------------------
// mc-table / mc-run
// ---------------------------------------------------------------------------

json cell_json(const mc::McReport& report, const std::string& column_label,
               const mc::TableRowSpec& row, double published_pct) {
    return json{{"column", column_label},
                {"n", row.n},
                {"h_label", row.h_label},
                {"h", row.h},
                {"v", row.v},
                {"model", report.experiment.model},
                {"seed", report.experiment.master_seed},
                {"trials", report.experiment.trials},
                {"rejections", report.rejections},
                {"degenerates", report.degenerates},
                {"pct", report.pct},
                {"published_pct", published_pct}};
}

std::string render_table_text(const mc::TableReport& report) {
    const mc::TableLayout& layout = report.layout;
    std::ostringstream os;
    os << "Table " << layout.id << ". " << layout.title << "\n";
    os << "statistic: " << mc::to_string(layout.statistic) << ", reject when |U| > 1.96; pct = "
       << "rejection fraction over " << report.trials << " trials, master seed "
       << report.master_seed << "\n";
    if (layout.id == 1 || layout.id == 3 || layout.id == 4) {
        os << "note: the stable scale is not stated in the source tables; scale=1 is used\n";
    }
    os << "\n";
    char buf[200];
    std::snprintf(buf, sizeof(buf), "%6s %6s %9s   %-22s %-22s\n", "n", "h", "v",
                  layout.column_labels[0].c_str(), layout.column_labels[1].c_str());
    os << buf;
    std::snprintf(buf, sizeof(buf), "%6s %6s %9s   %10s %11s  %10s %11s\n", "", "", "", "pct",
                  "(published)", "pct", "(published)");
    os << buf;
    for (std::size_t row = 0; row < layout.rows.size(); ++row) {
        const auto& r = layout.rows[row];
        std::snprintf(buf, sizeof(buf), "%6zu %6s %9.2e   %10.3f %11.3f  %10.3f %11.3f\n", r.n,
                      r.h_label, r.v, report.cells[row][0].pct, layout.published_pct[0][row],
                      report.cells[row][1].pct, layout.published_pct[1][row]);
        os << buf;
    }
    std::size_t degenerates = 0;
    for (const auto& pair : report.cells) degenerates += pair[0].degenerates + pair[1].degenerates;
    if (degenerates > 0) {
        os << "\nwarning: " << degenerates << " degenerate trials (zero quarticity), excluded "
           << "from rejection counts\n";
    }
    return os.str();
}

int cmd_mc_table(int table_id, std::size_t trials, std::uint64_t seed, unsigned workers,
                 const std::string& format, const std::string& out_path) {
    json config{{"command", "mc-table"}, {"table", table_id},        {"trials", trials},
                {"seed", seed},          {"workers", workers},       {"output_format", format}};
    print_banner("mc-table", config);

    const auto start = std::chrono::steady_clock::now();
    const mc::TableReport report = mc::reproduce_table(table_id, trials, seed, workers);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    std::string body;
    if (format == "json") {
        json cells = json::array();
        for (std::size_t row = 0; row < report.layout.rows.size(); ++row) {
            for (std::size_t col = 0; col < 2; ++col) {
                json c = cell_json(report.cells[row][col], report.layout.column_labels[col],
                                   report.layout.rows[row], report.layout.published_pct[col][row]);
                c["row"] = row;
                cells.push_back(std::move(c));
            }
        }
        json doc{{"tool", tool_info()},
                 {"command", "mc-table"},
                 {"table", report.layout.id},
                 {"title", report.layout.title},
                 {"statistic", mc::to_string(report.layout.statistic)},
                 {"beta", kDefaultBeta},
                 {"threshold_c", kDefaultThresholdC},
                 {"critical_value", kDefaultCriticalValue},
                 {"trials", report.trials},
                 {"master_seed", report.master_seed},
                 {"cells", std::move(cells)}};
        body = doc.dump(2) + "\n";
    } else {
        body = render_table_text(report);
    }
    write_output(out_path, body);
    std::cerr << "elapsed: " << elapsed.count() << "s\n";
    return 0;
}

int cmd_mc_run(const ModelOptions& opts, const CLI::App* cmd, const std::string& statistic,
               std::size_t n, const std::string& h_text, double v, double beta,
               double threshold_c, double critical_value, std::size_t trials, std::uint64_t seed,
               unsigned workers, const std::string& format, const std::string& out_path) {
    mc::McExperiment e;
    e.model = opts.resolve(cmd);
    e.n = n;
    e.h = parse_step(h_text);
    e.v = v;
    e.beta = beta;
    e.threshold_c = threshold_c;
    e.critical_value = critical_value;
    e.trials = trials;
    e.master_seed = seed;
    if (statistic == "presence") {
        e.statistic = mc::StatisticKind::brownian_presence;
    } else if (statistic == "activity") {
        e.statistic = mc::StatisticKind::jump_activity;
    } else {
        throw CLI::ValidationError("--statistic", "expected presence|activity");
    }

    json exp_config{{"model", e.model},
                    {"statistic", mc::to_string(e.statistic)},
                    {"n", e.n},
                    {"h", e.h},
                    {"h_label", h_text},
                    {"v", e.v},
                    {"beta", e.beta},
                    {"threshold_c", e.threshold_c},
                    {"critical_value", e.critical_value},
                    {"trials", e.trials},
                    {"master_seed", e.master_seed}};
    json config = exp_config;
    config["command"] = "mc-run";
    config["workers"] = workers;
    print_banner("mc-run", config);

    const mc::McReport report = mc::run_experiment(e, workers);

    std::string body;
    if (format == "json") {
        json doc{{"tool", tool_info()},
                 {"command", "mc-run"},
                 {"config", exp_config},
                 {"result", json{{"rejections", report.rejections},
                                 {"degenerates", report.degenerates},
                                 {"pct", report.pct},
                                 {"all_degenerate", report.all_degenerate}}}};
        body = doc.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "mc-run: " << e.model.describe() << "\n";
        char buf[200];
        std::snprintf(buf, sizeof(buf),
                      "statistic=%s n=%zu h=%s v=%g beta=%g trials=%zu seed=%llu\n",
                      mc::to_string(e.statistic).c_str(), e.n, h_text.c_str(), e.v, e.beta,
                      e.trials, static_cast<unsigned long long>(e.master_seed));
        os << buf;
        std::snprintf(buf, sizeof(buf), "pct=%.6f rejections=%zu degenerates=%zu\n", report.pct,
                      report.rejections, report.degenerates);
        os << buf;
        body = os.str();
    }
    write_output(out_path, body);
    std::cerr << "elapsed: " << report.wall_time.count() << "s\n";
    return 0;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

json outcome_json(const TestOutcome& o) {
    json j{{"statistic", o.statistic}, {"iv_hat", o.iv_hat},       {"iq_hat", o.iq_hat},
           {"r_h", o.r_h},             {"n", o.n},                 {"h", o.h},
           {"v", o.v},                 {"critical_value", o.critical_value},
           {"reject", o.reject},       {"degenerate", o.degenerate}};
    if (std::isnan(o.statistic)) j["statistic"] = nullptr;
    return j;
}

int cmd_analyze(const std::string& input_path, const pipeline::CsvFormat& csv_format,
                bool exclude_overnight, const pipeline::AnalysisConfig& config,
                const std::string& dump_path, const std::string& format,
                const std::string& out_path) {
    json config_json{{"command", "analyze"},
                     {"input", input_path},
                     {"batch_size", config.batch_size},
                     {"v", config.v},
                     {"beta", config.beta},
                     {"threshold_c", config.threshold_c},
                     {"critical_value", config.critical_value},
                     {"seed", config.seed},
                     {"exclude_overnight", exclude_overnight},
                     {"output_format", format}};
    print_banner("analyze", config_json);

    const pipeline::PriceSeries series = pipeline::load_price_series_file(input_path, csv_format);
    const pipeline::LogReturns returns = pipeline::to_log_returns(series, exclude_overnight);
    const pipeline::BatchReport report =
        pipeline::analyze_series(returns.increments, returns.h, config);

    if (!dump_path.empty()) {
        const double r =
            estimators::threshold_value(returns.h, ThresholdSpec{config.threshold_c, config.beta});
        const pipeline::Decomposition d =
            pipeline::threshold_decomposition(returns.increments, r);
        std::ostringstream os;
        os << "index,increment,kept,flagged_jump\n";
        char buf[160];
        for (std::size_t i = 0; i < returns.increments.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g\n", i, returns.increments[i],
                          d.kept[i], d.flagged[i]);
            os << buf;
        }
        write_output(dump_path, os.str());
    }

    std::string body;
    if (format == "json") {
        json per_batch = json::array();
        for (const auto& b : report.per_batch) {
            json item{{"batch", b.index}, {"activity", outcome_json(b.activity)}};
            if (b.presence) item["presence"] = outcome_json(*b.presence);
            per_batch.push_back(std::move(item));
        }
        json doc{{"tool", tool_info()},
                 {"command", "analyze"},
                 {"config", config_json},
                 {"series", json{{"observations", series.size()},
                                 {"increments", returns.increments.size()},
                                 {"h", returns.h},
                                 {"spacing_seconds", returns.spacing_seconds},
                                 {"dropped_session_gaps", returns.dropped_session_gaps}}},
                 {"result", json{{"batches", report.batches},
                                 {"dropped_increments", report.dropped_increments},
                                 {"activity_outside_fraction", report.activity_outside_fraction},
                                 {"retention_band", report.retention_band},
                                 {"activity_retained", report.activity_retained},
                                 {"presence_all_reject", report.presence_all_reject},
                                 {"per_batch", std::move(per_batch)}}}};
        body = doc.dump(2) + "\n";
    } else {
        std::ostringstream os;
        char buf[240];
        os << "analyze: " << input_path << "\n";
        std::snprintf(buf, sizeof(buf),
                      "observations=%zu increments=%zu spacing=%llds h=%.6g years\n",
                      series.size(), returns.increments.size(),
                      static_cast<long long>(returns.spacing_seconds), returns.h);
        os << buf;
        std::snprintf(buf, sizeof(buf), "batches=%zu (size %zu, %zu increments dropped)\n",
                      report.batches, report.batch_size, report.dropped_increments);
        os << buf;
        std::snprintf(buf, sizeof(buf),
                      "stage 1 (jump activity): outside fraction %.4f, retention band %.4f -> %s\n",
                      report.activity_outside_fraction, report.retention_band,
                      report.activity_retained ? "retain alpha<1" : "reject alpha<1");
        os << buf;
        if (report.activity_retained) {
            std::snprintf(buf, sizeof(buf), "stage 2 (Brownian presence): %s\n",
                          report.presence_all_reject
                              ? "all batches reject sigma==0 (Brownian component present)"
                              : "not all batches reject sigma==0");
            os << buf;
        } else {
            os << "stage 2 skipped: activity test rejected alpha<1\n";
        }
        os << "\nbatch  U_activity  reject   U_presence  reject\n";
        for (const auto& b : report.per_batch) {
            std::string presence = "-";
            std::string presence_flag = "-";
            if (b.presence) {
                std::snprintf(buf, sizeof(buf), "%.4f", b.presence->statistic);
                presence = b.presence->degenerate ? "degenerate" : buf;
                presence_flag = b.presence->reject ? "yes" : "no";
            }
            std::string activity = "degenerate";
            if (!b.activity.degenerate) {
                std::snprintf(buf, sizeof(buf), "%.4f", b.activity.statistic);
                activity = buf;
            }
            std::snprintf(buf, sizeof(buf), "%5zu  %10s  %6s   %10s  %6s\n", b.index,
                          activity.c_str(), b.activity.reject ? "yes" : "no", presence.c_str(),
                          presence_flag.c_str());
            os << buf;
        }
        body = os.str();
    }
    write_output(out_path, body);
    return 0;
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

int cmd_selftest() {
    print_banner("selftest", json{{"command", "selftest"}});
    int failures = 0;
    auto check = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
        if (!ok) ++failures;
    };

    {
        std::mt19937_64 gen(2024);
        std::vector<double> x(4097);
        for (double& v : x) {
            v = (static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5) * 2e-3;
        }
        const double r = 1e-7;
        const auto close = [](double a, double b) {
            return std::fabs(a - b) <= 1e-12 * (1.0 + std::fabs(a));
        };
        bool ok = close(kernels::sum_squares_below(x, r), kernels::scalar::sum_squares_below(x, r));
        ok = ok && close(kernels::sum_quartics_below(x, r),
                         kernels::scalar::sum_quartics_below(x, r));
        ok = ok && close(kernels::sum_above(x, r), kernels::scalar::sum_above(x, r));
        check(ok, std::string("kernel variants agree (active: ") +
                      std::string(kernels::active_variant()) + ")");
    }
    {
        SamplePath path(0.0, std::vector<double>(500, 0.0), step::five_minutes);
        const auto a = estimators::brownian_presence_statistic(path, {}, NoiseSpec{1e-4, 9});
        const auto b = estimators::brownian_presence_statistic(path, {}, NoiseSpec{1e-4, 9});
        check(a.statistic == b.statistic, "statistics deterministic in the seed");
    }
    {
        mc::McExperiment e;
        e.model = sim::compound_poisson_model(0.0, 5.0, 0.0, 0.6);
        e.n = 200;
        e.trials = 64;
        e.master_seed = 3;
        const auto one = mc::run_experiment(e, 1);
        const auto many = mc::run_experiment(e, 4);
        check(one.rejections == many.rejections && one.pct == many.pct,
              "Monte Carlo tally independent of worker count");
    }
    {
        rng::Engine eng(17);
        double sum = 0.0, sum_sq = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            const double z = eng.normal();
            sum += z;
            sum_sq += z * z;
        }
        const double mean = sum / n;
        const double var = sum_sq / n - mean * mean;
        check(std::fabs(mean) < 4.0 / std::sqrt(n) && std::fabs(var - 1.0) < 4.0 * std::sqrt(2.0 / n),
              "normal draws have mean 0, variance 1");
    }
    std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Threshold-based tests for the pathwise structure of semimartingales"};
    app.require_subcommand(1);
    // --h is a real option below, so help is long-form only.
    app.set_help_flag("--help", "print help");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "simulate a model path and write it out");
    simulate->set_help_flag("--help", "print help");
    ModelOptions sim_model;
    sim_model.attach(simulate);
    std::size_t sim_n = 1000;
    std::string sim_h = "5min";
    std::uint64_t sim_seed = 1;
    double sim_x0 = 0.0;
    std::string sim_format = "json";
    std::string sim_out;
    bool list_models = false;
    simulate->add_option("--n", sim_n, "number of increments")->check(CLI::PositiveNumber);
    simulate->add_option("--h", sim_h, "step: 5min|1min|1hour|1day or year fraction");
    simulate->add_option("--seed", sim_seed, "random seed");
    simulate->add_option("--x0", sim_x0, "initial level");
    simulate->add_option("--format", sim_format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
    simulate->add_option("--out", sim_out, "output path (default: stdout)");
    simulate->add_flag("--list-models", list_models, "list model presets and exit");

    // mc-table
    auto* mc_table = app.add_subcommand("mc-table", "reproduce one of the study tables 1-5");
    mc_table->set_help_flag("--help", "print help");
    int table_id = 0;
    std::size_t table_trials = 1000;
    std::uint64_t table_seed = 1;
    unsigned table_workers = 0;
    std::string table_format = "text";
    std::string table_out;
    mc_table->add_option("table", table_id, "table id (1-5)")->required()->check(CLI::Range(1, 5));
    mc_table->add_option("--trials", table_trials, "trials per cell")->check(CLI::PositiveNumber);
    mc_table->add_option("--seed", table_seed, "master seed");
    mc_table->add_option("--workers", table_workers, "worker threads (0 = auto)");
    mc_table->add_option("--format", table_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    mc_table->add_option("--out", table_out, "output path (default: stdout)");

    // mc-run
    auto* mc_run = app.add_subcommand("mc-run", "run a single Monte Carlo experiment");
    mc_run->set_help_flag("--help", "print help");
    ModelOptions run_model;
    run_model.attach(mc_run);
    std::string run_statistic = "presence";
    std::size_t run_n = 1000;
    std::string run_h = "5min";
    double run_v = kDefaultNoiseScale;
    double run_beta = kDefaultBeta;
    double run_c = kDefaultThresholdC;
    double run_crit = kDefaultCriticalValue;
    std::size_t run_trials = 1000;
    std::uint64_t run_seed = 1;
    unsigned run_workers = 0;
    std::string run_format = "json";
    std::string run_out;
    mc_run->add_option("--statistic", run_statistic, "presence|activity")
        ->check(CLI::IsMember({"presence", "activity"}));
    mc_run->add_option("--n", run_n, "increments per trial")->check(CLI::PositiveNumber);
    mc_run->add_option("--h", run_h, "step: 5min|1min|1hour|1day or year fraction");
    mc_run->add_option("--v", run_v, "noise scale")->check(CLI::PositiveNumber);
    mc_run->add_option("--beta", run_beta, "threshold exponent in (0,1)");
    mc_run->add_option("--threshold-c", run_c, "threshold constant c");
    mc_run->add_option("--critical-value", run_crit, "two-sided critical value");
    mc_run->add_option("--trials", run_trials, "number of trials")->check(CLI::PositiveNumber);
    mc_run->add_option("--seed", run_seed, "master seed");
    mc_run->add_option("--workers", run_workers, "worker threads (0 = auto)");
    mc_run->add_option("--format", run_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    mc_run->add_option("--out", run_out, "output path (default: stdout)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "two-stage test pipeline on a price series");
    analyze->set_help_flag("--help", "print help");
    std::string an_input;
    pipeline::AnalysisConfig an_config;
    pipeline::CsvFormat an_csv;
    bool an_exclude = false;
    std::string an_dump;
    std::string an_format = "text";
    std::string an_out;
    std::string an_delim = ",";
    analyze->add_option("input", an_input, "delimited price file")->required();
    analyze->add_option("--batch", an_config.batch_size, "batch size")->check(CLI::Range(2, 1 << 30));
    analyze->add_option("--v", an_config.v, "noise scale")->check(CLI::PositiveNumber);
    analyze->add_option("--beta", an_config.beta, "threshold exponent in (0,1)");
    analyze->add_option("--threshold-c", an_config.threshold_c, "threshold constant c");
    analyze->add_option("--critical-value", an_config.critical_value, "two-sided critical value");
    analyze->add_option("--seed", an_config.seed, "noise seed");
    analyze->add_flag("--exclude-overnight", an_exclude,
                      "drop returns spanning session boundaries");
    analyze->add_option("--delimiter", an_delim, "field delimiter (single character)");
    analyze->add_option("--time-column", an_csv.timestamp_column, "timestamp column name");
    analyze->add_option("--price-column", an_csv.price_column, "price column name");
    analyze->add_option("--dump-decomposition", an_dump,
                        "write per-increment kept/flagged split to this path");
    analyze->add_option("--format", an_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    analyze->add_option("--out", an_out, "output path (default: stdout)");

    // selftest
    app.add_subcommand("selftest", "run quick internal consistency checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            if (list_models) {
                for (const auto& name : sim::preset_names()) std::cout << name << "\n";
                return 0;
            }
            return cmd_simulate(sim_model, simulate, sim_n, sim_h, sim_seed, sim_x0, sim_format,
                                sim_out);
        }
        if (mc_table->parsed()) {
            return cmd_mc_table(table_id, table_trials, table_seed, table_workers, table_format,
                                table_out);
        }
        if (mc_run->parsed()) {
            return cmd_mc_run(run_model, mc_run, run_statistic, run_n, run_h, run_v, run_beta,
                              run_c, run_crit, run_trials, run_seed, run_workers, run_format,
                              run_out);
        }
        if (analyze->parsed()) {
            if (an_delim.size() != 1) {
                throw CLI::ValidationError("--delimiter", "expected a single character");
            }
            an_csv.delimiter = an_delim[0];
            return cmd_analyze(an_input, an_csv, an_exclude, an_config, an_dump, an_format,
                               an_out);
        }
        return cmd_selftest();
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
