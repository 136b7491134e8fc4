#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace pathwise::sim {

// Log-volatility Ornstein-Uhlenbeck parameters:
//   sigma_t = exp(K_t),  dK = -k (K - kbar) dt + varsigma dW2,
//   corr(dW1, dW2) = rho, with W1 driving the price.
struct ExpOuParams {
    double k0 = std::log(0.3);
    double k = 0.09;
    double kbar = std::log(0.25);
    double varsigma = 0.05;
    double rho = -0.7;

    void validate() const;
};

struct DiffusionSpec {
    enum class Kind { none, constant, exp_ou };
    Kind kind = Kind::none;
    double sigma = 0.0;   // constant
    ExpOuParams exp_ou;   // exp_ou
};

struct JumpSpec {
    enum class Kind { none, compound_poisson, stable, variance_gamma };
    Kind kind = Kind::none;
    // compound_poisson: intensity lambda, N(jump_mean, jump_sd^2) sizes
    double lambda = 0.0;
    double jump_mean = 0.0;
    double jump_sd = 0.0;
    // stable: symmetric alpha-stable, per-step CF exp(-h scale^alpha |u|^alpha)
    double alpha = 0.0;
    double scale = 1.0;
    // variance_gamma: L_t = c G_t + eta W(G_t), G_h ~ Gamma(h/b, b)
    double vg_c = 0.0;
    double vg_eta = 0.0;
    double vg_b = 0.0;
};

struct DriftSpec {
    enum class Kind { zero, mu_minus_half_sigma2 };
    Kind kind = Kind::zero;
    double mu = 0.0;
};

// Declarative description of a simulated model: one diffusion variant, one
// jump variant, one drift variant.
struct ModelSpec {
    DiffusionSpec diffusion;
    JumpSpec jumps;
    DriftSpec drift;

    void validate() const;
    std::string describe() const;
};

void to_json(nlohmann::json& j, const ModelSpec& spec);
void from_json(const nlohmann::json& j, ModelSpec& spec);

// Convenience builders.
ModelSpec brownian_model(double sigma);
ModelSpec compound_poisson_model(double sigma, double lambda, double jump_mean, double jump_sd);
ModelSpec stable_model(double sigma, double alpha, double scale = 1.0);
ModelSpec variance_gamma_model(double sigma, double c, double eta, double b);
ModelSpec stochastic_vol_vg_model();  // exp-OU volatility plus VG jumps

// Named presets matching the Monte Carlo study cells, e.g. "table2-null".
std::optional<ModelSpec> preset_by_name(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace pathwise::sim
