#include "pathwise/model.hpp"

#include <stdexcept>

namespace pathwise::sim {

void ExpOuParams::validate() const {
    if (!(k > 0.0)) throw std::invalid_argument("ExpOuParams: mean-reversion speed k must be positive");
    if (!(varsigma >= 0.0)) throw std::invalid_argument("ExpOuParams: varsigma must be nonnegative");
    if (!(rho >= -1.0 && rho <= 1.0)) throw std::invalid_argument("ExpOuParams: |rho| must be <= 1");
    if (!std::isfinite(k0) || !std::isfinite(kbar)) {
        throw std::invalid_argument("ExpOuParams: k0 and kbar must be finite");
    }
}

void ModelSpec::validate() const {
    switch (diffusion.kind) {
        case DiffusionSpec::Kind::none:
            break;
        case DiffusionSpec::Kind::constant:
            if (!(diffusion.sigma >= 0.0) || !std::isfinite(diffusion.sigma)) {
                throw std::invalid_argument("ModelSpec: sigma must be nonnegative and finite");
            }
            break;
        case DiffusionSpec::Kind::exp_ou:
            diffusion.exp_ou.validate();
            break;
    }
    switch (jumps.kind) {
        case JumpSpec::Kind::none:
            break;
        case JumpSpec::Kind::compound_poisson:
            if (!(jumps.lambda > 0.0)) {
                throw std::invalid_argument("ModelSpec: compound Poisson intensity must be positive");
            }
            if (!(jumps.jump_sd >= 0.0) || !std::isfinite(jumps.jump_mean)) {
                throw std::invalid_argument("ModelSpec: invalid jump size parameters");
            }
            break;
        case JumpSpec::Kind::stable:
            if (!(jumps.alpha > 0.0 && jumps.alpha <= 2.0)) {
                throw std::invalid_argument("ModelSpec: stable alpha must lie in (0,2]");
            }
            if (!(jumps.scale > 0.0)) {
                throw std::invalid_argument("ModelSpec: stable scale must be positive");
            }
            break;
        case JumpSpec::Kind::variance_gamma:
            if (!(jumps.vg_eta > 0.0) || !(jumps.vg_b > 0.0) || !std::isfinite(jumps.vg_c)) {
                throw std::invalid_argument("ModelSpec: variance gamma needs eta > 0, b > 0, finite c");
            }
            break;
    }
    if (drift.kind == DriftSpec::Kind::mu_minus_half_sigma2 && !std::isfinite(drift.mu)) {
        throw std::invalid_argument("ModelSpec: drift mu must be finite");
    }
}

std::string ModelSpec::describe() const {
    std::string s;
    switch (diffusion.kind) {
        case DiffusionSpec::Kind::none: s = "no diffusion"; break;
        case DiffusionSpec::Kind::constant:
            s = "sigma=" + std::to_string(diffusion.sigma);
            break;
        case DiffusionSpec::Kind::exp_ou: s = "exp-OU stochastic vol"; break;
    }
    switch (jumps.kind) {
        case JumpSpec::Kind::none: s += ", no jumps"; break;
        case JumpSpec::Kind::compound_poisson:
            s += ", compound Poisson(lambda=" + std::to_string(jumps.lambda) + ")";
            break;
        case JumpSpec::Kind::stable:
            s += ", stable(alpha=" + std::to_string(jumps.alpha) +
                 ", scale=" + std::to_string(jumps.scale) + ")";
            break;
        case JumpSpec::Kind::variance_gamma: s += ", variance gamma"; break;
    }
    if (drift.kind == DriftSpec::Kind::mu_minus_half_sigma2) {
        s += ", drift (mu - sigma^2/2), mu=" + std::to_string(drift.mu);
    }
    return s;
}

void to_json(nlohmann::json& j, const ModelSpec& spec) {
    nlohmann::json diffusion;
    switch (spec.diffusion.kind) {
        case DiffusionSpec::Kind::none:
            diffusion = {{"kind", "none"}};
            break;
        case DiffusionSpec::Kind::constant:
            diffusion = {{"kind", "constant"}, {"sigma", spec.diffusion.sigma}};
            break;
        case DiffusionSpec::Kind::exp_ou: {
            const auto& p = spec.diffusion.exp_ou;
            diffusion = {{"kind", "exp_ou"}, {"k0", p.k0},
                         {"k", p.k},         {"kbar", p.kbar},
                         {"varsigma", p.varsigma}, {"rho", p.rho}};
            break;
        }
    }
    nlohmann::json jumps;
    switch (spec.jumps.kind) {
        case JumpSpec::Kind::none:
            jumps = {{"kind", "none"}};
            break;
        case JumpSpec::Kind::compound_poisson:
            jumps = {{"kind", "compound_poisson"},
                     {"lambda", spec.jumps.lambda},
                     {"jump_mean", spec.jumps.jump_mean},
                     {"jump_sd", spec.jumps.jump_sd}};
            break;
        case JumpSpec::Kind::stable:
            jumps = {{"kind", "stable"}, {"alpha", spec.jumps.alpha}, {"scale", spec.jumps.scale}};
            break;
        case JumpSpec::Kind::variance_gamma:
            jumps = {{"kind", "variance_gamma"},
                     {"c", spec.jumps.vg_c},
                     {"eta", spec.jumps.vg_eta},
                     {"b", spec.jumps.vg_b}};
            break;
    }
    nlohmann::json drift;
    if (spec.drift.kind == DriftSpec::Kind::zero) {
        drift = {{"kind", "zero"}};
    } else {
        drift = {{"kind", "mu_minus_half_sigma2"}, {"mu", spec.drift.mu}};
    }
    j = {{"diffusion", diffusion}, {"jumps", jumps}, {"drift", drift}};
}

void from_json(const nlohmann::json& j, ModelSpec& spec) {
    spec = ModelSpec{};
    const auto& diffusion = j.at("diffusion");
    const std::string dkind = diffusion.at("kind").get<std::string>();
    if (dkind == "none") {
        spec.diffusion.kind = DiffusionSpec::Kind::none;
    } else if (dkind == "constant") {
        spec.diffusion.kind = DiffusionSpec::Kind::constant;
        spec.diffusion.sigma = diffusion.at("sigma").get<double>();
    } else if (dkind == "exp_ou") {
        spec.diffusion.kind = DiffusionSpec::Kind::exp_ou;
        auto& p = spec.diffusion.exp_ou;
        p.k0 = diffusion.at("k0").get<double>();
        p.k = diffusion.at("k").get<double>();
        p.kbar = diffusion.at("kbar").get<double>();
        p.varsigma = diffusion.at("varsigma").get<double>();
        p.rho = diffusion.at("rho").get<double>();
    } else {
        throw std::invalid_argument("ModelSpec: unknown diffusion kind '" + dkind + "'");
    }

    const auto& jumps = j.at("jumps");
    const std::string jkind = jumps.at("kind").get<std::string>();
    if (jkind == "none") {
        spec.jumps.kind = JumpSpec::Kind::none;
    } else if (jkind == "compound_poisson") {
        spec.jumps.kind = JumpSpec::Kind::compound_poisson;
        spec.jumps.lambda = jumps.at("lambda").get<double>();
        spec.jumps.jump_mean = jumps.at("jump_mean").get<double>();
        spec.jumps.jump_sd = jumps.at("jump_sd").get<double>();
    } else if (jkind == "stable") {
        spec.jumps.kind = JumpSpec::Kind::stable;
        spec.jumps.alpha = jumps.at("alpha").get<double>();
        spec.jumps.scale = jumps.at("scale").get<double>();
    } else if (jkind == "variance_gamma") {
        spec.jumps.kind = JumpSpec::Kind::variance_gamma;
        spec.jumps.vg_c = jumps.at("c").get<double>();
        spec.jumps.vg_eta = jumps.at("eta").get<double>();
        spec.jumps.vg_b = jumps.at("b").get<double>();
    } else {
        throw std::invalid_argument("ModelSpec: unknown jump kind '" + jkind + "'");
    }

    const auto& drift = j.at("drift");
    const std::string kind = drift.at("kind").get<std::string>();
    if (kind == "zero") {
        spec.drift.kind = DriftSpec::Kind::zero;
    } else if (kind == "mu_minus_half_sigma2") {
        spec.drift.kind = DriftSpec::Kind::mu_minus_half_sigma2;
        spec.drift.mu = drift.at("mu").get<double>();
    } else {
        throw std::invalid_argument("ModelSpec: unknown drift kind '" + kind + "'");
    }
    spec.validate();
}

ModelSpec brownian_model(double sigma) {
    ModelSpec m;
    m.diffusion.kind = DiffusionSpec::Kind::constant;
    m.diffusion.sigma = sigma;
    return m;
}

ModelSpec compound_poisson_model(double sigma, double lambda, double jump_mean, double jump_sd) {
    ModelSpec m = brownian_model(sigma);
    m.jumps.kind = JumpSpec::Kind::compound_poisson;
    m.jumps.lambda = lambda;
    m.jumps.jump_mean = jump_mean;
    m.jumps.jump_sd = jump_sd;
    return m;
}

ModelSpec stable_model(double sigma, double alpha, double scale) {
    ModelSpec m = brownian_model(sigma);
    m.jumps.kind = JumpSpec::Kind::stable;
    m.jumps.alpha = alpha;
    m.jumps.scale = scale;
    return m;
}

ModelSpec variance_gamma_model(double sigma, double c, double eta, double b) {
    ModelSpec m = brownian_model(sigma);
    m.jumps.kind = JumpSpec::Kind::variance_gamma;
    m.jumps.vg_c = c;
    m.jumps.vg_eta = eta;
    m.jumps.vg_b = b;
    return m;
}

ModelSpec stochastic_vol_vg_model() {
    ModelSpec m = variance_gamma_model(0.0, -0.2, 0.2, 0.23);
    m.diffusion.kind = DiffusionSpec::Kind::exp_ou;
    m.diffusion.exp_ou = ExpOuParams{};
    m.drift.kind = DriftSpec::Kind::mu_minus_half_sigma2;
    m.drift.mu = 0.0;
    return m;
}

std::optional<ModelSpec> preset_by_name(std::string_view name) {
    if (name == "table1-a06") return stable_model(0.2, 0.6);
    if (name == "table1-a16") return stable_model(0.2, 1.6);
    if (name == "table2-null") return compound_poisson_model(0.0, 5.0, 0.0, 0.6);
    if (name == "table2-alt") return compound_poisson_model(0.2, 5.0, 0.0, 0.6);
    if (name == "table3-null") return stable_model(0.0, 0.3);
    if (name == "table3-alt") return stable_model(0.2, 0.3);
    if (name == "table4-null") return stable_model(0.0, 1.2);
    if (name == "table4-alt") return stable_model(0.2, 1.2);
    if (name == "table5-null") return variance_gamma_model(0.0, -0.2, 0.2, 0.23);
    if (name == "table5-stoch") return stochastic_vol_vg_model();
    return std::nullopt;
}

std::vector<std::string> preset_names() {
    return {"table1-a06", "table1-a16", "table2-null", "table2-alt", "table3-null",
            "table3-alt", "table4-null", "table4-alt", "table5-null", "table5-stoch"};
}

}  // namespace pathwise::sim
