#include "pathwise/levy_sim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pathwise/rng.hpp"

namespace pathwise::sim {

namespace {

void check_grid(std::size_t n, double h, const char* who) {
    if (n < 1) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument(std::string(who) + ": h must be positive and finite");
    }
}

// One gamma-subordinator step, clamped away from underflow.
double gamma_step(rng::Engine& eng, double h, double b) {
    const double g = eng.gamma(h / b, b);
    return std::max(g, std::numeric_limits<double>::min());
}

}  // namespace

std::vector<double> simulate_brownian(std::size_t n, double h, double sigma,
                                      std::uint64_t seed) {
    check_grid(n, h, "simulate_brownian");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("simulate_brownian: sigma must be nonnegative and finite");
    }
    std::vector<double> out(n, 0.0);
    if (sigma == 0.0) return out;
    rng::Engine eng(seed);
    const double step_sd = sigma * std::sqrt(h);
    for (double& dx : out) dx = step_sd * eng.normal();
    return out;
}

std::vector<double> simulate_compound_poisson(std::size_t n, double h, double lambda,
                                              double jump_mean, double jump_sd,
                                              std::uint64_t seed) {
    check_grid(n, h, "simulate_compound_poisson");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("simulate_compound_poisson: lambda must be positive");
    }
    if (!(jump_sd >= 0.0) || !std::isfinite(jump_sd) || !std::isfinite(jump_mean)) {
        throw std::invalid_argument("simulate_compound_poisson: invalid jump size parameters");
    }
    std::vector<double> out(n, 0.0);
    rng::Engine eng(seed);
    const double mean_count = lambda * h;
    for (double& dx : out) {
        const std::uint64_t count = eng.poisson(mean_count);
        for (std::uint64_t k = 0; k < count; ++k) {
            dx += jump_mean + jump_sd * eng.normal();
        }
    }
    return out;
}

std::vector<double> simulate_stable(std::size_t n, double h, double alpha, double scale,
                                    std::uint64_t seed) {
    check_grid(n, h, "simulate_stable");
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw std::invalid_argument("simulate_stable: alpha must lie in (0,2]");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("simulate_stable: scale must be positive and finite");
    }
    std::vector<double> out(n);
    rng::Engine eng(seed);
    const double step_scale = scale * std::pow(h, 1.0 / alpha);
    for (double& dx : out) dx = step_scale * eng.stable(alpha);
    return out;
}

std::vector<double> simulate_gamma_subordinator(std::size_t n, double h, double b,
                                                std::uint64_t seed) {
    check_grid(n, h, "simulate_gamma_subordinator");
    if (!(b > 0.0) || !std::isfinite(b)) {
        throw std::invalid_argument("simulate_gamma_subordinator: b must be positive");
    }
    std::vector<double> out(n);
    rng::Engine eng(seed);
    for (double& dg : out) dg = gamma_step(eng, h, b);
    return out;
}

std::vector<double> simulate_variance_gamma(std::size_t n, double h, double c, double eta,
                                            double b, std::uint64_t seed) {
    check_grid(n, h, "simulate_variance_gamma");
    if (!(eta > 0.0) || !(b > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("simulate_variance_gamma: need eta > 0, b > 0, finite c");
    }
    std::vector<double> out(n);
    rng::Engine eng(seed);
    for (double& dx : out) {
        const double g = gamma_step(eng, h, b);
        dx = c * g + eta * std::sqrt(g) * eng.normal();
    }
    return out;
}

ExpOuPath simulate_exp_ou_vol(std::size_t n, double h, const ExpOuParams& params,
                              std::uint64_t seed) {
    check_grid(n, h, "simulate_exp_ou_vol");
    params.validate();
    ExpOuPath path;
    path.sigma.resize(n);
    path.w1_increments.resize(n);

    rng::Engine eng(seed);
    const double sqrt_h = std::sqrt(h);
    const double rho_cross = std::sqrt(1.0 - params.rho * params.rho);
    double log_vol = params.k0;
    for (std::size_t i = 0; i < n; ++i) {
        path.sigma[i] = std::exp(log_vol);
        const double z1 = eng.normal();
        const double z2 = eng.normal();
        const double dw1 = sqrt_h * z1;
        const double dw2 = sqrt_h * (params.rho * z1 + rho_cross * z2);
        path.w1_increments[i] = dw1;
        log_vol += -params.k * (log_vol - params.kbar) * h + params.varsigma * dw2;
    }
    return path;
}

SamplePath simulate_model(const ModelSpec& spec, std::size_t n, double h, std::uint64_t seed,
                          double x0) {
    check_grid(n, h, "simulate_model");
    spec.validate();

    std::vector<double> increments(n, 0.0);
    const std::uint64_t diffusion_seed = rng::derive_seed(seed, rng::Stream::diffusion);
    const std::uint64_t jump_seed = rng::derive_seed(seed, rng::Stream::jumps);

    // Left-endpoint sigma per step, needed for the -sigma^2/2 drift term.
    double const_sigma = 0.0;
    std::vector<double> sigma_path;

    switch (spec.diffusion.kind) {
        case DiffusionSpec::Kind::none:
            break;
        case DiffusionSpec::Kind::constant: {
            const_sigma = spec.diffusion.sigma;
            const std::vector<double> bm =
                simulate_brownian(n, h, spec.diffusion.sigma, diffusion_seed);
            for (std::size_t i = 0; i < n; ++i) increments[i] += bm[i];
            break;
        }
        case DiffusionSpec::Kind::exp_ou: {
            ExpOuPath vol = simulate_exp_ou_vol(n, h, spec.diffusion.exp_ou, diffusion_seed);
            for (std::size_t i = 0; i < n; ++i) {
                increments[i] += vol.sigma[i] * vol.w1_increments[i];
            }
            sigma_path = std::move(vol.sigma);
            break;
        }
    }

    switch (spec.jumps.kind) {
        case JumpSpec::Kind::none:
            break;
        case JumpSpec::Kind::compound_poisson: {
            const std::vector<double> jumps = simulate_compound_poisson(
                n, h, spec.jumps.lambda, spec.jumps.jump_mean, spec.jumps.jump_sd, jump_seed);
            for (std::size_t i = 0; i < n; ++i) increments[i] += jumps[i];
            break;
        }
        case JumpSpec::Kind::stable: {
            const std::vector<double> jumps =
                simulate_stable(n, h, spec.jumps.alpha, spec.jumps.scale, jump_seed);
            for (std::size_t i = 0; i < n; ++i) increments[i] += jumps[i];
            break;
        }
        case JumpSpec::Kind::variance_gamma: {
            const std::vector<double> jumps = simulate_variance_gamma(
                n, h, spec.jumps.vg_c, spec.jumps.vg_eta, spec.jumps.vg_b, jump_seed);
            for (std::size_t i = 0; i < n; ++i) increments[i] += jumps[i];
            break;
        }
    }

    if (spec.drift.kind == DriftSpec::Kind::mu_minus_half_sigma2) {
        for (std::size_t i = 0; i < n; ++i) {
            const double sigma_i = sigma_path.empty() ? const_sigma : sigma_path[i];
            increments[i] += (spec.drift.mu - 0.5 * sigma_i * sigma_i) * h;
        }
    }

    return SamplePath(x0, std::move(increments), h);
}

}  // namespace pathwise::sim
