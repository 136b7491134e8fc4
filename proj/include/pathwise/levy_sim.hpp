#pragma once

#include <cstdint>
#include <vector>

#include "pathwise/model.hpp"
#include "pathwise/types.hpp"

// Step simulators for the processes used in the Monte Carlo study. Each one
// is exact in distribution on the observation grid (the exp-OU volatility
// uses an explicit Euler step, see simulate_exp_ou_vol) and deterministic in
// (params, n, h, seed).

namespace pathwise::sim {

// n i.i.d. N(0, sigma^2 h) increments. sigma = 0 yields exact zeros.
std::vector<double> simulate_brownian(std::size_t n, double h, double sigma, std::uint64_t seed);

// Per step: count ~ Poisson(lambda h), then that many N(jump_mean, jump_sd^2) sizes.
std::vector<double> simulate_compound_poisson(std::size_t n, double h, double lambda,
                                              double jump_mean, double jump_sd,
                                              std::uint64_t seed);

// Symmetric alpha-stable increments with per-step characteristic function
// exp(-h scale^alpha |u|^alpha), via the Chambers-Mallows-Stuck transform.
std::vector<double> simulate_stable(std::size_t n, double h, double alpha, double scale,
                                    std::uint64_t seed);

// Gamma subordinator increments, Gamma(shape h/b, scale b): strictly
// positive, per-step mean h and variance b h. At five-minute resolution the
// shape is ~1e-4 and most of the distribution's mass lies below the double
// range; draws that underflow are clamped to DBL_MIN to keep positivity.
std::vector<double> simulate_gamma_subordinator(std::size_t n, double h, double b,
                                                std::uint64_t seed);

// Variance gamma by Brownian subordination: per step g ~ Gamma(h/b, b),
// increment c g + eta sqrt(g) Z. Per-step mean c h, variance (eta^2 + c^2 b) h.
std::vector<double> simulate_variance_gamma(std::size_t n, double h, double c, double eta,
                                            double b, std::uint64_t seed);

struct ExpOuPath {
    std::vector<double> sigma;          // sigma at the left endpoint of each step
    std::vector<double> w1_increments;  // price-driver Brownian increments
};

// Explicit Euler on K_t with sigma_t = exp(K_t) sampled at left endpoints;
// (dW1, dW2) jointly Gaussian with correlation rho (2x2 Cholesky).
ExpOuPath simulate_exp_ou_vol(std::size_t n, double h, const ExpOuParams& params,
                              std::uint64_t seed);

// Composes drift + diffusion + jumps with independent substreams derived
// from one seed, so removing a component never perturbs the others.
SamplePath simulate_model(const ModelSpec& spec, std::size_t n, double h, std::uint64_t seed,
                          double x0 = 0.0);

}  // namespace pathwise::sim
