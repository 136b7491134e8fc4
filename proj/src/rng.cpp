#include "pathwise/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace pathwise::rng {

double normal_quantile(double p) {
    // Wichura (1988), Applied Statistics 37: algorithm AS 241, routine PPND16.
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("normal_quantile: p must lie in (0,1)");
    }
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                  6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
              1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
        const double den =
            (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                  3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
              4.2313330701600911252e+1) * r + 1.0);
        return q * num / den;
    }
    r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
        x = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        x = num / den;
    }
    return (q < 0.0) ? -x : x;
}

double Engine::exponential() { return -std::log(uniform_open()); }

double Engine::gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0)) {
        throw std::invalid_argument("gamma: shape and scale must be positive");
    }
    if (shape < 1.0) {
        // Boosted draw: G(a) = G(a+1) * U^(1/a). For very small shapes
        // (subordinator steps have shape ~ 1e-4) the boost legitimately
        // underflows: most of the Gamma(a) mass lies below DBL_MIN.
        const double boost = std::pow(uniform_open(), 1.0 / shape);
        return gamma(shape + 1.0, scale) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
            return d * v * scale;
        }
    }
}

std::uint64_t Engine::poisson(double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw std::invalid_argument("poisson: mean must be finite and nonnegative");
    }
    if (mean > 30.0) {
        const double half = 0.5 * mean;
        return poisson(half) + poisson(mean - half);
    }
    const double limit = std::exp(-mean);
    std::uint64_t count = 0;
    double prod = uniform();
    while (prod > limit) {
        ++count;
        prod *= uniform();
    }
    return count;
}

double Engine::stable(double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw std::invalid_argument("stable: alpha must lie in (0,2]");
    }
    const double pi = 3.14159265358979323846;
    const double v = pi * (uniform_open() - 0.5);  // uniform on (-pi/2, pi/2)
    const double w = exponential();
    if (alpha == 1.0) return std::tan(v);
    const double a = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha);
    const double b = std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
    return a * b;
}

}  // namespace pathwise::rng
