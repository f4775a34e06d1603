#include "svol/gig.hpp"

#include <cmath>

#include <gsl/gsl_sf_gamma.h>

#include "svol/bessel.hpp"
#include "svol/rng.hpp"

namespace svol {

namespace {

// Unnormalized log density of the standard two-parameter form
// f(z) = z^{lambda-1} exp(-omega (z + 1/z) / 2).
double std_log_kernel(double lambda, double omega, double z) {
    return (lambda - 1.0) * std::log(z) - 0.5 * omega * (z + 1.0 / z);
}

double std_mode(double lambda, double omega) {
    return ((lambda - 1.0) + std::sqrt((lambda - 1.0) * (lambda - 1.0) + omega * omega)) / omega;
}

// sup / inf of (z - m) sqrt(f(z)/f(m)) for the mode-shifted ratio-of-uniforms
// box, located by log-spaced scan plus ternary refinement.
double rou_bound(double lambda, double omega, double m, bool upper) {
    double lfm = std_log_kernel(lambda, omega, m);
    auto g = [&](double z) {
        return (z - m) * std::exp(0.5 * (std_log_kernel(lambda, omega, z) - lfm));
    };
    double lo, hi;
    if (upper) {
        lo = m;
        hi = m;
        double best = 0.0;
        for (double z = m * 1.0001; z < m * 1e8; z *= 1.05) {
            double v = g(z);
            if (v > best) { best = v; hi = z * 1.05; }
        }
        lo = m;
    } else {
        double best = 0.0;
        double zbest = m;
        for (double z = m * 0.9999; z > m * 1e-8; z *= 0.95) {
            double v = g(z);
            if (v < best) { best = v; zbest = z; }
        }
        lo = zbest * 0.95;
        hi = m;
    }
    // ternary search for the extremum of g (max if upper, min if lower)
    for (int i = 0; i < 200; ++i) {
        double m1 = lo + (hi - lo) / 3.0;
        double m2 = hi - (hi - lo) / 3.0;
        bool keep_left = upper ? (g(m1) > g(m2)) : (g(m1) < g(m2));
        if (keep_left) hi = m2; else lo = m1;
    }
    return g(0.5 * (lo + hi));
}

} // namespace

double gig_log_pdf(const GIGParams& g, double x) {
    if (!(x > 0.0)) throw domain_error("gig_pdf: x must be > 0");
    if (g.delta == 0.0) {
        // Gamma(lambda, 2/gamma^2) limit
        return g.lambda * std::log(g.gamma * g.gamma / 2.0) - gsl_sf_lngamma(g.lambda)
             + (g.lambda - 1.0) * std::log(x) - 0.5 * g.gamma * g.gamma * x;
    }
    if (g.gamma == 0.0) {
        // inverse Gamma(-lambda, delta^2/2) limit
        double a = -g.lambda;
        return a * std::log(g.delta * g.delta / 2.0) - gsl_sf_lngamma(a)
             + (g.lambda - 1.0) * std::log(x) - 0.5 * g.delta * g.delta / x;
    }
    return g.lambda * std::log(g.gamma / g.delta) - std::log(2.0) - log_bessel_k(g.lambda, g.delta * g.gamma)
         + (g.lambda - 1.0) * std::log(x) - 0.5 * (g.delta * g.delta / x + g.gamma * g.gamma * x);
}

double gig_pdf(const GIGParams& g, double x) { return std::exp(gig_log_pdf(g, x)); }

double gig_mean(const GIGParams& g) {
    if (g.delta == 0.0) return 2.0 * g.lambda / (g.gamma * g.gamma);
    if (g.gamma == 0.0) {
        if (!(g.lambda < -1.0)) throw numerical_error("gig_mean: undefined for gamma = 0, lambda >= -1");
        return 0.5 * g.delta * g.delta / (-g.lambda - 1.0);
    }
    double w = g.delta * g.gamma;
    return (g.delta / g.gamma) * bessel_k_scaled(g.lambda + 1.0, w) / bessel_k_scaled(g.lambda, w);
}

std::vector<double> gig_sample(const GIGParams& g, std::size_t n, std::uint64_t seed,
                               GigSampleStats* stats) {
    std::vector<double> out(n);
    GigSampleStats local;

    if (g.delta == 0.0 || g.gamma == 0.0) {
        SplitRng rng(seed, 0);
        bool invert = g.gamma == 0.0;
        double shape = invert ? -g.lambda : g.lambda;
        double scale = invert ? 2.0 / (g.delta * g.delta) : 2.0 / (g.gamma * g.gamma);
        for (std::size_t i = 0; i < n; ++i) {
            double v = rng.gamma(shape, scale);
            out[i] = invert ? 1.0 / v : v;
        }
        if (stats) *stats = GigSampleStats{n, n};
        return out;
    }

    // standard form: Z ~ gig(|lambda|, omega), X = (delta/gamma) * Z^{sign(lambda+...)}
    bool invert = g.lambda < 0.0;
    double lambda = std::fabs(g.lambda);
    double omega = g.delta * g.gamma;
    double scale = g.delta / g.gamma;

    double m = std_mode(lambda, omega);
    double lfm = std_log_kernel(lambda, omega, m);
    // 1% head-room on the box so extremum-search error cannot clip the support
    double vplus = 1.01 * rou_bound(lambda, omega, m, true);
    double vminus = 1.01 * rou_bound(lambda, omega, m, false);

    SplitRng rng(seed, 0);
    for (std::size_t i = 0; i < n; ++i) {
        double z;
        for (;;) {
            ++local.proposals;
            double u = rng.next_double_pos();
            double v = vminus + (vplus - vminus) * rng.next_double();
            z = m + v / u;
            if (z <= 0.0) continue;
            if (2.0 * std::log(u) <= std_log_kernel(lambda, omega, z) - lfm) {
                ++local.accepted;
                break;
            }
        }
        double x = invert ? scale / z : scale * z;
        out[i] = x;
    }
    if (stats) *stats = local;
    return out;
}

} // namespace svol
