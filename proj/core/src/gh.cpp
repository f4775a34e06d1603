#include "svol/gh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gsl/gsl_sf_gamma.h>

#include "svol/bessel.hpp"
#include "svol/rng.hpp"

namespace svol {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
} // namespace

double GHParams::gamma() const {
    double g2 = alpha * alpha - beta * beta;
    return g2 <= 0.0 ? 0.0 : std::sqrt(g2);
}

double gh_log_pdf(const GHParams& h, double x) {
    const double gam = h.gamma();
    const double d = x - h.mu;
    double q = std::sqrt(h.delta * h.delta + d * d);

    // normalization: lambda ln(gamma/delta) - ln K_lambda(delta gamma), with
    // small-argument Bessel limits on the domain boundaries
    double log_norm;
    if (h.delta > 0.0 && gam > 0.0) {
        log_norm = h.lambda * std::log(gam / h.delta) - log_bessel_k(h.lambda, h.delta * gam);
    } else if (h.delta == 0.0) { // lambda > 0: gamma-mixing (variance gamma) limit
        log_norm = std::log(2.0) + h.lambda * std::log(gam * gam / 2.0) - gsl_sf_lngamma(h.lambda);
    } else { // gam == 0, lambda < 0: inverse-gamma mixing (Student-type) limit
        double nu = -h.lambda;
        log_norm = std::log(2.0) + nu * std::log(h.delta * h.delta / 2.0) - gsl_sf_lngamma(nu);
    }

    // x-dependent part: (lambda - 1/2) ln(q/alpha) + ln K_{lambda-1/2}(alpha q)
    double log_kernel;
    if (h.alpha > 0.0) {
        if (q <= 0.0) q = 1e-300;
        log_kernel = (h.lambda - 0.5) * std::log(q / h.alpha) + log_bessel_k(h.lambda - 0.5, h.alpha * q);
    } else { // alpha = beta = 0, lambda < 0
        double nu = 0.5 - h.lambda;
        log_kernel = -std::log(2.0) + gsl_sf_lngamma(nu) + nu * std::log(2.0 / (q * q));
    }

    return log_norm - 0.5 * kLog2Pi + log_kernel + h.beta * d;
}

double gh_pdf(const GHParams& h, double x) { return std::exp(gh_log_pdf(h, x)); }

GhCdf::GhCdf(const GHParams& h, std::size_t grid_points) {
    if (grid_points < 100) throw domain_error("GhCdf: grid too coarse");
    const double lp_mode = gh_log_pdf(h, h.mu);
    const double cut = lp_mode - 50.0;

    double step0 = std::max(h.delta, 1e-6);
    double a = h.mu - step0, b = h.mu + step0;
    for (int i = 0; i < 200 && gh_log_pdf(h, a) > cut; ++i) a = h.mu - 2.0 * (h.mu - a);
    for (int i = 0; i < 200 && gh_log_pdf(h, b) > cut; ++i) b = h.mu + 2.0 * (b - h.mu);

    xs_.resize(grid_points);
    cum_.resize(grid_points);
    double hstep = (b - a) / static_cast<double>(grid_points - 1);
    double prev_pdf = gh_pdf(h, a);
    xs_[0] = a;
    cum_[0] = 0.0;
    for (std::size_t i = 1; i < grid_points; ++i) {
        xs_[i] = a + hstep * static_cast<double>(i);
        double cur = gh_pdf(h, xs_[i]);
        cum_[i] = cum_[i - 1] + 0.5 * (prev_pdf + cur) * hstep;
        prev_pdf = cur;
    }
    double total = cum_.back();
    if (!(total > 0.0)) throw numerical_error("GhCdf: degenerate density integral");
    for (double& c : cum_) c /= total;
}

double GhCdf::operator()(double x) const {
    if (x <= xs_.front()) return 0.0;
    if (x >= xs_.back()) return 1.0;
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    double w = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
    return cum_[i - 1] + w * (cum_[i] - cum_[i - 1]);
}

double gh_cdf(const GHParams& h, double x) { return GhCdf(h)(x); }

std::vector<double> gh_sample(const GHParams& h, std::size_t n, std::uint64_t seed) {
    std::vector<double> v = gig_sample(h.mixing(), n, seed);
    SplitRng rng(seed, 1);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = h.mu + h.beta * v[i] + std::sqrt(v[i]) * rng.normal();
    return out;
}

} // namespace svol
