#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "svol/bessel.hpp"
#include "svol/gh.hpp"
#include "svol/gig.hpp"
#include "svol/ks.hpp"
#include "svol/rng.hpp"
#include "test_util.hpp"

using namespace svol;
using testutil::close_rel;

namespace {

// Simpson integral of f over [a, b]
template <typename F>
double simpson(F f, double a, double b, int n) {
    if (n % 2) ++n;
    double h = (b - a) / n, acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// whole-line integral via x = mu + scale*sinh(u): covers polynomial tails that
// uniform grids cannot reach
template <typename F>
double simpson_sinh(F f, double mu, double scale, int n = 400000) {
    const double umax = 30.0;
    return simpson(
        [&](double u) { return f(mu + scale * std::sinh(u)) * scale * std::cosh(u); }, -umax,
        umax, n);
}

// positive-axis integral via x = e^u: resolves both a sharp mode near zero and
// a slow polynomial tail
template <typename F>
double simpson_log(F f, double lo = 1e-12, double hi = 1e13, int n = 400000) {
    return simpson([&](double u) { double x = std::exp(u); return f(x) * x; }, std::log(lo),
                   std::log(hi), n);
}

// generous support bracket for a GIG law
std::pair<double, double> gig_bracket(const GIGParams& g) {
    double m = gig_mean(g);
    return {m * 1e-6, std::max(m * 60.0, 5.0)};
}

double normal_pdf(double x, double m, double v) {
    return std::exp(-0.5 * (x - m) * (x - m) / v) / std::sqrt(2.0 * M_PI * v);
}

} // namespace

TEST_SUITE("gig_gh") {

TEST_CASE("bessel K basics") {
    // K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}
    for (double x : {0.3, 1.0, 5.0, 40.0}) {
        double expect = std::log(std::sqrt(M_PI / (2.0 * x))) - x;
        CHECK(close_rel(log_bessel_k(0.5, x), expect, 1e-12));
    }
    // recurrence K_{nu+1} = K_{nu-1} + (2 nu / x) K_nu on scaled values
    for (double nu : {0.3, 1.7, -2.4}) {
        for (double x : {0.5, 2.0, 11.0, 300.0}) {
            double lhs = bessel_k_scaled(nu + 1.0, x);
            double rhs = bessel_k_scaled(nu - 1.0, x) + (2.0 * nu / x) * bessel_k_scaled(nu, x);
            CHECK(close_rel(lhs, rhs, 1e-10));
        }
    }
    // symmetry in nu
    CHECK(close_rel(log_bessel_k(2.3, 1.7), log_bessel_k(-2.3, 1.7), 1e-13));
}

TEST_CASE("gig pdf normalizes and mean matches Bessel ratio") {
    const GIGParams sets[] = {
        GIGParams(0.8, 1.3, 2.1),  GIGParams(-0.5, 0.7, 3.0), GIGParams(2.0, 0.5, 1.0),
        GIGParams(-2.2, 1.8, 0.6), GIGParams(1.0, 2.0, 2.0),
    };
    for (const GIGParams& g : sets) {
        auto [a, b] = gig_bracket(g);
        double mass = simpson([&](double x) { return gig_pdf(g, x); }, a, b, 40000);
        CHECK(std::fabs(mass - 1.0) < 1e-8);
        double m = simpson([&](double x) { return x * gig_pdf(g, x); }, a, b, 40000);
        CHECK(close_rel(m, gig_mean(g), 1e-6));
    }
    // frozen Bessel-ratio value
    CHECK(close_rel(gig_mean(GIGParams(0.8, 1.3, 2.1)), 0.925980558330309836, 1e-12));
}

TEST_CASE("gig boundary cases reduce to gamma and inverse-gamma") {
    // lambda > 0, delta = 0: Gamma(lambda, 2/gamma^2)
    GIGParams g1(2.0, 0.0, 3.0);
    double scale = 2.0 / 9.0;
    for (double x : {0.05, 0.2, 0.8}) {
        double expect = std::pow(x, 1.0) * std::exp(-x / scale) / (scale * scale * 1.0);
        CHECK(close_rel(gig_pdf(g1, x), expect, 1e-12));
    }
    CHECK(close_rel(gig_mean(g1), 2.0 * scale, 1e-12));
    // lambda < 0, gamma = 0: inverse-Gamma(-lambda, delta^2/2)
    GIGParams g2(-1.5, 1.2, 0.0);
    double mass = simpson_log([&](double x) { return gig_pdf(g2, x); });
    CHECK(std::fabs(mass - 1.0) < 1e-6);
    CHECK(close_rel(gig_mean(g2), (1.2 * 1.2 / 2.0) / 0.5, 1e-12)); // b/(a-1)
}

TEST_CASE("gig lambda=-1/2 reduces to inverse Gaussian") {
    GIGParams g(-0.5, 1.4, 2.2);
    // IG(mu = delta/gamma, shape = delta^2)
    double mu = 1.4 / 2.2, lam = 1.4 * 1.4;
    for (double x : {0.2, 0.5, 0.9, 1.6}) {
        double ig = std::sqrt(lam / (2.0 * M_PI * x * x * x)) *
                    std::exp(-lam * (x - mu) * (x - mu) / (2.0 * mu * mu * x));
        CHECK(close_rel(gig_pdf(g, x), ig, 1e-8));
    }
}

TEST_CASE("gig log-concavity in log x for lambda >= 1") {
    GIGParams g(1.5, 1.0, 2.0);
    // h(u) = log pdf(e^u) + u should be concave in u (kernel lambda*u - cosh-type)
    double prev_slope = 1e300;
    for (double u = -3.0; u < 2.0; u += 0.05) {
        double d = (gig_log_pdf(g, std::exp(u + 1e-4)) + (u + 1e-4)) -
                   (gig_log_pdf(g, std::exp(u)) + u);
        CHECK(d < prev_slope + 1e-9);
        prev_slope = d;
    }
}

TEST_CASE("gig sampler matches quadrature CDF") {
    const GIGParams sets[] = {GIGParams(0.8, 1.3, 2.1), GIGParams(-0.5, 0.7, 3.0),
                              GIGParams(-2.2, 1.8, 0.6), GIGParams(2.0, 0.0, 3.0),
                              GIGParams(-1.5, 1.2, 0.0)};
    for (const GIGParams& g : sets) {
        GigSampleStats stats;
        std::vector<double> v = gig_sample(g, 100000, 77, &stats);
        bool pos = std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
        CHECK(pos);
        // numeric CDF on a fine grid
        auto [a, b] = gig_bracket(g);
        const int n = 20000;
        std::vector<double> xs(n + 1), cum(n + 1, 0.0);
        for (int i = 0; i <= n; ++i) xs[i] = a + (b - a) * i / n;
        for (int i = 1; i <= n; ++i)
            cum[i] = cum[i - 1] +
                     0.5 * (gig_pdf(g, xs[i - 1]) + gig_pdf(g, xs[i])) * (xs[i] - xs[i - 1]);
        double total = cum[n];
        auto cdf = [&](double x) {
            if (x <= a) return 0.0;
            if (x >= b) return 1.0;
            std::size_t i = static_cast<std::size_t>((x - a) / (b - a) * n);
            i = std::min(i, static_cast<std::size_t>(n - 1));
            double w = (x - xs[i]) / (xs[i + 1] - xs[i]);
            return (cum[i] + w * (cum[i + 1] - cum[i])) / total;
        };
        KSResult r = ks_test(v, cdf);
        CHECK(r.statistic < 0.01);
        if (g.delta > 0.0 && g.gamma > 0.0) CHECK(stats.acceptance_rate() > 0.3);
        // determinism
        std::vector<double> v2 = gig_sample(g, 100, 77);
        CHECK(std::equal(v2.begin(), v2.end(), v.begin()));
    }
}

TEST_CASE("gh pdf normalization and symmetry") {
    GHParams sym(-0.5, 30.0, 0.0, 0.05, 0.3);
    for (double x : {0.01, 0.04, 0.011, 0.2}) {
        CHECK(close_rel(gh_pdf(sym, 0.3 + x), gh_pdf(sym, 0.3 - x), 1e-12));
    }
    const GHParams sets[] = {
        GHParams(-0.5, 50.0, -5.0, 0.02, 0.0), GHParams(1.2, 8.0, 2.0, 0.5, -1.0),
        GHParams(0.0, 4.0, -1.0, 1.0, 0.0),    GHParams(-1.8, 3.0, 3.0, 2.0, 0.5),
        GHParams(2.0, 6.0, 0.0, 0.0, 0.0), // delta = 0 boundary (variance-gamma type)
    };
    for (const GHParams& h : sets) {
        // alpha = |beta| has a polynomial tail; the sinh map covers it
        double sd = std::max(h.delta, 1.0 / std::max(h.alpha - std::fabs(h.beta), 0.5));
        double mass = simpson_sinh([&](double x) { return gh_pdf(h, x); }, h.mu, sd);
        CHECK(std::fabs(mass - 1.0) < 1e-6);
    }
}

TEST_CASE("gh mixture identity on randomized parameter sets") {
    SplitRng rng(2024, 0);
    for (int rep = 0; rep < 10; ++rep) {
        double lambda = -2.0 + 4.0 * rng.next_double();
        double delta = 0.2 + 1.5 * rng.next_double();
        double gamma = 0.5 + 3.0 * rng.next_double();
        double beta = -1.5 + 3.0 * rng.next_double();
        double alpha = std::sqrt(gamma * gamma + beta * beta);
        double mu = -0.5 + rng.next_double();
        GHParams h(lambda, alpha, beta, delta, mu);
        GIGParams g = h.mixing();
        CHECK(close_rel(g.gamma, gamma, 1e-12));
        auto [a, b] = gig_bracket(g);
        double worst = 0.0;
        for (double x = mu - 6.0 * delta; x <= mu + 6.0 * delta; x += delta) {
            double mix = simpson(
                [&](double v) { return normal_pdf(x, mu + beta * v, v) * gig_pdf(g, v); }, a, b,
                20000);
            worst = std::max(worst, std::fabs(mix - gh_pdf(h, x)));
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("gh cdf and sampler agree") {
    GHParams h(-0.5, 50.0, -5.0, 0.02, 0.0);
    GhCdf cdf(h);
    CHECK(cdf(-1e9) == 0.0);
    CHECK(cdf(1e9) == 1.0);
    CHECK(cdf(0.0) > 0.4);
    CHECK(cdf(0.0) < 0.7);
    std::vector<double> xs = gh_sample(h, 100000, 5);
    KSResult r = ks_test(xs, [&](double x) { return cdf(x); });
    CHECK(r.statistic < 0.01);
    // mixture mean: mu + beta E[V]
    double expect = h.mu + h.beta * gig_mean(h.mixing());
    double se = std::sqrt(testutil::var_of(xs) / 100000.0);
    CHECK(std::fabs(testutil::mean_of(xs) - expect) < 4.0 * se);
    // determinism
    std::vector<double> again = gh_sample(h, 100, 5);
    CHECK(std::equal(again.begin(), again.end(), xs.begin()));
}

TEST_CASE("parameter domain enforcement") {
    CHECK_THROWS_AS(GHParams(1.0, 0.0, 0.0, 1.0, 0.0), domain_error);  // lambda>0 needs alpha>0
    CHECK_THROWS_AS(GHParams(0.0, 2.0, 1.0, 0.0, 0.0), domain_error);  // lambda=0 needs delta>0
    CHECK_THROWS_AS(GHParams(-1.0, 1.0, 2.0, 1.0, 0.0), domain_error); // |beta| > alpha
    CHECK_NOTHROW(GHParams(-1.0, 2.0, 2.0, 1.0, 0.0));                 // alpha = |beta| ok, lambda<0
    CHECK_THROWS_AS(GIGParams(0.0, 1.0, 0.0), domain_error);
    CHECK_THROWS_AS(GIGParams(1.0, 0.5, 0.0), domain_error);
    CHECK_THROWS_AS(GIGParams(-1.0, 0.0, 1.0), domain_error);
    CHECK_THROWS_AS(gig_pdf(GIGParams(1.0, 1.0, 1.0), -0.5), domain_error);
}

} // TEST_SUITE
