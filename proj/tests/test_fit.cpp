#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "svol/fit.hpp"
#include "svol/rng.hpp"
#include "test_util.hpp"

using namespace svol;

TEST_SUITE("fit") {

TEST_CASE("input validation") {
    std::vector<double> tiny(100, 0.5);
    CHECK_THROWS_AS(fit_gh_mle(tiny), domain_error);
    std::vector<double> flat(1000, 0.5);
    CHECK_THROWS_AS(fit_gh_mle(flat), domain_error);
}

TEST_CASE("recovery of generating parameters") {
    GHParams truth(-0.5, 50.0, -5.0, 0.02, 0.0);
    std::vector<double> xs = gh_sample(truth, 20000, 99);
    GhFit fit = fit_gh_mle(xs);
    CHECK(fit.converged);
    CHECK(fit.gradient_norm < 1e-4);
    // generous unit-test bounds; the acceptance suite runs the 1e5 version
    CHECK(std::fabs(fit.params.alpha - truth.alpha) / truth.alpha < 0.25);
    CHECK(std::fabs(fit.params.delta - truth.delta) / truth.delta < 0.25);
    CHECK(std::fabs(fit.params.beta - truth.beta) < 3.0);
    CHECK(std::fabs(fit.params.mu - truth.mu) < 0.005);
    // likelihood at the fit is at least that of the truth
    CHECK(fit.log_likelihood >= gh_log_likelihood(truth, xs) - 1e-6);
}

TEST_CASE("fit dominates a moment-matched normal on heavy-tailed input") {
    // Student-t-ish data via normal / sqrt(gamma)
    SplitRng rng(3, 0);
    std::vector<double> xs(5000);
    for (double& x : xs) {
        double g = rng.gamma(2.5, 1.0 / 2.5);
        x = 0.001 + 0.01 * rng.normal() / std::sqrt(g);
    }
    GhFit fit = fit_gh_mle(xs);
    double m = testutil::mean_of(xs), v = testutil::var_of(xs);
    double normal_ll = 0.0;
    for (double x : xs)
        normal_ll += -0.5 * std::log(2.0 * M_PI * v) - 0.5 * (x - m) * (x - m) / v;
    CHECK(fit.log_likelihood > normal_ll);
}

TEST_CASE("permutation invariance is exact") {
    GHParams truth(-0.5, 40.0, -3.0, 0.03, 0.0);
    std::vector<double> xs = gh_sample(truth, 3000, 11);
    std::vector<double> shuffled = xs;
    std::mt19937 urng(17);
    std::shuffle(shuffled.begin(), shuffled.end(), urng);
    GhFit a = fit_gh_mle(xs);
    GhFit b = fit_gh_mle(shuffled);
    CHECK(a.params.lambda == b.params.lambda);
    CHECK(a.params.alpha == b.params.alpha);
    CHECK(a.params.beta == b.params.beta);
    CHECK(a.params.delta == b.params.delta);
    CHECK(a.params.mu == b.params.mu);
    CHECK(a.log_likelihood == b.log_likelihood);
}

TEST_CASE("explicit init is honored and never worsened") {
    GHParams truth(-0.5, 40.0, -3.0, 0.03, 0.0);
    std::vector<double> xs = gh_sample(truth, 2000, 21);
    GhFit fit = fit_gh_mle(xs, truth);
    CHECK(fit.log_likelihood >= gh_log_likelihood(truth, xs));
    // boundary (alpha = |beta|) inits are rejected: no interior coordinates
    GHParams boundary(-0.5, 3.0, 3.0, 0.03, 0.0);
    CHECK_THROWS_AS(fit_gh_mle(xs, boundary), domain_error);
}

} // TEST_SUITE
