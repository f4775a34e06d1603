#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "svol/estimators.hpp"
#include "svol/heston.hpp"
#include "svol/rng.hpp"
#include "svol/simulate.hpp"
#include "test_util.hpp"

using namespace svol;
using testutil::close_rel;

namespace {

ReturnSeries series_of(std::vector<double> returns, const std::string& label = "test") {
    ReturnSeries s;
    s.returns = std::move(returns);
    s.dates.resize(s.returns.size());
    for (std::size_t i = 0; i < s.dates.size(); ++i) s.dates[i] = 20000101 + static_cast<int>(i);
    s.label = label;
    return s;
}

ReturnSeries gaussian_series(std::size_t n, double sd, std::uint64_t seed) {
    SplitRng rng(seed, 0);
    std::vector<double> r(n);
    for (double& x : r) x = sd * rng.normal();
    return series_of(std::move(r), "iid");
}

} // namespace

TEST_SUITE("estimators") {

TEST_CASE("aggregate_returns conventions") {
    ReturnSeries s = series_of(std::vector<double>(100, 0.01));
    auto h1 = aggregate_returns(s, 1, Windowing::overlap);
    CHECK(h1 == s.returns);
    auto h5 = aggregate_returns(s, 5, Windowing::nonoverlap);
    CHECK(h5.size() == 20);
    for (double v : h5) CHECK(close_rel(v, 0.05, 1e-12));
    auto o25 = aggregate_returns(s, 25, Windowing::overlap);
    CHECK(o25.size() == 76);
    CHECK_THROWS_AS(aggregate_returns(s, 60, Windowing::nonoverlap), data_error);
    CHECK_THROWS_AS(aggregate_returns(s, 0, Windowing::overlap), domain_error);
}

TEST_CASE("series validation") {
    ReturnSeries s = series_of({0.1, 0.2});
    s.dates[1] = s.dates[0];
    CHECK_THROWS_AS(s.validate(), data_error);
    s.dates.pop_back();
    CHECK_THROWS_AS(s.validate(), data_error);
}

TEST_CASE("annualize conventions") {
    CHECK(close_rel(annualize(1.5873e-4, 1.0), 0.04, 1e-3));
    CHECK(close_rel(annualize(0.0039683, 25.0), 0.04, 1e-4));
    CHECK(close_rel(deannualize(annualize(0.123, 25.0), 25.0), 0.123, 1e-14));
    CHECK_THROWS_AS(annualize(0.1, 0.0), domain_error);
}

TEST_CASE("variance dynamics anchors at the reference horizon") {
    ReturnSeries s = gaussian_series(6000, 0.01, 8);
    BootstrapConfig boot{25, 200, 1};
    VarianceDynamics d = variance_dynamics(s, {1, 5, 25}, 1, Windowing::overlap, boot);
    CHECK(d.emiv_hat[0] == 0.0);
    CHECK(d.riv[0] == 0.0);
    CHECK(d.horizons == std::vector<int>{1, 5, 25});
    // iid input: riv CI covers 0 at every horizon
    for (std::size_t i = 1; i < d.riv.size(); ++i) {
        CHECK(d.riv_ci_lo[i] <= 0.0);
        CHECK(d.riv_ci_hi[i] >= 0.0);
        CHECK(d.riv[i] < 1.0);
    }
}

TEST_CASE("variance dynamics validation") {
    ReturnSeries s = gaussian_series(600, 0.01, 9);
    BootstrapConfig boot{25, 10, 1};
    CHECK_THROWS_AS(variance_dynamics(s, {5, 25}, 1, Windowing::overlap, boot), domain_error);
    CHECK_THROWS_AS(variance_dynamics(s, {1, 25}, 1, Windowing::overlap, boot), data_error);
}

TEST_CASE("scale equivariance") {
    ReturnSeries s = gaussian_series(4000, 0.012, 10);
    ReturnSeries scaled = s;
    for (double& x : scaled.returns) x *= 3.0;
    BootstrapConfig boot{25, 50, 1};
    VarianceDynamics a = variance_dynamics(s, {1, 25}, 1, Windowing::overlap, boot);
    VarianceDynamics b = variance_dynamics(scaled, {1, 25}, 1, Windowing::overlap, boot);
    CHECK(close_rel(b.var_hat[1], 9.0 * a.var_hat[1], 1e-12));
    CHECK(close_rel(b.emiv_hat[1], 9.0 * a.emiv_hat[1], 1e-9));
    CHECK(close_rel(b.riv[1], a.riv[1], 1e-9));
    CHECK(close_rel(crow_siddiqui_kurtosis(scaled.returns), crow_siddiqui_kurtosis(s.returns), 1e-12));
    CHECK(close_rel(hinkley_skewness(scaled.returns), hinkley_skewness(s.returns), 1e-9));
}

TEST_CASE("overlap and nonoverlap agree on long synthetic data") {
    ReturnSeries s = gaussian_series(24000, 0.01, 11);
    BootstrapConfig boot{25, 200, 1};
    VarianceDynamics a = variance_dynamics(s, {1, 25}, 1, Windowing::overlap, boot);
    VarianceDynamics b = variance_dynamics(s, {1, 25}, 1, Windowing::nonoverlap, boot);
    CHECK(a.var_ci_lo[1] <= b.var_hat[1]);
    CHECK(a.var_ci_hi[1] >= b.var_hat[1]);
}

TEST_CASE("empirical quantile conventions") {
    std::vector<double> v{1.0, 2.0, 3.0};
    CHECK(empirical_quantile(v, 0.5) == 2.0);
    CHECK(empirical_quantile(v, 0.25) == 1.5);
    SplitRng rng(12, 0);
    std::vector<double> z(100000);
    for (double& x : z) x = rng.normal();
    CHECK(testutil::close_abs(empirical_quantile(z, 0.975), 1.96, 0.03));
    double prev = -1e300;
    for (double q : {0.05, 0.2, 0.5, 0.8, 0.99}) {
        double x = empirical_quantile(z, q);
        CHECK(x >= prev);
        prev = x;
    }
    CHECK_THROWS_AS(empirical_quantile(v, 0.0), domain_error);
    CHECK_THROWS_AS(empirical_quantile(std::vector<double>{1.0}, 0.5), domain_error);
}

TEST_CASE("quantile moment calibration") {
    SplitRng rng(13, 0);
    std::vector<double> z(1000000), lap(1000000);
    for (std::size_t i = 0; i < z.size(); ++i) {
        z[i] = rng.normal();
        double u = rng.next_double_pos();
        double e = rng.exponential();
        lap[i] = (u < 0.5 ? -e : e);
    }
    // normal: 2*1.95996/(2*0.67449) - 2.91 = -0.00415
    CHECK(testutil::close_abs(crow_siddiqui_kurtosis(z), -0.00415, 0.03));
    // Laplace: ln20/ln2 - 2.91 = 1.41193
    CHECK(testutil::close_abs(crow_siddiqui_kurtosis(lap), 1.41193, 0.03));
    CHECK(crow_siddiqui_kurtosis(lap) > 0.0);

    // exact mirror: Hinkley is identically zero
    std::vector<double> mirror;
    for (std::size_t i = 0; i < 5000; ++i) {
        double x = rng.normal() + 0.3;
        mirror.push_back(x);
        mirror.push_back(-x);
    }
    CHECK(testutil::close_abs(hinkley_skewness(mirror), 0.0, 1e-9));
    // antisymmetry
    std::vector<double> skewed(lap.begin(), lap.begin() + 100000);
    for (std::size_t i = 0; i < skewed.size(); ++i) skewed[i] += 0.2 * skewed[i] * skewed[i];
    std::vector<double> neg = skewed;
    for (double& x : neg) x = -x;
    CHECK(testutil::close_abs(hinkley_skewness(neg), -hinkley_skewness(skewed), 1e-12));
    CHECK(hinkley_skewness(skewed) >= -1.0);
    CHECK(hinkley_skewness(skewed) <= 1.0);
}

TEST_CASE("heston series riv tracks the closed form") {
    HestonParams p(0.0, 2.0, 0.04, 0.3, -0.7);
    auto daily = simulate_heston_daily_series(p, 24000, 8, 7);
    ReturnSeries s = series_of(std::move(daily), "heston");
    BootstrapConfig boot{25, 300, 2};
    VarianceDynamics d = variance_dynamics(s, {1, 25}, 1, Windowing::overlap, boot);
    auto dec = marginal_variance(p, Horizon::days(25.0));
    double riv_cf = (dec.viv + dec.emiv) / dec.total;
    CHECK(d.riv[1] > d.riv_ci_lo[1] - 0.05);
    CHECK(riv_cf >= d.riv_ci_lo[1] - 0.02);
    CHECK(riv_cf <= d.riv_ci_hi[1] + 0.02);
}

TEST_CASE("size report on synthetic iid panel") {
    std::vector<ReturnSeries> panel{gaussian_series(8000, 0.012, 30),
                                    gaussian_series(8000, 0.008, 31)};
    panel[0].label = "small";
    panel[1].label = "big";
    auto rows = size_report(panel, BootstrapConfig{25, 50, 3});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].label == "small");
    CHECK(std::fabs(rows[0].riv25) < 0.25);
    CHECK(close_rel(rows[0].var1_annualized, 0.012 * 0.012 * 252.0, 0.1));
    CHECK(close_rel(rows[1].var1_annualized, 0.008 * 0.008 * 252.0, 0.1));
    CHECK(std::fabs(rows[0].skewness_h) < 0.05);
    CHECK(std::fabs(rows[0].excess_kurtosis_cs) < 0.15);
    CHECK_THROWS_AS(size_report({}, BootstrapConfig{}), data_error);
}

} // TEST_SUITE
