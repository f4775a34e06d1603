#ifndef SVOL_ESTIMATORS_HPP
#define SVOL_ESTIMATORS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "svol/errors.hpp"

namespace svol {

// Dated daily log-returns.  Dates are YYYYMMDD integers, strictly increasing.
struct ReturnSeries {
    std::vector<int> dates;
    std::vector<double> returns;
    std::string label;

    void validate() const;
};

enum class Windowing { nonoverlap, overlap };

struct BootstrapConfig {
    std::size_t block_days = 25;
    std::size_t resamples = 1000;
    std::uint64_t seed = 1;
};

// Estimated dynamics of the marginal variance across horizons, with the
// scaled-from-reference EIV baseline and the EMIV / RIV differences.
struct VarianceDynamics {
    std::vector<int> horizons;      // day counts
    int ref_horizon;                // EMIV is zero here by construction
    std::vector<double> var_hat;    // sample Var of h-day returns
    std::vector<double> eiv_hat;    // (h/s) * Var of s-day returns
    std::vector<double> emiv_hat;   // var_hat - eiv_hat
    std::vector<double> riv;        // emiv_hat / var_hat
    std::vector<double> var_ci_lo, var_ci_hi;
    std::vector<double> riv_ci_lo, riv_ci_hi;
    std::size_t n_days;
    Windowing mode;
};

struct QuantileMoments {
    double skewness_h;
    double excess_kurtosis_cs;
    double alpha; // Hinkley tail level
};

// One row of the size-portfolio summary table.
struct SizeReportRow {
    std::string label;
    double eiv25_annualized;     // (25/s) * Var[X_s] scaled to a year
    double riv25;
    double var1_annualized;      // 1-day marginal variance scaled to a year
    double skewness_h;
    double excess_kurtosis_cs;
};

// Sums of h consecutive daily log-returns.
std::vector<double> aggregate_returns(const ReturnSeries& s, int h, Windowing mode);

VarianceDynamics variance_dynamics(const ReturnSeries& s, std::vector<int> horizons,
                                   int ref_horizon = 1, Windowing mode = Windowing::overlap,
                                   const BootstrapConfig& boot = {});

inline double annualize(double var_h, double h_days) {
    if (!(h_days >= 1.0)) throw domain_error("annualize: horizon must be >= 1 day");
    return var_h * 252.0 / h_days;
}
inline double deannualize(double var_year, double h_days) {
    if (!(h_days >= 1.0)) throw domain_error("deannualize: horizon must be >= 1 day");
    return var_year * h_days / 252.0;
}

// Linear-interpolation quantile: position q*(n-1) between order statistics.
double empirical_quantile(std::span<const double> data, double q);

// (F^-1(0.975) - F^-1(0.025)) / (F^-1(0.75) - F^-1(0.25)) - 2.91
double crow_siddiqui_kurtosis(std::span<const double> data);

// (F^-1(1-a) + F^-1(a) - 2 F^-1(0.5)) / (F^-1(1-a) - F^-1(a))
double hinkley_skewness(std::span<const double> data, double alpha = 0.05);

QuantileMoments quantile_moments(std::span<const double> data, double alpha = 0.05);

std::vector<SizeReportRow> size_report(const std::vector<ReturnSeries>& panel,
                                       const BootstrapConfig& boot = {});

} // namespace svol

#endif
