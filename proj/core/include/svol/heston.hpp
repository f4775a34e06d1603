#ifndef SVOL_HESTON_HPP
#define SVOL_HESTON_HPP

#include <optional>

#include "svol/errors.hpp"

namespace svol {

constexpr double kTradingDaysPerYear = 252.0;

// Time horizon in years; 1 trading day = 1/252 year.
struct Horizon {
    double t;

    explicit Horizon(double years) : t(years) {
        if (!(years > 0.0)) throw domain_error("Horizon: t must be > 0");
    }
    static Horizon days(double d) { return Horizon(d / kTradingDaysPerYear); }
};

// The five Heston coefficients plus the rate of return, all annualized:
//   dX = (r - V/2) dt + rho sqrt(V) dW + sqrt(1-rho^2) sqrt(V) dB
//   dV = kappa (theta - V) dt + sigma sqrt(V) dW
struct HestonParams {
    double r;
    double kappa;
    double theta;
    double sigma;
    double rho;

    HestonParams(double r_, double kappa_, double theta_, double sigma_, double rho_,
                 bool allow_feller_violation = false)
        : r(r_), kappa(kappa_), theta(theta_), sigma(sigma_), rho(rho_) {
        if (!(kappa > 0.0)) throw domain_error("HestonParams: kappa must be > 0");
        if (!(theta > 0.0)) throw domain_error("HestonParams: theta must be > 0");
        if (!(sigma > 0.0)) throw domain_error("HestonParams: sigma must be > 0");
        if (!(rho >= -1.0 && rho <= 1.0)) throw domain_error("HestonParams: rho must be in [-1, 1]");
        if (!feller_holds() && !allow_feller_violation)
            throw domain_error("HestonParams: Feller condition 2*kappa*theta > sigma^2 violated "
                               "(pass allow_feller_violation to override)");
    }

    bool feller_holds() const { return 2.0 * kappa * theta > sigma * sigma; }
};

// First four standardized moments; standard errors present for sample-based sets.
struct MomentSet {
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;

    std::optional<double> mean_se;
    std::optional<double> variance_se;
    std::optional<double> skewness_se;
    std::optional<double> kurtosis_se;

    bool degenerate = false; // zero-variance input: shape moments undefined

    double kurtosis() const { return excess_kurtosis + 3.0; }
};

// Var[X_t] split into its three components: total == eiv + viv + emiv.
struct VarianceDecomposition {
    double eiv;
    double viv;
    double emiv;
    double total;
    Horizon horizon;
};

// Long-horizon per-year slopes of E[int V], E[(int V)(int sqrt(V) dW)], Var[int V].
struct LongHorizonSlopes {
    double eiv_rate;           // theta
    double cross_moment_rate;  // theta*sigma/kappa
    double iv_variance_rate;   // theta*sigma^2/kappa^2
};

double eiv(const HestonParams& p, Horizon t);
double emiv(const HestonParams& p, Horizon t);
double viv(const HestonParams& p, Horizon t);
double marginal_mean(const HestonParams& p, Horizon t);
VarianceDecomposition marginal_variance(const HestonParams& p, Horizon t);
double third_central_moment(const HestonParams& p, Horizon t);
double skewness(const HestonParams& p, Horizon t);
double fourth_central_moment(const HestonParams& p, Horizon t);
double kurtosis(const HestonParams& p, Horizon t);

// Small-t approximations of mean/variance/skewness/kurtosis.
MomentSet short_horizon_moments(const HestonParams& p, Horizon t);

LongHorizonSlopes long_horizon_asymptotics(const HestonParams& p);

} // namespace svol

#endif
