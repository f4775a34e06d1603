#include "svol/heston.hpp"

#include <cmath>

namespace svol {

namespace {
// Shared bracket t + (e^{-kt} - 1)/k; evaluated stably for small kt.
double relax_bracket(double kappa, double t) {
    double kt = kappa * t;
    if (kt < 1e-5) {
        // kt^2/2 - kt^3/6 + kt^4/24, divided by kappa
        return (kt * kt / 2.0 - kt * kt * kt / 6.0 + kt * kt * kt * kt / 24.0) / kappa;
    }
    return t + std::expm1(-kt) / kappa;
}
} // namespace

double eiv(const HestonParams& p, Horizon t) { return p.theta * t.t; }

double emiv(const HestonParams& p, Horizon t) {
    return -p.rho * p.theta * (p.sigma / p.kappa) * relax_bracket(p.kappa, t.t);
}

double viv(const HestonParams& p, Horizon t) {
    double s_over_k = p.sigma / p.kappa;
    return 0.25 * p.theta * s_over_k * s_over_k * relax_bracket(p.kappa, t.t);
}

double marginal_mean(const HestonParams& p, Horizon t) {
    return p.r * t.t - 0.5 * p.theta * t.t;
}

VarianceDecomposition marginal_variance(const HestonParams& p, Horizon t) {
    VarianceDecomposition d{eiv(p, t), viv(p, t), emiv(p, t), 0.0, t};
    d.total = d.eiv + d.viv + d.emiv;
    return d;
}

double third_central_moment(const HestonParams& p, Horizon t) {
    const double k = p.kappa, th = p.theta, s = p.sigma, rho = p.rho, tt = t.t;
    double bracket = -4.0 * k * k + 8.0 * k * rho * s + 4.0 * tt * k * k * rho * s
                     - 2.0 * s * s - tt * k * s * s
                     + std::exp(k * tt) * (-4.0 * k * k * (-1.0 + tt * k)
                                           + 4.0 * k * (-2.0 + tt * k) * rho * s
                                           + (2.0 - tt * k) * s * s);
    return 3.0 / (8.0 * std::pow(k, 5)) * std::exp(-k * tt) * th * s * (-2.0 * k * rho + s) * bracket;
}

double skewness(const HestonParams& p, Horizon t) {
    double total = marginal_variance(p, t).total;
    return third_central_moment(p, t) / std::pow(total, 1.5);
}

double fourth_central_moment(const HestonParams& p, Horizon t) {
    const double k = p.kappa, th = p.theta, s = p.sigma, rho = p.rho, tt = t.t;
    const double ekt = std::exp(k * tt);
    const double s2 = s * s, s3 = s2 * s, s4 = s2 * s2, s5 = s4 * s;
    const double rho2 = rho * rho;

    double term0 = s2 * std::pow(-4.0 * k * rho + s, 2) * (2.0 * th * k + s2);

    double term1 = 4.0 * ekt * s
        * (-16.0 * tt * th * std::pow(k, 5) * rho
           + 4.0 * std::pow(k, 3) * ((2.0 + tt * th) * k
                                     + 4.0 * (th * (-1.0 + tt * k) + 2.0 * k * (2.0 + tt * k)) * rho2) * s
           - 8.0 * k * k * rho * (th * (-1.0 + tt * k) + 6.0 * k * (2.0 + tt * k)
                                  + 2.0 * k * (6.0 + tt * k * (4.0 + tt * k)) * rho2) * s2
           + k * (th * (-1.0 + tt * k)
                  + 4.0 * k * (6.0 + 3.0 * tt * k + (34.0 + tt * k * (24.0 + 5.0 * tt * k)) * rho2)) * s3
           - 8.0 * k * (7.0 + tt * k * (5.0 + tt * k)) * rho * s4
           + (7.0 + tt * k * (5.0 + tt * k)) * s5);

    double q = 4.0 * k * k - 4.0 * k * rho * s + s2;
    double term2 = ekt * ekt
        * (2.0 * tt * tt * th * std::pow(k, 3) * q * q
           + 2.0 * tt * k * s * q * (8.0 * th * k * k * rho
                                     + 2.0 * k * (-th + 2.0 * k + 8.0 * k * rho2) * s
                                     - 20.0 * k * rho * s2 + 5.0 * s3)
           + s2 * (-32.0 * std::pow(k, 4) * (1.0 + 8.0 * rho2) - 29.0 * s4
                   + 2.0 * k * s2 * (th + 116.0 * rho * s)
                   + 32.0 * std::pow(k, 3) * rho * (th * rho + 12.0 * (1.0 + rho2) * s)
                   - 16.0 * k * k * s * (6.0 * s + rho * (th + 35.0 * rho * s))));

    return 3.0 / (32.0 * std::pow(k, 7)) * std::exp(-2.0 * k * tt) * th * (term0 + term1 + term2);
}

double kurtosis(const HestonParams& p, Horizon t) {
    double total = marginal_variance(p, t).total;
    return fourth_central_moment(p, t) / (total * total);
}

MomentSet short_horizon_moments(const HestonParams& p, Horizon t) {
    MomentSet m;
    m.mean = p.r * t.t - 0.5 * p.theta * t.t;
    m.variance = p.theta * t.t;
    m.skewness = p.sigma * (1.5 * p.rho - 0.75 * p.sigma / p.kappa) * std::sqrt(t.t / p.theta);
    m.excess_kurtosis = 3.0 * p.sigma * p.sigma / (2.0 * p.kappa * p.theta);
    return m;
}

LongHorizonSlopes long_horizon_asymptotics(const HestonParams& p) {
    double s_over_k = p.sigma / p.kappa;
    return {p.theta, p.theta * s_over_k, p.theta * s_over_k * s_over_k};
}

} // namespace svol
