#ifndef SVOL_SIMULATE_HPP
#define SVOL_SIMULATE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "svol/gig.hpp"
#include "svol/heston.hpp"

namespace svol {

// Identical SimConfig (plus params and start) implies bit-identical output,
// independent of the number of worker threads.
struct SimConfig {
    std::size_t n_paths = 100000;
    int steps_per_year = 2016; // 252 * 8
    Horizon horizon = Horizon(1.0);
    std::uint64_t seed = 1;

    int total_steps() const;
};

// Start-of-path variance law.
struct V0Spec {
    bool stationary;
    double v0;

    static V0Spec from_stationary() { return {true, 0.0}; }
    static V0Spec fixed(double v) {
        if (!(v >= 0.0)) throw domain_error("V0Spec: v0 must be >= 0");
        return {false, v};
    }
};

// Per-path terminal state plus the two pathwise integrals entering the
// variance decomposition.
struct PathBundle {
    std::vector<double> x;             // terminal log-return X_t
    std::vector<double> v;             // terminal variance V_t
    std::vector<double> int_v;         // int_0^t V ds
    std::vector<double> int_sqrtv_dw;  // int_0^t sqrt(V) dW
    Horizon horizon;
    double rho;
};

// Coefficients of dV = (b1 V^{2a-1} - b2 V^{2a} + b3 V^{2(a-1)}) dt + k V^a dW,
// whose stationary law is GIG(lambda, delta, gamma).
struct SorensenParams {
    double alpha_exp;
    GIGParams gig;
    double kdiff;

    SorensenParams(double alpha_exp_, GIGParams gig_, double kdiff_)
        : alpha_exp(alpha_exp_), gig(gig_), kdiff(kdiff_) {
        if (!(kdiff > 0.0)) throw domain_error("SorensenParams: kdiff must be > 0");
    }

    double beta1() const { return 0.5 * kdiff * kdiff * (gig.lambda - 1.0) + kdiff * kdiff * alpha_exp; }
    double beta2() const { return 0.25 * kdiff * kdiff * gig.gamma * gig.gamma; }
    double beta3() const { return 0.25 * kdiff * kdiff * gig.delta * gig.delta; }
};

// Full-truncation Euler simulation of the Heston system.
PathBundle simulate_heston(const HestonParams& p, V0Spec v0, const SimConfig& cfg);

// Variance process only; returns terminal variances.
std::vector<double> simulate_cir(const HestonParams& p, V0Spec v0, const SimConfig& cfg);

// Sorensen GIG diffusion; V stays strictly positive (offending Euler steps are
// rejected and halved).  Returns terminal variances.
std::vector<double> simulate_sorensen(const SorensenParams& sp, double v0, const SimConfig& cfg);

// One long Sorensen path thinned after burn-in; the workhorse for checking the
// stationary law.
std::vector<double> sorensen_long_run(const SorensenParams& sp, double v0, double dt,
                                      std::size_t n_samples, std::size_t thin_steps,
                                      std::size_t burn_in_steps, std::uint64_t seed);

// One long Heston path cut into consecutive daily log-returns.
std::vector<double> simulate_heston_daily_series(const HestonParams& p, std::size_t n_days,
                                                 int steps_per_day, std::uint64_t seed);

// Sample moments with batch standard errors (100 contiguous batches).
MomentSet mc_moments(std::span<const double> values);

struct EstimateWithSe {
    double value;
    double se;
};

// -rho * sample mean of (int V)(int sqrt(V) dW).
EstimateWithSe emiv_mc(const PathBundle& b, double rho);

// Sample Var[X_t | V_0 = v0] by simulation.
EstimateWithSe conditional_variance(const HestonParams& p, double v0, Horizon t,
                                    const SimConfig& cfg);

// The square-root-of-time rule: Var[X_t|V_0] ~ V_0 t.
inline double srtr_prediction(double v0, Horizon t) {
    if (!(v0 >= 0.0)) throw domain_error("srtr_prediction: v0 must be >= 0");
    return v0 * t.t;
}

// Stationary CIR law of V: Gamma(2 kappa theta / sigma^2, sigma^2 / (2 kappa)).
double cir_stationary_shape(const HestonParams& p);
double cir_stationary_scale(const HestonParams& p);

} // namespace svol

#endif
