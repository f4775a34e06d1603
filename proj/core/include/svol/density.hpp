#ifndef SVOL_DENSITY_HPP
#define SVOL_DENSITY_HPP

#include <complex>
#include <vector>

#include "svol/heston.hpp"

namespace svol {

// Marginal density sampled on an ordered grid of log-return values.
struct DensityCurve {
    std::vector<double> grid;
    std::vector<double> values;
    Horizon horizon;
};

// Log characteristic function F_t of the demeaned-by-r... log return X_t - r*t:
//   E[exp(i p X_t)] = exp(i p r t + F_t(p))
// with the complex branch continued from the principal value at p = 0.
std::complex<double> characteristic_exponent(const HestonParams& p, Horizon t, double p_x);

// Batch evaluation at sorted nonnegative frequencies, sharing one branch-tracked
// sweep from 0.  Throws numerical_error on branch-tracking failure.
std::vector<std::complex<double>> characteristic_exponent_batch(const HestonParams& p, Horizon t,
                                                                const std::vector<double>& p_xs);

// Fourier inversion of F_t over the supplied grid (ascending x values).
DensityCurve marginal_density(const HestonParams& p, Horizon t, const std::vector<double>& grid);

// Uniform grid spanning +-n_sd unconditional standard deviations around the mean.
std::vector<double> density_grid(const HestonParams& p, Horizon t, double n_sd = 12.0,
                                 std::size_t n_points = 1601);

// Trapezoid moments of a density curve.
MomentSet density_moments(const DensityCurve& c);

// Trapezoid integral of the curve.
double density_integral(const DensityCurve& c);

} // namespace svol

#endif
