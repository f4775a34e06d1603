#ifndef SVOL_FIT_HPP
#define SVOL_FIT_HPP

#include <optional>
#include <span>

#include "svol/gh.hpp"

namespace svol {

struct GhFit {
    GHParams params;
    double log_likelihood;
    std::size_t iterations;
    double gradient_norm; // sup-norm of the mean log-likelihood gradient at the optimum
    bool converged;
};

// Maximum-likelihood GH fit.  Optimizes over the unconstrained coordinates
// (lambda, ln delta, ln gamma, beta, mu), which keep every iterate inside the
// parameter domain.  Throws numerical_error after bounded restarts without
// convergence, domain_error on degenerate (constant) data.
GhFit fit_gh_mle(std::span<const double> data, std::optional<GHParams> init = std::nullopt);

// Mean log-likelihood of data under h (convenience for model comparison).
double gh_log_likelihood(const GHParams& h, std::span<const double> data);

} // namespace svol

#endif
