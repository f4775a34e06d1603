#ifndef SVOL_GH_HPP
#define SVOL_GH_HPP

#include <cstdint>
#include <vector>

#include "svol/errors.hpp"
#include "svol/gig.hpp"

namespace svol {

// Generalized hyperbolic law: Gaussian variance-mean mixture
//   Y | V = v ~ N(mu + beta v, v),   V ~ GIG(lambda, delta, gamma),
// with gamma^2 = alpha^2 - beta^2.
struct GHParams {
    double lambda;
    double alpha;
    double beta;
    double delta;
    double mu;

    GHParams(double lambda_, double alpha_, double beta_, double delta_, double mu_)
        : lambda(lambda_), alpha(alpha_), beta(beta_), delta(delta_), mu(mu_) {
        if (alpha < 0.0 || delta < 0.0)
            throw domain_error("GHParams: alpha and delta must be >= 0");
        if (lambda > 0.0) {
            if (!(alpha > 0.0 && alpha * alpha > beta * beta))
                throw domain_error("GHParams: lambda > 0 requires alpha > |beta|");
        } else if (lambda == 0.0) {
            if (!(delta > 0.0 && alpha > 0.0 && alpha * alpha > beta * beta))
                throw domain_error("GHParams: lambda = 0 requires delta > 0 and alpha > |beta|");
        } else {
            if (!(delta > 0.0 && alpha * alpha >= beta * beta))
                throw domain_error("GHParams: lambda < 0 requires delta > 0 and alpha >= |beta|");
        }
    }

    double gamma() const;

    // the mixing law V ~ GIG(lambda, delta, gamma)
    GIGParams mixing() const { return GIGParams(lambda, delta, gamma()); }
};

double gh_log_pdf(const GHParams& h, double x);
double gh_pdf(const GHParams& h, double x);

// CDF backed by a cached fine-grained trapezoid integral of the pdf; cheap to
// evaluate repeatedly (KS tests, plotting).
class GhCdf {
public:
    explicit GhCdf(const GHParams& h, std::size_t grid_points = 20001);
    double operator()(double x) const;

private:
    std::vector<double> xs_;
    std::vector<double> cum_;
};

double gh_cdf(const GHParams& h, double x);

std::vector<double> gh_sample(const GHParams& h, std::size_t n, std::uint64_t seed);

} // namespace svol

#endif
