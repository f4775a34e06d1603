#ifndef SVOL_GIG_HPP
#define SVOL_GIG_HPP

#include <cstdint>
#include <vector>

#include "svol/errors.hpp"

namespace svol {

// Generalized inverse Gaussian law with density proportional to
// x^{lambda-1} exp(-(delta^2/x + gamma^2 x)/2) on x > 0.
struct GIGParams {
    double lambda;
    double delta;
    double gamma;

    GIGParams(double lambda_, double delta_, double gamma_)
        : lambda(lambda_), delta(delta_), gamma(gamma_) {
        if (delta < 0.0 || gamma < 0.0)
            throw domain_error("GIGParams: delta and gamma must be >= 0");
        if (lambda < 0.0) {
            if (!(delta > 0.0)) throw domain_error("GIGParams: lambda < 0 requires delta > 0");
        } else if (lambda == 0.0) {
            if (!(delta > 0.0 && gamma > 0.0))
                throw domain_error("GIGParams: lambda = 0 requires delta > 0 and gamma > 0");
        } else {
            if (!(gamma > 0.0)) throw domain_error("GIGParams: lambda > 0 requires gamma > 0");
        }
    }
};

double gig_log_pdf(const GIGParams& g, double x);
double gig_pdf(const GIGParams& g, double x);
double gig_mean(const GIGParams& g);

struct GigSampleStats {
    std::uint64_t proposals = 0;
    std::uint64_t accepted = 0;

    double acceptance_rate() const {
        return proposals == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
    }
};

// Exact rejection sampler (mode-shifted ratio-of-uniforms in the interior of
// the parameter domain, gamma / inverse-gamma on the boundaries).
std::vector<double> gig_sample(const GIGParams& g, std::size_t n, std::uint64_t seed,
                               GigSampleStats* stats = nullptr);

} // namespace svol

#endif
