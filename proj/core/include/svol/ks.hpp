#ifndef SVOL_KS_HPP
#define SVOL_KS_HPP

#include <functional>
#include <span>

namespace svol {

struct KSResult {
    double statistic;
    double p_value;
    std::size_t n_effective;
};

// Asymptotic Kolmogorov distribution: P(sqrt(n) D <= z).
double kolmogorov_cdf(double z);

// One-sample two-sided KS test of data against a reference CDF.  stride > 1
// subsamples every stride-th observation (in the given order) to weaken serial
// dependence before testing.
KSResult ks_test(std::span<const double> data, const std::function<double(double)>& cdf,
                 std::size_t stride = 1);

} // namespace svol

#endif
