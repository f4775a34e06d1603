#include "svol/ks.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "svol/errors.hpp"

namespace svol {

double kolmogorov_cdf(double z) {
    if (z <= 0.0) return 0.0;
    if (z < 1.18) {
        // Jacobi-theta form, fast-converging for small z
        double y = std::exp(-1.23370055013616983 / (z * z)); // pi^2/8
        return 2.50662827463100050 / z * (y + std::pow(y, 9) + std::pow(y, 25) + std::pow(y, 49));
    }
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = 2.0 * ((k % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * z * z);
        s += term;
        if (std::fabs(term) < 1e-16) break;
    }
    return 1.0 - s;
}

KSResult ks_test(std::span<const double> data, const std::function<double(double)>& cdf,
                 std::size_t stride) {
    if (stride < 1) throw domain_error("ks_test: stride must be >= 1");
    std::vector<double> sub;
    sub.reserve(data.size() / stride + 1);
    for (std::size_t i = 0; i < data.size(); i += stride) sub.push_back(data[i]);
    const std::size_t n = sub.size();
    if (n < 30) throw domain_error("ks_test: effective subsample smaller than 30");
    std::sort(sub.begin(), sub.end());

    double d = 0.0;
    double prev_f = cdf(sub.front());
    for (std::size_t i = 0; i < n; ++i) {
        double f = cdf(sub[i]);
        if (f < prev_f) throw domain_error("ks_test: reference cdf is not monotone");
        prev_f = f;
        double lo = static_cast<double>(i) / static_cast<double>(n);
        double hi = static_cast<double>(i + 1) / static_cast<double>(n);
        d = std::max(d, std::max(f - lo, hi - f));
    }

    double sn = std::sqrt(static_cast<double>(n));
    // Stephens' finite-sample correction
    double z = (sn + 0.12 + 0.11 / sn) * d;
    return {d, 1.0 - kolmogorov_cdf(z), n};
}

} // namespace svol
