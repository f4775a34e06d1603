#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "svol/ks.hpp"
#include "svol/rng.hpp"
#include "test_util.hpp"

using namespace svol;

TEST_SUITE("rng") {

TEST_CASE("streams are deterministic and distinct") {
    SplitRng a(123, 7), b(123, 7), c(123, 8), d(124, 7);
    bool same = true, diff_stream = false, diff_seed = false;
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t x = a.next_u64();
        same = same && (x == b.next_u64());
        diff_stream = diff_stream || (x != c.next_u64());
        diff_seed = diff_seed || (x != d.next_u64());
    }
    CHECK(same);
    CHECK(diff_stream);
    CHECK(diff_seed);
}

TEST_CASE("uniform ranges") {
    SplitRng r(5, 0);
    double lo = 1.0, hi = 0.0, lop = 1.0;
    for (int i = 0; i < 200000; ++i) {
        double u = r.next_double();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        lop = std::min(lop, r.next_double_pos());
    }
    CHECK(lo >= 0.0);
    CHECK(hi < 1.0);
    CHECK(lop > 0.0);
    CHECK(lo < 1e-4);   // actually explores the low end
    CHECK(hi > 0.9999);
}

TEST_CASE("normal moments and tails") {
    SplitRng r(42, 0);
    const std::size_t n = 2000000;
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    std::size_t tail3 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double z = r.normal();
        s1 += z;
        s2 += z * z;
        s3 += z * z * z;
        s4 += z * z * z * z;
        if (std::fabs(z) > 3.0) ++tail3;
    }
    double nn = static_cast<double>(n);
    CHECK(std::fabs(s1 / nn) < 4.0 / std::sqrt(nn));
    CHECK(std::fabs(s2 / nn - 1.0) < 4.0 * std::sqrt(2.0 / nn));
    CHECK(std::fabs(s3 / nn) < 4.0 * std::sqrt(15.0 / nn));
    CHECK(std::fabs(s4 / nn - 3.0) < 4.0 * std::sqrt(96.0 / nn));
    // P(|Z|>3) = 2.6998e-3
    double p = static_cast<double>(tail3) / nn;
    CHECK(std::fabs(p - 2.6998e-3) < 4.0 * std::sqrt(2.7e-3 / nn));
}

TEST_CASE("normal sample passes KS against the exact CDF") {
    SplitRng r(7, 3);
    std::vector<double> z(50000);
    for (double& x : z) x = r.normal();
    KSResult res = ks_test(z, testutil::std_normal_cdf);
    CHECK(res.p_value > 1e-3);
}

TEST_CASE("gamma sampler moments") {
    for (auto [shape, scale] : {std::pair<double, double>{2.5, 0.8},
                                std::pair<double, double>{0.6, 1.3},
                                std::pair<double, double>{17.78, 0.0225}}) {
        SplitRng r(11, 1);
        const std::size_t n = 500000;
        double s1 = 0, s2 = 0;
        bool all_pos = true;
        for (std::size_t i = 0; i < n; ++i) {
            double g = r.gamma(shape, scale);
            all_pos = all_pos && g > 0.0;
            s1 += g;
            s2 += g * g;
        }
        CHECK(all_pos);
        double mean = s1 / n, var = s2 / n - mean * mean;
        double se_mean = std::sqrt(shape) * scale / std::sqrt(static_cast<double>(n));
        CHECK(std::fabs(mean - shape * scale) < 5.0 * se_mean);
        CHECK(std::fabs(var - shape * scale * scale) < 0.02 * shape * scale * scale);
    }
}

} // TEST_SUITE
