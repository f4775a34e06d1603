#include "svol/rng.hpp"

#include "svol/errors.hpp"

namespace svol {
namespace {

// Doornik-style ziggurat for the standard normal, 128 layers.
constexpr int kZigLayers = 128;
constexpr double kZigR = 3.442619855899;
constexpr double kZigV = 9.91256303526217e-3;

struct ZigTables {
    double x[kZigLayers + 1];
    double ratio[kZigLayers];
    double fx[kZigLayers + 1];

    ZigTables() {
        double f = std::exp(-0.5 * kZigR * kZigR);
        x[0] = kZigV / f;
        x[1] = kZigR;
        x[kZigLayers] = 0.0;
        for (int i = 2; i < kZigLayers; ++i) {
            x[i] = std::sqrt(-2.0 * std::log(kZigV / x[i - 1] + std::exp(-0.5 * x[i - 1] * x[i - 1])));
        }
        for (int i = 0; i <= kZigLayers; ++i) fx[i] = std::exp(-0.5 * x[i] * x[i]);
        for (int i = 0; i < kZigLayers; ++i) ratio[i] = x[i + 1] / x[i];
    }
};

const ZigTables kZig;

} // namespace

double SplitRng::normal() {
    for (;;) {
        std::uint64_t bits = next_u64();
        int layer = static_cast<int>(bits & 0x7F);
        // signed uniform in (-1, 1) from the top 53 bits
        double u = static_cast<double>(bits >> 11) * 0x1.0p-52 - 1.0;
        if (std::fabs(u) < kZig.ratio[layer]) return u * kZig.x[layer];
        if (layer == 0) {
            // tail beyond R (Marsaglia)
            double xx, yy;
            do {
                xx = -std::log(next_double_pos()) / kZigR;
                yy = -std::log(next_double_pos());
            } while (yy + yy < xx * xx);
            return u < 0 ? -(kZigR + xx) : kZigR + xx;
        }
        double val = u * kZig.x[layer];
        double f0 = std::exp(-0.5 * (kZig.x[layer] * kZig.x[layer] - val * val));
        double f1 = std::exp(-0.5 * (kZig.x[layer + 1] * kZig.x[layer + 1] - val * val));
        if (f1 + next_double() * (f0 - f1) < 1.0) return val;
    }
}

// Marsaglia-Tsang squeeze; shape < 1 boosted via the power trick.
double SplitRng::gamma(double shape, double scale) {
    if (shape <= 0.0 || scale <= 0.0) throw domain_error("gamma: shape and scale must be positive");
    if (shape < 1.0) {
        double u = next_double_pos();
        return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double z, v;
        do {
            z = normal();
            v = 1.0 + c * z;
        } while (v <= 0.0);
        v = v * v * v;
        double u = next_double_pos();
        if (u < 1.0 - 0.0331 * z * z * z * z) return scale * d * v;
        if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return scale * d * v;
    }
}

} // namespace svol
