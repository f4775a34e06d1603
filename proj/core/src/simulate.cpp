#include "svol/simulate.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "svol/rng.hpp"

namespace svol {

namespace {

constexpr std::size_t kBlock = 4096;

// Run fn(path_index) over all paths on a worker pool.  Work is partitioned
// into fixed blocks and every path writes only its own slot, so output is
// identical for any thread count.
unsigned worker_count() {
    if (const char* env = std::getenv("SVOL_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

template <typename Fn>
void parallel_paths(std::size_t n_paths, Fn&& fn) {
    std::size_t n_blocks = (n_paths + kBlock - 1) / kBlock;
    unsigned n_threads = worker_count();
    if (n_blocks <= 1 || n_threads == 1) {
        for (std::size_t i = 0; i < n_paths; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t b = next.fetch_add(1);
            if (b >= n_blocks) return;
            std::size_t lo = b * kBlock;
            std::size_t hi = std::min(lo + kBlock, n_paths);
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace

int SimConfig::total_steps() const {
    if (n_paths < 1) throw domain_error("SimConfig: n_paths must be >= 1");
    if (steps_per_year < 1) throw domain_error("SimConfig: steps_per_year must be >= 1");
    int n = static_cast<int>(std::lround(steps_per_year * horizon.t));
    return std::max(n, 1);
}

double cir_stationary_shape(const HestonParams& p) {
    return 2.0 * p.kappa * p.theta / (p.sigma * p.sigma);
}

double cir_stationary_scale(const HestonParams& p) {
    return p.sigma * p.sigma / (2.0 * p.kappa);
}

PathBundle simulate_heston(const HestonParams& p, V0Spec v0, const SimConfig& cfg) {
    const int n_steps = cfg.total_steps();
    const double dt = cfg.horizon.t / n_steps;
    const double sqdt = std::sqrt(dt);
    const double rho_c = std::sqrt(1.0 - p.rho * p.rho);
    const double shape = cir_stationary_shape(p);
    const double scale = cir_stationary_scale(p);

    PathBundle b{std::vector<double>(cfg.n_paths), std::vector<double>(cfg.n_paths),
                 std::vector<double>(cfg.n_paths), std::vector<double>(cfg.n_paths),
                 cfg.horizon, p.rho};

    parallel_paths(cfg.n_paths, [&](std::size_t i) {
        SplitRng rng(cfg.seed, i);
        double v = v0.stationary ? rng.gamma(shape, scale) : v0.v0;
        double x = 0.0, iv = 0.0, isw = 0.0;
        for (int s = 0; s < n_steps; ++s) {
            double vp = v > 0.0 ? v : 0.0; // full truncation
            double sv = std::sqrt(vp);
            double dw = sqdt * rng.normal();
            double db = sqdt * rng.normal();
            v += p.kappa * (p.theta - vp) * dt + p.sigma * sv * dw;
            // trapezoid in V: the left-point sum misses half a step of the
            // V-dW cross correlation, which biases the EMIV cross moment
            double vbar = 0.5 * (vp + (v > 0.0 ? v : 0.0));
            x += (p.r - 0.5 * vbar) * dt + sv * (p.rho * dw + rho_c * db);
            iv += vbar * dt;
            isw += sv * dw;
        }
        b.x[i] = x;
        b.v[i] = v > 0.0 ? v : 0.0;
        b.int_v[i] = iv;
        b.int_sqrtv_dw[i] = isw;
    });
    return b;
}

std::vector<double> simulate_cir(const HestonParams& p, V0Spec v0, const SimConfig& cfg) {
    const int n_steps = cfg.total_steps();
    const double dt = cfg.horizon.t / n_steps;
    const double sqdt = std::sqrt(dt);
    const double shape = cir_stationary_shape(p);
    const double scale = cir_stationary_scale(p);

    std::vector<double> out(cfg.n_paths);
    parallel_paths(cfg.n_paths, [&](std::size_t i) {
        SplitRng rng(cfg.seed, i);
        double v = v0.stationary ? rng.gamma(shape, scale) : v0.v0;
        for (int s = 0; s < n_steps; ++s) {
            double vp = v > 0.0 ? v : 0.0;
            v += p.kappa * (p.theta - vp) * dt + p.sigma * std::sqrt(vp) * sqdt * rng.normal();
        }
        out[i] = v > 0.0 ? v : 0.0;
    });
    return out;
}

namespace {

// One Euler step of the Sorensen diffusion; a step landing at V <= 0 is
// rejected and retried as two half steps with fresh noise.
double sorensen_step(const SorensenParams& sp, SplitRng& rng, double v, double dt, int depth) {
    if (depth > 30)
        throw numerical_error("simulate_sorensen: step halving exhausted near the boundary");
    const double a = sp.alpha_exp;
    double drift = sp.beta1() * std::pow(v, 2.0 * a - 1.0) - sp.beta2() * std::pow(v, 2.0 * a)
                 + sp.beta3() * std::pow(v, 2.0 * (a - 1.0));
    double vn = v + drift * dt + sp.kdiff * std::pow(v, a) * std::sqrt(dt) * rng.normal();
    if (vn > 0.0) return vn;
    double half = sorensen_step(sp, rng, v, 0.5 * dt, depth + 1);
    return sorensen_step(sp, rng, half, 0.5 * dt, depth + 1);
}

} // namespace

std::vector<double> simulate_sorensen(const SorensenParams& sp, double v0, const SimConfig& cfg) {
    if (!(v0 > 0.0)) throw domain_error("simulate_sorensen: v0 must be > 0");
    const int n_steps = cfg.total_steps();
    const double dt = cfg.horizon.t / n_steps;

    std::vector<double> out(cfg.n_paths);
    parallel_paths(cfg.n_paths, [&](std::size_t i) {
        SplitRng rng(cfg.seed, i);
        double v = v0;
        for (int s = 0; s < n_steps; ++s) v = sorensen_step(sp, rng, v, dt, 0);
        out[i] = v;
    });
    return out;
}

std::vector<double> sorensen_long_run(const SorensenParams& sp, double v0, double dt,
                                      std::size_t n_samples, std::size_t thin_steps,
                                      std::size_t burn_in_steps, std::uint64_t seed) {
    if (!(v0 > 0.0 && dt > 0.0)) throw domain_error("sorensen_long_run: v0 and dt must be > 0");
    if (thin_steps < 1) throw domain_error("sorensen_long_run: thin_steps must be >= 1");
    SplitRng rng(seed, 0);
    double v = v0;
    for (std::size_t s = 0; s < burn_in_steps; ++s) v = sorensen_step(sp, rng, v, dt, 0);
    std::vector<double> out(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        for (std::size_t s = 0; s < thin_steps; ++s) v = sorensen_step(sp, rng, v, dt, 0);
        out[k] = v;
    }
    return out;
}

std::vector<double> simulate_heston_daily_series(const HestonParams& p, std::size_t n_days,
                                                 int steps_per_day, std::uint64_t seed) {
    if (steps_per_day < 1) throw domain_error("simulate_heston_daily_series: steps_per_day >= 1");
    const double dt = 1.0 / (kTradingDaysPerYear * steps_per_day);
    const double sqdt = std::sqrt(dt);
    const double rho_c = std::sqrt(1.0 - p.rho * p.rho);

    SplitRng rng(seed, 0);
    double v = rng.gamma(cir_stationary_shape(p), cir_stationary_scale(p));
    std::vector<double> returns(n_days);
    for (std::size_t d = 0; d < n_days; ++d) {
        double x = 0.0;
        for (int s = 0; s < steps_per_day; ++s) {
            double vp = v > 0.0 ? v : 0.0;
            double sv = std::sqrt(vp);
            double dw = sqdt * rng.normal();
            double db = sqdt * rng.normal();
            x += (p.r - 0.5 * vp) * dt + sv * (p.rho * dw + rho_c * db);
            v += p.kappa * (p.theta - vp) * dt + p.sigma * sv * dw;
        }
        returns[d] = x;
    }
    return returns;
}

MomentSet mc_moments(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw domain_error("mc_moments: need at least 2 values");

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    double nn = static_cast<double>(n);
    double var = m2 / (nn - 1.0);
    m2 /= nn; m3 /= nn; m4 /= nn;

    MomentSet m;
    m.mean = mean;
    m.variance = var;
    if (!(m2 > 0.0)) {
        m.degenerate = true;
        m.mean_se = 0.0;
        m.variance_se = 0.0;
        return m;
    }
    m.skewness = m3 / std::pow(m2, 1.5);
    m.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    m.mean_se = std::sqrt(var / nn);

    // batch standard errors over 100 contiguous batches
    const std::size_t n_batches = std::min<std::size_t>(100, n / 2);
    const std::size_t bsz = n / n_batches;
    std::vector<double> bvar, bskew, bkurt;
    for (std::size_t b = 0; b < n_batches; ++b) {
        auto lo = values.begin() + static_cast<std::ptrdiff_t>(b * bsz);
        std::size_t len = (b == n_batches - 1) ? n - b * bsz : bsz;
        double bm = 0.0;
        for (std::size_t i = 0; i < len; ++i) bm += lo[static_cast<std::ptrdiff_t>(i)];
        bm /= static_cast<double>(len);
        double b2 = 0.0, b3 = 0.0, b4 = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            double d = lo[static_cast<std::ptrdiff_t>(i)] - bm;
            b2 += d * d; b3 += d * d * d; b4 += d * d * d * d;
        }
        double ln = static_cast<double>(len);
        double bv = b2 / (ln - 1.0);
        b2 /= ln; b3 /= ln; b4 /= ln;
        bvar.push_back(bv);
        if (b2 > 0.0) {
            bskew.push_back(b3 / std::pow(b2, 1.5));
            bkurt.push_back(b4 / (b2 * b2) - 3.0);
        }
    }
    auto se_of = [](const std::vector<double>& xs) -> std::optional<double> {
        if (xs.size() < 2) return std::nullopt;
        double m0 = 0.0;
        for (double v : xs) m0 += v;
        m0 /= static_cast<double>(xs.size());
        double s = 0.0;
        for (double v : xs) s += (v - m0) * (v - m0);
        s /= static_cast<double>(xs.size() - 1);
        return std::sqrt(s / static_cast<double>(xs.size()));
    };
    m.variance_se = se_of(bvar);
    m.skewness_se = se_of(bskew);
    m.kurtosis_se = se_of(bkurt);
    return m;
}

EstimateWithSe emiv_mc(const PathBundle& b, double rho) {
    const std::size_t n = b.int_v.size();
    if (n < 2 || b.int_sqrtv_dw.size() != n)
        throw domain_error("emiv_mc: bundle must carry both integrals");
    if (rho == 0.0) return {0.0, 0.0};
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += b.int_v[i] * b.int_sqrtv_dw[i];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = b.int_v[i] * b.int_sqrtv_dw[i] - mean;
        var += d * d;
    }
    var /= static_cast<double>(n - 1);
    double se = std::fabs(rho) * std::sqrt(var / static_cast<double>(n));
    return {-rho * mean, se};
}

EstimateWithSe conditional_variance(const HestonParams& p, double v0, Horizon t,
                                    const SimConfig& cfg) {
    SimConfig c = cfg;
    c.horizon = t;
    PathBundle b = simulate_heston(p, V0Spec::fixed(v0), c);
    MomentSet m = mc_moments(b.x);
    return {m.variance, m.variance_se.value_or(0.0)};
}

} // namespace svol
