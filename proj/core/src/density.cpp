#include "svol/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "svol/errors.hpp"

namespace svol {

namespace {

using cd = std::complex<double>;

constexpr double kPi = std::numbers::pi;

// F_t(p) = a*Gamma*t - b*log(cosh(Omega t/2) + c*sinh(Omega t/2)),
// a = kappa*theta/sigma^2, b = 2a, c = (Omega^2 - Gamma^2 + 2 kappa Gamma)/(2 kappa Omega).
// The expression is even in Omega, so the square-root branch cancels; only the
// complex log must be continued along the p axis.
class CharExpSweep {
public:
    CharExpSweep(const HestonParams& p, double t) : p_(p), t_(t) {
        prev_p_ = 0.0;
        prev_logu_ = cd(p_.kappa * t_ / 2.0, 0.0); // u(0) = e^{kappa t/2}
    }

    // Advance from the previous frequency to p_x (must be >= previous) and
    // return F_t(p_x).  Subdivides until the tracked log moves by < pi/2 per step.
    cd advance(double p_x) {
        step(prev_p_, p_x, 0);
        double a = p_.kappa * p_.theta / (p_.sigma * p_.sigma);
        cd gamma(p_.kappa, p_.rho * p_.sigma * p_x);
        return a * gamma * t_ - 2.0 * a * prev_logu_;
    }

private:
    void step(double from, double to, int depth) {
        if (depth > 48) throw numerical_error("characteristic_exponent: branch tracking failed "
                                              "(log discontinuity persists under step halving)");
        cd logu = principal_logu(to);
        // realign onto the tracked branch
        double k = std::round((prev_logu_.imag() - logu.imag()) / (2.0 * kPi));
        logu += cd(0.0, 2.0 * kPi * k);
        if (std::abs(logu.imag() - prev_logu_.imag()) > kPi / 2.0 && to - from > 1e-12) {
            double mid = 0.5 * (from + to);
            step(from, mid, depth + 1);
            step(mid, to, depth + 1);
            return;
        }
        prev_p_ = to;
        prev_logu_ = logu;
    }

    // log(cosh(Omega t/2) + c sinh(Omega t/2)) with principal-branch log,
    // rescaled to avoid overflow when Re(Omega t/2) is large.
    cd principal_logu(double p_x) const {
        const double sig = p_.sigma, kap = p_.kappa;
        cd gamma(kap, p_.rho * sig * p_x);
        cd omega = std::sqrt(gamma * gamma + sig * sig * cd(p_x * p_x, -p_x));
        if (omega.real() < 0.0) omega = -omega; // evenness: pick Re >= 0
        cd c = (omega * omega - gamma * gamma + 2.0 * kap * gamma) / (2.0 * kap * omega);
        cd h = omega * (t_ / 2.0);
        if (h.real() < 20.0) {
            return std::log(std::cosh(h) + c * std::sinh(h));
        }
        // cosh(h) + c sinh(h) = e^h/2 * (1 + c + (1 - c) e^{-2h})
        return h - std::log(2.0) + std::log(1.0 + c + (1.0 - c) * std::exp(-2.0 * h));
    }

    HestonParams p_;
    double t_;
    double prev_p_;
    cd prev_logu_;
};

std::vector<cd> sweep_batch(const HestonParams& p, double t, const std::vector<double>& ps) {
    CharExpSweep sweep(p, t);
    std::vector<cd> out;
    out.reserve(ps.size());
    for (double px : ps) out.push_back(sweep.advance(px));
    return out;
}

// Truncation frequency: march until the integrand envelope decays below 1e-16.
double truncation_frequency(const HestonParams& p, double t) {
    const double log_cut = std::log(1e-16);
    CharExpSweep sweep(p, t);
    double px = 1.0;
    for (int i = 0; i < 64; ++i) {
        cd f = sweep.advance(px);
        if (f.real() < log_cut) return px;
        px *= 1.5;
    }
    throw numerical_error("marginal_density: characteristic exponent does not decay "
                          "(truncation frequency search exhausted)");
}

} // namespace

std::complex<double> characteristic_exponent(const HestonParams& p, Horizon t, double p_x) {
    if (p_x == 0.0) return {0.0, 0.0};
    if (p_x < 0.0) return std::conj(characteristic_exponent(p, t, -p_x));
    CharExpSweep sweep(p, t.t);
    return sweep.advance(p_x);
}

std::vector<std::complex<double>> characteristic_exponent_batch(const HestonParams& p, Horizon t,
                                                                const std::vector<double>& p_xs) {
    for (std::size_t i = 0; i < p_xs.size(); ++i) {
        if (p_xs[i] < 0.0 || (i > 0 && p_xs[i] < p_xs[i - 1]))
            throw domain_error("characteristic_exponent_batch: frequencies must be sorted and >= 0");
    }
    return sweep_batch(p, t.t, p_xs);
}

std::vector<double> density_grid(const HestonParams& p, Horizon t, double n_sd,
                                 std::size_t n_points) {
    if (n_points < 2) throw domain_error("density_grid: need at least 2 points");
    if (!(n_sd > 0.0)) throw domain_error("density_grid: n_sd must be > 0");
    double mean = marginal_mean(p, t);
    double sd = std::sqrt(marginal_variance(p, t).total);
    std::vector<double> g(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        double u = static_cast<double>(i) / static_cast<double>(n_points - 1);
        g[i] = mean - n_sd * sd + 2.0 * n_sd * sd * u;
    }
    return g;
}

DensityCurve marginal_density(const HestonParams& p, Horizon t, const std::vector<double>& grid) {
    if (grid.size() < 2) throw domain_error("marginal_density: grid needs at least 2 points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw domain_error("marginal_density: grid must be ascending");

    const double rt = p.r * t.t; // F_t is the exponent of X_t - r t
    double xmax = 0.0;
    for (double x : grid) xmax = std::max(xmax, std::abs(x - rt));
    xmax = std::max(xmax, 1e-8);

    const double P = truncation_frequency(p, t.t);

    // Simpson over [0, P] with the node count doubled until the curve converges.
    double n_est = std::ceil(P * xmax / 0.25);
    if (!(n_est < 4.0e6))
        throw numerical_error("marginal_density: quadrature would need over 4e6 nodes "
                              "(horizon/parameter combination out of supported range)");
    std::size_t n = static_cast<std::size_t>(n_est);
    n = std::max<std::size_t>(n, 512);
    if (n % 2 == 1) ++n;

    std::vector<double> prev;
    for (int refine = 0; refine < 10; ++refine, n *= 2) {
        if (n > (std::size_t{1} << 25))
            throw numerical_error("marginal_density: quadrature did not converge within the "
                                  "node budget");
        double h = P / static_cast<double>(n);
        std::vector<double> ps(n + 1);
        for (std::size_t j = 0; j <= n; ++j) ps[j] = h * static_cast<double>(j);
        std::vector<cd> eF(n + 1);
        {
            auto F = sweep_batch(p, t.t, ps);
            for (std::size_t j = 0; j <= n; ++j) eF[j] = std::exp(F[j]);
        }

        std::vector<double> vals(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double x = grid[i] - rt;
            // P_t(x) = (1/pi) Int_0^P Re[e^{ipx} e^{F(p)}] dp, by conjugate symmetry
            double acc = (eF[0] * cd(std::cos(ps[0] * x), std::sin(ps[0] * x))).real()
                       + (eF[n] * cd(std::cos(ps[n] * x), std::sin(ps[n] * x))).real();
            double sum4 = 0.0, sum2 = 0.0;
            for (std::size_t j = 1; j < n; ++j) {
                double re = (eF[j] * cd(std::cos(ps[j] * x), std::sin(ps[j] * x))).real();
                if (j % 2 == 1) sum4 += re; else sum2 += re;
            }
            vals[i] = (acc + 4.0 * sum4 + 2.0 * sum2) * h / 3.0 / kPi;
        }

        if (!prev.empty()) {
            double peak = *std::max_element(vals.begin(), vals.end());
            double diff = 0.0;
            for (std::size_t i = 0; i < vals.size(); ++i)
                diff = std::max(diff, std::abs(vals[i] - prev[i]));
            if (diff < 1e-10 * std::max(peak, 1.0)) {
                for (double& v : vals) {
                    if (v < 0.0) {
                        if (v < -1e-12)
                            throw numerical_error("marginal_density: negative density exceeds "
                                                  "clipping tolerance (quadrature failure)");
                        v = 0.0;
                    }
                }
                return DensityCurve{grid, std::move(vals), t};
            }
        }
        prev = std::move(vals);
    }
    throw numerical_error("marginal_density: quadrature did not converge");
}

double density_integral(const DensityCurve& c) {
    double acc = 0.0;
    for (std::size_t i = 1; i < c.grid.size(); ++i)
        acc += 0.5 * (c.values[i] + c.values[i - 1]) * (c.grid[i] - c.grid[i - 1]);
    return acc;
}

MomentSet density_moments(const DensityCurve& c) {
    auto integ = [&](auto f) {
        double acc = 0.0;
        for (std::size_t i = 1; i < c.grid.size(); ++i) {
            acc += 0.5 * (f(c.grid[i]) * c.values[i] + f(c.grid[i - 1]) * c.values[i - 1])
                 * (c.grid[i] - c.grid[i - 1]);
        }
        return acc;
    };
    double z = integ([](double) { return 1.0; });
    double m1 = integ([](double x) { return x; }) / z;
    double v = integ([&](double x) { return (x - m1) * (x - m1); }) / z;
    double m3 = integ([&](double x) { return std::pow(x - m1, 3); }) / z;
    double m4 = integ([&](double x) { return std::pow(x - m1, 4); }) / z;
    MomentSet m;
    m.mean = m1;
    m.variance = v;
    m.skewness = m3 / std::pow(v, 1.5);
    m.excess_kurtosis = m4 / (v * v) - 3.0;
    return m;
}

} // namespace svol
