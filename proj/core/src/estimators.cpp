#include "svol/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "svol/rng.hpp"

namespace svol {

void ReturnSeries::validate() const {
    if (dates.size() != returns.size())
        throw data_error("ReturnSeries '" + label + "': dates and returns differ in length");
    for (std::size_t i = 1; i < dates.size(); ++i)
        if (dates[i] <= dates[i - 1])
            throw data_error("ReturnSeries '" + label + "': dates not strictly increasing at index " +
                             std::to_string(i));
}

std::vector<double> aggregate_returns(const ReturnSeries& s, int h, Windowing mode) {
    if (h < 1) throw domain_error("aggregate_returns: horizon must be >= 1 day");
    const std::size_t n = s.returns.size();
    if (n < 2 * static_cast<std::size_t>(h))
        throw data_error("aggregate_returns: series shorter than 2 horizons");
    std::vector<double> out;
    if (mode == Windowing::nonoverlap) {
        out.reserve(n / h);
        for (std::size_t i = 0; i + h <= n; i += h) {
            double acc = 0.0;
            for (int j = 0; j < h; ++j) acc += s.returns[i + j];
            out.push_back(acc);
        }
    } else {
        out.reserve(n - h + 1);
        double acc = 0.0;
        for (int j = 0; j < h; ++j) acc += s.returns[j];
        out.push_back(acc);
        for (std::size_t i = 1; i + h <= n; ++i) {
            acc += s.returns[i + h - 1] - s.returns[i - 1];
            out.push_back(acc);
        }
    }
    return out;
}

namespace {

double sample_variance(std::span<const double> v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return acc / static_cast<double>(v.size() - 1);
}

// variance per horizon on a plain return vector (helper shared with bootstrap)
std::vector<double> horizon_variances(const std::vector<double>& daily,
                                      const std::vector<int>& horizons, Windowing mode) {
    ReturnSeries tmp;
    tmp.returns = daily;
    tmp.dates.resize(daily.size());
    for (std::size_t i = 0; i < daily.size(); ++i) tmp.dates[i] = static_cast<int>(i + 1);
    std::vector<double> out;
    out.reserve(horizons.size());
    for (int h : horizons) out.push_back(sample_variance(aggregate_returns(tmp, h, mode)));
    return out;
}

} // namespace

VarianceDynamics variance_dynamics(const ReturnSeries& s, std::vector<int> horizons,
                                   int ref_horizon, Windowing mode, const BootstrapConfig& boot) {
    s.validate();
    std::sort(horizons.begin(), horizons.end());
    if (std::find(horizons.begin(), horizons.end(), ref_horizon) == horizons.end())
        throw domain_error("variance_dynamics: horizons must include the reference horizon");
    int hmax = horizons.back();
    std::size_t n = s.returns.size();
    if (n / static_cast<std::size_t>(hmax) < 30)
        throw data_error("variance_dynamics: fewer than 30 nonoverlapping windows at the "
                         "largest horizon");

    VarianceDynamics d;
    d.horizons = horizons;
    d.ref_horizon = ref_horizon;
    d.n_days = n;
    d.mode = mode;
    d.var_hat = horizon_variances(s.returns, horizons, mode);
    std::size_t ref_idx =
        static_cast<std::size_t>(std::find(horizons.begin(), horizons.end(), ref_horizon) -
                                 horizons.begin());
    double ref_var = d.var_hat[ref_idx];
    for (std::size_t i = 0; i < horizons.size(); ++i) {
        d.eiv_hat.push_back(static_cast<double>(horizons[i]) / ref_horizon * ref_var);
        d.emiv_hat.push_back(d.var_hat[i] - d.eiv_hat[i]);
        d.riv.push_back(d.emiv_hat[i] / d.var_hat[i]);
    }

    // moving-block bootstrap on the daily series
    if (boot.resamples > 0) {
        const std::size_t block = std::min(boot.block_days, n);
        const std::size_t n_blocks = (n + block - 1) / block;
        std::vector<std::vector<double>> var_bs(horizons.size()), riv_bs(horizons.size());
        SplitRng rng(boot.seed, 0);
        std::vector<double> resampled(n);
        for (std::size_t rep = 0; rep < boot.resamples; ++rep) {
            std::size_t pos = 0;
            while (pos < n) {
                std::size_t start = static_cast<std::size_t>(rng.next_double() *
                                                             static_cast<double>(n - block + 1));
                for (std::size_t j = 0; j < block && pos < n; ++j, ++pos)
                    resampled[pos] = s.returns[start + j];
            }
            auto vars = horizon_variances(resampled, horizons, mode);
            double rv = vars[ref_idx];
            for (std::size_t i = 0; i < horizons.size(); ++i) {
                var_bs[i].push_back(vars[i]);
                double eiv = static_cast<double>(horizons[i]) / ref_horizon * rv;
                riv_bs[i].push_back((vars[i] - eiv) / vars[i]);
            }
            (void)n_blocks;
        }
        for (std::size_t i = 0; i < horizons.size(); ++i) {
            d.var_ci_lo.push_back(empirical_quantile(var_bs[i], 0.025));
            d.var_ci_hi.push_back(empirical_quantile(var_bs[i], 0.975));
            d.riv_ci_lo.push_back(empirical_quantile(riv_bs[i], 0.025));
            d.riv_ci_hi.push_back(empirical_quantile(riv_bs[i], 0.975));
        }
    }
    return d;
}

double empirical_quantile(std::span<const double> data, double q) {
    if (!(q > 0.0 && q < 1.0)) throw domain_error("empirical_quantile: q must be in (0, 1)");
    if (data.size() < 2) throw domain_error("empirical_quantile: need at least 2 values");
    std::vector<double> v(data.begin(), data.end());
    std::sort(v.begin(), v.end());
    double pos = q * static_cast<double>(v.size() - 1);
    std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= v.size()) return v.back();
    double w = pos - static_cast<double>(i);
    return v[i] + w * (v[i + 1] - v[i]);
}

double crow_siddiqui_kurtosis(std::span<const double> data) {
    double num = empirical_quantile(data, 0.975) - empirical_quantile(data, 0.025);
    double den = empirical_quantile(data, 0.75) - empirical_quantile(data, 0.25);
    if (!(den > 0.0)) throw domain_error("crow_siddiqui_kurtosis: degenerate interquartile range");
    return num / den - 2.91;
}

double hinkley_skewness(std::span<const double> data, double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw domain_error("hinkley_skewness: alpha in (0, 0.5)");
    double hi = empirical_quantile(data, 1.0 - alpha);
    double lo = empirical_quantile(data, alpha);
    double med = empirical_quantile(data, 0.5);
    if (!(hi > lo)) throw domain_error("hinkley_skewness: degenerate quantile spread");
    return (hi + lo - 2.0 * med) / (hi - lo);
}

QuantileMoments quantile_moments(std::span<const double> data, double alpha) {
    return {hinkley_skewness(data, alpha), crow_siddiqui_kurtosis(data), alpha};
}

std::vector<SizeReportRow> size_report(const std::vector<ReturnSeries>& panel,
                                       const BootstrapConfig& boot) {
    if (panel.empty()) throw data_error("size_report: empty panel");
    std::vector<SizeReportRow> rows;
    for (const auto& s : panel) {
        VarianceDynamics d = variance_dynamics(s, {1, 25}, 1, Windowing::overlap, boot);
        SizeReportRow row;
        row.label = s.label;
        row.eiv25_annualized = annualize(d.eiv_hat[1], 25.0);
        row.riv25 = d.riv[1];
        row.var1_annualized = annualize(d.var_hat[0], 1.0);
        QuantileMoments qm = quantile_moments(s.returns);
        row.skewness_h = qm.skewness_h;
        row.excess_kurtosis_cs = qm.excess_kurtosis_cs;
        rows.push_back(row);
    }
    return rows;
}

} // namespace svol
