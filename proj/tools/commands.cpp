#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "svol/data_io.hpp"
#include "svol/density.hpp"
#include "svol/errors.hpp"
#include "svol/estimators.hpp"
#include "svol/fit.hpp"
#include "svol/heston.hpp"
#include "svol/ks.hpp"
#include "svol/simulate.hpp"

namespace svoltool {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt17(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// ---- shared flag bundles ----------------------------------------------------

struct ModelOpts {
    double r = 0.0;
    double kappa = 2.0;
    double theta = 0.04;
    double sigma = 0.3;
    double rho = -0.7;
    bool allow_feller = false;

    svol::HestonParams params() const {
        return svol::HestonParams(r, kappa, theta, sigma, rho, allow_feller);
    }
    svol::HestonParams params_with_rho(double rho2) const {
        return svol::HestonParams(r, kappa, theta, sigma, rho2, allow_feller);
    }
};

void add_model_opts(CLI::App* c, ModelOpts& m) {
    c->add_option("--r", m.r, "annualized rate of return")->capture_default_str();
    c->add_option("--kappa", m.kappa, "mean-reversion speed")->capture_default_str();
    c->add_option("--theta", m.theta, "long-run variance")->capture_default_str();
    c->add_option("--sigma", m.sigma, "vol-of-vol")->capture_default_str();
    c->add_option("--rho", m.rho, "leverage correlation")->capture_default_str();
    c->add_flag("--allow-feller-violation", m.allow_feller,
                "accept parameters violating 2*kappa*theta > sigma^2");
}

struct HorizonOpts {
    double t_years = 0.0;
    double t_days = 0.0;

    svol::Horizon resolve(double default_days) const {
        if (t_years > 0.0 && t_days > 0.0)
            throw svol::domain_error("give either --t or --t-days, not both");
        if (t_years > 0.0) return svol::Horizon(t_years);
        if (t_days > 0.0) return svol::Horizon::days(t_days);
        return svol::Horizon::days(default_days);
    }
};

void add_horizon_opts(CLI::App* c, HorizonOpts& h, const std::string& default_desc) {
    c->add_option("--t", h.t_years, "horizon in years (default " + default_desc + ")");
    c->add_option("--t-days", h.t_days, "horizon in trading days (252/year)");
}

struct DataOpts {
    std::string path;
    std::string kind = "returns";
    std::string date_start, date_end;
    int column = -1;

    svol::DatasetSpec spec() const {
        svol::DatasetSpec s;
        s.path = resolve_path(path);
        if (kind == "ff")
            s.kind = svol::DatasetKind::ff_daily_percent;
        else if (kind == "returns")
            s.kind = svol::DatasetKind::returns_csv;
        else if (kind == "prices")
            s.kind = svol::DatasetKind::prices_csv;
        else
            throw svol::domain_error("--kind must be one of ff, returns, prices");
        if (!date_start.empty()) s.date_start = svol::parse_date(date_start);
        if (!date_end.empty()) s.date_end = svol::parse_date(date_end);
        if (column >= 0) s.column = static_cast<std::size_t>(column);
        return s;
    }

    static std::string resolve_path(const std::string& p) {
        if (fs::exists(p)) return p;
        if (const char* root = std::getenv("SVOL_DATA_DIR")) {
            fs::path alt = fs::path(root) / p;
            if (fs::exists(alt)) return alt.string();
        }
        return p; // let the loader produce the located error
    }
};

void add_data_opts(CLI::App* c, DataOpts& d) {
    c->add_option("--data", d.path, "input dataset (absolute, relative, or under SVOL_DATA_DIR)")
        ->required();
    c->add_option("--kind", d.kind, "dataset kind: ff | returns | prices")->capture_default_str();
    c->add_option("--date-start", d.date_start, "inclusive first date, YYYYMMDD or YYYY-MM-DD");
    c->add_option("--date-end", d.date_end, "inclusive last date, YYYYMMDD or YYYY-MM-DD");
    c->add_option("--column", d.column, "0-based value column (ff panels)");
}

svol::ReturnSeries load_single(const DataOpts& d) {
    svol::LoadStats stats;
    auto panel = svol::load_dataset(d.spec(), &stats);
    if (panel.empty()) throw svol::data_error(d.path + ": empty selection");
    if (stats.missing_dropped > 0)
        std::cout << "# dropped " << stats.missing_dropped << " missing-coded rows\n";
    if (panel.size() > 1 && d.column < 0)
        throw svol::domain_error(d.path + ": multi-series panel; pick one with --column");
    return panel.front();
}

// ---- provenance -------------------------------------------------------------

// Print the effective settings of a command and mirror them into a .meta.json
// sidecar next to the main output.  No timestamps: outputs must be byte-stable.
void emit_provenance(const std::string& command, const json& options,
                     const std::string& out_path) {
    json meta;
    meta["schema_version"] = 1;
    meta["command"] = command;
    meta["options"] = options;
    meta["defaults"] = {{"trading_days_per_year", 252},
                        {"reference_horizon_days", 1},
                        {"density_grid_width_sd", 12.0},
                        {"bootstrap_block_days", 25}};
    std::cout << "# command = " << command << "\n";
    for (auto it = options.begin(); it != options.end(); ++it)
        std::cout << "# " << it.key() << " = " << it.value().dump() << "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path + ".meta.json");
        if (!f) throw svol::data_error("cannot write " + out_path + ".meta.json");
        f << meta.dump(2) << "\n";
    }
}

void write_kv_csv(const std::string& path,
                  const std::vector<std::pair<std::string, double>>& rows) {
    std::ofstream f(path);
    if (!f) throw svol::data_error("cannot write " + path);
    f << "quantity,value\n";
    for (const auto& [k, v] : rows) f << k << "," << fmt17(v) << "\n";
}

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? static_cast<char>(std::tolower(c)) : '_');
    return out;
}

// ---- moments ----------------------------------------------------------------

struct MomentsCmd {
    ModelOpts model;
    HorizonOpts horizon;
    std::string out;
    std::uint64_t seed = 1;

    void run() const {
        svol::HestonParams p = model.params();
        svol::Horizon t = horizon.resolve(252.0);
        auto d = svol::marginal_variance(p, t);
        std::vector<std::pair<std::string, double>> rows = {
            {"t_years", t.t},
            {"mean", svol::marginal_mean(p, t)},
            {"variance", d.total},
            {"eiv", d.eiv},
            {"viv", d.viv},
            {"emiv", d.emiv},
            {"riv", (d.viv + d.emiv) / d.total},
            {"skewness", svol::skewness(p, t)},
            {"excess_kurtosis", svol::kurtosis(p, t) - 3.0},
        };
        emit_provenance("moments",
                        {{"r", model.r}, {"kappa", model.kappa}, {"theta", model.theta},
                         {"sigma", model.sigma}, {"rho", model.rho}, {"t_years", t.t},
                         {"seed", seed}},
                        out);
        for (const auto& [k, v] : rows) std::cout << k << " = " << fmt17(v) << "\n";
        if (!out.empty()) write_kv_csv(out, rows);
    }
};

// ---- density-compare --------------------------------------------------------

struct DensityCompareCmd {
    ModelOpts model;
    HorizonOpts horizon;
    std::vector<double> rho_list{0.0, -1.0};
    std::size_t grid_points = 1601;
    double width_sd = 12.0;
    std::string out;
    std::uint64_t seed = 1;

    void run() const {
        svol::Horizon t = horizon.resolve(5.0);
        if (rho_list.empty()) throw svol::domain_error("--rho-list must not be empty");
        // one shared grid wide enough for the most dispersed rho
        double best_sd = -1.0;
        std::vector<double> grid;
        for (double r : rho_list) {
            svol::HestonParams p = model.params_with_rho(r);
            double sd = std::sqrt(svol::marginal_variance(p, t).total);
            if (sd > best_sd) {
                best_sd = sd;
                grid = svol::density_grid(p, t, width_sd, grid_points);
            }
        }
        std::vector<std::pair<std::string, std::vector<double>>> cols;
        for (double r : rho_list) {
            svol::DensityCurve c =
                svol::marginal_density(model.params_with_rho(r), t, grid);
            std::ostringstream name;
            name << "rho_" << r;
            cols.emplace_back(name.str(), std::move(c.values));
        }
        emit_provenance("density-compare",
                        {{"r", model.r}, {"kappa", model.kappa}, {"theta", model.theta},
                         {"sigma", model.sigma}, {"rho_list", rho_list}, {"t_years", t.t},
                         {"grid_points", grid_points}, {"width_sd", width_sd}, {"seed", seed}},
                        out);
        if (cols.size() >= 2) {
            double peak = 0.0, gap = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                peak = std::max({peak, cols[0].second[i], cols[1].second[i]});
                gap = std::max(gap, std::fabs(cols[0].second[i] - cols[1].second[i]));
            }
            std::cout << "sup_diff_over_peak = " << fmt17(gap / peak) << "\n";
        }
        if (!out.empty()) svol::write_density_table(grid, cols, out);
    }
};

// ---- simulate ---------------------------------------------------------------

struct SimulateCmd {
    ModelOpts model;
    HorizonOpts horizon;
    std::size_t n_paths = 100000;
    int steps_per_year = 2016;
    double v0 = -1.0; // <0 means stationary start
    std::string out;
    std::string dump_x;
    std::uint64_t seed = 1;

    void run() const {
        svol::HestonParams p = model.params();
        svol::SimConfig cfg;
        cfg.n_paths = n_paths;
        cfg.steps_per_year = steps_per_year;
        cfg.horizon = horizon.resolve(252.0);
        cfg.seed = seed;
        svol::V0Spec start =
            v0 < 0.0 ? svol::V0Spec::from_stationary() : svol::V0Spec::fixed(v0);
        svol::PathBundle b = svol::simulate_heston(p, start, cfg);
        svol::MomentSet m = svol::mc_moments(b.x);
        svol::EstimateWithSe e = svol::emiv_mc(b, p.rho);

        emit_provenance("simulate",
                        {{"r", model.r}, {"kappa", model.kappa}, {"theta", model.theta},
                         {"sigma", model.sigma}, {"rho", model.rho}, {"t_years", cfg.horizon.t},
                         {"paths", n_paths}, {"steps_per_year", steps_per_year},
                         {"v0", v0 < 0.0 ? json("stationary") : json(v0)}, {"seed", seed}},
                        out);
        std::vector<std::pair<std::string, double>> rows = {
            {"mean", m.mean},          {"mean_se", *m.mean_se},
            {"variance", m.variance},  {"variance_se", *m.variance_se},
            {"skewness", m.skewness},  {"skewness_se", *m.skewness_se},
            {"excess_kurtosis", m.excess_kurtosis}, {"kurtosis_se", *m.kurtosis_se},
            {"emiv", e.value},         {"emiv_se", e.se},
        };
        for (const auto& [k, v] : rows) std::cout << k << " = " << fmt17(v) << "\n";
        if (!out.empty()) write_kv_csv(out, rows);
        if (!dump_x.empty()) {
            // raw little-endian float64 array of terminal log-returns
            std::ofstream f(dump_x, std::ios::binary);
            if (!f) throw svol::data_error("cannot write " + dump_x);
            f.write(reinterpret_cast<const char*>(b.x.data()),
                    static_cast<std::streamsize>(b.x.size() * sizeof(double)));
        }
    }
};

// ---- interaction ------------------------------------------------------------

svol::Windowing parse_mode(const std::string& mode) {
    if (mode == "overlap") return svol::Windowing::overlap;
    if (mode == "nonoverlap") return svol::Windowing::nonoverlap;
    throw svol::domain_error("--mode must be overlap or nonoverlap");
}

struct InteractionCmd {
    DataOpts data;
    std::vector<int> horizons{1, 5, 25, 125};
    int ref = 1;
    std::string mode = "overlap";
    std::size_t block = 25;
    std::size_t resamples = 1000;
    std::string format = "csv";
    std::string out;
    std::string figure_out;
    std::uint64_t seed = 1;

    void run() const {
        svol::ReturnSeries s = load_single(data);
        svol::BootstrapConfig boot{block, resamples, seed};
        svol::VarianceDynamics d =
            svol::variance_dynamics(s, horizons, ref, parse_mode(mode), boot);
        emit_provenance("interaction",
                        {{"data", data.path}, {"kind", data.kind}, {"horizons", horizons},
                         {"ref", ref}, {"mode", mode}, {"block", block},
                         {"resamples", resamples}, {"seed", seed}},
                        out);
        for (std::size_t i = 0; i < d.horizons.size(); ++i)
            std::cout << "h=" << d.horizons[i] << " var=" << fmt17(d.var_hat[i])
                      << " riv=" << fmt17(d.riv[i]) << " riv_ci=[" << fmt17(d.riv_ci_lo[i])
                      << "," << fmt17(d.riv_ci_hi[i]) << "]\n";
        if (!out.empty()) {
            svol::ReportFormat fmt =
                format == "json" ? svol::ReportFormat::json : svol::ReportFormat::csv;
            svol::write_variance_dynamics(d, fmt, out, s.label);
            std::string fig = figure_out.empty() ? out + ".figure.csv" : figure_out;
            svol::write_interaction_figure_data(d, fig);
        }
    }
};

// ---- size-report ------------------------------------------------------------

struct SizeReportCmd {
    DataOpts data;
    std::size_t block = 25;
    std::size_t resamples = 1000;
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = 1;

    void run() const {
        svol::LoadStats stats;
        auto panel = svol::load_dataset(data.spec(), &stats);
        svol::BootstrapConfig boot{block, resamples, seed};
        auto rows = svol::size_report(panel, boot);
        emit_provenance("size-report",
                        {{"data", data.path}, {"kind", data.kind}, {"block", block},
                         {"resamples", resamples}, {"seed", seed}},
                        out);
        for (const auto& r : rows)
            std::cout << r.label << ": eiv25_ann=" << fmt17(r.eiv25_annualized)
                      << " riv25=" << fmt17(r.riv25) << " var1_ann=" << fmt17(r.var1_annualized)
                      << " skew_h=" << fmt17(r.skewness_h)
                      << " exkurt_cs=" << fmt17(r.excess_kurtosis_cs) << "\n";
        if (!out.empty()) {
            svol::ReportFormat fmt =
                format == "json" ? svol::ReportFormat::json : svol::ReportFormat::csv;
            svol::write_size_report(rows, fmt, out);
        }
    }
};

// ---- srtr -------------------------------------------------------------------

struct SrtrCmd {
    ModelOpts model;
    HorizonOpts horizon;
    std::vector<double> v0_grid;
    std::size_t n_paths = 100000;
    int steps_per_year = 2016;
    std::string out;
    std::uint64_t seed = 1;

    void run() const {
        svol::HestonParams p = model.params();
        svol::Horizon t = horizon.resolve(42.0); // two months
        std::vector<double> grid = v0_grid;
        if (grid.empty())
            for (double f : {0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0})
                grid.push_back(f * p.theta);
        svol::SimConfig cfg;
        cfg.n_paths = n_paths;
        cfg.steps_per_year = steps_per_year;
        cfg.horizon = t;
        cfg.seed = seed;

        // stationary Gamma(shape, scale) weight of each grid point, normalized
        double shape = svol::cir_stationary_shape(p), scale = svol::cir_stationary_scale(p);
        std::vector<double> w(grid.size());
        double wsum = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double v = grid[i];
            if (!(v > 0.0)) throw svol::domain_error("srtr: v0 grid points must be > 0");
            w[i] = std::exp((shape - 1.0) * std::log(v) - v / scale);
            wsum += w[i];
        }
        for (double& x : w) x /= wsum;

        emit_provenance("srtr",
                        {{"r", model.r}, {"kappa", model.kappa}, {"theta", model.theta},
                         {"sigma", model.sigma}, {"rho", model.rho}, {"t_years", t.t},
                         {"v0_grid", grid}, {"paths", n_paths},
                         {"steps_per_year", steps_per_year}, {"seed", seed}},
                        out);
        std::ofstream f;
        if (!out.empty()) {
            f.open(out);
            if (!f) throw svol::data_error("cannot write " + out);
            f << "v0,srtr,mc_var,mc_se,stationary_weight\n";
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            auto cv = svol::conditional_variance(p, grid[i], t, cfg);
            double srtr = svol::srtr_prediction(grid[i], t);
            std::cout << "v0=" << fmt17(grid[i]) << " srtr=" << fmt17(srtr)
                      << " mc=" << fmt17(cv.value) << " se=" << fmt17(cv.se) << "\n";
            if (f.is_open())
                f << fmt17(grid[i]) << "," << fmt17(srtr) << "," << fmt17(cv.value) << ","
                  << fmt17(cv.se) << "," << fmt17(w[i]) << "\n";
        }
    }
};

// ---- fit-gh -----------------------------------------------------------------

struct FitGhCmd {
    DataOpts data;
    int horizon_days = 1;
    std::string mode = "nonoverlap";
    std::string out;
    std::uint64_t seed = 1;

    void run() const {
        svol::ReturnSeries s = load_single(data);
        std::vector<double> xs = horizon_days == 1
                                     ? s.returns
                                     : svol::aggregate_returns(s, horizon_days, parse_mode(mode));
        svol::GhFit fit = svol::fit_gh_mle(xs);
        emit_provenance("fit-gh",
                        {{"data", data.path}, {"kind", data.kind},
                         {"horizon_days", horizon_days}, {"mode", mode}, {"seed", seed}},
                        out);
        std::cout << "lambda = " << fmt17(fit.params.lambda) << "\n"
                  << "alpha = " << fmt17(fit.params.alpha) << "\n"
                  << "beta = " << fmt17(fit.params.beta) << "\n"
                  << "delta = " << fmt17(fit.params.delta) << "\n"
                  << "mu = " << fmt17(fit.params.mu) << "\n"
                  << "log_likelihood = " << fmt17(fit.log_likelihood) << "\n"
                  << "converged = " << (fit.converged ? "yes" : "no") << "\n";
        if (!out.empty()) svol::write_gh_params(fit.params, fit.log_likelihood, out);
    }
};

// ---- ks-test ----------------------------------------------------------------

struct KsTestCmd {
    DataOpts data;
    std::string params_path;
    std::size_t stride = 21;
    int horizon_days = 1;
    std::string mode = "nonoverlap";
    std::string out;
    std::uint64_t seed = 1;

    void run() const {
        svol::ReturnSeries s = load_single(data);
        std::vector<double> xs = horizon_days == 1
                                     ? s.returns
                                     : svol::aggregate_returns(s, horizon_days, parse_mode(mode));
        svol::GHParams h = svol::load_gh_params(DataOpts::resolve_path(params_path));
        svol::GhCdf cdf(h);
        svol::KSResult r = svol::ks_test(xs, [&cdf](double x) { return cdf(x); }, stride);
        emit_provenance("ks-test",
                        {{"data", data.path}, {"kind", data.kind}, {"params", params_path},
                         {"stride", stride}, {"horizon_days", horizon_days}, {"seed", seed}},
                        out);
        std::cout << "statistic = " << fmt17(r.statistic) << "\n"
                  << "p_value = " << fmt17(r.p_value) << "\n"
                  << "n_effective = " << r.n_effective << "\n";
        if (!out.empty()) {
            json j = {{"schema_version", 1},
                      {"statistic", r.statistic},
                      {"p_value", r.p_value},
                      {"n_effective", r.n_effective}};
            std::ofstream f(out);
            if (!f) throw svol::data_error("cannot write " + out);
            f << j.dump(2) << "\n";
        }
    }
};

// ---- reproduce --------------------------------------------------------------

struct ReproduceCmd {
    std::string recipe;
    std::string out_dir = "artifacts";
    std::uint64_t seed = 1;

    std::string need_data(const std::string& file, const std::string& what) const {
        std::string p = DataOpts::resolve_path(file);
        if (!fs::exists(p)) {
            const char* root = std::getenv("SVOL_DATA_DIR");
            throw svol::data_error("recipe '" + recipe + "' needs " + what + " at " +
                                   (root ? (fs::path(root) / file).string() : file) +
                                   "; place the file there or set SVOL_DATA_DIR");
        }
        return p;
    }

    void run() const {
        fs::create_directories(out_dir);
        if (recipe == "fig1")
            fig1();
        else if (recipe == "fig2")
            fig2();
        else if (recipe == "fig3")
            fig3();
        else if (recipe == "fig4-6")
            fig46();
        else if (recipe == "table1" || recipe == "table2")
            tables();
        else
            throw svol::domain_error("unknown recipe '" + recipe +
                                     "' (fig1, fig2, fig3, fig4-6, table1, table2)");
    }

    void fig1() const {
        // strong vs negligible leverage impact on the 5-day marginal density
        for (auto [tag, kappa, sigma] :
             {std::tuple<const char*, double, double>{"strong", 16.0, 0.8},
              std::tuple<const char*, double, double>{"weak", 1.0, 0.02}}) {
            DensityCompareCmd c;
            c.model.kappa = kappa;
            c.model.sigma = sigma;
            c.model.theta = 0.04;
            c.model.allow_feller = true;
            c.rho_list = {0.0, -1.0};
            c.horizon.t_days = 5.0;
            c.seed = seed;
            c.out = (fs::path(out_dir) / ("fig1_" + std::string(tag) + ".csv")).string();
            c.run();
        }
    }

    void fig2() const {
        struct Case {
            const char* tag;
            double kappa, sigma, rho;
        };
        for (const Case& k : {Case{"strong_reversion", 16.0, 0.8, -0.7},
                              Case{"weak_reversion_strong_leverage", 1.0, 0.25, -1.0},
                              Case{"baseline", 2.0, 0.3, -0.7}}) {
            SrtrCmd c;
            c.model.kappa = k.kappa;
            c.model.sigma = k.sigma;
            c.model.rho = k.rho;
            c.model.theta = 0.04;
            c.model.allow_feller = true;
            c.horizon.t_days = 42.0;
            c.seed = seed;
            c.out = (fs::path(out_dir) / ("fig2_" + std::string(k.tag) + ".csv")).string();
            c.run();
        }
    }

    void fig3() const {
        std::string path = need_data("ff_size_daily.csv",
                                     "Fama-French daily size portfolios (percent returns)");
        svol::DatasetSpec spec;
        spec.path = path;
        spec.kind = svol::DatasetKind::ff_daily_percent;
        auto panel = svol::load_dataset(spec);
        for (const auto& s : panel) {
            svol::BootstrapConfig boot{25, 1000, seed};
            svol::VarianceDynamics d =
                svol::variance_dynamics(s, {1, 5, 25, 125}, 1, svol::Windowing::overlap, boot);
            std::string stem =
                (fs::path(out_dir) / ("fig3_" + sanitize(s.label))).string();
            svol::write_variance_dynamics(d, svol::ReportFormat::csv, stem + ".csv", s.label);
            svol::write_interaction_figure_data(d, stem + ".figure.csv");
        }
    }

    void fig46() const {
        std::string path = need_data("sp500.csv", "S&P 500 daily price levels");
        DataOpts d;
        d.path = path;
        d.kind = "prices";
        {
            InteractionCmd c;
            c.data = d;
            c.seed = seed;
            c.out = (fs::path(out_dir) / "fig4_sp500_interaction.csv").string();
            c.run();
        }
        std::string params = (fs::path(out_dir) / "fig5_sp500_gh_params.json").string();
        {
            FitGhCmd c;
            c.data = d;
            c.seed = seed;
            c.out = params;
            c.run();
        }
        {
            // fitted GH density on an empirical-range grid, for plotting
            svol::GHParams h = svol::load_gh_params(params);
            svol::ReturnSeries s = load_single(d);
            double lo = svol::empirical_quantile(s.returns, 0.001);
            double hi = svol::empirical_quantile(s.returns, 0.999);
            double pad = 0.5 * (hi - lo);
            std::vector<double> grid(1201), pdf(1201);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                grid[i] = (lo - pad) +
                          static_cast<double>(i) * ((hi - lo) + 2.0 * pad) / 1200.0;
                pdf[i] = svol::gh_pdf(h, grid[i]);
            }
            svol::write_density_table(grid, {{"gh_fit", pdf}},
                                      (fs::path(out_dir) / "fig5_sp500_density.csv").string());
        }
        {
            KsTestCmd c;
            c.data = d;
            c.params_path = params;
            c.stride = 21;
            c.seed = seed;
            c.out = (fs::path(out_dir) / "fig6_sp500_ks.json").string();
            c.run();
        }
    }

    void tables() const {
        std::string path = need_data("ff_size_daily.csv",
                                     "Fama-French daily size portfolios (percent returns)");
        svol::DatasetSpec spec;
        spec.path = path;
        spec.kind = svol::DatasetKind::ff_daily_percent;
        auto panel = svol::load_dataset(spec);
        auto rows = svol::size_report(panel, svol::BootstrapConfig{25, 1000, seed});
        std::string out = (fs::path(out_dir) / (recipe + ".csv")).string();
        std::ofstream f(out);
        if (!f) throw svol::data_error("cannot write " + out);
        if (recipe == "table1") {
            f << "portfolio,eiv25_annualized,riv25\n";
            for (const auto& r : rows)
                f << r.label << "," << fmt17(r.eiv25_annualized) << "," << fmt17(r.riv25)
                  << "\n";
        } else {
            f << "portfolio,var1_annualized,skewness_h,excess_kurtosis_cs\n";
            for (const auto& r : rows)
                f << r.label << "," << fmt17(r.var1_annualized) << "," << fmt17(r.skewness_h)
                  << "," << fmt17(r.excess_kurtosis_cs) << "\n";
        }
        std::cout << "wrote " << out << "\n";
    }
};

std::string trimmed(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    std::string t = s.substr(a, b - a + 1);
    if (t.size() >= 2 && ((t.front() == '"' && t.back() == '"') ||
                          (t.front() == '\'' && t.back() == '\'')))
        t = t.substr(1, t.size() - 2);
    return t;
}

// Replace "--config FILE" (or --config=FILE) with the file's key=value pairs,
// rendered as --key=value flags.  Keys also given on the command line keep
// their command-line value.
void expand_config_args(std::vector<std::string>& args) {
    std::string file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw svol::domain_error("--config requires a file argument");
            file = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                       args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            file = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (file.empty()) return;
    std::ifstream f(file);
    if (!f) throw svol::domain_error("cannot read config file " + file);
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        std::string s = trimmed(line);
        if (s.empty() || s[0] == '#' || s[0] == ';' || s[0] == '[') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw svol::domain_error("config file " + file + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        std::string key = trimmed(s.substr(0, eq));
        std::string value = trimmed(s.substr(eq + 1));
        if (key.empty())
            throw svol::domain_error("config file " + file + ":" + std::to_string(lineno) +
                                     ": empty key");
        std::string flag = "--" + key;
        bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (!given) {
            if (value == "true" || value.empty()) args.push_back(flag);
            else args.push_back(flag + "=" + value);
        }
    }
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"svolkit: stochastic-volatility return-distribution toolkit"};
    app.require_subcommand(1);

    MomentsCmd moments;
    {
        auto* c = app.add_subcommand("moments", "closed-form Heston moments at a horizon");
        add_model_opts(c, moments.model);
        add_horizon_opts(c, moments.horizon, "1 year");
        c->add_option("--out", moments.out, "CSV output path");
        c->add_option("--seed", moments.seed, "unused; accepted for interface uniformity");
        c->callback([&moments] { moments.run(); });
    }

    DensityCompareCmd dc;
    {
        auto* c = app.add_subcommand("density-compare",
                                     "marginal densities across leverage values on one grid");
        add_model_opts(c, dc.model);
        add_horizon_opts(c, dc.horizon, "5 days");
        c->add_option("--rho-list", dc.rho_list, "comma-separated rho values")
            ->delimiter(',')
            ->capture_default_str();
        c->add_option("--grid", dc.grid_points, "number of grid points")->capture_default_str();
        c->add_option("--width-sd", dc.width_sd, "half-width in standard deviations")
            ->capture_default_str();
        c->add_option("--out", dc.out, "CSV output path");
        c->add_option("--seed", dc.seed, "unused; accepted for interface uniformity");
        c->callback([&dc] { dc.run(); });
    }

    SimulateCmd sim;
    {
        auto* c = app.add_subcommand("simulate", "Monte Carlo moments of the Heston log-return");
        add_model_opts(c, sim.model);
        add_horizon_opts(c, sim.horizon, "1 year");
        c->add_option("--paths", sim.n_paths, "number of paths")->capture_default_str();
        c->add_option("--steps-per-year", sim.steps_per_year, "Euler steps per year")
            ->capture_default_str();
        c->add_option("--v0", sim.v0, "fixed initial variance (default: stationary draw)");
        c->add_option("--out", sim.out, "CSV output path");
        c->add_option("--dump-x", sim.dump_x, "raw float64 dump of terminal log-returns");
        c->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
        c->callback([&sim] { sim.run(); });
    }

    InteractionCmd inter;
    {
        auto* c = app.add_subcommand("interaction",
                                     "variance dynamics vs the scaled-EIV baseline");
        add_data_opts(c, inter.data);
        c->add_option("--horizons", inter.horizons, "day-count horizons")
            ->delimiter(',')
            ->capture_default_str();
        c->add_option("--ref", inter.ref, "reference horizon in days")->capture_default_str();
        c->add_option("--mode", inter.mode, "overlap | nonoverlap")->capture_default_str();
        c->add_option("--block", inter.block, "bootstrap block length in days")
            ->capture_default_str();
        c->add_option("--resamples", inter.resamples, "bootstrap resamples")
            ->capture_default_str();
        c->add_option("--format", inter.format, "csv | json")->capture_default_str();
        c->add_option("--out", inter.out, "report output path");
        c->add_option("--figure-out", inter.figure_out, "figure-data CSV path");
        c->add_option("--seed", inter.seed, "bootstrap seed")->capture_default_str();
        c->callback([&inter] { inter.run(); });
    }

    SizeReportCmd sz;
    {
        auto* c = app.add_subcommand("size-report", "per-portfolio interaction summary table");
        add_data_opts(c, sz.data);
        c->add_option("--block", sz.block, "bootstrap block length in days")
            ->capture_default_str();
        c->add_option("--resamples", sz.resamples, "bootstrap resamples")->capture_default_str();
        c->add_option("--format", sz.format, "csv | json")->capture_default_str();
        c->add_option("--out", sz.out, "report output path");
        c->add_option("--seed", sz.seed, "bootstrap seed")->capture_default_str();
        c->callback([&sz] { sz.run(); });
    }

    SrtrCmd srtr;
    {
        auto* c = app.add_subcommand("srtr",
                                     "square-root-of-time rule vs simulated conditional variance");
        add_model_opts(c, srtr.model);
        add_horizon_opts(c, srtr.horizon, "42 days");
        c->add_option("--v0-grid", srtr.v0_grid,
                      "initial variances (default: theta * {0.25 .. 4})")
            ->delimiter(',');
        c->add_option("--paths", srtr.n_paths, "paths per grid point")->capture_default_str();
        c->add_option("--steps-per-year", srtr.steps_per_year, "Euler steps per year")
            ->capture_default_str();
        c->add_option("--out", srtr.out, "CSV output path");
        c->add_option("--seed", srtr.seed, "RNG seed")->capture_default_str();
        c->callback([&srtr] { srtr.run(); });
    }

    FitGhCmd fit;
    {
        auto* c = app.add_subcommand("fit-gh", "maximum-likelihood GH fit to return data");
        add_data_opts(c, fit.data);
        c->add_option("--horizon-days", fit.horizon_days, "aggregate to h-day returns first")
            ->capture_default_str();
        c->add_option("--mode", fit.mode, "aggregation windowing: overlap | nonoverlap")
            ->capture_default_str();
        c->add_option("--out", fit.out, "fitted-parameter JSON path");
        c->add_option("--seed", fit.seed, "unused; accepted for interface uniformity");
        c->callback([&fit] { fit.run(); });
    }

    KsTestCmd ks;
    {
        auto* c = app.add_subcommand("ks-test", "KS test of return data against a fitted GH law");
        add_data_opts(c, ks.data);
        c->add_option("--params", ks.params_path, "GH parameter JSON (from fit-gh)")->required();
        c->add_option("--stride", ks.stride, "subsampling stride")->capture_default_str();
        c->add_option("--horizon-days", ks.horizon_days, "aggregate to h-day returns first")
            ->capture_default_str();
        c->add_option("--mode", ks.mode, "aggregation windowing: overlap | nonoverlap")
            ->capture_default_str();
        c->add_option("--out", ks.out, "result JSON path");
        c->add_option("--seed", ks.seed, "unused; accepted for interface uniformity");
        c->callback([&ks] { ks.run(); });
    }

    ReproduceCmd rep;
    {
        auto* c = app.add_subcommand("reproduce", "emit all artifacts for a named figure/table");
        c->add_option("recipe", rep.recipe, "fig1 | fig2 | fig3 | fig4-6 | table1 | table2")
            ->required();
        c->add_option("--out", rep.out_dir, "output directory")->capture_default_str();
        c->add_option("--seed", rep.seed, "RNG seed for simulation-backed recipes")
            ->capture_default_str();
        c->callback([&rep] { rep.run(); });
    }

    // --config FILE after the subcommand: expand key=value lines into flags.
    // Flags given explicitly on the command line win over config values.
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        expand_config_args(args);
        std::reverse(args.begin(), args.end()); // CLI11 consumes back-to-front
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const svol::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const svol::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const svol::numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

} // namespace svoltool
