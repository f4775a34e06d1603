#ifndef SVOL_DATA_IO_HPP
#define SVOL_DATA_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "svol/estimators.hpp"
#include "svol/gh.hpp"

namespace svol {

enum class DatasetKind {
    ff_daily_percent, // Fama-French daily file: date + percent simple returns
    returns_csv,      // date + decimal simple returns
    prices_csv        // date + positive price levels
};

struct DatasetSpec {
    std::string path;
    DatasetKind kind = DatasetKind::returns_csv;
    std::optional<int> date_start; // YYYYMMDD, inclusive
    std::optional<int> date_end;   // YYYYMMDD, inclusive
    std::optional<std::size_t> column; // 0-based value column; default: all (ff) / first (others)

    void validate() const;
};

struct LoadStats {
    std::size_t rows_parsed = 0;
    std::size_t missing_dropped = 0; // -99.99 / -999 codes
};

// Fama-French daily percent file: preamble text, optional header naming the
// portfolios, then rows "YYYYMMDD, r1, r2, ...".  Percent simple returns are
// converted to log-returns via ln(1 + r/100); missing codes are dropped per
// series with a count kept in stats.
std::vector<ReturnSeries> load_ff_daily(const DatasetSpec& spec, LoadStats* stats = nullptr);

// Generic two-column CSV "date,value" with decimal simple returns.
ReturnSeries load_returns_csv(const DatasetSpec& spec, LoadStats* stats = nullptr);

// Price levels; returns_i = ln(S_i / S_{i-1}).
ReturnSeries load_prices(const DatasetSpec& spec, LoadStats* stats = nullptr);

// Dispatch on spec.kind; ff files may hold several series, the others one.
std::vector<ReturnSeries> load_dataset(const DatasetSpec& spec, LoadStats* stats = nullptr);

// ---- reports ----------------------------------------------------------------

enum class ReportFormat { csv, json };

void write_variance_dynamics(const VarianceDynamics& d, ReportFormat fmt, const std::string& path,
                             const std::string& label = "");
VarianceDynamics load_variance_dynamics_json(const std::string& path);

void write_size_report(const std::vector<SizeReportRow>& rows, ReportFormat fmt,
                       const std::string& path);

// Figure-data file: horizon_days, var_annualized, eiv_annualized, ci_lo, ci_hi.
void write_interaction_figure_data(const VarianceDynamics& d, const std::string& path);

// Density curves on a shared grid, one value column per curve.
void write_density_table(const std::vector<double>& grid,
                         const std::vector<std::pair<std::string, std::vector<double>>>& columns,
                         const std::string& path);

void write_gh_params(const GHParams& h, double log_likelihood, const std::string& path);
GHParams load_gh_params(const std::string& path);

// parse YYYYMMDD or ISO-8601 YYYY-MM-DD into YYYYMMDD
int parse_date(const std::string& s);

} // namespace svol

#endif
