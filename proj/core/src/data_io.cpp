#include "svol/data_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace svol {

namespace {

using nlohmann::json;
constexpr int kSchemaVersion = 1;

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& f : out) {
        std::size_t a = f.find_first_not_of(" \t");
        std::size_t b = f.find_last_not_of(" \t");
        f = a == std::string::npos ? "" : f.substr(a, b - a + 1);
    }
    return out;
}

bool is_missing_code(double v) {
    return std::fabs(v + 99.99) < 1e-9 || std::fabs(v + 999.0) < 1e-9;
}

std::optional<int> try_parse_date(const std::string& s) {
    std::string digits;
    if (s.size() == 8) {
        digits = s;
    } else if (s.size() == 10 && s[4] == '-' && s[7] == '-') {
        digits = s.substr(0, 4) + s.substr(5, 2) + s.substr(8, 2);
    } else {
        return std::nullopt;
    }
    int v = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || p != digits.data() + digits.size()) return std::nullopt;
    int y = v / 10000, m = (v / 100) % 100, d = v % 100;
    if (y < 1800 || y > 2200 || m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
    return v;
}

std::optional<double> try_parse_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return std::nullopt;
    return v;
}

bool in_range(const DatasetSpec& spec, int date) {
    if (spec.date_start && date < *spec.date_start) return false;
    if (spec.date_end && date > *spec.date_end) return false;
    return true;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path);
    return in;
}

} // namespace

int parse_date(const std::string& s) {
    auto d = try_parse_date(s);
    if (!d) throw data_error("unparseable date: '" + s + "'");
    return *d;
}

void DatasetSpec::validate() const {
    if (path.empty()) throw data_error("DatasetSpec: empty path");
    if (date_start && date_end && !(*date_start < *date_end))
        throw data_error("DatasetSpec: date range start must precede end");
}

std::vector<ReturnSeries> load_ff_daily(const DatasetSpec& spec, LoadStats* stats) {
    spec.validate();
    auto in = open_or_throw(spec.path);
    LoadStats st;

    std::vector<std::string> labels;
    std::vector<ReturnSeries> series;
    std::string line, prev_nondata;
    std::size_t line_no = 0;
    bool in_data = false;

    while (std::getline(in, line)) {
        ++line_no;
        auto fields = split_csv(line);
        auto date = fields.empty() ? std::nullopt : try_parse_date(fields[0]);
        if (!date) {
            if (in_data) break; // trailing sections (annual tables etc.)
            if (!line.empty()) prev_nondata = line;
            continue;
        }
        if (!in_data) {
            in_data = true;
            std::size_t ncols = fields.size() - 1;
            if (ncols == 0) throw data_error(spec.path + ":" + std::to_string(line_no) +
                                             ": data row has no value columns");
            // header row, if present, is the last non-data line before data
            auto hdr = split_csv(prev_nondata);
            for (std::size_t c = 0; c < ncols; ++c) {
                std::string name = (hdr.size() == ncols + 1 && !hdr[c + 1].empty())
                                       ? hdr[c + 1]
                                       : (hdr.size() == ncols && !hdr[c].empty())
                                             ? hdr[c]
                                             : "series" + std::to_string(c + 1);
                labels.push_back(name);
                series.push_back(ReturnSeries{{}, {}, name});
            }
        }
        if (fields.size() != labels.size() + 1)
            throw data_error(spec.path + ":" + std::to_string(line_no) +
                             ": expected " + std::to_string(labels.size() + 1) + " fields, got " +
                             std::to_string(fields.size()));
        if (!in_range(spec, *date)) continue;
        ++st.rows_parsed;
        for (std::size_t c = 0; c < labels.size(); ++c) {
            auto v = try_parse_double(fields[c + 1]);
            if (!v) throw data_error(spec.path + ":" + std::to_string(line_no) +
                                     ": bad number '" + fields[c + 1] + "'");
            if (is_missing_code(*v)) {
                ++st.missing_dropped;
                continue;
            }
            series[c].dates.push_back(*date);
            series[c].returns.push_back(std::log1p(*v / 100.0));
        }
    }
    if (series.empty()) throw data_error(spec.path + ": no data rows found");
    for (auto& s : series) {
        if (s.returns.empty()) throw data_error(spec.path + ": empty selection for " + s.label);
        s.validate();
    }
    if (spec.column) {
        if (*spec.column >= series.size())
            throw data_error(spec.path + ": column index out of range");
        series = {series[*spec.column]};
    }
    if (stats) *stats = st;
    return series;
}

namespace {

ReturnSeries load_two_column(const DatasetSpec& spec, bool prices, LoadStats* stats) {
    spec.validate();
    auto in = open_or_throw(spec.path);
    LoadStats st;
    ReturnSeries s;
    s.label = spec.path;

    std::vector<int> dates;
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    std::size_t col = spec.column.value_or(1);
    int prev_date = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split_csv(line);
        auto date = try_parse_date(fields[0]);
        if (!date) {
            if (line_no == 1) continue; // header
            throw data_error(spec.path + ":" + std::to_string(line_no) + ": unparseable date '" +
                             fields[0] + "'");
        }
        if (prev_date >= 0 && *date <= prev_date)
            throw data_error(spec.path + ":" + std::to_string(line_no) +
                             ": dates not strictly increasing");
        prev_date = *date;
        if (col >= fields.size())
            throw data_error(spec.path + ":" + std::to_string(line_no) + ": missing value column");
        auto v = try_parse_double(fields[col]);
        if (!v) throw data_error(spec.path + ":" + std::to_string(line_no) + ": bad number '" +
                                 fields[col] + "'");
        if (!in_range(spec, *date)) continue;
        ++st.rows_parsed;
        if (!prices && is_missing_code(*v)) {
            ++st.missing_dropped;
            continue;
        }
        if (prices && !(*v > 0.0))
            throw data_error(spec.path + ":" + std::to_string(line_no) + ": nonpositive price");
        dates.push_back(*date);
        values.push_back(*v);
    }
    if (prices) {
        if (dates.size() < 2) throw data_error(spec.path + ": need at least 2 prices");
        for (std::size_t i = 1; i < dates.size(); ++i) {
            s.dates.push_back(dates[i]);
            s.returns.push_back(std::log(values[i] / values[i - 1]));
        }
    } else {
        s.dates = std::move(dates);
        for (double v : values) s.returns.push_back(std::log1p(v));
    }
    if (s.returns.empty()) throw data_error(spec.path + ": empty selection");
    s.validate();
    if (stats) *stats = st;
    return s;
}

} // namespace

ReturnSeries load_returns_csv(const DatasetSpec& spec, LoadStats* stats) {
    return load_two_column(spec, false, stats);
}

ReturnSeries load_prices(const DatasetSpec& spec, LoadStats* stats) {
    return load_two_column(spec, true, stats);
}

std::vector<ReturnSeries> load_dataset(const DatasetSpec& spec, LoadStats* stats) {
    switch (spec.kind) {
        case DatasetKind::ff_daily_percent: return load_ff_daily(spec, stats);
        case DatasetKind::returns_csv: return {load_returns_csv(spec, stats)};
        case DatasetKind::prices_csv: return {load_prices(spec, stats)};
    }
    throw data_error("load_dataset: unknown kind");
}

// ---- reports ----------------------------------------------------------------

namespace {

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write file: " + path);
    out << content;
    if (!out) throw data_error("write failed: " + path);
}

std::string fmt17(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

json dynamics_to_json(const VarianceDynamics& d, const std::string& label) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["label"] = label;
    j["ref_horizon_days"] = d.ref_horizon;
    j["n_days"] = d.n_days;
    j["windowing"] = d.mode == Windowing::overlap ? "overlap" : "nonoverlap";
    j["horizons_days"] = d.horizons;
    j["var_hat"] = d.var_hat;
    j["eiv_hat"] = d.eiv_hat;
    j["emiv_hat"] = d.emiv_hat;
    j["riv"] = d.riv;
    j["var_ci_lo"] = d.var_ci_lo;
    j["var_ci_hi"] = d.var_ci_hi;
    j["riv_ci_lo"] = d.riv_ci_lo;
    j["riv_ci_hi"] = d.riv_ci_hi;
    return j;
}

} // namespace

void write_variance_dynamics(const VarianceDynamics& d, ReportFormat fmt, const std::string& path,
                             const std::string& label) {
    if (fmt == ReportFormat::json) {
        write_text(path, dynamics_to_json(d, label).dump(2) + "\n");
        return;
    }
    std::ostringstream os;
    os << "horizon_days,var_hat,eiv_hat,emiv_hat,riv,var_ci_lo,var_ci_hi,riv_ci_lo,riv_ci_hi\n";
    for (std::size_t i = 0; i < d.horizons.size(); ++i) {
        os << d.horizons[i] << ',' << fmt17(d.var_hat[i]) << ',' << fmt17(d.eiv_hat[i]) << ','
           << fmt17(d.emiv_hat[i]) << ',' << fmt17(d.riv[i]);
        if (i < d.var_ci_lo.size()) {
            os << ',' << fmt17(d.var_ci_lo[i]) << ',' << fmt17(d.var_ci_hi[i]) << ','
               << fmt17(d.riv_ci_lo[i]) << ',' << fmt17(d.riv_ci_hi[i]);
        } else {
            os << ",,,,";
        }
        os << '\n';
    }
    write_text(path, os.str());
}

VarianceDynamics load_variance_dynamics_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw data_error(path + ": bad JSON: " + e.what());
    }
    if (j.value("schema_version", 0) != kSchemaVersion)
        throw data_error(path + ": unsupported schema_version");
    VarianceDynamics d;
    d.ref_horizon = j.at("ref_horizon_days").get<int>();
    d.n_days = j.at("n_days").get<std::size_t>();
    d.mode = j.at("windowing").get<std::string>() == "overlap" ? Windowing::overlap
                                                               : Windowing::nonoverlap;
    d.horizons = j.at("horizons_days").get<std::vector<int>>();
    d.var_hat = j.at("var_hat").get<std::vector<double>>();
    d.eiv_hat = j.at("eiv_hat").get<std::vector<double>>();
    d.emiv_hat = j.at("emiv_hat").get<std::vector<double>>();
    d.riv = j.at("riv").get<std::vector<double>>();
    d.var_ci_lo = j.at("var_ci_lo").get<std::vector<double>>();
    d.var_ci_hi = j.at("var_ci_hi").get<std::vector<double>>();
    d.riv_ci_lo = j.at("riv_ci_lo").get<std::vector<double>>();
    d.riv_ci_hi = j.at("riv_ci_hi").get<std::vector<double>>();
    return d;
}

void write_size_report(const std::vector<SizeReportRow>& rows, ReportFormat fmt,
                       const std::string& path) {
    if (fmt == ReportFormat::json) {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"label", r.label},
                           {"eiv25_annualized", r.eiv25_annualized},
                           {"riv25", r.riv25},
                           {"var1_annualized", r.var1_annualized},
                           {"skewness_h", r.skewness_h},
                           {"excess_kurtosis_cs", r.excess_kurtosis_cs}});
        }
        json j{{"schema_version", kSchemaVersion}, {"rows", arr}};
        write_text(path, j.dump(2) + "\n");
        return;
    }
    std::ostringstream os;
    os << "label,eiv25_annualized,riv25,var1_annualized,skewness_h,excess_kurtosis_cs\n";
    for (const auto& r : rows) {
        os << r.label << ',' << fmt17(r.eiv25_annualized) << ',' << fmt17(r.riv25) << ','
           << fmt17(r.var1_annualized) << ',' << fmt17(r.skewness_h) << ','
           << fmt17(r.excess_kurtosis_cs) << '\n';
    }
    write_text(path, os.str());
}

void write_interaction_figure_data(const VarianceDynamics& d, const std::string& path) {
    std::ostringstream os;
    os << "horizon_days,var_annualized,eiv_annualized,ci_lo,ci_hi\n";
    for (std::size_t i = 0; i < d.horizons.size(); ++i) {
        double h = static_cast<double>(d.horizons[i]);
        os << d.horizons[i] << ',' << fmt17(annualize(d.var_hat[i], h)) << ','
           << fmt17(annualize(d.eiv_hat[i], h));
        if (i < d.var_ci_lo.size())
            os << ',' << fmt17(annualize(d.var_ci_lo[i], h)) << ','
               << fmt17(annualize(d.var_ci_hi[i], h));
        else
            os << ",,";
        os << '\n';
    }
    write_text(path, os.str());
}

void write_density_table(const std::vector<double>& grid,
                         const std::vector<std::pair<std::string, std::vector<double>>>& columns,
                         const std::string& path) {
    for (const auto& [name, vals] : columns)
        if (vals.size() != grid.size())
            throw data_error("write_density_table: column '" + name + "' length mismatch");
    std::ostringstream os;
    os << "x";
    for (const auto& [name, vals] : columns) os << ',' << name;
    os << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << fmt17(grid[i]);
        for (const auto& [name, vals] : columns) os << ',' << fmt17(vals[i]);
        os << '\n';
    }
    write_text(path, os.str());
}

void write_gh_params(const GHParams& h, double log_likelihood, const std::string& path) {
    json j{{"schema_version", kSchemaVersion},
           {"lambda", h.lambda},
           {"alpha", h.alpha},
           {"beta", h.beta},
           {"delta", h.delta},
           {"mu", h.mu},
           {"log_likelihood", log_likelihood}};
    write_text(path, j.dump(2) + "\n");
}

GHParams load_gh_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw data_error(path + ": bad JSON: " + e.what());
    }
    // construction re-validates the domain
    return GHParams(j.at("lambda").get<double>(), j.at("alpha").get<double>(),
                    j.at("beta").get<double>(), j.at("delta").get<double>(),
                    j.at("mu").get<double>());
}

} // namespace svol
