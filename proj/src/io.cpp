#include "eqw/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace eqw {

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw std::out_of_range("table has no column '" + name + "'");
}

std::vector<double> Table::values(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(c < r.size() ? r[c] : std::numeric_limits<double>::quiet_NaN());
    return out;
}

Table moments_table(const EnsembleResult& result) {
    Table t{{"t", "mean", "var", "kurtosis", "se_mean", "se_var"}, {}};
    const auto& m = result.moments;
    for (std::size_t i = 0; i < result.times.size(); ++i)
        t.rows.push_back({static_cast<double>(result.times[i]), m.mean[i], m.variance[i],
                          m.excess_kurtosis[i], m.se_mean[i], m.se_variance[i]});
    return t;
}

Table distribution_table(const PositionDistribution& dist) {
    Table t{{"l", "p"}, {}};
    for (std::size_t j = 0; j < dist.probs.size(); ++j)
        t.rows.push_back({static_cast<double>(dist.window_lo + static_cast<Site>(j)), dist.probs[j]});
    return t;
}

Table erw_table(const ErwMoments& m) {
    Table t{{"t", "mean", "var", "se_mean", "se_var"}, {}};
    for (std::size_t i = 0; i < m.times.size(); ++i)
        t.rows.push_back({static_cast<double>(m.times[i]), m.mean[i], m.variance[i], m.se_mean[i],
                          m.se_variance[i]});
    return t;
}

Table trace_table(const TraceDistanceSeries& s) {
    Table t{{"t", "D", "v"}, {}};
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        const double v = i < s.velocity.size() ? s.velocity[i] : std::numeric_limits<double>::quiet_NaN();
        t.rows.push_back({static_cast<double>(s.times[i]), s.distance[i], v});
    }
    return t;
}

Table channel_table(const ChannelResult& r) {
    Table t{{"t", "var"}, {}};
    for (std::size_t i = 0; i < r.times.size(); ++i)
        t.rows.push_back({static_cast<double>(r.times[i]), r.variance[i]});
    return t;
}

Table eigen_table(const std::vector<EigenRow>& rows) {
    Table t{{"k", "t", "re_l1", "im_l1", "re_l2", "im_l2", "re_l3", "im_l3", "re_l4", "im_l4"}, {}};
    for (const auto& r : rows) {
        std::vector<double> row{r.k, static_cast<double>(r.t)};
        for (const auto& l : r.lambda) {
            row.push_back(l.real());
            row.push_back(l.imag());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

nlohmann::ordered_json fit_json(const PowerLawFit& f) {
    return {{"exponent", f.exponent},     {"coefficient", f.coefficient},
            {"r2", f.r2},                 {"window", {f.t_min, f.t_max}},
            {"stderr", f.exponent_se},    {"coefficient_stderr", f.coefficient_se},
            {"points", f.points}};
}

namespace {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_cell(const std::string& s) {
    if (s.empty() || s == "nan" || s == "NaN") return std::numeric_limits<double>::quiet_NaN();
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
        out << '\n';
    }
}

nlohmann::ordered_json to_json(const Table& table) {
    nlohmann::ordered_json j;
    j["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto r = nlohmann::ordered_json::array();
        for (double v : row) r.push_back(std::isnan(v) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(v));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const Table& table, OutputFormat format) {
    const auto path = dir / (stem + (format == OutputFormat::Csv ? ".csv" : ".json"));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    if (format == OutputFormat::Csv) {
        write_csv(out, table);
    } else {
        out << to_json(table).dump(2) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
    return path;
}

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    Table t;
    if (path.extension() == ".json") {
        const auto j = nlohmann::json::parse(in);
        t.columns = j.at("columns").get<std::vector<std::string>>();
        for (const auto& r : j.at("rows")) {
            std::vector<double> row;
            for (const auto& v : r) row.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
            t.rows.push_back(std::move(row));
        }
        return t;
    }
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
    t.columns = split(line, ',');
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cells = split(line, ',');
        if (cells.size() != t.columns.size())
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(t.columns.size()) + " cells");
        std::vector<double> row;
        for (const auto& c : cells) row.push_back(parse_cell(c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace eqw
