// io.hpp
// Column tables for the CSV/JSON outputs, and a reader for the `fit` command.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqw/analysis.hpp"
#include "eqw/classical_elephant.hpp"
#include "eqw/spectral_channel.hpp"
#include "eqw/walk_engines.hpp"

namespace eqw {

enum class OutputFormat { Csv, Json };

/// Numeric table; NaN cells print as `nan` in CSV and null in JSON.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;  ///< throws std::out_of_range
    std::vector<double> values(const std::string& name) const;
};

Table moments_table(const EnsembleResult& result);
Table distribution_table(const PositionDistribution& dist);
Table erw_table(const ErwMoments& moments);
Table trace_table(const TraceDistanceSeries& series);
Table channel_table(const ChannelResult& result);

struct EigenRow {
    double k = 0.0;
    std::int64_t t = 0;
    std::array<Complex, 4> lambda;
};
Table eigen_table(const std::vector<EigenRow>& rows);

nlohmann::ordered_json fit_json(const PowerLawFit& fit);

void write_csv(std::ostream& out, const Table& table);
nlohmann::ordered_json to_json(const Table& table);  ///< {"columns": [...], "rows": [[...], ...]}

/// Writes dir/stem.csv or dir/stem.json; returns the path written.
std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const Table& table, OutputFormat format);

/// Reads a CSV with a header row, or a JSON table written by write_table.
Table read_table(const std::filesystem::path& path);

}  // namespace eqw
