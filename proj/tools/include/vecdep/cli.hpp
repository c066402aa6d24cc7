#pragma once

// Command-line front end: CSV ingestion, group configuration and the
// simulate / collapse / measure / assess / kendall / rolling commands.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vecdep/asymptotics.hpp"
#include "vecdep/collapse.hpp"
#include "vecdep/core.hpp"
#include "vecdep/measures.hpp"

namespace vecdep::cli {

inline constexpr std::string_view kSchema = "vecdep/1";

/// Exit codes.
enum ExitCode : int { ok = 0, internal_error = 1, usage_error = 2, data_error = 3, numeric_error = 4 };

/// Header plus numeric body of a CSV file.
struct Table {
    std::vector<std::string> header;
    Matrix values;
};

/// Parses CSV text (header row required, '.' decimal, optional RFC 4180
/// quoting). Throws DataError naming the row (1-based, header is row 1) and
/// the column on missing or non-numeric cells.
Table parse_csv(std::string_view text);
Table read_csv(const std::string& path);

/// {"groups": [{"name": ..., "columns": [header names]}]}
struct GroupsConfig {
    struct Entry {
        std::string name;
        std::vector<std::string> columns;
    };
    std::vector<Entry> groups;
};

/// Accepts either inline JSON (starting with '{') or a path to a JSON file.
GroupsConfig load_groups(const std::string& json_or_path);
GroupsConfig parse_groups(std::string_view json);
std::string to_json(const GroupsConfig& config);

/// Resolves header names to indices. Throws DataError on unknown columns.
GroupedData make_grouped(Table table, const GroupsConfig& config);

/// Reads the CSV and applies the configuration.
GroupedData ingest_csv(const std::string& path, const GroupsConfig& config);

/// Builds a spec from a collapse name and an optional JSON object of
/// parameters (weights, m, direction, metric, order, kernel, degree, sigma,
/// kappa, rank_margins). Unknown keys are rejected.
CollapseSpec parse_collapse(const std::string& kind, const std::string& params_json);

struct RollingRow {
    std::size_t window_end = 0;  ///< 0-based index of the last row of the window
    DependenceEstimate estimate;
};

/// Windows [t - W + 1, t] (1-based t = W, W + step, ...). W < 10 or W > n
/// is refused.
std::vector<RollingRow> rolling(const GroupedData& data, std::string_view group_a, std::string_view group_b,
                                const CollapseSpec& cspec, const MeasureSpec& mspec, const CiOptions& ci,
                                std::size_t window, std::size_t step);

/// Shortest-round-trip-safe decimal ("%.17g").
std::string format_number(double v);

/// Runs the tool. args excludes the program name. Output goes to `out`
/// unless a command writes to --output; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vecdep::cli
