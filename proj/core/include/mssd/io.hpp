#pragma once

#include <map>
#include <string>
#include <vector>

#include "mssd/eval.hpp"
#include "mssd/source.hpp"
#include "mssd/strategies.hpp"
#include "mssd/synth.hpp"

namespace mssd {

// Universe files: newline-delimited, one location per line, UTF-8.
//   <id> point <lat> <lon> [key=value ...]
//   <id> polygon <lat1> <lon1> <lat2> <lon2> ... [key=value ...]
// '#' starts a comment line; blank lines are skipped. Ids and attribute
// values carry no whitespace. Throws ParseError with line context.
std::vector<Location> load_universe(const std::string& path, const std::string& source_name);
std::vector<Location> parse_universe(const std::string& text, const std::string& source_name,
                                     const std::string& origin = "<memory>");
void save_universe(const std::string& path, const std::vector<Location>& locations);
std::string format_universe(const std::vector<Location>& locations);

// Profiles config: JSON object {"profiles": {name: {...}}}; fields
// max_result_size, bandwidth_limit, bandwidth_window_s, supplemental_results,
// sampling_mode.
std::map<std::string, SourceProfile> load_profiles(const std::string& path);
std::map<std::string, SourceProfile> parse_profiles(const std::string& text);

// Distribution CSV: a header record with origin and cell size, then one
// (row, col, probability) line per occupied cell.
void save_distribution(const std::string& path, const CellDistribution& dist);
CellDistribution load_distribution(const std::string& path);

// Run artifacts: directory with locations.csv, trace.csv, summary.json.
void save_run(const std::string& dir, const ExtractionRun& run);
ExtractionRun load_run(const std::string& dir);

// Metrics table, one row per (source, strategy[, sweep cell]).
struct MetricsRow {
    RunMetrics metrics;
    std::string sweep_axis;  // "", "alpha" or "radius"
    double alpha = 0.0;
    double r_m = 0.0;
};
std::string format_metrics_csv(const std::vector<MetricsRow>& rows);
void save_metrics_csv(const std::string& path, const std::vector<MetricsRow>& rows);

// Plot data: requests on x, cumulative distinct locations on y, one series
// per strategy.
std::string format_plot_csv(const std::vector<ExtractionRun>& runs);

}  // namespace mssd
