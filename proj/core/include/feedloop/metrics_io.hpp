#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "feedloop/batch.hpp"
#include "feedloop/engine.hpp"

namespace feedloop {

inline constexpr const char* kMetricsSchema = "feedloop-metrics/1";

// Shortest decimal representation that round-trips.
std::string format_double(double x);

// t, recs_issued, e_min, e_maj, edges_added, growth_pct, gini_min, gini_maj,
// h_m, h_M, e_mm, then pexp_min_<q>, pexp_maj_<q> per threshold (q in percent).
std::vector<std::string> metrics_columns(std::span<const double> thresholds);

// First line is "# schema: <schema> columns=<n>". Absent values are empty
// fields. With `seed`, a leading seed column is added (long format).
void write_metrics_header(std::ostream& os, std::span<const double> thresholds, bool with_seed);
void write_metrics_row(std::ostream& os, const IterationRecord& r, std::span<const double> thresholds,
                       std::optional<std::uint64_t> seed = std::nullopt);
void write_metrics_csv(std::ostream& os, std::span<const IterationRecord> records,
                       std::span<const double> thresholds);

// One JSON object per user and round:
// {"t":..,"user":..,"targets":[..],"accepted":<1-based index or null>}
void write_rec_log(std::ostream& os, std::size_t t, const RecommendationBatch& batch);

// Generic numeric CSV with '#' comment lines and a header row. Empty fields
// read as nullopt.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
  std::vector<std::string> comments;

  // Index of a column; throws IoError if absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
};

CsvTable read_csv(std::istream& is);
CsvTable read_csv(const std::filesystem::path& p);

}  // namespace feedloop
