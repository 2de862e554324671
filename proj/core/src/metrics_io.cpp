#include "feedloop/metrics_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "feedloop/error.hpp"

namespace feedloop {

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw Error("number formatting failed");
  return std::string(buf, p);
}

std::vector<std::string> metrics_columns(std::span<const double> thresholds) {
  std::vector<std::string> c{"t",        "recs_issued", "e_min", "e_maj", "edges_added", "growth_pct",
                             "gini_min", "gini_maj",    "h_m",   "h_M",   "e_mm"};
  for (double q : thresholds) {
    const auto pct = format_double(std::round(q * 100.0 * 1e9) / 1e9);  // 0.07 * 100 is not 7
    c.push_back("pexp_min_" + pct);
    c.push_back("pexp_maj_" + pct);
  }
  return c;
}

void write_metrics_header(std::ostream& os, std::span<const double> thresholds, bool with_seed) {
  auto cols = metrics_columns(thresholds);
  if (with_seed) cols.insert(cols.begin(), "seed");
  os << "# schema: " << kMetricsSchema << " columns=" << cols.size() << "\n";
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
}

namespace {

void field(std::ostream& os, const std::optional<double>& v) {
  os << ',';
  if (v) os << format_double(*v);
}

std::optional<double> share_at(const std::optional<PercentileBuckets>& b, std::size_t i) {
  if (!b || i >= b->shares.size()) return std::nullopt;
  return b->shares[i];
}

}  // namespace

void write_metrics_row(std::ostream& os, const IterationRecord& r, std::span<const double> thresholds,
                       std::optional<std::uint64_t> seed) {
  if (seed) os << *seed << ',';
  os << r.t << ',' << r.recs_issued;
  field(os, r.exposure ? std::optional(r.exposure->e_min) : std::nullopt);
  field(os, r.exposure ? std::optional(r.exposure->e_maj) : std::nullopt);
  os << ',' << r.edges_added;
  field(os, r.cumulative_edge_growth * 100.0);
  field(os, r.gini_min);
  field(os, r.gini_maj);
  field(os, r.h_m);
  field(os, r.h_M);
  field(os, r.e_mm);
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    field(os, share_at(r.pexp_min, i));
    field(os, share_at(r.pexp_maj, i));
  }
  os << '\n';
}

void write_metrics_csv(std::ostream& os, std::span<const IterationRecord> records,
                       std::span<const double> thresholds) {
  write_metrics_header(os, thresholds, false);
  for (const auto& r : records) write_metrics_row(os, r, thresholds);
}

void write_rec_log(std::ostream& os, std::size_t t, const RecommendationBatch& batch) {
  for (const auto& rec : batch) {
    nlohmann::ordered_json j;
    j["t"] = t;
    j["user"] = rec.user;
    j["targets"] = rec.targets;
    j["accepted"] = rec.accepted ? nlohmann::ordered_json(*rec.accepted) : nlohmann::ordered_json(nullptr);
    os << j.dump() << '\n';
  }
}

std::size_t CsvTable::column(std::string_view name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw IoError("CSV has no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

bool CsvTable::has_column(std::string_view name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  std::size_t n = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> r;
    std::size_t b = 0;
    while (true) {
      const auto c = s.find(',', b);
      r.push_back(s.substr(b, c == std::string::npos ? std::string::npos : c - b));
      if (c == std::string::npos) break;
      b = c + 1;
    }
    for (auto& f : r) {
      while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.pop_back();
    }
    return r;
  };
  while (std::getline(is, line)) {
    ++n;
    if (line.empty() || line == "\r") continue;
    if (line.front() == '#') {
      t.comments.push_back(line);
      continue;
    }
    auto fields = split(line);
    if (t.columns.empty()) {
      t.columns = std::move(fields);
      continue;
    }
    if (fields.size() != t.columns.size()) {
      throw IoError("CSV line " + std::to_string(n) + ": expected " + std::to_string(t.columns.size()) +
                    " fields, got " + std::to_string(fields.size()));
    }
    std::vector<std::optional<double>> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      if (f.empty()) {
        row.emplace_back();
        continue;
      }
      double v = 0.0;
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc{} || p != f.data() + f.size()) {
        throw IoError("CSV line " + std::to_string(n) + ": non-numeric field '" + f + "'");
      }
      row.emplace_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) throw IoError("CSV has no header row");
  return t;
}

CsvTable read_csv(const std::filesystem::path& p) {
  std::ifstream is(p);
  if (!is) throw IoError("cannot open " + p.string());
  return read_csv(is);
}

}  // namespace feedloop
