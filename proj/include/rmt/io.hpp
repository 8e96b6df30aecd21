#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rmt/weights.hpp"

namespace rmt {

// What produced an output file. Keys are sorted by the json type, so dump() is canonical.
struct RunManifest {
  std::string subcommand;
  nlohmann::json params = nlohmann::json::object();

  nlohmann::json to_json() const;
  // FNV-1a 64 of the canonical dump, 16 hex digits
  std::string hash() const;
};

// Shortest round-trip decimal form.
std::string format_number(double v);

using CsvRow = std::vector<std::string>;

// Comment line with hash and manifest, header row, then rows.
void write_csv(std::ostream& os, const RunManifest& m, const std::vector<std::string>& header,
               const std::vector<CsvRow>& rows);
void write_json(std::ostream& os, const RunManifest& m, const nlohmann::json& data);

struct PlotSeries {
  std::string name;
  std::vector<double> x, y;
};

// Static log-log line plot; non-positive points are skipped.
std::string loglog_svg(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<PlotSeries>& series, const RunManifest& m);

void write_text_file(const std::string& path, const std::string& content);

// "x", "2x", "x^2+0.5x", "3x^3 - x + 1"; returns ascending coefficients of V.
std::vector<double> parse_polynomial(const std::string& s);
// "16,32,64" or "1..32"
std::vector<int> parse_int_list(const std::string& s);
std::vector<double> parse_double_list(const std::string& s);

}  // namespace rmt
