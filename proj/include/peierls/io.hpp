#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "peierls/config.hpp"

namespace peierls {

inline constexpr std::string_view kSchemaVersion = "1";

/// Shortest decimal that round-trips; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double value);

/// Comma-separated, '.' decimals, LF line endings. The preamble is a block of
/// '#' lines (schema tag, then the sorted config); the header row is mandatory.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::string_view schema, const RunConfig& config,
            const std::vector<std::string>& header);

  void row(const std::vector<std::string>& fields);
  void row(const std::vector<double>& values);
  void close();

 private:
  std::ofstream out_;
  std::string path_;
  std::size_t columns_;
};

/// {"schema": "peierls.<kind>/<version>", "config": {...}} plus whatever the caller adds.
nlohmann::ordered_json metadata(std::string_view kind, const RunConfig& config);

void write_json(const std::string& path, const nlohmann::ordered_json& doc);

std::string schema_tag(std::string_view kind);

}  // namespace peierls
