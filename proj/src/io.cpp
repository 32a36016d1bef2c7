#include "peierls/io.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "peierls/errors.hpp"

namespace peierls {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw NumericalError("number formatting failed");
  return std::string(buf.data(), ptr);
}

std::string schema_tag(std::string_view kind) {
  return "peierls." + std::string(kind) + "/" + std::string(kSchemaVersion);
}

CsvWriter::CsvWriter(const std::string& path, std::string_view schema, const RunConfig& config,
                     const std::vector<std::string>& header)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path), columns_(header.size()) {
  if (!out_) throw ConfigError(path + ": cannot open for writing");
  out_ << "# schema: " << schema_tag(schema) << '\n';
  for (const auto& [key, value] : config_entries(config)) out_ << "# " << key << " = " << value << '\n';
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw NumericalError(path_ + ": row width does not match header");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << fields[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> fields;
  fields.reserve(values.size());
  for (double v : values) fields.push_back(format_number(v));
  row(fields);
}

void CsvWriter::close() {
  out_.close();
  if (out_.fail()) throw NumericalError(path_ + ": write failed");
}

nlohmann::ordered_json metadata(std::string_view kind, const RunConfig& config) {
  nlohmann::ordered_json doc;
  doc["schema"] = schema_tag(kind);
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config_entries(config)) cfg[key] = value;
  doc["config"] = cfg;
  return doc;
}

void write_json(const std::string& path, const nlohmann::ordered_json& doc) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError(path + ": cannot open for writing");
  out << doc.dump(2) << '\n';
  if (out.fail()) throw NumericalError(path + ": write failed");
}

}  // namespace peierls
