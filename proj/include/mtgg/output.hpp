#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace mtgg {

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

// Numeric table with provenance metadata. CSV output carries the metadata
// in leading '#' comment lines; JSON output nests it under "metadata".
struct OutputTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::map<std::string, std::string> metadata;

  void add_row(const std::vector<std::string>& cells);
  std::string to_csv() const;
  nlohmann::json to_json() const;

  static OutputTable read_csv(const std::filesystem::path& path);
};

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace mtgg
