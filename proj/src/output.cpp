#include "mtgg/output.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mtgg/errors.hpp"

namespace mtgg {

std::string format_double(double value) {
  char buffer[64];
  // Try increasing precision until the value round-trips exactly.
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    double parsed = 0.0;
    std::sscanf(buffer, "%lf", &parsed);
    if (parsed == value) break;
  }
  return buffer;
}

void OutputTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns.size()) {
    throw std::invalid_argument("OutputTable: row width mismatch");
  }
  rows.push_back(cells);
}

std::string OutputTable::to_csv() const {
  std::ostringstream out;
  for (const auto& [key, value] : metadata) {
    out << "# " << key << "=" << value << "\n";
  }
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out << columns[c] << (c + 1 < columns.size() ? "," : "");
  }
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c] << (c + 1 < row.size() ? "," : "");
    }
    out << "\n";
  }
  return out.str();
}

nlohmann::json OutputTable::to_json() const {
  nlohmann::json j;
  j["metadata"] = metadata;
  j["columns"] = columns;
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    rows_json.push_back(row);
  }
  j["rows"] = rows_json;
  return j;
}

OutputTable OutputTable::read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open CSV file: " + path.string());
  }
  OutputTable table;
  std::string line;
  bool header_seen = false;
  auto split = [](const std::string& text) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(text);
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    if (!text.empty() && text.back() == ',') cells.emplace_back();
    return cells;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.erase(0, 1);
      const auto eq = body.find('=');
      if (eq != std::string::npos) {
        table.metadata[body.substr(0, eq)] = body.substr(eq + 1);
      }
      continue;
    }
    if (!header_seen) {
      table.columns = split(line);
      header_seen = true;
    } else {
      table.rows.push_back(split(line));
    }
  }
  return table;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot open output file: " + path.string());
  }
  out << content;
  if (!out) {
    throw ConfigError("failed writing output file: " + path.string());
  }
}

}  // namespace mtgg
