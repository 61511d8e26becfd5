#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "io.hpp"

namespace elastica::cli {

using io::Json;

enum class Format { Json, Csv };

/// Shortest decimal form that parses back to the same double.
std::string format_number(double x);

/// Rows of pre-formatted cells under fixed column names.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
};

struct Report {
  std::string command;
  Json inputs = Json::object();
  std::uint64_t seed = 0;
  /// Full result for --format json (merged after the header).
  Json payload = Json::object();
  /// Scalar summary written as "# key: value" lines in CSV mode.
  Json summary = Json::object();
  Table table;
};

Json header(const Report& r);

/// Writes the report to `out` (a file path) or stdout when empty.
void emit(const Report& r, Format format, const std::string& out);

void write_json(std::ostream& os, const Json& doc);
void write_csv(std::ostream& os, const Report& r);

}  // namespace elastica::cli
