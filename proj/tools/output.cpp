#include "output.hpp"

#include <Eigen/Core>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>

#ifndef ELASTICA_VERSION
#define ELASTICA_VERSION "0.0.0"
#endif

namespace elastica::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width does not match its columns");
  rows.push_back(std::move(row));
}

Json header(const Report& r) {
  Json h;
  h["program"] = "elastica";
  h["command"] = r.command;
  h["versions"] = {{"elastica", ELASTICA_VERSION},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)}};
  h["seed"] = r.seed;
  h["inputs"] = r.inputs;
  return h;
}

void write_json(std::ostream& os, const Json& doc) { os << doc.dump(2) << '\n'; }

namespace {

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

}  // namespace

void write_csv(std::ostream& os, const Report& r) {
  const Json h = header(r);
  for (const auto& [key, value] : h.items()) os << "# " << key << ": " << cell(value) << '\n';
  for (const auto& [key, value] : r.summary.items()) os << "# " << key << ": " << cell(value) << '\n';
  for (size_t i = 0; i < r.table.columns.size(); ++i) os << (i ? "," : "") << r.table.columns[i];
  os << '\n';
  for (const auto& row : r.table.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

void emit(const Report& r, Format format, const std::string& out) {
  std::ofstream file;
  if (!out.empty()) {
    file.open(out, std::ios::binary);
    if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write '" + out + "'");
  }
  std::ostream& os = out.empty() ? std::cout : file;
  if (format == Format::Csv) {
    write_csv(os, r);
  } else {
    Json doc;
    doc["header"] = header(r);
    for (const auto& [key, value] : r.payload.items()) doc[key] = value;
    write_json(os, doc);
  }
  os.flush();
  if (!os) throw Error(ErrorKind::InvalidArgument, "failed writing output");
}

}  // namespace elastica::cli
