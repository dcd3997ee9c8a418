#include "rankscreen/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace rankscreen {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

void append_number(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw CsvError(CsvError::Kind::kParse, "CSV input has no header row");
  for (auto field : split(line)) table.header.emplace_back(field);
  table.columns.resize(table.header.size());

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != table.header.size()) {
      throw CsvError(CsvError::Kind::kParse, "line " + std::to_string(line_no) + ": expected " +
                                                 std::to_string(table.header.size()) + " fields, found " +
                                                 std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto field = fields[c];
      double value = 0.0;
      const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
      if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size() ||
          !std::isfinite(value)) {
        throw CsvError(CsvError::Kind::kParse, "line " + std::to_string(line_no) + ", column '" +
                                                   table.header[c] + "': cannot parse '" +
                                                   std::string(field) + "' as a finite number");
      }
      table.columns[c].push_back(value);
    }
  }
  if (in.bad()) throw CsvError(CsvError::Kind::kIo, "read error");
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvError(CsvError::Kind::kIo, "cannot open '" + path + "'");
  return read_csv(in);
}

CsvDataset to_dataset(CsvTable table, const std::string& response) {
  const auto matches = std::count(table.header.begin(), table.header.end(), response);
  if (matches != 1) {
    throw CsvError(CsvError::Kind::kParse, matches == 0 ? "response column '" + response + "' not found"
                                                        : "response column '" + response + "' is not unique");
  }
  if (table.header.size() < 2) throw CsvError(CsvError::Kind::kParse, "CSV needs at least one predictor column");
  if (table.rows() < 2) throw CsvError(CsvError::Kind::kParse, "CSV needs at least two data rows");

  std::vector<std::vector<double>> predictors;
  std::vector<std::string> names;
  std::vector<double> y;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (table.header[c] == response) {
      y = std::move(table.columns[c]);
    } else {
      predictors.push_back(std::move(table.columns[c]));
      names.push_back(table.header[c]);
    }
  }
  return {DataMatrix::from_columns(predictors, std::move(names)), ResponseVector(std::move(y)), response};
}

void write_csv(std::ostream& out, const DataMatrix& predictors, const ResponseVector& response,
               const std::string& response_name) {
  check_compatible(predictors, response);
  std::string line;
  for (const auto& name : predictors.names()) {
    line += name;
    line += ',';
  }
  line += response_name;
  line += '\n';
  out << line;
  for (std::size_t i = 0; i < predictors.rows(); ++i) {
    line.clear();
    for (std::size_t j = 0; j < predictors.cols(); ++j) {
      append_number(line, predictors(i, j));
      line += ',';
    }
    append_number(line, response[i]);
    line += '\n';
    out << line;
  }
}

}  // namespace rankscreen
