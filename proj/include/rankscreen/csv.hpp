#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankscreen/core.hpp"

namespace rankscreen {

class CsvError : public std::runtime_error {
 public:
  enum class Kind { kIo, kParse };

  CsvError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Header plus numeric body, stored column by column.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
};

/// Comma-separated, one header row, every body cell a finite decimal number.
/// Parse errors name the 1-based line and the column header.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

struct CsvDataset {
  DataMatrix predictors;
  ResponseVector response;
  std::string response_name;
};

/// Splits a table into predictors and the column called `response`, which
/// must occur exactly once in the header.
CsvDataset to_dataset(CsvTable table, const std::string& response);

/// Writes the predictors followed by the response column. Values use the
/// shortest representation that round-trips.
void write_csv(std::ostream& out, const DataMatrix& predictors, const ResponseVector& response,
               const std::string& response_name = "y");

}  // namespace rankscreen
