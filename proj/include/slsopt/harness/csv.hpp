#pragma once

#include "slsopt/core/trace.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace slsopt {

/// Fixed column order of the per-run CSV. test_metric is empty when the run
/// has no held-out metric; dist_sq is empty when the problem exposes no
/// solution.
extern const char* const kCsvHeader;

void write_csv(std::ostream& out, const RunTrace& trace);

struct CsvCell {
  bool present = false;
  double value = 0.0;
};

struct ParsedCsv {
  std::vector<std::string> columns;
  std::vector<std::vector<CsvCell>> rows;  // numeric cells; absent for empty fields
};

ParsedCsv read_csv(std::istream& in);
ParsedCsv read_csv_file(const std::string& path);

}  // namespace slsopt
