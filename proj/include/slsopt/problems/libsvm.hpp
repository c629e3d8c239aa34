#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slsopt {

/// Sparse example row: (0-based feature index, value) pairs with strictly
/// increasing indices.
using SparseRow = std::vector<std::pair<int, double>>;

struct Dataset {
  std::vector<double> labels;   // raw labels as parsed
  std::vector<SparseRow> rows;
  int num_features = 0;         // max feature index + 1
};

class LibsvmParseError : public std::runtime_error {
 public:
  LibsvmParseError(long line, const std::string& what)
      : std::runtime_error("libsvm parse error at line " + std::to_string(line) + ": " + what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// Reads "label idx:val idx:val ..." lines. Indices are 1-based in the file
/// and strictly increasing within a line; '#' starts a comment; blank lines
/// are skipped. Malformed tokens, index 0 and non-increasing indices raise
/// LibsvmParseError with the offending line number.
Dataset parse_libsvm(std::istream& in);

/// Inverse of parse_libsvm; values use enough digits to round-trip exactly.
void write_libsvm(std::ostream& out, const Dataset& data);

/// Maps the two distinct label values to ±1 by sorted order (smaller -> −1).
/// A single distinct value maps to +1; more than two is an error.
std::vector<double> map_binary_labels(const std::vector<double>& labels);

}  // namespace slsopt
