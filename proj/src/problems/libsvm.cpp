#include "slsopt/problems/libsvm.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace slsopt {

namespace {

double parse_real(const std::string& tok, long line, const char* what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw LibsvmParseError(line, std::string("bad ") + what + " '" + tok + "'");
  }
  if (pos != tok.size())
    throw LibsvmParseError(line, std::string("trailing characters in ") + what + " '" + tok + "'");
  return v;
}

long parse_index(const std::string& tok, long line) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(tok, &pos);
  } catch (const std::exception&) {
    throw LibsvmParseError(line, "bad feature index '" + tok + "'");
  }
  if (pos != tok.size())
    throw LibsvmParseError(line, "trailing characters in feature index '" + tok + "'");
  return v;
}

}  // namespace

Dataset parse_libsvm(std::istream& in) {
  Dataset data;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line

    const double label = parse_real(tok, line_no, "label");
    SparseRow row;
    int prev_index = 0;  // file indices are 1-based
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        throw LibsvmParseError(line_no, "expected idx:val, got '" + tok + "'");
      const long idx = parse_index(tok.substr(0, colon), line_no);
      if (idx < 1) throw LibsvmParseError(line_no, "feature indices are 1-based");
      if (idx <= prev_index)
        throw LibsvmParseError(line_no, "feature indices must be strictly increasing");
      const double val = parse_real(tok.substr(colon + 1), line_no, "feature value");
      row.emplace_back(static_cast<int>(idx - 1), val);
      prev_index = static_cast<int>(idx);
    }
    data.labels.push_back(label);
    data.rows.push_back(std::move(row));
    data.num_features = std::max(data.num_features, prev_index);
  }
  return data;
}

void write_libsvm(std::ostream& out, const Dataset& data) {
  char buf[64];
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", data.labels[i]);
    out << buf;
    for (const auto& [idx, val] : data.rows[i]) {
      std::snprintf(buf, sizeof buf, "%.17g", val);
      out << ' ' << (idx + 1) << ':' << buf;
    }
    out << '\n';
  }
}

std::vector<double> map_binary_labels(const std::vector<double>& labels) {
  std::set<double> distinct(labels.begin(), labels.end());
  if (distinct.size() > 2)
    throw std::invalid_argument("map_binary_labels: more than two distinct labels");
  std::vector<double> mapped;
  mapped.reserve(labels.size());
  const double low = distinct.empty() ? 0.0 : *distinct.begin();
  for (double l : labels)
    mapped.push_back(distinct.size() == 2 && l == low ? -1.0 : 1.0);
  return mapped;
}

}  // namespace slsopt
