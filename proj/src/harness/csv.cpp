#include "slsopt/harness/csv.hpp"

#include "slsopt/harness/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace slsopt {

const char* const kCsvHeader =
    "run_seed,iter,epoch,train_loss,test_metric,step_size,fn_evals,grad_evals,dist_sq,"
    "wall_secs";

void write_csv(std::ostream& out, const RunTrace& trace) {
  out << kCsvHeader << '\n';
  for (const auto& r : trace.rows) {
    out << trace.seed << ',' << r.iter << ',' << r.epoch << ',' << format_double(r.train_loss)
        << ',';
    if (r.test_metric) out << format_double(*r.test_metric);
    out << ',' << format_double(r.step_size) << ',' << r.fn_evals << ',' << r.grad_evals << ',';
    if (r.dist_sq) out << format_double(*r.dist_sq);
    out << ',' << format_double(r.wall_secs) << '\n';
  }
}

ParsedCsv read_csv(std::istream& in) {
  ParsedCsv parsed;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: missing header");
  {
    std::istringstream hs(line);
    std::string col;
    while (std::getline(hs, col, ',')) parsed.columns.push_back(col);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<CsvCell> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      CsvCell c;
      if (!cell.empty()) {
        c.present = true;
        c.value = parse_double(cell);
      }
      row.push_back(c);
    }
    // a trailing empty cell is dropped by getline; pad to header width
    while (row.size() < parsed.columns.size()) row.push_back(CsvCell{});
    if (row.size() != parsed.columns.size())
      throw std::invalid_argument("csv: row width does not match header");
    parsed.rows.push_back(std::move(row));
  }
  return parsed;
}

ParsedCsv read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open csv file '" + path + "'");
  return read_csv(in);
}

}  // namespace slsopt
