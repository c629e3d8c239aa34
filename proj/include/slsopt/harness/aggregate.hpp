#pragma once

#include "slsopt/harness/csv.hpp"

#include <string>
#include <vector>

namespace slsopt {

/// Per-iteration mean and sample standard deviation (n−1 denominator; 0 for
/// a single run) of train_loss, step_size and dist_sq across seed runs.
/// Inputs must share an identical iteration grid.
struct AggregateTable {
  std::vector<long> iter;
  std::vector<long> epoch;
  std::vector<double> loss_mean, loss_std;
  std::vector<double> step_mean, step_std;
  std::vector<CsvCell> dist_mean, dist_std;  // absent when any input lacks dist_sq
};

AggregateTable aggregate_seeds(const std::vector<ParsedCsv>& runs);
AggregateTable aggregate_seed_files(const std::vector<std::string>& paths);

void write_aggregate_csv(std::ostream& out, const AggregateTable& table);

}  // namespace slsopt
