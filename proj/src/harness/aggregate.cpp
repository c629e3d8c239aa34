#include "slsopt/harness/aggregate.hpp"

#include "slsopt/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace slsopt {

namespace {

int column_index(const ParsedCsv& csv, const std::string& name) {
  const auto it = std::find(csv.columns.begin(), csv.columns.end(), name);
  if (it == csv.columns.end())
    throw std::invalid_argument("aggregate: input lacks column '" + name + "'");
  return static_cast<int>(it - csv.columns.begin());
}

struct MeanStd {
  double mean = 0.0, std = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd ms;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) ms.mean += x;
  ms.mean /= n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - ms.mean) * (x - ms.mean);
    ms.std = std::sqrt(ss / (n - 1.0));
  }
  return ms;
}

}  // namespace

AggregateTable aggregate_seeds(const std::vector<ParsedCsv>& runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate: need at least one input");
  const std::size_t rows = runs.front().rows.size();
  const int c_iter = column_index(runs.front(), "iter");
  const int c_epoch = column_index(runs.front(), "epoch");
  const int c_loss = column_index(runs.front(), "train_loss");
  const int c_step = column_index(runs.front(), "step_size");
  const int c_dist = column_index(runs.front(), "dist_sq");

  for (const auto& r : runs) {
    if (r.columns != runs.front().columns)
      throw std::invalid_argument("aggregate: inputs have different columns");
    if (r.rows.size() != rows)
      throw std::invalid_argument("aggregate: inputs have different iteration grids");
  }

  AggregateTable out;
  for (std::size_t i = 0; i < rows; ++i) {
    const long iter = static_cast<long>(runs.front().rows[i][c_iter].value);
    std::vector<double> losses, steps, dists;
    bool all_dist = true;
    for (const auto& r : runs) {
      const auto& row = r.rows[i];
      if (static_cast<long>(row[c_iter].value) != iter)
        throw std::invalid_argument("aggregate: inputs have different iteration grids");
      losses.push_back(row[c_loss].value);
      steps.push_back(row[c_step].value);
      if (row[c_dist].present) dists.push_back(row[c_dist].value);
      else all_dist = false;
    }
    out.iter.push_back(iter);
    out.epoch.push_back(static_cast<long>(runs.front().rows[i][c_epoch].value));
    const auto l = mean_std(losses);
    const auto s = mean_std(steps);
    out.loss_mean.push_back(l.mean);
    out.loss_std.push_back(l.std);
    out.step_mean.push_back(s.mean);
    out.step_std.push_back(s.std);
    if (all_dist) {
      const auto d = mean_std(dists);
      out.dist_mean.push_back({true, d.mean});
      out.dist_std.push_back({true, d.std});
    } else {
      out.dist_mean.push_back({});
      out.dist_std.push_back({});
    }
  }
  return out;
}

AggregateTable aggregate_seed_files(const std::vector<std::string>& paths) {
  std::vector<ParsedCsv> runs;
  runs.reserve(paths.size());
  for (const auto& p : paths) runs.push_back(read_csv_file(p));
  return aggregate_seeds(runs);
}

void write_aggregate_csv(std::ostream& out, const AggregateTable& t) {
  out << "iter,epoch,train_loss_mean,train_loss_std,step_size_mean,step_size_std,"
         "dist_sq_mean,dist_sq_std\n";
  for (std::size_t i = 0; i < t.iter.size(); ++i) {
    out << t.iter[i] << ',' << t.epoch[i] << ',' << format_double(t.loss_mean[i]) << ','
        << format_double(t.loss_std[i]) << ',' << format_double(t.step_mean[i]) << ','
        << format_double(t.step_std[i]) << ',';
    if (t.dist_mean[i].present) out << format_double(t.dist_mean[i].value);
    out << ',';
    if (t.dist_std[i].present) out << format_double(t.dist_std[i].value);
    out << '\n';
  }
}

}  // namespace slsopt
