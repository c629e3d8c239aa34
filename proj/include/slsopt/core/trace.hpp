#pragma once

#include "slsopt/core/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace slsopt {

/// One row per completed iteration. train_loss holds the full training loss
/// as of the most recent epoch boundary (it is evaluated only when the epoch
/// counter advances; f(w0) seeds the value).
struct TraceRow {
  long iter = 0;
  long epoch = 0;
  double train_loss = 0.0;
  std::optional<double> test_metric;
  double step_size = 0.0;
  long long fn_evals = 0;
  long long grad_evals = 0;
  std::optional<double> dist_sq;  // ‖w_k − w*‖² when a solution is exposed
  double wall_secs = 0.0;
  // line-search accounting (in-memory only, not part of the CSV schema)
  int condition_evals = 0;
  bool hit_floor = false;
};

struct RunTrace {
  std::uint64_t seed = 0;
  std::vector<TraceRow> rows;

  bool any_hit_floor() const {
    for (const auto& r : rows)
      if (r.hit_floor) return true;
    return false;
  }
  const TraceRow& back() const { return rows.back(); }
};

/// Equality of two traces over every recorded field except wall-clock time,
/// which is the one platform-dependent column.
inline bool traces_equal_ignoring_wall(const RunTrace& a, const RunTrace& b) {
  if (a.seed != b.seed || a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& x = a.rows[i];
    const auto& y = b.rows[i];
    if (x.iter != y.iter || x.epoch != y.epoch) return false;
    if (x.train_loss != y.train_loss || x.step_size != y.step_size) return false;
    if (x.fn_evals != y.fn_evals || x.grad_evals != y.grad_evals) return false;
    if (x.test_metric != y.test_metric || x.dist_sq != y.dist_sq) return false;
    if (x.condition_evals != y.condition_evals || x.hit_floor != y.hit_floor) return false;
  }
  return true;
}

}  // namespace slsopt
