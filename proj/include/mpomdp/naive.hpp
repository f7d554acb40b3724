#pragma once

#include <vector>

#include "mpomdp/model.hpp"
#include "mpomdp/policy.hpp"

namespace mpomdp {

// Fixed-weight aggregation baseline for two players: at every history the
// action maximizes r * E^1[U^1 | history, action; continuation] + (1-r) *
// E^2[U^2 | ...] — plain conditional expectations, with none of the
// do-probability reweighting the Pareto recursion applies. A history that is
// impossible under one player contributes 0 for that player. The baseline's
// priorities cannot react to observations, which is exactly what makes it
// strictly worse than the Pareto policy whenever beliefs differ.
Policy solve_naive(const CompatibleSet& set, double r);

struct NaiveComparison {
  struct Entry {
    double r = 0.0;
    std::vector<double> naive_values;
    std::vector<double> reference_values;
    bool strictly_worse = false;  // some player does strictly worse than under the reference
  };
  std::vector<Entry> entries;
  int flagged = 0;
};

NaiveComparison compare_naive(const CompatibleSet& set, const std::vector<double>& r_grid,
                              const Policy& reference);

}  // namespace mpomdp
