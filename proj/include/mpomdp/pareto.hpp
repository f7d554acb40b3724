#pragma once

#include <vector>

#include "mpomdp/model.hpp"
#include "mpomdp/parallel.hpp"
#include "mpomdp/policy.hpp"

namespace mpomdp {

// a dominates b iff a is componentwise >= b (within 1e-9) and strictly
// greater than b somewhere (by more than 1e-9).
bool dominates(const std::vector<double>& a, const std::vector<double>& b);

struct FrontierPoint {
  WeightVector weights;
  std::vector<double> values;  // per-player expected utilities of the policy
  Policy policy;
};

// Weight grids over the k-simplex with grid_size points per edge; for k = 2
// this is w1 in {0, 1/(g-1), ..., 1} in ascending order.
std::vector<std::vector<double>> simplex_grid(int players, int grid_size);

// One solve per grid weight, then deduplication by value vector (9-decimal
// key) and removal of dominated points, preserving grid order. Grid points
// are independent, so the parallel path distributes them across threads and
// stores results by grid index to keep the output deterministic.
std::vector<FrontierPoint> sweep_frontier(const CompatibleSet& set, int grid_size,
                                          Execution exec = Execution::parallel);

}  // namespace mpomdp
