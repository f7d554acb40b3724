#include "mpomdp/pareto.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "mpomdp/probability.hpp"
#include "mpomdp/solver.hpp"

namespace mpomdp {
namespace {

std::vector<std::int64_t> rounded_key(const std::vector<double>& values) {
  std::vector<std::int64_t> key;
  key.reserve(values.size());
  for (double v : values) key.push_back(std::llround(v * 1e9));
  return key;
}

}  // namespace

bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("value vectors have lengths " + std::to_string(a.size()) +
                                " and " + std::to_string(b.size()));
  bool strict = false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < b[j] - kTolerance) return false;
    if (a[j] > b[j] + kTolerance) strict = true;
  }
  return strict;
}

std::vector<std::vector<double>> simplex_grid(int players, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("grid size must be at least 2");
  if (players < 2) throw std::invalid_argument("grid needs at least 2 players");
  std::vector<std::vector<double>> out;
  std::vector<int> parts(static_cast<std::size_t>(players), 0);
  const int total = grid_size - 1;
  // all compositions of total into `players` parts, lexicographic
  auto walk = [&](auto&& self, int index, int remaining) -> void {
    if (index == players - 1) {
      parts[static_cast<std::size_t>(index)] = remaining;
      std::vector<double> w(static_cast<std::size_t>(players));
      for (int j = 0; j < players; ++j)
        w[static_cast<std::size_t>(j)] =
            static_cast<double>(parts[static_cast<std::size_t>(j)]) / total;
      out.push_back(std::move(w));
      return;
    }
    for (int take = 0; take <= remaining; ++take) {
      parts[static_cast<std::size_t>(index)] = take;
      self(self, index + 1, remaining - take);
    }
  };
  walk(walk, 0, total);
  return out;
}

std::vector<FrontierPoint> sweep_frontier(const CompatibleSet& set, int grid_size,
                                          Execution exec) {
  auto violations = check_compatibility(set);
  if (!violations.empty()) {
    std::string msg;
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i) msg += "; ";
      msg += violations[i];
    }
    throw std::invalid_argument(msg);
  }

  const auto grid = simplex_grid(static_cast<int>(set.players.size()), grid_size);
  const std::vector<CompiledOutlook> players = compile_players(set);
  const std::int64_t count = static_cast<std::int64_t>(grid.size());
  std::vector<FrontierPoint> raw(grid.size());
  std::string failure;

  auto solve_point = [&](std::int64_t i) {
    FrontierPoint& point = raw[static_cast<std::size_t>(i)];
    point.weights.weights = grid[static_cast<std::size_t>(i)];
    point.policy = solve_pareto(set, point.weights);
    point.values.reserve(players.size());
    for (const auto& m : players) point.values.push_back(policy_value(m, point.policy));
  };

  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        solve_point(i);
      } catch (const std::exception& e) {
#pragma omp critical
        if (failure.empty()) failure = e.what();
      }
    }
    if (!failure.empty()) throw std::runtime_error(failure);
  } else {
    for (std::int64_t i = 0; i < count; ++i) solve_point(i);
  }

  // Deduplicate by value vector, keeping the first grid point, then drop any
  // point some other point dominates (ties at the grid edges can park the
  // solver on a weakly dominated optimum).
  std::vector<FrontierPoint> unique;
  std::map<std::vector<std::int64_t>, bool> seen;
  for (auto& point : raw) {
    auto key = rounded_key(point.values);
    if (seen.emplace(std::move(key), true).second) unique.push_back(std::move(point));
  }
  std::vector<bool> dominated(unique.size(), false);
  for (std::size_t i = 0; i < unique.size(); ++i)
    for (std::size_t j = 0; j < unique.size() && !dominated[i]; ++j)
      dominated[i] = j != i && dominates(unique[j].values, unique[i].values);
  std::vector<FrontierPoint> out;
  for (std::size_t i = 0; i < unique.size(); ++i)
    if (!dominated[i]) out.push_back(std::move(unique[i]));
  return out;
}

}  // namespace mpomdp
