#include "mpomdp/naive.hpp"

#include <algorithm>
#include <stdexcept>

#include "belief.hpp"
#include "mpomdp/probability.hpp"

namespace mpomdp {
namespace {

// Per-player unnormalized subtree values under the naive-chosen actions. The
// per-action score divides each player's weight-summed continuation value by
// that player's do-probability of the history (the summed belief weight),
// which is what strips the priority shifting out of the recursion.
std::vector<double> naive_dfs(const std::vector<CompiledOutlook>& players,
                              const std::vector<double>& r, int step, std::vector<int>& key,
                              const std::vector<detail::Belief>& beliefs,
                              std::map<std::vector<int>, std::vector<double>>& table) {
  const std::size_t k = players.size();
  const int na = players[0].na();
  const int no = players[0].no();
  const int horizon = players[0].horizon;

  std::vector<std::vector<double>> value(static_cast<std::size_t>(na),
                                         std::vector<double>(k, 0.0));
  for (int a = 0; a < na; ++a) {
    if (step == horizon) {
      for (std::size_t j = 0; j < k; ++j)
        value[static_cast<std::size_t>(a)][j] =
            detail::terminal_value(players[j], beliefs[j], a);
    } else {
      for (int o = 0; o < no; ++o) {
        std::vector<detail::Belief> child(k);
        for (std::size_t j = 0; j < k; ++j)
          child[j] = detail::extend_belief(players[j], beliefs[j], a, o);
        key.push_back(a);
        key.push_back(o);
        const std::vector<double> sub = naive_dfs(players, r, step + 1, key, child, table);
        key.pop_back();
        key.pop_back();
        for (std::size_t j = 0; j < k; ++j) value[static_cast<std::size_t>(a)][j] += sub[j];
      }
    }
  }

  std::vector<double> denom(k, 0.0);
  for (std::size_t j = 0; j < k; ++j)
    for (const auto& e : beliefs[j]) denom[j] += e.w;

  std::vector<double> score(static_cast<std::size_t>(na), 0.0);
  for (int a = 0; a < na; ++a)
    for (std::size_t j = 0; j < k; ++j)
      if (denom[j] > 0.0)
        score[static_cast<std::size_t>(a)] += r[j] * value[static_cast<std::size_t>(a)][j] / denom[j];

  const double best = *std::max_element(score.begin(), score.end());
  int chosen = 0;
  while (score[static_cast<std::size_t>(chosen)] < best - kTolerance) ++chosen;

  std::vector<double> row(static_cast<std::size_t>(na), 0.0);
  row[static_cast<std::size_t>(chosen)] = 1.0;
  table[key] = std::move(row);
  return value[static_cast<std::size_t>(chosen)];
}

}  // namespace

Policy solve_naive(const CompatibleSet& set, double r) {
  if (set.players.size() != 2)
    throw std::invalid_argument("naive baseline defined for two players");
  if (r < -1e-12 || r > 1.0 + 1e-12)
    throw std::invalid_argument("r must lie in [0, 1]");
  const std::vector<CompiledOutlook> players = compile_players(set);
  const std::vector<double> weights{r, 1.0 - r};

  Policy pi;
  for (int o = 0; o < players[0].no(); ++o) {
    std::vector<detail::Belief> beliefs;
    beliefs.reserve(players.size());
    for (const auto& m : players) beliefs.push_back(detail::initial_belief(m, o));
    std::vector<int> key{o};
    naive_dfs(players, weights, 1, key, beliefs, pi.table);
  }
  pi.metadata = "naive fixed-weight baseline";
  return pi;
}

NaiveComparison compare_naive(const CompatibleSet& set, const std::vector<double>& r_grid,
                              const Policy& reference) {
  if (set.players.size() != 2)
    throw std::invalid_argument("naive baseline defined for two players");
  const std::vector<CompiledOutlook> players = compile_players(set);

  std::vector<double> reference_values;
  reference_values.reserve(players.size());
  for (const auto& m : players) reference_values.push_back(policy_value(m, reference));

  NaiveComparison report;
  for (double r : r_grid) {
    NaiveComparison::Entry entry;
    entry.r = r;
    entry.reference_values = reference_values;
    const Policy pi = solve_naive(set, r);
    for (const auto& m : players) entry.naive_values.push_back(policy_value(m, pi));
    for (std::size_t j = 0; j < players.size(); ++j)
      if (entry.naive_values[j] < reference_values[j] - kTolerance) entry.strictly_worse = true;
    if (entry.strictly_worse) ++report.flagged;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace mpomdp
