#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mpomdp/model.hpp"

namespace mpomdp {

// An observation/action history: the machine has seen i observations and
// taken i-1 actions. Keys interleave the two as [o1, a1, o2, ..., oi].
struct History {
  std::vector<int> observations;
  std::vector<int> actions;

  int steps() const { return static_cast<int>(observations.size()); }
  std::vector<int> key() const;
  static History from_key(const std::vector<int>& key);
};

// A complete contingent plan: a distribution over actions for every history
// key in the tree, zero-probability branches included. A nonempty components
// list instead makes this a once-and-for-all mixture of policies (the random
// choice is drawn before the first observation); mixtures are never flattened
// into a single table because per-history averaging would not preserve the
// linearity of the mixture's value at horizon > 1.
struct Policy {
  std::map<std::vector<int>, std::vector<double>> table;
  std::string metadata;
  std::vector<Policy> components;
  std::vector<double> coefficients;

  bool is_mixture() const { return !components.empty(); }
  const std::vector<double>* row(const std::vector<int>& key) const;
};

// Number of distinct histories over steps 1..horizon; saturates at UINT64_MAX.
std::uint64_t history_count(int n_observations, int n_actions, int horizon);

// All history keys in canonical order: by step, then lexicographically.
std::vector<std::vector<int>> enumerate_history_keys(int n_observations, int n_actions,
                                                     int horizon);

std::vector<std::string> validate_policy(const Policy& policy, int n_observations,
                                         int n_actions, int horizon);

// "red,all-none,green" rendering of a history key; "(initial)" for the empty key.
std::string history_label(const std::vector<int>& key, const ActionSet& actions,
                          const ObservationSet& observations);

}  // namespace mpomdp
