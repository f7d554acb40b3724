#pragma once

#include <map>
#include <vector>

#include "mpomdp/model.hpp"
#include "mpomdp/policy.hpp"

namespace mpomdp {

// A full outcome: states s_1..s_{n+1}, observations o_1..o_n, actions a_1..a_n.
struct Trajectory {
  std::vector<int> states;
  std::vector<int> observations;
  std::vector<int> actions;
};

// Distribution over state prefixes (s_1..s_i) given a history; the carrier
// for conditional expectations of sequence-valued utilities. Entries hold
// only the support. When the history has probability zero under the outlook,
// `impossible` is set instead of dividing by zero.
struct PrefixBelief {
  std::map<std::vector<int>, double> entries;
  double normalizer = 0.0;  // P(observations | do(actions))
  bool normalized = false;
  bool impossible = false;
};

// P(s_1) * prod_i P(o_i|s_i) * pi(a_i|history_i) * P(s_{i+1}|s_i,a_i).
double joint_probability(const CompiledOutlook& outlook, const Policy& policy,
                         const Trajectory& trajectory);

// P(observations | do(actions)), actions externally fixed, states summed out
// by forward filtering. Accepts |actions| == |observations| - 1 (history
// form) or equal lengths (the trailing action cannot affect the result).
double do_probability(const CompiledOutlook& outlook, const std::vector<int>& observations,
                      const std::vector<int>& actions);

PrefixBelief prefix_posterior(const CompiledOutlook& outlook, const History& history);

// Expectation of the utility over full trajectories given the history, taking
// `action` now and following `continuation` afterwards. Exact enumeration.
// Throws when the history has probability zero under this outlook.
double conditional_expected_utility(const CompiledOutlook& outlook, const History& history,
                                    int action, const Policy& continuation);

// Exact expected utility of the policy; the policy must cover every history
// reachable with positive probability.
double policy_value(const CompiledOutlook& outlook, const Policy& policy);

}  // namespace mpomdp
