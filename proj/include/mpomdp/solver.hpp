#pragma once

#include <string>
#include <vector>

#include "mpomdp/mixture.hpp"
#include "mpomdp/model.hpp"
#include "mpomdp/policy.hpp"

namespace mpomdp {

// Exact backward induction for one outlook. At every history the chosen
// action maximizes P(observations so far | do(past actions)) * E[utility |
// history, action, continuation]; histories no player can reach store the
// tie-break action so the contingent plan stays complete. Ties resolve to the
// lowest action index within 1e-9.
Policy solve_single(const CompiledOutlook& outlook);
Policy solve_single(const PlayerOutlook& outlook, const ActionSet& actions,
                    const ObservationSet& observations, int horizon);

// Pareto-optimal policy for the given weights, computed as backward induction
// on the weighted mixture of the players' outlooks. The result maximizes
// sum_j w^j * policy_value(outlook_j, .) over all policies.
Policy solve_pareto(const CompatibleSet& set, const WeightVector& weights);

struct RecursionReport {
  bool passed = true;
  int histories_checked = 0;
  std::vector<int> violation_key;  // first violating history key (empty when passed)
  double gap = 0.0;                // objective shortfall at that history
  std::string message;
};

// Independent check of the shifting-priority recursion: at every history with
// positive do-probability under some player, the policy's support must lie in
// the argmax of sum_j w^j * P^j(obs|do(acts)) * E^j[U^j | history, action;
// policy]. This route recomputes the objective from per-player conditionals
// and never touches the mixture construction, so it cross-validates
// solve_pareto.
RecursionReport verify_recursion(const CompatibleSet& set, const WeightVector& weights,
                                 const Policy& policy, double tolerance = kTolerance);

// Per-step effective priorities along a fixed history: raw_j = w^j *
// P^j(o_1..o_i | do(a_1..a_{i-1})), plus the normalized vector when the raw
// entries are not all zero.
struct PriorityTrace {
  struct Step {
    std::vector<double> raw;
    std::vector<double> normalized;  // empty when not normalizable
    bool normalizable = false;
  };
  std::vector<Step> steps;  // entry i covers the first i observations
};

PriorityTrace priority_trace(const CompatibleSet& set, const WeightVector& weights,
                             const std::vector<int>& observations,
                             const std::vector<int>& actions);

// Once-and-for-all randomization over whole policies: the value of the result
// under every outlook is the coefficient-weighted sum of component values.
Policy mix_policies(const std::vector<Policy>& policies,
                    const std::vector<double>& coefficients);

}  // namespace mpomdp
