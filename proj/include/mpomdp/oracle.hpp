#pragma once

#include <cstdint>
#include <vector>

#include "mpomdp/model.hpp"
#include "mpomdp/parallel.hpp"
#include "mpomdp/policy.hpp"

namespace mpomdp {

inline constexpr std::uint64_t kDefaultPolicyCap = 1'000'000;

// Streams every complete deterministic contingent plan exactly once; the
// ordinal encoding makes policy_at random-access so evaluation can be split
// across threads. Construction throws when the required count exceeds the
// cap, naming the count.
class DeterministicPolicyEnumerator {
 public:
  DeterministicPolicyEnumerator(int n_actions, int n_observations, int horizon,
                                std::uint64_t cap = kDefaultPolicyCap);

  std::uint64_t count() const { return count_; }
  Policy policy_at(std::uint64_t ordinal) const;
  bool next(Policy& out);
  void reset() { cursor_ = 0; }

 private:
  std::vector<std::vector<int>> keys_;
  int n_actions_ = 0;
  std::uint64_t count_ = 0;
  std::uint64_t cursor_ = 0;
};

DeterministicPolicyEnumerator enumerate_deterministic_policies(
    const ActionSet& actions, const ObservationSet& observations, int horizon,
    std::uint64_t cap = kDefaultPolicyCap);

// Value vector (one expectation per player) of every deterministic policy,
// indexed by enumeration ordinal.
std::vector<std::vector<double>> evaluate_deterministic_policies(
    const CompatibleSet& set, std::uint64_t cap = kDefaultPolicyCap,
    Execution exec = Execution::parallel);

// max over deterministic policies of sum_j w_j * value_j; by linearity of
// policy mixing no stochastic policy can beat it.
double best_weighted_value(const CompatibleSet& set, const WeightVector& weights,
                           std::uint64_t cap = kDefaultPolicyCap,
                           Execution exec = Execution::parallel);

struct OraclePoint {
  std::vector<double> values;
  Policy policy;
};

// Exact non-dominated set of deterministic value vectors, deduplicated and
// sorted lexicographically.
std::vector<OraclePoint> brute_force_frontier(const CompatibleSet& set,
                                              std::uint64_t cap = kDefaultPolicyCap,
                                              Execution exec = Execution::parallel);

}  // namespace mpomdp
