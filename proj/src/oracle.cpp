#include "mpomdp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mpomdp/pareto.hpp"
#include "mpomdp/probability.hpp"

namespace mpomdp {
namespace {

std::string count_text(int n_actions, std::size_t slots) {
  // exact when it fits, order-of-magnitude otherwise
  const double bits = static_cast<double>(slots) * std::log2(static_cast<double>(n_actions));
  std::ostringstream out;
  if (bits < 63.0) {
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < slots; ++i) c *= static_cast<std::uint64_t>(n_actions);
    out << c;
  } else {
    const double log10c = static_cast<double>(slots) * std::log10(static_cast<double>(n_actions));
    const double mantissa = std::pow(10.0, log10c - std::floor(log10c));
    out.precision(2);
    out << std::fixed << mantissa << "e+" << static_cast<long long>(std::floor(log10c));
  }
  return out.str();
}

}  // namespace

DeterministicPolicyEnumerator::DeterministicPolicyEnumerator(int n_actions, int n_observations,
                                                             int horizon, std::uint64_t cap)
    : n_actions_(n_actions) {
  if (n_actions < 1 || n_observations < 1 || horizon < 1)
    throw std::invalid_argument("enumeration needs positive action/observation counts and horizon");
  keys_ = enumerate_history_keys(n_observations, n_actions, horizon);

  unsigned __int128 count = 1;
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    count *= static_cast<unsigned>(n_actions);
    if (count > cap)
      throw std::invalid_argument("enumerating all deterministic policies requires " +
                                  count_text(n_actions, keys_.size()) +
                                  " policies, exceeding the cap of " + std::to_string(cap));
  }
  count_ = static_cast<std::uint64_t>(count);
}

Policy DeterministicPolicyEnumerator::policy_at(std::uint64_t ordinal) const {
  if (ordinal >= count_) throw std::invalid_argument("policy ordinal out of range");
  Policy pi;
  std::uint64_t u = ordinal;
  for (const auto& key : keys_) {
    std::vector<double> row(static_cast<std::size_t>(n_actions_), 0.0);
    row[static_cast<std::size_t>(u % static_cast<std::uint64_t>(n_actions_))] = 1.0;
    u /= static_cast<std::uint64_t>(n_actions_);
    pi.table[key] = std::move(row);
  }
  return pi;
}

bool DeterministicPolicyEnumerator::next(Policy& out) {
  if (cursor_ >= count_) return false;
  out = policy_at(cursor_++);
  return true;
}

DeterministicPolicyEnumerator enumerate_deterministic_policies(const ActionSet& actions,
                                                               const ObservationSet& observations,
                                                               int horizon, std::uint64_t cap) {
  return DeterministicPolicyEnumerator(actions.size(), observations.size(), horizon, cap);
}

std::vector<std::vector<double>> evaluate_deterministic_policies(const CompatibleSet& set,
                                                                 std::uint64_t cap,
                                                                 Execution exec) {
  const std::vector<CompiledOutlook> players = compile_players(set);
  DeterministicPolicyEnumerator enumerator(set.actions.size(), set.observations.size(),
                                           set.horizon, cap);
  const std::int64_t count = static_cast<std::int64_t>(enumerator.count());
  std::vector<std::vector<double>> values(static_cast<std::size_t>(count));
  std::string failure;

  auto evaluate = [&](std::int64_t i) {
    const Policy pi = enumerator.policy_at(static_cast<std::uint64_t>(i));
    std::vector<double>& v = values[static_cast<std::size_t>(i)];
    v.reserve(players.size());
    for (const auto& m : players) v.push_back(policy_value(m, pi));
  };

  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        evaluate(i);
      } catch (const std::exception& e) {
#pragma omp critical
        if (failure.empty()) failure = e.what();
      }
    }
    if (!failure.empty()) throw std::runtime_error(failure);
  } else {
    for (std::int64_t i = 0; i < count; ++i) evaluate(i);
  }
  return values;
}

double best_weighted_value(const CompatibleSet& set, const WeightVector& weights,
                           std::uint64_t cap, Execution exec) {
  auto wv = validate_weights(weights, set.players.size());
  if (!wv.empty()) throw std::invalid_argument(wv.front());
  const auto values = evaluate_deterministic_policies(set, cap, exec);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : values) {
    double total = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) total += weights.weights[j] * v[j];
    best = std::max(best, total);
  }
  return best;
}

std::vector<OraclePoint> brute_force_frontier(const CompatibleSet& set, std::uint64_t cap,
                                              Execution exec) {
  const auto values = evaluate_deterministic_policies(set, cap, exec);

  std::map<std::vector<std::int64_t>, std::uint64_t> representative;  // rounded values -> ordinal
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::vector<std::int64_t> key;
    key.reserve(values[i].size());
    for (double v : values[i]) key.push_back(std::llround(v * 1e9));
    representative.emplace(std::move(key), static_cast<std::uint64_t>(i));
  }

  std::vector<std::pair<std::vector<double>, std::uint64_t>> unique;
  unique.reserve(representative.size());
  for (const auto& [_, ordinal] : representative)
    unique.emplace_back(values[static_cast<std::size_t>(ordinal)], ordinal);

  DeterministicPolicyEnumerator enumerator(set.actions.size(), set.observations.size(),
                                           set.horizon, cap);
  std::vector<OraclePoint> out;
  for (const auto& [value, ordinal] : unique) {
    bool dominated = false;
    for (const auto& [other, other_ordinal] : unique) {
      if (other_ordinal != ordinal && dominates(other, value)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back({value, enumerator.policy_at(ordinal)});
  }
  std::sort(out.begin(), out.end(),
            [](const OraclePoint& a, const OraclePoint& b) { return a.values < b.values; });
  return out;
}

}  // namespace mpomdp
