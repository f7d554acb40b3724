#include "mpomdp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "belief.hpp"
#include "mpomdp/probability.hpp"

namespace mpomdp {
namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "; ";
    out += parts[i];
  }
  return out;
}

void require_set_and_weights(const CompatibleSet& set, const WeightVector& weights) {
  auto violations = check_compatibility(set);
  auto wv = validate_weights(weights, set.players.size());
  violations.insert(violations.end(), wv.begin(), wv.end());
  if (!violations.empty()) throw std::invalid_argument(join(violations));
}

int pick_argmax(const std::vector<double>& values) {
  const double best = *std::max_element(values.begin(), values.end());
  int chosen = 0;
  while (values[static_cast<std::size_t>(chosen)] < best - kTolerance) ++chosen;
  return chosen;
}

// Walks the whole history tree carrying the unnormalized prefix belief; the
// sum of an entry's weights is exactly P(obs so far | do(acts so far)), so
// maximizing the weight-summed continuation value at each history realizes
// the do-probability-scaled objective without ever normalizing. Every history
// gets a stored row, including unreachable ones (empty belief -> all values
// zero -> tie-break action).
double solve_dfs(const CompiledOutlook& m, int step, std::vector<int>& key,
                 const detail::Belief& bel,
                 std::map<std::vector<int>, std::vector<double>>& table) {
  std::vector<double> value(static_cast<std::size_t>(m.na()), 0.0);
  for (int a = 0; a < m.na(); ++a) {
    if (step == m.horizon) {
      value[static_cast<std::size_t>(a)] = detail::terminal_value(m, bel, a);
    } else {
      double v = 0.0;
      for (int o = 0; o < m.no(); ++o) {
        key.push_back(a);
        key.push_back(o);
        v += solve_dfs(m, step + 1, key, detail::extend_belief(m, bel, a, o), table);
        key.pop_back();
        key.pop_back();
      }
      value[static_cast<std::size_t>(a)] = v;
    }
  }
  const int chosen = pick_argmax(value);
  std::vector<double> row(static_cast<std::size_t>(m.na()), 0.0);
  row[static_cast<std::size_t>(chosen)] = 1.0;
  table[key] = std::move(row);
  return value[static_cast<std::size_t>(chosen)];
}

}  // namespace

Policy solve_single(const CompiledOutlook& m) {
  Policy pi;
  for (int o = 0; o < m.no(); ++o) {
    std::vector<int> key{o};
    solve_dfs(m, 1, key, detail::initial_belief(m, o), pi.table);
  }
  pi.metadata = "backward induction on " + m.name;
  return pi;
}

Policy solve_single(const PlayerOutlook& outlook, const ActionSet& actions,
                    const ObservationSet& observations, int horizon) {
  return solve_single(compile(outlook, actions, observations, horizon));
}

Policy solve_pareto(const CompatibleSet& set, const WeightVector& weights) {
  require_set_and_weights(set, weights);
  MixtureOutlook mix = build_mixture(set, weights);
  Policy pi =
      solve_single(compile(mix.outlook, set.actions, set.observations, set.horizon));
  pi.metadata = "weighted mixture backward induction";
  return pi;
}

RecursionReport verify_recursion(const CompatibleSet& set, const WeightVector& weights,
                                 const Policy& policy, double tolerance) {
  require_set_and_weights(set, weights);
  if (policy.is_mixture())
    throw std::invalid_argument("verify_recursion expects a table policy");
  auto pv = validate_policy(policy, set.observations.size(), set.actions.size(), set.horizon);
  if (!pv.empty()) throw std::invalid_argument(join(pv));

  std::vector<CompiledOutlook> players = compile_players(set);
  const int k = static_cast<int>(players.size());
  const int na = set.actions.size();

  RecursionReport report;
  for (const auto& [key, row] : policy.table) {
    History h = History::from_key(key);
    std::vector<double> raw(static_cast<std::size_t>(k), 0.0);
    double total = 0.0;
    for (int j = 0; j < k; ++j) {
      raw[static_cast<std::size_t>(j)] =
          weights.weights[static_cast<std::size_t>(j)] *
          do_probability(players[static_cast<std::size_t>(j)], h.observations, h.actions);
      total += raw[static_cast<std::size_t>(j)];
    }
    if (total <= 0.0) continue;  // the recursion constrains nothing here
    ++report.histories_checked;

    std::vector<double> objective(static_cast<std::size_t>(na), 0.0);
    for (int a = 0; a < na; ++a)
      for (int j = 0; j < k; ++j)
        if (raw[static_cast<std::size_t>(j)] > 0.0)
          objective[static_cast<std::size_t>(a)] +=
              raw[static_cast<std::size_t>(j)] *
              conditional_expected_utility(players[static_cast<std::size_t>(j)], h, a, policy);

    const double best = *std::max_element(objective.begin(), objective.end());
    double worst_gap = 0.0;
    for (int a = 0; a < na; ++a)
      if (row[static_cast<std::size_t>(a)] > 1e-12)
        worst_gap = std::max(worst_gap, best - objective[static_cast<std::size_t>(a)]);
    if (worst_gap > tolerance) {
      report.passed = false;
      report.violation_key = key;
      report.gap = worst_gap;
      report.message = "history \"" +
                       history_label(key, set.actions, set.observations) +
                       "\" places probability on an action " + std::to_string(worst_gap) +
                       " below the best objective";
      return report;
    }
  }
  report.message = "all " + std::to_string(report.histories_checked) + " histories optimal";
  return report;
}

PriorityTrace priority_trace(const CompatibleSet& set, const WeightVector& weights,
                             const std::vector<int>& observations,
                             const std::vector<int>& actions) {
  require_set_and_weights(set, weights);
  if (actions.size() + 1 != observations.size() && actions.size() != observations.size() &&
      !(observations.empty() && actions.empty()))
    throw std::invalid_argument("history must interleave observations and actions");

  std::vector<CompiledOutlook> players = compile_players(set);
  const std::size_t k = players.size();

  PriorityTrace trace;
  for (std::size_t i = 0; i <= observations.size(); ++i) {
    if (i > 0 && actions.size() < i - 1)
      throw std::invalid_argument("history must interleave observations and actions");
    PriorityTrace::Step step;
    step.raw.resize(k);
    double total = 0.0;
    const std::vector<int> obs(observations.begin(), observations.begin() + static_cast<long>(i));
    const std::vector<int> acts(actions.begin(),
                                actions.begin() + static_cast<long>(i == 0 ? 0 : i - 1));
    for (std::size_t j = 0; j < k; ++j) {
      step.raw[j] = weights.weights[j] * do_probability(players[j], obs, acts);
      total += step.raw[j];
    }
    if (total > 0.0) {
      step.normalizable = true;
      step.normalized.resize(k);
      for (std::size_t j = 0; j < k; ++j) step.normalized[j] = step.raw[j] / total;
    }
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

namespace {

// Key set of a policy's contingent plan; for a mixture, of its first
// component (mix_policies enforces agreement across components).
const std::map<std::vector<int>, std::vector<double>>& domain_table(const Policy& p) {
  return p.is_mixture() ? domain_table(p.components.front()) : p.table;
}

bool same_domain(const Policy& a, const Policy& b) {
  const auto& ta = domain_table(a);
  const auto& tb = domain_table(b);
  if (ta.size() != tb.size()) return false;
  auto ia = ta.begin();
  auto ib = tb.begin();
  for (; ia != ta.end(); ++ia, ++ib)
    if (ia->first != ib->first) return false;
  return true;
}

}  // namespace

Policy mix_policies(const std::vector<Policy>& policies,
                    const std::vector<double>& coefficients) {
  if (policies.empty()) throw std::invalid_argument("mix_policies needs at least one policy");
  if (coefficients.size() != policies.size())
    throw std::invalid_argument("mix_policies got " + std::to_string(policies.size()) +
                                " policies but " + std::to_string(coefficients.size()) +
                                " coefficients");
  double sum = 0.0;
  for (double c : coefficients) {
    if (c < -1e-12) throw std::invalid_argument("mixture coefficients must be non-negative");
    sum += c;
  }
  if (std::abs(sum - 1.0) > kTolerance)
    throw std::invalid_argument("mixture coefficients must sum to 1");
  for (std::size_t i = 1; i < policies.size(); ++i)
    if (!same_domain(policies[0], policies[i]))
      throw std::invalid_argument("policies do not share a history domain");

  if (policies.size() == 1) return policies[0];
  Policy mix;
  mix.components = policies;
  mix.coefficients = coefficients;
  mix.metadata = "policy mixture";
  return mix;
}

}  // namespace mpomdp
