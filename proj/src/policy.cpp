#include "mpomdp/policy.hpp"

#include <cmath>
#include <stdexcept>

namespace mpomdp {

std::vector<int> History::key() const {
  std::vector<int> out;
  out.reserve(observations.size() + actions.size());
  for (std::size_t i = 0; i < observations.size(); ++i) {
    out.push_back(observations[i]);
    if (i < actions.size()) out.push_back(actions[i]);
  }
  return out;
}

History History::from_key(const std::vector<int>& key) {
  History h;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i % 2 == 0)
      h.observations.push_back(key[i]);
    else
      h.actions.push_back(key[i]);
  }
  if (!key.empty() && key.size() % 2 == 0)
    throw std::invalid_argument("history key must end with an observation");
  return h;
}

const std::vector<double>* Policy::row(const std::vector<int>& key) const {
  auto it = table.find(key);
  return it == table.end() ? nullptr : &it->second;
}

std::uint64_t history_count(int n_observations, int n_actions, int horizon) {
  const std::uint64_t kMax = UINT64_MAX;
  std::uint64_t total = 0, step = 1;  // step = |O|^i * |A|^(i-1)
  for (int i = 1; i <= horizon; ++i) {
    if (i == 1) {
      step = static_cast<std::uint64_t>(n_observations);
    } else {
      const std::uint64_t factor =
          static_cast<std::uint64_t>(n_observations) * static_cast<std::uint64_t>(n_actions);
      if (step > kMax / factor) return kMax;
      step *= factor;
    }
    if (total > kMax - step) return kMax;
    total += step;
  }
  return total;
}

std::vector<std::vector<int>> enumerate_history_keys(int n_observations, int n_actions,
                                                     int horizon) {
  std::vector<std::vector<int>> all;
  std::vector<std::vector<int>> level;
  for (int o = 0; o < n_observations; ++o) level.push_back({o});
  for (int i = 1; i <= horizon; ++i) {
    all.insert(all.end(), level.begin(), level.end());
    if (i == horizon) break;
    std::vector<std::vector<int>> next;
    next.reserve(level.size() * static_cast<std::size_t>(n_actions * n_observations));
    for (const auto& key : level)
      for (int a = 0; a < n_actions; ++a)
        for (int o = 0; o < n_observations; ++o) {
          std::vector<int> k = key;
          k.push_back(a);
          k.push_back(o);
          next.push_back(std::move(k));
        }
    level = std::move(next);
  }
  return all;
}

std::vector<std::string> validate_policy(const Policy& policy, int n_observations,
                                         int n_actions, int horizon) {
  std::vector<std::string> out;
  if (policy.is_mixture()) {
    if (policy.coefficients.size() != policy.components.size())
      out.push_back("mixture has " + std::to_string(policy.components.size()) +
                    " components but " + std::to_string(policy.coefficients.size()) +
                    " coefficients");
    double sum = 0.0;
    for (double c : policy.coefficients) {
      if (c < -1e-12) out.push_back("mixture coefficient is negative");
      sum += c;
    }
    if (std::abs(sum - 1.0) > kTolerance)
      out.push_back("mixture coefficients sum to " + std::to_string(sum));
    for (const auto& component : policy.components)
      for (const auto& v : validate_policy(component, n_observations, n_actions, horizon))
        out.push_back("component: " + v);
    return out;
  }

  auto keys = enumerate_history_keys(n_observations, n_actions, horizon);
  for (const auto& key : keys)
    if (!policy.table.count(key)) {
      out.push_back("policy missing a history at step " +
                    std::to_string((key.size() + 1) / 2));
      break;  // one witness is enough; the domain is wrong wholesale
    }
  if (policy.table.size() != keys.size() && out.empty())
    out.push_back("policy table has " + std::to_string(policy.table.size()) +
                  " histories, expected " + std::to_string(keys.size()));
  for (const auto& [key, row] : policy.table) {
    if (static_cast<int>(row.size()) != n_actions) {
      out.push_back("policy row has " + std::to_string(row.size()) + " entries, expected " +
                    std::to_string(n_actions));
      continue;
    }
    double sum = 0.0;
    for (double p : row) {
      if (p < -1e-12) out.push_back("policy row contains a negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kTolerance)
      out.push_back("policy row sums to " + std::to_string(sum));
  }
  return out;
}

std::string history_label(const std::vector<int>& key, const ActionSet& actions,
                          const ObservationSet& observations) {
  if (key.empty()) return "(initial)";
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += ",";
    out += (i % 2 == 0) ? observations.labels[static_cast<std::size_t>(key[i])]
                        : actions.labels[static_cast<std::size_t>(key[i])];
  }
  return out;
}

}  // namespace mpomdp
