#include "mpomdp/probability.hpp"

#include <stdexcept>
#include <string>

#include "belief.hpp"

namespace mpomdp {
namespace {

void check_ids(const std::vector<int>& ids, int bound, const std::string& what) {
  for (int v : ids)
    if (v < 0 || v >= bound)
      throw std::invalid_argument("unknown " + what + " index " + std::to_string(v));
}

void check_history_shape(const History& h) {
  if (h.observations.empty() && h.actions.empty()) return;
  if (h.observations.size() != h.actions.size() + 1)
    throw std::invalid_argument("history must hold one more observation than actions");
}

void check_coefficients(const Policy& policy) {
  if (policy.components.size() != policy.coefficients.size())
    throw std::invalid_argument("policy mixture has mismatched coefficient count");
}

// Expected utility from one state prefix after taking `action`, following the
// policy (looked up by full history key) for the remaining steps.
double future_value(const CompiledOutlook& m, std::vector<int>& states, int step, int action,
                    std::vector<int>& key, const Policy& policy) {
  double v = 0.0;
  const int s = states.back();
  for (int s2 = 0; s2 < m.ns(); ++s2) {
    const double t = m.trans(s, action, s2);
    if (t <= 0.0) continue;
    states.push_back(s2);
    if (step == m.horizon) {
      v += t * m.utility(states);
    } else {
      double below = 0.0;
      for (int o = 0; o < m.no(); ++o) {
        const double po = m.obs(s2, o);
        if (po <= 0.0) continue;
        key.push_back(action);
        key.push_back(o);
        const std::vector<double>* row = policy.row(key);
        if (!row)
          throw std::runtime_error("policy missing history \"" + detail::history_text(m, key) +
                                   "\"");
        if (static_cast<int>(row->size()) != m.na())
          throw std::invalid_argument("policy row size does not match the action set");
        double sub = 0.0;
        for (int a2 = 0; a2 < m.na(); ++a2)
          if ((*row)[a2] > 0.0) sub += (*row)[a2] * future_value(m, states, step + 1, a2, key, policy);
        key.pop_back();
        key.pop_back();
        below += po * sub;
      }
      v += t * below;
    }
    states.pop_back();
  }
  return v;
}

double table_policy_value(const CompiledOutlook& m, const Policy& policy, int step,
                          std::vector<int>& key, const detail::Belief& bel) {
  if (bel.empty()) return 0.0;
  const std::vector<double>* row = policy.row(key);
  if (!row)
    throw std::runtime_error("policy missing history \"" + detail::history_text(m, key) + "\"");
  if (static_cast<int>(row->size()) != m.na())
    throw std::invalid_argument("policy row size does not match the action set");
  double v = 0.0;
  for (int a = 0; a < m.na(); ++a) {
    const double pa = (*row)[a];
    if (pa <= 0.0) continue;
    if (step == m.horizon) {
      v += pa * detail::terminal_value(m, bel, a);
    } else {
      double below = 0.0;
      for (int o = 0; o < m.no(); ++o) {
        key.push_back(a);
        key.push_back(o);
        below += table_policy_value(m, policy, step + 1, key, detail::extend_belief(m, bel, a, o));
        key.pop_back();
        key.pop_back();
      }
      v += pa * below;
    }
  }
  return v;
}

}  // namespace

double joint_probability(const CompiledOutlook& m, const Policy& policy,
                         const Trajectory& t) {
  if (static_cast<int>(t.states.size()) != m.horizon + 1)
    throw std::invalid_argument("trajectory states have length " +
                                std::to_string(t.states.size()) + ", expected " +
                                std::to_string(m.horizon + 1));
  if (static_cast<int>(t.observations.size()) != m.horizon)
    throw std::invalid_argument("trajectory observations have length " +
                                std::to_string(t.observations.size()) + ", expected " +
                                std::to_string(m.horizon));
  if (static_cast<int>(t.actions.size()) != m.horizon)
    throw std::invalid_argument("trajectory actions have length " +
                                std::to_string(t.actions.size()) + ", expected " +
                                std::to_string(m.horizon));
  check_ids(t.states, m.ns(), "state");
  check_ids(t.observations, m.no(), "observation");
  check_ids(t.actions, m.na(), "action");

  if (policy.is_mixture()) {
    check_coefficients(policy);
    double v = 0.0;
    for (std::size_t c = 0; c < policy.components.size(); ++c)
      if (policy.coefficients[c] != 0.0)
        v += policy.coefficients[c] * joint_probability(m, policy.components[c], t);
    return v;
  }

  double p = m.init(t.states[0]);
  std::vector<int> key;
  for (int i = 0; i < m.horizon && p > 0.0; ++i) {
    p *= m.obs(t.states[static_cast<std::size_t>(i)], t.observations[static_cast<std::size_t>(i)]);
    if (p <= 0.0) return 0.0;
    key.push_back(t.observations[static_cast<std::size_t>(i)]);
    const std::vector<double>* row = policy.row(key);
    if (!row)
      throw std::runtime_error("policy missing history \"" + detail::history_text(m, key) + "\"");
    if (static_cast<int>(row->size()) != m.na())
      throw std::invalid_argument("policy row size does not match the action set");
    p *= (*row)[t.actions[static_cast<std::size_t>(i)]];
    key.push_back(t.actions[static_cast<std::size_t>(i)]);
    p *= m.trans(t.states[static_cast<std::size_t>(i)], t.actions[static_cast<std::size_t>(i)],
                 t.states[static_cast<std::size_t>(i) + 1]);
  }
  return p < 0.0 ? 0.0 : p;
}

double do_probability(const CompiledOutlook& m, const std::vector<int>& observations,
                      const std::vector<int>& actions) {
  if (actions.size() != observations.size() && actions.size() + 1 != observations.size())
    throw std::invalid_argument(
        "do-probability takes |actions| equal to or one less than |observations|");
  check_ids(observations, m.no(), "observation");
  check_ids(actions, m.na(), "action");
  if (observations.empty()) return 1.0;

  std::vector<double> alpha(static_cast<std::size_t>(m.ns()));
  for (int s = 0; s < m.ns(); ++s) alpha[static_cast<std::size_t>(s)] = m.init(s) * m.obs(s, observations[0]);
  for (std::size_t i = 1; i < observations.size(); ++i) {
    std::vector<double> next(static_cast<std::size_t>(m.ns()), 0.0);
    for (int s = 0; s < m.ns(); ++s) {
      if (alpha[static_cast<std::size_t>(s)] <= 0.0) continue;
      for (int s2 = 0; s2 < m.ns(); ++s2)
        next[static_cast<std::size_t>(s2)] += alpha[static_cast<std::size_t>(s)] *
                                              m.trans(s, actions[i - 1], s2) *
                                              m.obs(s2, observations[i]);
    }
    alpha = std::move(next);
  }
  double total = 0.0;
  for (double v : alpha) total += v;
  return total;
}

PrefixBelief prefix_posterior(const CompiledOutlook& m, const History& history) {
  check_history_shape(history);
  check_ids(history.observations, m.no(), "observation");
  check_ids(history.actions, m.na(), "action");

  PrefixBelief out;
  if (history.observations.empty()) {
    out.entries[{}] = 1.0;
    out.normalizer = 1.0;
    out.normalized = true;
    return out;
  }

  std::map<std::vector<int>, double> entries;
  for (int s = 0; s < m.ns(); ++s) {
    const double w = m.init(s) * m.obs(s, history.observations[0]);
    if (w > 0.0) entries[{s}] = w;
  }
  for (std::size_t i = 1; i < history.observations.size(); ++i) {
    std::map<std::vector<int>, double> next;
    for (const auto& [prefix, w] : entries)
      for (int s2 = 0; s2 < m.ns(); ++s2) {
        const double w2 =
            w * m.trans(prefix.back(), history.actions[i - 1], s2) * m.obs(s2, history.observations[i]);
        if (w2 > 0.0) {
          std::vector<int> p2 = prefix;
          p2.push_back(s2);
          next[std::move(p2)] = w2;
        }
      }
    entries = std::move(next);
  }

  double total = 0.0;
  for (const auto& [_, w] : entries) total += w;
  out.normalizer = total;
  if (total <= 0.0) {
    out.impossible = true;
    return out;
  }
  for (auto& [prefix, w] : entries) out.entries[prefix] = w / total;
  out.normalized = true;
  return out;
}

double conditional_expected_utility(const CompiledOutlook& m, const History& history,
                                    int action, const Policy& continuation) {
  if (action < 0 || action >= m.na())
    throw std::invalid_argument("unknown action index " + std::to_string(action));
  const int step = history.steps();
  if (step < 1 || step > m.horizon)
    throw std::invalid_argument("history length must lie in 1..horizon");

  if (continuation.is_mixture()) {
    // The mixture seed is drawn before any input, so conditioning on the
    // do-history leaves the component weights untouched.
    check_coefficients(continuation);
    double v = 0.0;
    for (std::size_t c = 0; c < continuation.components.size(); ++c)
      if (continuation.coefficients[c] != 0.0)
        v += continuation.coefficients[c] *
             conditional_expected_utility(m, history, action, continuation.components[c]);
    return v;
  }

  PrefixBelief belief = prefix_posterior(m, history);
  if (belief.impossible) throw std::runtime_error("conditioning on probability-zero history");

  std::vector<int> key = history.key();
  double v = 0.0;
  for (const auto& [prefix, p] : belief.entries) {
    std::vector<int> states = prefix;
    v += p * future_value(m, states, step, action, key, continuation);
  }
  return v;
}

double policy_value(const CompiledOutlook& m, const Policy& policy) {
  if (policy.is_mixture()) {
    check_coefficients(policy);
    double v = 0.0;
    for (std::size_t c = 0; c < policy.components.size(); ++c)
      if (policy.coefficients[c] != 0.0)
        v += policy.coefficients[c] * policy_value(m, policy.components[c]);
    return v;
  }
  double v = 0.0;
  for (int o = 0; o < m.no(); ++o) {
    std::vector<int> key{o};
    v += table_policy_value(m, policy, 1, key, detail::initial_belief(m, o));
  }
  return v;
}

}  // namespace mpomdp
