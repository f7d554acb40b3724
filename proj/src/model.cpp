#include "mpomdp/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mpomdp {
namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

std::string join_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ", ";
    out += labels[i];
  }
  return out;
}

bool has_reserved_char(const std::string& label) {
  return label.find(',') != std::string::npos || label.find('|') != std::string::npos;
}

void check_label_list(const std::vector<std::string>& labels, const std::string& what,
                      std::vector<std::string>& out) {
  if (labels.empty()) out.push_back(what + " empty");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) out.push_back(what + " contain an empty label");
    if (has_reserved_char(l))
      out.push_back(what + " label \"" + l + "\" contains a reserved character (',' or '|')");
    if (!seen.insert(l).second) out.push_back("duplicate " + what + " label \"" + l + "\"");
  }
}

// Checks one probability map against a set of admissible labels: no unknown
// keys, no entries outside [-1e-12, 1+1e-12], total within 1e-9 of 1.
void check_distribution(const std::map<std::string, double>& row,
                        const std::set<std::string>& domain, const std::string& domain_name,
                        const std::string& where, std::vector<std::string>& out) {
  double sum = 0.0;
  for (const auto& [label, p] : row) {
    if (!domain.count(label)) {
      out.push_back(where + " references unknown " + domain_name + " \"" + label + "\"");
      continue;
    }
    if (p < -1e-12) out.push_back(where + " assigns negative probability " + fmt(p) + " to \"" + label + "\"");
    if (p > 1.0 + 1e-12) out.push_back(where + " assigns probability " + fmt(p) + " > 1 to \"" + label + "\"");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kTolerance) out.push_back(where + " sums to " + fmt(sum));
}

double clamp01(double v) {
  if (v < 0.0) return 0.0;
  if (v > 1.0) return 1.0;
  return v;
}

// Enumerates the state sequences reachable under the outlook's support (any
// action at every step) and reports table keys missing for them.
void check_table_coverage(const PlayerOutlook& outlook, int horizon,
                          std::vector<std::string>& out) {
  constexpr std::size_t kMaxListed = 8;
  std::size_t missing = 0;
  std::vector<std::string> seq;
  auto report = [&](const std::vector<std::string>& s) {
    ++missing;
    if (missing <= kMaxListed)
      out.push_back("utility table missing sequence (" + join_labels(s) + ")");
  };
  // depth-first over supported prefixes
  auto walk = [&](auto&& self, int depth) -> void {
    if (depth == horizon + 1) {
      if (!outlook.utility.table.count(seq)) report(seq);
      return;
    }
    if (depth == 0) {
      for (const auto& [s, p] : outlook.initial) {
        if (p <= 0.0) continue;
        seq.push_back(s);
        self(self, 1);
        seq.pop_back();
      }
      return;
    }
    std::set<std::string> successors;
    for (const auto& [key, row] : outlook.transition) {
      if (key.first != seq.back()) continue;
      for (const auto& [s2, p] : row)
        if (p > 0.0) successors.insert(s2);
    }
    for (const auto& s2 : successors) {
      seq.push_back(s2);
      self(self, depth + 1);
      seq.pop_back();
    }
  };
  walk(walk, 0);
  if (missing > kMaxListed)
    out.push_back("utility table missing " + std::to_string(missing - kMaxListed) +
                  " further reachable sequences");
}

}  // namespace

int ActionSet::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

int ObservationSet::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> validate_outlook(const PlayerOutlook& outlook,
                                          const ActionSet& actions,
                                          const ObservationSet& observations,
                                          int horizon) {
  std::vector<std::string> out;
  check_label_list(outlook.states, "states", out);
  const std::set<std::string> state_set(outlook.states.begin(), outlook.states.end());
  const std::set<std::string> action_set(actions.labels.begin(), actions.labels.end());
  const std::set<std::string> obs_set(observations.labels.begin(), observations.labels.end());

  if (outlook.horizon && *outlook.horizon != horizon)
    out.push_back("horizon mismatch: outlook declares " + std::to_string(*outlook.horizon) +
                  ", shared horizon is " + std::to_string(horizon));

  check_distribution(outlook.initial, state_set, "state", "initial", out);

  for (const auto& s : outlook.states)
    for (const auto& a : actions.labels)
      if (!outlook.transition.count({s, a}))
        out.push_back("transition missing row (" + s + ", " + a + ")");
  for (const auto& [key, row] : outlook.transition) {
    const std::string where = "transition row (" + key.first + ", " + key.second + ")";
    if (!state_set.count(key.first)) out.push_back(where + " keyed by unknown state \"" + key.first + "\"");
    if (!action_set.count(key.second)) out.push_back(where + " keyed by unknown action \"" + key.second + "\"");
    check_distribution(row, state_set, "state", where, out);
  }

  for (const auto& s : outlook.states)
    if (!outlook.observation.count(s)) out.push_back("observation missing row (" + s + ")");
  for (const auto& [s, row] : outlook.observation) {
    const std::string where = "observation row (" + s + ")";
    if (!state_set.count(s)) out.push_back(where + " keyed by unknown state \"" + s + "\"");
    check_distribution(row, obs_set, "observation", where, out);
  }

  if (outlook.utility.kind == UtilitySpec::Kind::additive) {
    for (const auto& s : outlook.states)
      if (!outlook.utility.values.count(s))
        out.push_back("utility values missing state \"" + s + "\"");
    for (const auto& [s, _] : outlook.utility.values)
      if (!state_set.count(s))
        out.push_back("utility values reference unknown state \"" + s + "\"");
  } else {
    bool keys_ok = true;
    for (const auto& [seq, _] : outlook.utility.table) {
      if (static_cast<int>(seq.size()) != horizon + 1) {
        out.push_back("utility table key (" + join_labels(seq) + ") has length " +
                      std::to_string(seq.size()) + ", expected " + std::to_string(horizon + 1));
        keys_ok = false;
      }
      for (const auto& s : seq)
        if (!state_set.count(s)) {
          out.push_back("utility table key (" + join_labels(seq) +
                        ") references unknown state \"" + s + "\"");
          keys_ok = false;
        }
    }
    if (keys_ok && horizon >= 1) check_table_coverage(outlook, horizon, out);
  }
  return out;
}

std::vector<std::string> check_compatibility(const CompatibleSet& set) {
  std::vector<std::string> out;
  check_label_list(set.actions.labels, "actions", out);
  check_label_list(set.observations.labels, "observations", out);
  if (set.horizon < 1) out.push_back("horizon must be a positive integer, got " + std::to_string(set.horizon));
  if (set.players.size() < 2)
    out.push_back("a compatible set needs at least 2 players, got " + std::to_string(set.players.size()));

  std::set<std::string> names;
  for (const auto& player : set.players) {
    const std::string prefix = "player " + player.name + ": ";
    if (!names.insert(player.name).second) out.push_back("duplicate player name \"" + player.name + "\"");

    // The action set a player actually uses is implied by its transition
    // rows; a missing or extra action is a compatibility defect, not just a
    // missing row.
    std::set<std::string> implied;
    for (const auto& [key, _] : player.transition) implied.insert(key.second);
    std::vector<std::string> missing, extra;
    for (const auto& a : set.actions.labels)
      if (!implied.count(a)) missing.push_back(a);
    for (const auto& a : implied)
      if (set.actions.index_of(a) < 0) extra.push_back(a);
    if (!missing.empty() || !extra.empty()) {
      std::string detail;
      if (!missing.empty()) detail += "missing: " + join_labels(missing);
      if (!extra.empty()) detail += (detail.empty() ? "" : "; ") + std::string("unknown: ") + join_labels(extra);
      out.push_back(prefix + "action sets differ (" + detail + ")");
    }

    for (const auto& v : validate_outlook(player, set.actions, set.observations, set.horizon))
      out.push_back(prefix + v);
  }
  return out;
}

std::vector<std::string> validate_weights(const WeightVector& weights, std::size_t players) {
  std::vector<std::string> out;
  if (weights.weights.size() != players) {
    out.push_back("weights length " + std::to_string(weights.weights.size()) + ", expected " +
                  std::to_string(players));
    return out;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < weights.weights.size(); ++j) {
    if (weights.weights[j] < -1e-12)
      out.push_back("weight " + std::to_string(j) + " is negative (" + fmt(weights.weights[j]) + ")");
    sum += weights.weights[j];
  }
  if (std::abs(sum - 1.0) > kTolerance) out.push_back("weights sum to " + fmt(sum));
  return out;
}

double CompiledOutlook::utility(const std::vector<int>& sequence) const {
  if (additive) {
    double v = 0.0;
    for (int s : sequence) v += state_value[static_cast<std::size_t>(s)];
    return v;
  }
  std::uint64_t code = 0;
  for (int s : sequence) code = extend_code(code, s);
  return utility_from_code(code);
}

double CompiledOutlook::utility_from_code(std::uint64_t code) const {
  if (additive) {
    double v = 0.0;
    for (int i = 0; i <= horizon; ++i) {
      v += state_value[code % states.size()];
      code /= states.size();
    }
    return v;
  }
  auto it = sequence_value.find(code);
  if (it == sequence_value.end()) {
    std::uint64_t c = code;
    std::vector<int> seq(static_cast<std::size_t>(horizon) + 1);
    for (int i = horizon; i >= 0; --i) {
      seq[static_cast<std::size_t>(i)] = static_cast<int>(c % states.size());
      c /= states.size();
    }
    std::string text;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i) text += ", ";
      text += states[static_cast<std::size_t>(seq[i])];
    }
    throw std::runtime_error("utility table missing sequence (" + text + ")");
  }
  return it->second;
}

CompiledOutlook compile(const PlayerOutlook& outlook,
                        const ActionSet& actions,
                        const ObservationSet& observations,
                        int horizon) {
  auto violations = validate_outlook(outlook, actions, observations, horizon);
  if (!violations.empty()) {
    std::string msg = "outlook " + outlook.name + " invalid: ";
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i) msg += "; ";
      msg += violations[i];
    }
    throw std::invalid_argument(msg);
  }

  CompiledOutlook m;
  m.name = outlook.name;
  m.states = outlook.states;
  m.actions = actions.labels;
  m.observations = observations.labels;
  m.horizon = horizon;

  std::map<std::string, int> sidx;
  for (std::size_t i = 0; i < m.states.size(); ++i) sidx[m.states[i]] = static_cast<int>(i);

  const std::size_t ns = m.states.size(), na = m.actions.size(), no = m.observations.size();
  m.initial.assign(ns, 0.0);
  for (const auto& [s, p] : outlook.initial) m.initial[static_cast<std::size_t>(sidx[s])] = clamp01(p);

  m.transition.assign(ns * na * ns, 0.0);
  for (const auto& [key, row] : outlook.transition) {
    const std::size_t s = static_cast<std::size_t>(sidx[key.first]);
    const std::size_t a = static_cast<std::size_t>(actions.index_of(key.second));
    for (const auto& [s2, p] : row)
      m.transition[(s * na + a) * ns + static_cast<std::size_t>(sidx[s2])] = clamp01(p);
  }

  m.observation.assign(ns * no, 0.0);
  for (const auto& [s, row] : outlook.observation) {
    const std::size_t si = static_cast<std::size_t>(sidx[s]);
    for (const auto& [o, p] : row)
      m.observation[si * no + static_cast<std::size_t>(observations.index_of(o))] = clamp01(p);
  }

  if (outlook.utility.kind == UtilitySpec::Kind::additive) {
    m.additive = true;
    m.state_value.assign(ns, 0.0);
    for (const auto& [s, v] : outlook.utility.values)
      m.state_value[static_cast<std::size_t>(sidx[s])] = v;
  } else {
    m.additive = false;
    for (const auto& [seq, v] : outlook.utility.table) {
      std::uint64_t code = 0;
      for (const auto& s : seq) code = m.extend_code(code, sidx[s]);
      m.sequence_value[code] = v;
    }
  }
  return m;
}

std::vector<CompiledOutlook> compile_players(const CompatibleSet& set) {
  auto violations = check_compatibility(set);
  if (!violations.empty()) {
    std::string msg = "incompatible set: ";
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i) msg += "; ";
      msg += violations[i];
    }
    throw std::invalid_argument(msg);
  }
  std::vector<CompiledOutlook> out;
  out.reserve(set.players.size());
  for (const auto& player : set.players)
    out.push_back(compile(player, set.actions, set.observations, set.horizon));
  return out;
}

}  // namespace mpomdp
