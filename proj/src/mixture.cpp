#include "mpomdp/mixture.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "mpomdp/probability.hpp"

namespace mpomdp {
namespace {

void require_valid(const CompatibleSet& set, const WeightVector& weights) {
  auto violations = check_compatibility(set);
  auto wv = validate_weights(weights, set.players.size());
  violations.insert(violations.end(), wv.begin(), wv.end());
  if (violations.empty()) return;
  std::string msg = "invalid mixture inputs: ";
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) msg += "; ";
    msg += violations[i];
  }
  throw std::invalid_argument(msg);
}

// All state sequences of length horizon+1 reachable under the player's
// support, independent of the mixture weight (zero-weight players keep their
// table entries so the construction stays uniform).
void reachable_sequences(const PlayerOutlook& player, int horizon,
                         std::vector<std::vector<std::string>>& out) {
  std::vector<std::string> seq;
  auto walk = [&](auto&& self, int depth) -> void {
    if (depth == horizon + 1) {
      out.push_back(seq);
      return;
    }
    if (depth == 0) {
      for (const auto& [s, p] : player.initial) {
        if (p <= 0.0) continue;
        seq.push_back(s);
        self(self, 1);
        seq.pop_back();
      }
      return;
    }
    std::set<std::string> successors;
    for (const auto& [key, row] : player.transition) {
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
}

}  // namespace

std::string tagged_label(int player, const std::string& state) {
  return "p" + std::to_string(player + 1) + ":" + state;
}

MixtureOutlook build_mixture(const CompatibleSet& set, const WeightVector& weights) {
  require_valid(set, weights);

  MixtureOutlook mix;
  mix.selector_prior = weights;
  PlayerOutlook& m = mix.outlook;
  m.name = "mixture";

  bool all_additive = true;
  for (const auto& player : set.players)
    all_additive = all_additive && player.utility.kind == UtilitySpec::Kind::additive;
  m.utility.kind = all_additive ? UtilitySpec::Kind::additive : UtilitySpec::Kind::tabular;

  for (std::size_t j = 0; j < set.players.size(); ++j) {
    const PlayerOutlook& player = set.players[j];
    const double wj = weights.weights[j];
    auto tag = [&](const std::string& s) { return tagged_label(static_cast<int>(j), s); };

    for (const auto& s : player.states) {
      m.states.push_back(tag(s));
      mix.state_tags.emplace_back(static_cast<int>(j), s);
    }
    for (const auto& [s, p] : player.initial) m.initial[tag(s)] = wj * p;
    for (const auto& [key, row] : player.transition) {
      auto& tagged_row = m.transition[{tag(key.first), key.second}];
      for (const auto& [s2, p] : row) tagged_row[tag(s2)] = p;
    }
    // Every tagged state needs a transition row for every action even when
    // the player's row was empty-by-omission; the loop above only copies
    // present rows, and compatible inputs always carry complete rows.
    for (const auto& [s, row] : player.observation) {
      auto& tagged_row = m.observation[tag(s)];
      for (const auto& [o, p] : row) tagged_row[o] = p;
    }

    if (all_additive) {
      for (const auto& [s, v] : player.utility.values) m.utility.values[tag(s)] = v;
    } else {
      std::vector<std::vector<std::string>> sequences;
      reachable_sequences(player, set.horizon, sequences);
      for (const auto& seq : sequences) {
        std::vector<std::string> tagged;
        tagged.reserve(seq.size());
        for (const auto& s : seq) tagged.push_back(tag(s));
        double value;
        if (player.utility.kind == UtilitySpec::Kind::additive) {
          value = 0.0;
          for (const auto& s : seq) value += player.utility.values.at(s);
        } else {
          auto it = player.utility.table.find(seq);
          if (it == player.utility.table.end())
            throw std::invalid_argument("utility table of player " + player.name +
                                        " missing a reachable sequence");
          value = it->second;
        }
        m.utility.table[std::move(tagged)] = value;
      }
    }
  }
  return mix;
}

double mixture_value(const CompatibleSet& set, const WeightVector& weights,
                     const Policy& policy) {
  MixtureOutlook mix = build_mixture(set, weights);

  double weighted = 0.0;
  for (std::size_t j = 0; j < set.players.size(); ++j) {
    if (weights.weights[j] == 0.0) continue;
    CompiledOutlook m = compile(set.players[j], set.actions, set.observations, set.horizon);
    weighted += weights.weights[j] * policy_value(m, policy);
  }

  CompiledOutlook compiled_mix =
      compile(mix.outlook, set.actions, set.observations, set.horizon);
  const double direct = policy_value(compiled_mix, policy);
  if (std::abs(direct - weighted) > kTolerance)
    throw std::runtime_error("mixture value mismatch: weighted sum " + std::to_string(weighted) +
                             " vs direct " + std::to_string(direct));
  return weighted;
}

}  // namespace mpomdp
