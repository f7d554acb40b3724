#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mpomdp {

// Comparison tolerance used throughout: probability sums, value comparisons,
// argmax ties.
inline constexpr double kTolerance = 1e-9;

struct ActionSet {
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(labels.size()); }
  int index_of(const std::string& label) const;  // -1 when absent
};

struct ObservationSet {
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(labels.size()); }
  int index_of(const std::string& label) const;
};

struct UtilitySpec {
  enum class Kind { additive, tabular };

  Kind kind = Kind::additive;
  // additive: the utility of a state sequence is the sum of per-state values
  // over all horizon+1 visited states.
  std::map<std::string, double> values;
  // tabular: explicit value per full state sequence; every sequence reachable
  // under the outlook's support must have an entry (missing is an error, not
  // zero). This is the fully general form; additive is a compact special case
  // and is evaluated with the same sequence semantics.
  std::map<std::vector<std::string>, double> table;
};

// One player's view of the world: beliefs (initial, transition, observation)
// plus preferences (utility). Probability maps may omit zero entries.
struct PlayerOutlook {
  std::string name;
  std::vector<std::string> states;
  std::map<std::string, double> initial;
  std::map<std::pair<std::string, std::string>, std::map<std::string, double>> transition;
  std::map<std::string, std::map<std::string, double>> observation;
  UtilitySpec utility;
  // Optional per-player declaration; when present it must agree with the
  // shared horizon of the set the outlook belongs to.
  std::optional<int> horizon;
};

// k >= 2 outlooks over the same actions, observations and horizon, so that a
// single policy can be evaluated under every player's outlook.
struct CompatibleSet {
  ActionSet actions;
  ObservationSet observations;
  int horizon = 0;
  std::vector<PlayerOutlook> players;
};

struct WeightVector {
  std::vector<double> weights;
};

// Validation is total: any syntactically well-formed input yields a (possibly
// empty) list of human-readable violations; nothing here throws.
std::vector<std::string> validate_outlook(const PlayerOutlook& outlook,
                                          const ActionSet& actions,
                                          const ObservationSet& observations,
                                          int horizon);
std::vector<std::string> check_compatibility(const CompatibleSet& set);
std::vector<std::string> validate_weights(const WeightVector& weights, std::size_t players);

// Dense index-based form of an outlook; all computations run on this.
// Construction clamps probabilities in [-1e-12, 1+1e-12] to [0, 1].
struct CompiledOutlook {
  std::string name;
  std::vector<std::string> states;
  std::vector<std::string> actions;
  std::vector<std::string> observations;
  int horizon = 0;
  std::vector<double> initial;      // [s]
  std::vector<double> transition;   // [(s*na + a)*ns + s2]
  std::vector<double> observation;  // [s*no + o]
  bool additive = true;
  std::vector<double> state_value;  // additive utility per state
  std::unordered_map<std::uint64_t, double> sequence_value;  // tabular utility

  int ns() const { return static_cast<int>(states.size()); }
  int na() const { return static_cast<int>(actions.size()); }
  int no() const { return static_cast<int>(observations.size()); }
  double init(int s) const { return initial[static_cast<std::size_t>(s)]; }
  double trans(int s, int a, int s2) const {
    return transition[(static_cast<std::size_t>(s) * actions.size() + a) * states.size() + s2];
  }
  double obs(int s, int o) const {
    return observation[static_cast<std::size_t>(s) * observations.size() + o];
  }

  // State sequences are carried as base-ns codes (first state is the most
  // significant digit); a full sequence has horizon+1 digits.
  std::uint64_t extend_code(std::uint64_t code, int s) const {
    return code * static_cast<std::uint64_t>(states.size()) + static_cast<std::uint64_t>(s);
  }
  double utility(const std::vector<int>& sequence) const;
  double utility_from_code(std::uint64_t code) const;
};

// Throws std::invalid_argument listing the violations when the outlook fails
// validation against the shared sets.
CompiledOutlook compile(const PlayerOutlook& outlook,
                        const ActionSet& actions,
                        const ObservationSet& observations,
                        int horizon);
std::vector<CompiledOutlook> compile_players(const CompatibleSet& set);

}  // namespace mpomdp
