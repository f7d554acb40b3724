#pragma once

// Internal helpers shared by the recursive evaluators/solvers: unnormalized
// prefix beliefs carried down the history tree. An entry's weight is the
// joint P(s_1..s_i, o_1..o_i | do(a_1..a_{i-1})); the code packs the state
// prefix in base ns.

#include <cstdint>
#include <string>
#include <vector>

#include "mpomdp/model.hpp"

namespace mpomdp::detail {

struct Entry {
  std::uint64_t code;
  int last;
  double w;
};
using Belief = std::vector<Entry>;

inline Belief initial_belief(const CompiledOutlook& m, int o) {
  Belief out;
  for (int s = 0; s < m.ns(); ++s) {
    const double w = m.init(s) * m.obs(s, o);
    if (w > 0.0) out.push_back({static_cast<std::uint64_t>(s), s, w});
  }
  return out;
}

inline Belief extend_belief(const CompiledOutlook& m, const Belief& bel, int a, int o) {
  Belief out;
  out.reserve(bel.size());
  for (const Entry& e : bel)
    for (int s2 = 0; s2 < m.ns(); ++s2) {
      const double w = e.w * m.trans(e.last, a, s2) * m.obs(s2, o);
      if (w > 0.0) out.push_back({m.extend_code(e.code, s2), s2, w});
    }
  return out;
}

// Weight-summed terminal utility: take the last action, land in s_{n+1}.
inline double terminal_value(const CompiledOutlook& m, const Belief& bel, int a) {
  double v = 0.0;
  for (const Entry& e : bel)
    for (int s2 = 0; s2 < m.ns(); ++s2) {
      const double w = e.w * m.trans(e.last, a, s2);
      if (w > 0.0) v += w * m.utility_from_code(m.extend_code(e.code, s2));
    }
  return v;
}

inline std::string history_text(const CompiledOutlook& m, const std::vector<int>& key) {
  if (key.empty()) return "(initial)";
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += ",";
    out += (i % 2 == 0) ? m.observations[static_cast<std::size_t>(key[i])]
                        : m.actions[static_cast<std::size_t>(key[i])];
  }
  return out;
}

}  // namespace mpomdp::detail
