#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mpomdp/model.hpp"
#include "mpomdp/policy.hpp"

namespace mpomdp {

// The single POMDP w^1 D^1 + ... + w^k D^k: a latent selector B picks player
// j's outlook with probability w^j before the first step and stays fixed.
// States are tagged copies (j, s); transitions are block-diagonal per tag and
// the observation kernel of a tagged state is the owning player's kernel, so
// the weights live only in the initial distribution.
struct MixtureOutlook {
  PlayerOutlook outlook;  // over tagged states "p<j>:<state>"; validates as a PlayerOutlook
  WeightVector selector_prior;
  std::vector<std::pair<int, std::string>> state_tags;  // tagged index -> (player, original label)
};

MixtureOutlook build_mixture(const CompatibleSet& set, const WeightVector& weights);

// sum_j w^j * policy_value(outlook_j, policy). Internally asserted (at 1e-9)
// to coincide with the policy's value computed directly on the built mixture.
double mixture_value(const CompatibleSet& set, const WeightVector& weights,
                     const Policy& policy);

std::string tagged_label(int player, const std::string& state);

}  // namespace mpomdp
