#include <random>

#include <stdexcept>

#include "doctest.h"
#include "mpomdp/mixture.hpp"
#include "mpomdp/model.hpp"
#include "mpomdp/probability.hpp"
#include "support/instances.hpp"

using namespace mpomdp;
using testsupport::make_cake_set;
using testsupport::make_shared_belief_set;
using testsupport::near;
using testsupport::random_compatible_pair;
using testsupport::random_policy;
using testsupport::random_weights;

namespace {

Policy cake_pareto_policy() {
  Policy pi;
  pi.table[{0}] = {1.0, 0.0, 0.0};
  pi.table[{1}] = {0.0, 0.0, 1.0};
  return pi;
}

}  // namespace

TEST_CASE("mixture carries the weights only in the initial distribution") {
  CompatibleSet set = make_cake_set();
  MixtureOutlook mix = build_mixture(set, {{0.5, 0.5}});
  CHECK(mix.outlook.states.size() == 8);
  CHECK(near(mix.outlook.initial.at("p1:cake"), 0.5));
  CHECK(near(mix.outlook.initial.at("p2:cake"), 0.5));
  CHECK(mix.outlook.initial.count("p1:all-none") == 0);

  // block-diagonal transitions stay within the owning player's copy
  const auto& row = mix.outlook.transition.at({"p1:cake", "all-none"});
  REQUIRE(row.size() == 1);
  CHECK(near(row.at("p1:all-none"), 1.0));

  // each tagged state keeps the owning player's observation kernel
  CHECK(near(mix.outlook.observation.at("p1:cake").at("red"), 0.9));
  CHECK(near(mix.outlook.observation.at("p2:cake").at("red"), 0.1));

  // selector bookkeeping
  REQUIRE(mix.state_tags.size() == 8);
  CHECK(mix.state_tags[0] == std::pair<int, std::string>{0, "cake"});
  CHECK(mix.state_tags[4] == std::pair<int, std::string>{1, "cake"});
}

TEST_CASE("the mixture validates as a plain outlook") {
  CompatibleSet set = make_cake_set();
  MixtureOutlook mix = build_mixture(set, {{0.3, 0.7}});
  CHECK(validate_outlook(mix.outlook, set.actions, set.observations, set.horizon).empty());

  CompatibleSet shared = make_shared_belief_set();
  MixtureOutlook mix2 = build_mixture(shared, {{0.25, 0.75}});
  CHECK(validate_outlook(mix2.outlook, shared.actions, shared.observations, shared.horizon)
            .empty());
}

TEST_CASE("additive utilities stay additive; any tabular player forces tables") {
  CompatibleSet set = make_cake_set();
  MixtureOutlook mix = build_mixture(set, {{0.5, 0.5}});
  CHECK(mix.outlook.utility.kind == UtilitySpec::Kind::additive);
  CHECK(near(mix.outlook.utility.values.at("p1:all-none"), 30.0));
  CHECK(near(mix.outlook.utility.values.at("p2:all-none"), 0.0));

  CompatibleSet shared = make_shared_belief_set();
  MixtureOutlook mix2 = build_mixture(shared, {{0.5, 0.5}});
  CHECK(mix2.outlook.utility.kind == UtilitySpec::Kind::tabular);
  // the additive player's entries are expanded to full sequences
  CHECK(near(mix2.outlook.utility.table.at({"p1:sunny", "p1:sunny", "p1:sunny"}), 12.0));
  CHECK(near(mix2.outlook.utility.table.at({"p2:rainy", "p2:rainy", "p2:rainy"}), 7.0));
}

TEST_CASE("mixture weights scale the initial masses") {
  CompatibleSet set = make_cake_set();
  MixtureOutlook mix = build_mixture(set, {{0.2, 0.8}});
  CHECK(near(mix.outlook.initial.at("p1:cake"), 0.2));
  CHECK(near(mix.outlook.initial.at("p2:cake"), 0.8));
}

TEST_CASE("invalid inputs are rejected with a prefixed message") {
  CompatibleSet set = make_cake_set();
  CHECK_THROWS_WITH_AS(build_mixture(set, {{0.4, 0.4}}),
                       doctest::Contains("invalid mixture inputs"), std::invalid_argument);
  set.players[0].initial = {{"cake", 0.5}};
  CHECK_THROWS_AS(build_mixture(set, {{0.5, 0.5}}), std::invalid_argument);
}

TEST_CASE("mixture value on the cake scenario") {
  CompatibleSet set = make_cake_set();
  CHECK(near(mixture_value(set, {{0.5, 0.5}}, cake_pareto_policy()), 27.0));

  Policy always_first;
  always_first.table[{0}] = {1.0, 0.0, 0.0};
  always_first.table[{1}] = {1.0, 0.0, 0.0};
  CHECK(near(mixture_value(set, {{1.0, 0.0}}, always_first), 30.0));
  CHECK(near(mixture_value(set, {{0.0, 1.0}}, always_first), 0.0));

  Policy always_half;
  always_half.table[{0}] = {0.0, 1.0, 0.0};
  always_half.table[{1}] = {0.0, 1.0, 0.0};
  CHECK(near(mixture_value(set, {{0.5, 0.5}}, always_half), 20.0));
}

TEST_CASE("degenerate weights reduce the mixture to one outlook") {
  CompatibleSet set = make_cake_set();
  auto compiled = compile_players(set);
  const Policy pi = cake_pareto_policy();
  CHECK(near(mixture_value(set, {{1.0, 0.0}}, pi), policy_value(compiled[0], pi)));
  CHECK(near(mixture_value(set, {{0.0, 1.0}}, pi), policy_value(compiled[1], pi)));
}

// mixture_value internally recomputes the value on the compiled mixture POMDP
// and throws if the two routes disagree, so running it over random instances
// checks the tagged construction end to end.
TEST_CASE("weighted sum equals the value of the built mixture on random instances") {
  std::mt19937 rng(40917);
  for (int trial = 0; trial < 60; ++trial) {
    CompatibleSet set = random_compatible_pair(rng);
    WeightVector w = random_weights(rng, 2);
    const Policy pi = random_policy(rng, set);
    double expected = 0.0;
    auto compiled = compile_players(set);
    for (std::size_t j = 0; j < compiled.size(); ++j)
      expected += w.weights[j] * policy_value(compiled[j], pi);
    CHECK(near(mixture_value(set, w, pi), expected));
  }
}

TEST_CASE("tag labels cannot collide across players") {
  CHECK(tagged_label(0, "2:x") == "p1:2:x");
  CHECK(tagged_label(11, "x") == "p12:x");
  // "p1:" + "2:x" vs "p12:" + "x" differ at the colon position
  CHECK(tagged_label(0, "2:x") != tagged_label(11, "x"));
}
